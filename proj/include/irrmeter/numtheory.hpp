/// Denominator machinery for the measure pipeline: den, nu, nu_n, Euler's
/// totient, Pochhammer symbols, generalized binomials, the denominator
/// sequences D_n, d_n, the gcd sequence G_n, and the per-regime clearing
/// factor kappa_n.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrmeter/hypergeom.hpp"
#include "irrmeter/interval.hpp"
#include "irrmeter/rational.hpp"

namespace irrmeter {

/// Prime factorization by trial division with a Pollard-Brent fallback.
inline void factorize_into(Integer n, std::map<Integer, long>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (long p : {2L, 3L, 5L}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  long d = 7;
  static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  int w = 0;
  while (d <= 1000000 && Integer(d) * d <= n) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++out[Integer(d)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
    d += wheel[w];
    w = (w + 1) & 7;
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    ++out[n];
    return;
  }
  // Pollard rho (Brent variant)
  auto rho = [](const Integer& m) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEuL);
    for (;;) {
      Integer y = rng.get_z_range(m - 3) + 2;
      Integer c = rng.get_z_range(m - 2) + 1;
      Integer x = y, d = 1, q = 1, ys = y;
      long r = 1;
      const long step = 128;
      while (d == 1) {
        x = y;
        for (long i = 0; i < r; ++i) y = (y * y + c) % m;
        long k = 0;
        while (k < r && d == 1) {
          ys = y;
          long lim = std::min(step, r - k);
          for (long i = 0; i < lim; ++i) {
            y = (y * y + c) % m;
            Integer diff = x >= y ? Integer(x - y) : Integer(y - x);
            q = q * diff % m;
          }
          d = gcd(q, m);
          k += step;
        }
        r *= 2;
      }
      if (d == m) {
        d = 1;
        while (d == 1) {
          ys = (ys * ys + c) % m;
          Integer diff = x >= ys ? Integer(x - ys) : Integer(ys - x);
          d = gcd(diff, m);
        }
      }
      if (d != m) return d;
    }
  };
  Integer f = rho(n);
  factorize_into(f, out);
  factorize_into(n / f, out);
}

inline std::map<Integer, long> factorize(const Integer& n) {
  std::map<Integer, long> out;
  factorize_into(n, out);
  return out;
}

/// Euler's totient, via prime factorization.
inline Integer totient(const Integer& m) {
  if (m <= 0) throw std::domain_error("totient: argument must be >= 1");
  Integer r = m;
  for (const auto& [p, e] : factorize(m)) r = r / p * (p - 1);
  return r;
}

/// den(S): least m >= 1 with m*v integral for every v in S; 1 for empty S.
inline Integer den_set(const std::vector<Rational>& values) {
  Integer m = 1;
  for (const auto& v : values) m = lcm(m, v.den());
  return m;
}

/// nu(y) = prod_{q | den(y)} q^{q/(q-1)}, kept exact as prime -> exponent.
struct FactoredRadical {
  std::map<Integer, Rational> factors;  // prime -> exponent > 0

  bool is_one() const { return factors.empty(); }

  FactoredRadical& operator*=(const FactoredRadical& o) {
    for (const auto& [p, e] : o.factors) {
      Rational& x = factors[p];
      x += e;
      if (x.is_zero()) factors.erase(p);
    }
    return *this;
  }

  /// lcm of the exponent denominators; raising to this power gives a rational.
  Integer exponent_lcm() const {
    Integer l = 1;
    for (const auto& [p, e] : factors) l = lcm(l, e.den());
    return l;
  }

  /// The exact rational value of (this)^k, when k clears all exponents.
  Rational pow_rational(const Integer& k) const {
    Rational r(1);
    for (const auto& [p, e] : factors) {
      Rational ke = e * Rational(k);
      if (!ke.is_integer() || !ke.num().fits_slong_p())
        throw std::domain_error("FactoredRadical: power does not clear exponents");
      r *= Rational(p).pow(ke.num().get_si());
    }
    return r;
  }

  /// Outward interval hull of the value prod p^e.
  Interval hull(mpfr_prec_t prec) const {
    Interval r = Interval::of(1, prec);
    for (const auto& [p, e] : factors)
      r = r * Interval::of(Integer(p), prec).pow(Interval::of(e, prec));
    return r;
  }

  bool operator==(const FactoredRadical& o) const { return factors == o.factors; }
};

inline FactoredRadical nu(const Rational& y) {
  FactoredRadical r;
  for (const auto& [q, e] : factorize(y.den())) {
    (void)e;
    r.factors[q] = Rational(q, q - 1);
  }
  return r;
}

/// nu_n(y) = prod_{q | den(y)} q^{n + floor(n/(q-1))}.
inline Integer nu_n(const Rational& y, long n) {
  if (n < 0) throw std::domain_error("nu_n: n must be >= 0");
  Integer r = 1;
  for (const auto& [q, e] : factorize(y.den())) {
    (void)e;
    Integer k = Integer(n) + Integer(n) / (q - 1);
    r *= pow_ui(q, k.get_ui());
  }
  return r;
}

namespace detail {
/// Incremental ladder of rising-factorial values (a)_0, (a)_1, ... shared per
/// base a; thread-local so concurrent sweeps stay safe.
inline Rational pochhammer_cached(const Rational& a, long k) {
  thread_local std::map<Rational, std::vector<Rational>> ladders;
  auto& lad = ladders[a];
  if (lad.empty()) lad.push_back(Rational(1));
  while (static_cast<long>(lad.size()) <= k)
    lad.push_back(lad.back() * (a + Rational(static_cast<long>(lad.size()) - 1)));
  return lad[k];
}
}  // namespace detail

/// Rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1.
inline Rational pochhammer(const Rational& a, long k) {
  if (k < 0) throw std::domain_error("pochhammer: k must be >= 0");
  return detail::pochhammer_cached(a, k);
}

/// Generalized binomial a(a-1)...(a-k+1)/k!.
inline Rational gbinom(const Rational& a, long k) {
  if (k < 0) throw std::domain_error("gbinom: k must be >= 0");
  Rational r(1);
  for (long i = 0; i < k; ++i) r *= (a - Rational(i)) / Rational(i + 1);
  return r;
}

inline Integer binom_ui(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// D_n(gamma) = den(0!/(gamma+2)_0, ..., (n-1)!/(gamma+2)_{n-1}).
inline Integer Dn(const Rational& gamma, long n) {
  if (gamma < Rational(-1)) throw std::domain_error("Dn: gamma must be >= -1");
  Integer d = 1;
  Rational q(1);  // k!/(gamma+2)_k, incrementally
  for (long k = 0; k + 1 <= n; ++k) {
    d = lcm(d, q.den());
    Rational step = gamma + Rational(k + 2);
    if (step.is_zero()) throw std::domain_error("Dn: (gamma+2)_k vanishes");
    q *= Rational(k + 1) / step;
  }
  return d;
}

/// d_n(x) = den(1/(1+x), ..., 1/(n+x)).
inline Integer dn(const Rational& x, long n) {
  if (x.sign() < 0 || x >= Rational(1)) throw std::domain_error("dn: need 0 <= x < 1");
  Integer d = 1;
  for (long k = 1; k <= n; ++k) d = lcm(d, (Rational(k) + x).inverse().den());
  return d;
}

/// G_n(omega): gcd of the two integer families
///   nu_n(omega)*C(n+k-1,k)*C(n-omega-1,n-k),   0 <= k <= n,
///   nu_n(omega)*C(n+k',k')*C(n+omega,n-1-k'),  0 <= k' <= n-1.
inline Integer Gn(const Rational& omega, long n) {
  if (omega.is_integer()) throw std::domain_error("Gn: omega must not be an integer");
  if (n < 1) throw std::domain_error("Gn: n must be >= 1");
  Integer nun = nu_n(omega, n);
  Integer g = 0;
  auto fold = [&](const Rational& v) {
    if (!v.is_integer()) throw std::logic_error("Gn: family member is not an integer");
    g = gcd(g, v.num());
  };
  for (long k = 0; k <= n; ++k)
    fold(Rational(nun) * Rational(binom_ui(n + k - 1, k)) * gbinom(Rational(n) - omega - 1, n - k));
  for (long k = 0; k + 1 <= n; ++k)
    fold(Rational(nun) * Rational(binom_ui(n + k, k)) * gbinom(Rational(n) + omega, n - 1 - k));
  return g;
}

enum class Regime { General, ShiftedLog, Binomial, AlphaZero };

inline std::string regime_name(Regime r) {
  switch (r) {
    case Regime::General: return "general";
    case Regime::ShiftedLog: return "shifted_log";
    case Regime::Binomial: return "binomial";
    default: return "alpha_zero";
  }
}

struct DenominatorProfile {
  long n = 0;
  Integer nu_n = 1;   // product of the nu_n factors entering the formula
  Integer Dn = 1;
  Integer dn = 1;
  Integer Gn = 1;
  // Integer except in the binomial regime: G_n need not divide
  // nu_n*den(beta)^n (e.g. G_3(1/3) = 5), but kappa*P_{n,i}(beta) is an
  // integer all the same since G_n divides every nu_n-cleared coefficient.
  Rational kappa = Rational(1);
  Regime regime = Regime::General;
};

/// kappa_n per Lemma-style regime formulas; kappa_n * P_{n,i}(beta) is an
/// integer for the matching parameter family.
inline DenominatorProfile kappa_n(const HypergeomParams& params, const Rational& beta, long n,
                                  Regime regime) {
  if (n < 0) throw std::domain_error("kappa_n: n must be >= 0");
  DenominatorProfile prof;
  prof.n = n;
  prof.regime = regime;
  const Integer den_beta_n = pow_ui(beta.den(), n);
  switch (regime) {
    case Regime::General: {
      if (params.alpha.is_zero()) throw std::domain_error("kappa_n: general regime requires alpha != 0");
      if (params.gamma < Rational(-1)) throw std::domain_error("kappa_n: gamma must be >= -1");
      Integer ng = nu_n(params.gamma, n);
      Integer nd = nu_n(params.delta / params.alpha, n);
      prof.nu_n = ng * nd;
      prof.Dn = Dn(params.gamma, n);
      prof.kappa = Rational(Integer(prof.nu_n * prof.Dn * pow_ui(params.alpha.den(), n) * den_beta_n));
      break;
    }
    case Regime::ShiftedLog: {
      if (!(params.alpha == Rational(1) && params.delta == -params.gamma))
        throw std::domain_error("kappa_n: shifted_log regime requires (alpha,gamma,delta)=(1,x,-x)");
      const Rational& x = params.gamma;
      prof.nu_n = nu_n(x, n);
      prof.dn = dn(x, n);
      prof.kappa = Rational(Integer(x.den() * prof.nu_n * prof.dn * den_beta_n));
      break;
    }
    case Regime::Binomial: {
      if (!(params.alpha == Rational(1) && params.gamma == Rational(-1)))
        throw std::domain_error("kappa_n: binomial regime requires (alpha,gamma,delta)=(1,-1,1+omega)");
      Rational omega = params.delta - Rational(1);
      if (omega.is_integer()) throw std::domain_error("kappa_n: omega must not be an integer");
      prof.nu_n = nu_n(omega, n);
      prof.Gn = n >= 1 ? Gn(omega, n) : Integer(1);
      prof.kappa = Rational(prof.nu_n * den_beta_n, prof.Gn);
      break;
    }
    case Regime::AlphaZero: {
      if (!params.alpha.is_zero()) throw std::domain_error("kappa_n: alpha_zero regime requires alpha = 0");
      if (params.gamma < Rational(-1)) throw std::domain_error("kappa_n: gamma must be >= -1");
      prof.nu_n = nu_n(params.gamma, n);
      prof.Dn = Dn(params.gamma, n);
      prof.kappa =
          Rational(Integer(prof.nu_n * prof.Dn * pow_ui(params.delta.den(), n) * den_beta_n * factorial(n)));
      break;
    }
  }
  return prof;
}

}  // namespace irrmeter
