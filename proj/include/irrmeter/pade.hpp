/// Explicit weight-n Pade pairs for f(z), their remainder coefficients, the
/// determinant identity, and the three-term recurrence coefficients.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "irrmeter/numtheory.hpp"
#include "irrmeter/series.hpp"

namespace irrmeter {

struct PadePair {
  long n = 0;
  Poly P0;  // degree n, leading coefficient (n+gamma+1)_n / n!
  Poly P1;  // degree <= n-1
};

/// Closed-form construction:
///   P_{n,0}(z) = (1/n!) sum_k (-1)^k (n+gamma+1)_{n-k} C(n,k)
///                prod_{i=0}^{k-1}(alpha(n-i)-delta) z^{n-k},
///   P_{n,1}(z) = sum_l [ sum_{k=l}^{n-1} (-1)^{n-k-1} (n+gamma+1)_{k+1}/(k+1)!
///                * prod_{i=0}^{n-k-2}(alpha(n-i)-delta)/(n-k-1)!
///                * prod_{j=1}^{k-l}(alpha j-delta)/(gamma+2)_{k-l} ] z^l.
inline PadePair pade_general(long n, const HypergeomParams& params) {
  if (n < 0) throw std::domain_error("pade_general: n must be >= 0");
  params.require_formal();
  const Rational &a = params.alpha, &g = params.gamma, &d = params.delta;

  std::vector<Rational> p0(n + 1);
  Rational prod(1);  // prod_{i=0}^{k-1}(alpha(n-i)-delta)
  Rational inv_nfact = Rational(factorial(n)).inverse();
  for (long k = 0; k <= n; ++k) {
    Rational term = pochhammer(Rational(n) + g + 1, n - k) * Rational(binom_ui(n, k)) * prod;
    if (k % 2) term = -term;
    p0[n - k] = inv_nfact * term;
    prod *= a * Rational(n - k) - d;
  }

  std::vector<Rational> p1(n >= 1 ? n : 0);
  PhiSeries phi(params);
  for (long l = 0; l + 1 <= n; ++l) {
    Rational s(0);
    for (long k = l; k + 1 <= n; ++k) {
      Rational t = pochhammer(Rational(n) + g + 1, k + 1) / Rational(factorial(k + 1));
      Rational pr(1);
      for (long i = 0; i + k + 2 <= n; ++i) pr *= a * Rational(n - i) - d;
      t *= pr / Rational(factorial(n - k - 1));
      t *= phi.at(k - l);
      if ((n - k - 1) % 2) t = -t;
      s += t;
    }
    p1[l] = s;
  }
  return PadePair{n, Poly(std::move(p0)), Poly(std::move(p1))};
}

/// Binomial specialization (alpha,gamma,delta) = (1,-1,1+omega):
///   P_{n,0}(z) = sum_k (-1)^{n-k} C(n+k-1,k) C(n-omega-1,n-k) z^k,
///   P_{n,1}(z) = sum_k (-1)^{n-1-k} C(n+k,k) C(n+omega,n-1-k) z^k.
inline PadePair pade_binomial(long n, const Rational& omega) {
  if (omega.is_integer()) throw std::domain_error("pade_binomial: omega must not be an integer");
  if (n < 1) throw std::domain_error("pade_binomial: n must be >= 1");
  std::vector<Rational> p0(n + 1), p1(n);
  for (long k = 0; k <= n; ++k) {
    Rational t = Rational(binom_ui(n + k - 1, k)) * gbinom(Rational(n) - omega - 1, n - k);
    if ((n - k) % 2) t = -t;
    p0[k] = t;
  }
  for (long k = 0; k + 1 <= n; ++k) {
    Rational t = Rational(binom_ui(n + k, k)) * gbinom(Rational(n) + omega, n - 1 - k);
    if ((n - 1 - k) % 2) t = -t;
    p1[k] = t;
  }
  return PadePair{n, Poly(std::move(p0)), Poly(std::move(p1))};
}

/// Remainder coefficients lambda_{n,k} for k = n..K, built by the one-step
/// ratio lambda_{n,k+1}/lambda_{n,k} = (k+1)(alpha(k+1)-delta) /
/// ((k+1-n)(gamma+n+k+2)).  R_n(z) = sum_{k>=n} lambda_{n,k} z^{-(k+1)}.
inline std::vector<Rational> remainder_coeffs(long n, const HypergeomParams& params, long K) {
  if (n < 0 || K < n) throw std::domain_error("remainder_coeffs: need K >= n >= 0");
  params.require_formal();
  const Rational &a = params.alpha, &g = params.gamma, &d = params.delta;
  Rational lam(1);  // lambda_{n,n} = prod_i (alpha i - delta) prod_j (alpha(gamma+j)+delta) / (gamma+2)_{2n}
  for (long i = 1; i <= n; ++i) lam *= a * Rational(i) - d;
  for (long j = 1; j <= n; ++j) lam *= a * (g + Rational(j)) + d;
  lam /= pochhammer(g + 2, 2 * n);
  std::vector<Rational> out;
  out.reserve(K - n + 1);
  out.push_back(lam);
  for (long k = n; k < K; ++k) {
    lam *= Rational(k + 1) * (a * Rational(k + 1) - d);
    lam /= Rational(k + 1 - n) * (g + Rational(n + k + 2));
    out.push_back(lam);
  }
  return out;
}

/// Coefficients c_1..c_K of z^{-1}..z^{-K} in P0*f - P1 (their vanishing up
/// to order n is the weight property).
inline LaurentTail pair_tail(const PadePair& pair, const HypergeomParams& params, long K) {
  PhiSeries phi(params);
  LaurentTail t = LaurentTail::zero(K);
  for (long m = 0; m + 1 <= K; ++m) {
    Rational s(0);
    for (long j = 0; j <= pair.P0.degree(); ++j)
      if (!pair.P0[j].is_zero()) s += pair.P0[j] * phi.at(m + j);
    t.coeffs[m] = s;
  }
  return t;
}

/// Polynomial part of P0*f; must equal P1 for a Pade pair.
inline Poly pair_polynomial_part(const PadePair& pair, const HypergeomParams& params) {
  PhiSeries phi(params);
  long n = pair.P0.degree();
  std::vector<Rational> c(n >= 1 ? n : 0);
  for (long l = 0; l + 1 <= n; ++l) {
    Rational s(0);
    for (long j = l + 1; j <= n; ++j)
      if (!pair.P0[j].is_zero()) s += pair.P0[j] * phi.at(j - l - 1);
    c[l] = s;
  }
  return Poly(std::move(c));
}

/// det M_{2,n} closed form:
///   (n+gamma+2)_{n+1}/(n+1)! * prod(alpha i - delta) prod(alpha(gamma+j)+delta)
///   / (gamma+2)_{2n}.
inline Rational det_M2(long n, const HypergeomParams& params) {
  if (n < 0) throw std::domain_error("det_M2: n must be >= 0");
  if (!params.delta_nondegenerate())
    throw std::domain_error("det_M2: hypothesis delta not in alpha*N fails");
  if (!params.gamma_delta_nondegenerate())
    throw std::domain_error("det_M2: hypothesis -(alpha*gamma+delta) not in alpha*N fails");
  const Rational &a = params.alpha, &g = params.gamma, &d = params.delta;
  Rational r = pochhammer(Rational(n) + g + 2, n + 1) / Rational(factorial(n + 1));
  for (long i = 1; i <= n; ++i) r *= a * Rational(i) - d;
  for (long j = 1; j <= n; ++j) r *= a * (g + Rational(j)) + d;
  return r / pochhammer(g + 2, 2 * n);
}

/// Recomputes P_{n,0}P_{n+1,1} - P_{n+1,0}P_{n,1} symbolically; the result
/// must be the constant det_M2(n).
inline Poly det_M2_symbolic(long n, const HypergeomParams& params) {
  PadePair lo = pade_general(n, params);
  PadePair hi = pade_general(n + 1, params);
  return lo.P0 * hi.P1 - hi.P0 * lo.P1;
}

struct RecurrenceCoeffs {
  long n = 0;
  Rational A, B, C;
};

/// Lemma coefficients of A_n X_{n+1} - (z - B_n) X_n + C_n X_{n-1} = 0.
inline RecurrenceCoeffs rec_coeffs(long n, const HypergeomParams& params) {
  if (n < 1) throw std::domain_error("rec_coeffs: n must be >= 1");
  if (params.gamma < Rational(-1)) throw std::domain_error("rec_coeffs: gamma must be >= -1");
  const Rational &a = params.alpha, &g = params.gamma, &d = params.delta;
  Rational n_(n);
  auto safe_div = [](const Rational& num, const Rational& den) {
    if (den.is_zero()) throw std::domain_error("rec_coeffs: vanishing denominator");
    return num / den;
  };
  RecurrenceCoeffs rc;
  rc.n = n;
  rc.A = safe_div((n_ + g + 1) * (n_ + 1), (2 * n_ + g + 1) * (2 * n_ + g + 2));
  rc.B = safe_div(2 * a * n_ * n_ + 2 * a * n_ * (1 + g) + g * (a - d), (2 * n_ + g) * (2 * n_ + 2 + g));
  rc.C = safe_div((a * n_ - d) * (a * (g + n_) + d), (2 * n_ + g) * (2 * n_ + g + 1));
  return rc;
}

struct WeightReport {
  bool ok = true;
  std::string failed_check;  // "phi", "tail", "lambda"
  long failed_index = -1;
};

/// Checks (a) phi_f(t^k P_{n,0}(t)) = 0 for k < n, (b) the first n tail
/// coefficients of P0*f - P1 vanish and the polynomial part equals P1,
/// (c) tail coefficient n+1 equals lambda_{n,n}.
inline WeightReport verify_weight(const PadePair& pair, const HypergeomParams& params) {
  WeightReport rep;
  long n = pair.n;
  for (long k = 0; k + 1 <= n; ++k) {
    if (!phi_f(Poly::monomial(Rational(1), k) * pair.P0, params).is_zero())
      return {false, "phi", k};
  }
  LaurentTail tail = pair_tail(pair, params, n + 1);
  Poly poly_part = pair_polynomial_part(pair, params);
  if (!(poly_part == pair.P1)) {
    Poly diff = poly_part - pair.P1;
    long l = 0;
    while (diff[l].is_zero()) ++l;
    return {false, "poly_part", l};
  }
  for (long j = 1; j <= n; ++j)
    if (!tail.at(j).is_zero()) return {false, "tail", j};
  Rational lam_nn = remainder_coeffs(n, params, n)[0];
  if (!(tail.at(n + 1) == lam_nn)) return {false, "lambda", n + 1};
  return rep;
}

inline WeightReport verify_weight(long n, const HypergeomParams& params) {
  return verify_weight(pade_general(n, params), params);
}

}  // namespace irrmeter
