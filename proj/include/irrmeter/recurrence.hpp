/// Effective Poincare-Perron machinery for the order-2 recurrence
/// A_n X_{n+1} - (z - B_n) X_n + C_n X_{n-1} = 0 evaluated at z = beta:
/// exact threshold scan, index tracking, ratio asymptotics with the 1/(2n)
/// correction, certified prefix growth bounds, and the u_j mode
/// decomposition (exact for order 2, high precision for higher orders).
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrmeter/interval.hpp"
#include "irrmeter/pade.hpp"
#include "irrmeter/polynomial.hpp"
#include "irrmeter/quadratic.hpp"

namespace irrmeter {

/// Rational function of n, kept reduced.
struct RationalFn {
  Poly num, den;

  RationalFn() : num(), den(Poly::constant(Rational(1))) {}
  RationalFn(Poly n_, Poly d_) : num(std::move(n_)), den(std::move(d_)) {
    if (den.is_zero()) throw std::domain_error("RationalFn: zero denominator");
    reduce_();
  }
  static RationalFn constant(const Rational& c) {
    return RationalFn(Poly::constant(c), Poly::constant(Rational(1)));
  }

  bool is_zero() const { return num.is_zero(); }
  bool vanishes_at_infinity() const { return num.is_zero() || num.degree() < den.degree(); }

  Rational eval(const Rational& x) const {
    Rational d = den.eval(x);
    if (d.is_zero()) throw std::domain_error("RationalFn: pole at " + x.str());
    return num.eval(x) / d;
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.num, a.den * b.den);
  }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.num.is_zero()) throw std::domain_error("RationalFn: division by zero function");
    return RationalFn(a.num * b.den, a.den * b.num);
  }

 private:
  void reduce_() {
    Poly g = poly_gcd(num, den);
    if (g.degree() >= 1) {
      num = num.divexact(g);
      den = den.divexact(g);
    }
    if (!den.is_zero() && den.leading().sign() < 0) {
      num = Rational(-1) * num;
      den = Rational(-1) * den;
    }
  }
};

/// 1 + max |c_i / c_deg|: every real root lies strictly inside this bound.
inline Rational cauchy_root_bound(const Poly& p) {
  if (p.degree() <= 0) return Rational(0);
  Rational m(0);
  for (long i = 0; i < p.degree(); ++i) {
    Rational q = (p[i] / p.leading()).abs();
    if (q > m) m = q;
  }
  return m + 1;
}

/// Integer M such that on [M, infinity) the function has no poles and |r| is
/// monotone non-increasing (r is monotone past all critical points and tends
/// to its limit).
inline long monotone_threshold(const RationalFn& r) {
  if (r.num.is_zero()) return 1;
  Rational m = cauchy_root_bound(r.den);
  Rational b = cauchy_root_bound(r.num);
  if (b > m) m = b;
  Poly w = r.num.derivative() * r.den - r.num * r.den.derivative();
  Rational c = cauchy_root_bound(w);
  if (c > m) m = c;
  Integer M = (m + 1).floor() + 1;
  if (!M.fits_slong_p()) throw std::domain_error("monotone_threshold: bound too large");
  return std::max(1L, M.get_si());
}

/// Order-2 Poincare-type recurrence X_{n+1} + a(n) X_n + b(n) X_{n-1} = 0
/// (n >= 1) with constant characteristic part X^2 + a1 X + a0 and
/// perturbations eps1 = a1 - a(n), eps0 = a0 - b(n) vanishing at infinity.
struct RecurrenceSpec {
  RationalFn a_fn, b_fn;
  Rational a1, a0;
  RationalFn eps1, eps0;
  CharRoots roots;

  RecurrenceSpec(RationalFn a, RationalFn b, const Rational& a1_, const Rational& a0_,
                 CharRoots roots_)
      : a_fn(std::move(a)), b_fn(std::move(b)), a1(a1_), a0(a0_),
        eps1(RationalFn::constant(a1) - a_fn), eps0(RationalFn::constant(a0) - b_fn),
        roots(std::move(roots_)) {
    if (!eps1.vanishes_at_infinity() || !eps0.vanishes_at_infinity())
      throw std::domain_error("RecurrenceSpec: perturbations do not vanish at infinity");
  }
};

/// Builds the spec for the Lemma recurrence at z = beta.
inline RecurrenceSpec make_recurrence_spec(const HypergeomParams& params, const Rational& beta) {
  const Rational &a = params.alpha, &g = params.gamma;
  const Rational& d = params.delta;
  Poly n = Poly::x();
  auto lin = [](const Rational& c0, const Rational& c1) { return Poly{c0, c1}; };
  // A_n, B_n, C_n as rational functions of n
  RationalFn A(lin(g + 1, Rational(1)) * lin(Rational(1), Rational(1)),
               lin(g + 1, Rational(2)) * lin(g + 2, Rational(2)));
  RationalFn B(Poly{g * (a - d), 2 * a * (Rational(1) + g), 2 * a},
               lin(g, Rational(2)) * lin(g + 2, Rational(2)));
  RationalFn C(lin(-d, a) * (Rational(a) * lin(g, Rational(1)) + RationalFn::constant(d).num),
               lin(g, Rational(2)) * lin(g + 1, Rational(2)));
  RationalFn a_fn = (B - RationalFn::constant(beta)) / A;
  RationalFn b_fn = C / A;
  CharRoots roots = char_roots(a, beta);
  Rational a1 = -(2 * (2 * beta - a));  // -(lambda1 + lambda2)
  Rational a0 = a * a;                  // lambda1 * lambda2
  return RecurrenceSpec(std::move(a_fn), std::move(b_fn), a1, a0, std::move(roots));
}

struct SolutionTrace {
  Rational beta;
  std::vector<Rational> values;  // X_0 .. X_nmax
  bool has_consecutive_zeros = false;
};

/// Exact forward iteration of the Lemma recurrence at z = beta.
inline SolutionTrace evaluate_solution(const HypergeomParams& params, const Rational& beta,
                                       const Rational& X0, const Rational& X1, long nmax) {
  if (nmax < 1) throw std::domain_error("evaluate_solution: nmax must be >= 1");
  SolutionTrace tr;
  tr.beta = beta;
  tr.values.reserve(nmax + 1);
  tr.values.push_back(X0);
  tr.values.push_back(X1);
  for (long n = 1; n + 1 <= nmax; ++n) {
    auto rc = rec_coeffs(n, params);
    if (rc.A.is_zero()) throw std::domain_error("evaluate_solution: A_n = 0");
    Rational next = ((beta - rc.B) * tr.values[n] - rc.C * tr.values[n - 1]) / rc.A;
    tr.values.push_back(next);
    if (tr.values[n].is_zero() && next.is_zero()) tr.has_consecutive_zeros = true;
  }
  return tr;
}

/// Largest index i in {1,2} minimizing |X_{n+1} - lambda_i X_n|, decided in
/// exact quadratic arithmetic.
inline int min_residual_index(const Rational& Xn, const Rational& Xn1, const CharRoots& roots) {
  QuadraticNumber r1 = (QuadraticNumber(Xn1) - roots.lambda1 * QuadraticNumber(Xn)).abs();
  QuadraticNumber r2 = (QuadraticNumber(Xn1) - roots.lambda2 * QuadraticNumber(Xn)).abs();
  return cmp(r2, r1) <= 0 ? 2 : 1;  // ties go to the larger index
}

struct IndexReport {
  long N = 1;        // exact-scan threshold
  long N2 = 1;       // first index from which i_n is stable
  int i = 2;         // limit index
  bool monotone = true;
  std::vector<int> i_seq;  // i_N .. i_{nmax-1}
};

/// Smallest N such that for all n >= N
///   (2/|l2-l1|) (2|b_n - l1 l2| + (rho1+rho2)|a_n + l1 + l2|) <= rho2 - rho1,
/// certified by the monotonicity threshold of the perturbations, then the
/// index sequence of the trace.
inline IndexReport poincare_threshold(const RecurrenceSpec& spec, const SolutionTrace& trace,
                                      long scan_cap = 1000000) {
  const CharRoots& R = spec.roots;
  QuadraticNumber gap = (R.lambda2 - R.lambda1).abs();
  QuadraticNumber rho_sum = R.rho1 + R.rho2;
  QuadraticNumber rho_gap = R.rho2 - R.rho1;
  if (rho_gap.sign() <= 0) throw std::domain_error("poincare_threshold: need rho1 < rho2");

  auto holds = [&](long n) {
    Rational e0 = spec.eps0.eval(Rational(n)).abs();
    Rational e1 = spec.eps1.eval(Rational(n)).abs();
    QuadraticNumber lhs =
        Rational(2) * ((QuadraticNumber(2 * e0) + Rational(e1) * rho_sum) / gap);
    return cmp(lhs, rho_gap) <= 0;
  };

  long M = std::max(monotone_threshold(spec.eps0), monotone_threshold(spec.eps1));
  long N = 1;
  for (long n = 1; n <= M; ++n)
    if (!holds(n)) N = n + 1;
  if (N > M) {
    // keep scanning past the monotone point until the inequality first holds
    while (N <= scan_cap && !holds(N)) ++N;
    if (N > scan_cap)
      throw std::runtime_error("poincare_threshold: scan cap exceeded; coefficients converge too slowly");
  }

  IndexReport rep;
  rep.N = N;
  long last = static_cast<long>(trace.values.size()) - 2;
  if (last < N) throw std::domain_error("poincare_threshold: trace too short for N");
  rep.i_seq.reserve(last - N + 1);
  int prev = 0;
  long stable_from = N;
  for (long n = N; n <= last; ++n) {
    int idx = min_residual_index(trace.values[n], trace.values[n + 1], R);
    if (!rep.i_seq.empty() && idx < prev) rep.monotone = false;
    if (rep.i_seq.empty() || idx != prev) stable_from = n;
    rep.i_seq.push_back(idx);
    prev = idx;
  }
  rep.i = prev;
  rep.N2 = stable_from;
  return rep;
}

struct RatioReport {
  long lo = 0, hi = 0;
  double sup_n2_residual = 0;  // certified upper bound on sup n^2 * r_n
  double max_residual = 0;     // certified upper bound on max r_n over window
};

/// Residual r_n = |X_{n+1}/X_n - lambda_i (1 - 1/(2n))| over a window,
/// reported through sup n^2 r_n (outward).
inline RatioReport ratio_estimate(const std::vector<Rational>& values, const QuadraticNumber& lambda_i,
                                  long lo, long hi, mpfr_prec_t prec = 192) {
  if (lo < 1 || hi + 1 >= static_cast<long>(values.size()) || lo > hi)
    throw std::domain_error("ratio_estimate: window out of range");
  Interval lam = lambda_i.to_interval(prec);
  RatioReport rep;
  rep.lo = lo;
  rep.hi = hi;
  for (long n = lo; n <= hi; ++n) {
    if (values[n].is_zero()) throw std::domain_error("ratio_estimate: zero entry in window");
    Rational q = values[n + 1] / values[n];
    Interval corr = Interval::of(Rational(1) - Rational(1, 2 * n), prec);
    Interval resid = (Interval::of(q, prec) - lam * corr).abs();
    Interval n2r = Interval::of(Rational(n * n), prec) * resid;
    double up = mpfr_get_d(n2r.hi(), MPFR_RNDU);
    if (up > rep.sup_n2_residual) rep.sup_n2_residual = up;
    double ru = mpfr_get_d(resid.hi(), MPFR_RNDU);
    if (ru > rep.max_residual) rep.max_residual = ru;
  }
  return rep;
}

/// C = max over the computed prefix of |X_n| sqrt(n) / rho_i^n, outward, so
/// |X_n| <= C rho_i^n / sqrt(n) holds for 1 <= n < values.size() (certified
/// on the prefix only; beyond it the bound is the theorem's asymptotic).
inline double growth_bound(const std::vector<Rational>& values, const QuadraticNumber& rho_i,
                           mpfr_prec_t prec = 192) {
  Interval rho = rho_i.to_interval(prec);
  if (!rho.is_positive()) throw std::domain_error("growth_bound: rho must be positive");
  Interval pw = Interval::of(1, prec);
  double best = 0;
  for (long n = 1; n < static_cast<long>(values.size()); ++n) {
    pw = pw * rho;
    if (values[n].is_zero()) continue;
    Interval c = Interval::of(values[n], prec).abs() * Interval::of(Rational(n), prec).sqrt() / pw;
    double up = mpfr_get_d(c.hi(), MPFR_RNDU);
    if (up > best) best = up;
  }
  return best;
}

/// Exact order-2 mode decomposition:
///   u1(n) = (g(n+1) - lambda2 g(n)) / (lambda1 - lambda2),
///   u2(n) = (g(n+1) - lambda1 g(n)) / (lambda2 - lambda1),
/// so that u1 + u2 = g(n) and lambda1 u1 + lambda2 u2 = g(n+1).
inline std::pair<QuadraticNumber, QuadraticNumber> u_decompose2(const Rational& gn,
                                                                const Rational& gn1,
                                                                const CharRoots& roots) {
  QuadraticNumber gap = roots.lambda2 - roots.lambda1;
  if (gap.is_zero()) throw std::domain_error("u_decompose2: repeated roots");
  QuadraticNumber u1 = (roots.lambda2 * QuadraticNumber(gn) - QuadraticNumber(gn1)) / gap;
  QuadraticNumber u2 = (QuadraticNumber(gn1) - roots.lambda1 * QuadraticNumber(gn)) / gap;
  return {u1, u2};
}

// ---- general order k: high-precision roots and modes -----------------------

/// Midpoint complex arithmetic on MPFR, used by the order-k decomposition.
class MpComplex {
 public:
  explicit MpComplex(mpfr_prec_t prec = 256) : prec_(prec) {
    mpfr_init2(re_, prec);
    mpfr_init2(im_, prec);
    mpfr_set_zero(re_, 1);
    mpfr_set_zero(im_, 1);
  }
  MpComplex(double re, double im, mpfr_prec_t prec) : MpComplex(prec) {
    mpfr_set_d(re_, re, MPFR_RNDN);
    mpfr_set_d(im_, im, MPFR_RNDN);
  }
  MpComplex(const Rational& re, mpfr_prec_t prec) : MpComplex(prec) {
    mpfr_set_q(re_, re.raw().get_mpq_t(), MPFR_RNDN);
  }
  MpComplex(const MpComplex& o) : MpComplex(o.prec_) {
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
  }
  MpComplex& operator=(const MpComplex& o) {
    mpfr_set_prec(re_, o.prec_);
    mpfr_set_prec(im_, o.prec_);
    prec_ = o.prec_;
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
    return *this;
  }
  ~MpComplex() {
    mpfr_clear(re_);
    mpfr_clear(im_);
  }

  mpfr_srcptr re() const { return re_; }
  mpfr_srcptr im() const { return im_; }
  double re_d() const { return mpfr_get_d(re_, MPFR_RNDN); }
  double im_d() const { return mpfr_get_d(im_, MPFR_RNDN); }

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
    MpComplex r(std::max(a.prec_, b.prec_));
    mpfr_add(r.re_, a.re_, b.re_, MPFR_RNDN);
    mpfr_add(r.im_, a.im_, b.im_, MPFR_RNDN);
    return r;
  }
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
    MpComplex r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.re_, a.re_, b.re_, MPFR_RNDN);
    mpfr_sub(r.im_, a.im_, b.im_, MPFR_RNDN);
    return r;
  }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    MpComplex r(std::max(a.prec_, b.prec_));
    mpfr_t t1, t2;
    mpfr_init2(t1, r.prec_);
    mpfr_init2(t2, r.prec_);
    mpfr_mul(t1, a.re_, b.re_, MPFR_RNDN);
    mpfr_mul(t2, a.im_, b.im_, MPFR_RNDN);
    mpfr_sub(r.re_, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re_, b.im_, MPFR_RNDN);
    mpfr_mul(t2, a.im_, b.re_, MPFR_RNDN);
    mpfr_add(r.im_, t1, t2, MPFR_RNDN);
    mpfr_clear(t1);
    mpfr_clear(t2);
    return r;
  }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    MpComplex r(std::max(a.prec_, b.prec_));
    mpfr_t n2, t1, t2;
    mpfr_init2(n2, r.prec_);
    mpfr_init2(t1, r.prec_);
    mpfr_init2(t2, r.prec_);
    mpfr_mul(t1, b.re_, b.re_, MPFR_RNDN);
    mpfr_mul(t2, b.im_, b.im_, MPFR_RNDN);
    mpfr_add(n2, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re_, b.re_, MPFR_RNDN);
    mpfr_mul(t2, a.im_, b.im_, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_div(r.re_, t1, n2, MPFR_RNDN);
    mpfr_mul(t1, a.im_, b.re_, MPFR_RNDN);
    mpfr_mul(t2, a.re_, b.im_, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_div(r.im_, t1, n2, MPFR_RNDN);
    mpfr_clear(n2);
    mpfr_clear(t1);
    mpfr_clear(t2);
    return r;
  }
  double abs_d() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_hypot(t, re_, im_, MPFR_RNDU);
    double v = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return v;
  }

 private:
  mpfr_prec_t prec_;
  mpfr_t re_, im_;
};

/// Roots of the monic polynomial X^k + a_{k-1}X^{k-1} + ... + a_0 by
/// Durand-Kerner iteration (the char-poly/companion eigenvalues), sorted by
/// increasing modulus; residual_bound reports max |P(root)| over the roots.
struct CharRootsK {
  std::vector<MpComplex> roots;
  double residual_bound = 0;
};

inline CharRootsK char_roots_k(const std::vector<Rational>& coeffs, mpfr_prec_t prec = 256) {
  long k = static_cast<long>(coeffs.size());
  if (k < 1) throw std::domain_error("char_roots_k: need order >= 1");
  auto eval = [&](const MpComplex& z) {
    MpComplex r(1.0, 0.0, prec);
    for (long i = k - 1; i >= 0; --i) r = r * z + MpComplex(coeffs[i], prec);
    return r;
  };
  double scale = 1;
  for (const auto& c : coeffs) {
    Interval ci = Interval::of(c, 64).abs();
    scale = std::max(scale, mpfr_get_d(ci.hi(), MPFR_RNDU));
  }
  scale += 1;
  std::vector<MpComplex> z;
  MpComplex seed(0.4, 0.9, prec);
  MpComplex cur(scale * 0.5, 0.0, prec);
  for (long j = 0; j < k; ++j) {
    cur = cur * seed;
    z.push_back(cur);
  }
  for (int iter = 0; iter < 500; ++iter) {
    double move = 0;
    for (long j = 0; j < k; ++j) {
      MpComplex denom(1.0, 0.0, prec);
      for (long l = 0; l < k; ++l)
        if (l != j) denom = denom * (z[j] - z[l]);
      MpComplex delta = eval(z[j]) / denom;
      z[j] = z[j] - delta;
      move = std::max(move, delta.abs_d());
    }
    if (move < 1e-70) break;
  }
  std::sort(z.begin(), z.end(),
            [](const MpComplex& a, const MpComplex& b) { return a.abs_d() < b.abs_d(); });
  CharRootsK out;
  out.roots = std::move(z);
  for (const auto& r : out.roots) out.residual_bound = std::max(out.residual_bound, eval(r).abs_d());
  return out;
}

/// u_j(n) = (Q_j(tau) g)(n) / P'(lambda_j) for j = 1..k, where
/// P(X) = (X - lambda_j) Q_j(X); g supplies g(n), ..., g(n+k-1).
inline std::vector<MpComplex> u_decompose_k(const std::vector<Rational>& char_coeffs,
                                            const std::vector<Rational>& g_window,
                                            mpfr_prec_t prec = 256) {
  long k = static_cast<long>(char_coeffs.size());
  if (static_cast<long>(g_window.size()) != k)
    throw std::domain_error("u_decompose_k: need exactly k consecutive values");
  CharRootsK cr = char_roots_k(char_coeffs, prec);
  // distinct moduli required
  for (long j = 0; j + 1 < k; ++j) {
    double a = cr.roots[j].abs_d(), b = cr.roots[j + 1].abs_d();
    if (b - a <= 1e-12 * (1 + b))
      throw std::domain_error("u_decompose_k: root moduli not well separated");
  }
  std::vector<MpComplex> u;
  for (long j = 0; j < k; ++j) {
    // synthetic division of the monic char poly by (X - lambda_j)
    std::vector<MpComplex> q(k, MpComplex(prec));
    q[k - 1] = MpComplex(1.0, 0.0, prec);
    for (long i = k - 2; i >= 0; --i)
      q[i] = MpComplex(char_coeffs[i + 1], prec) + cr.roots[j] * q[i + 1];
    MpComplex acc(prec);
    for (long l = 0; l < k; ++l) acc = acc + q[l] * MpComplex(g_window[l], prec);
    MpComplex dp(1.0, 0.0, prec);  // P'(lambda_j) = prod_{l != j} (lambda_j - lambda_l)
    for (long l = 0; l < k; ++l)
      if (l != j) dp = dp * (cr.roots[j] - cr.roots[l]);
    u.push_back(acc / dp);
  }
  return u;
}

}  // namespace irrmeter
