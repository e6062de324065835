/// Irrationality-measure reports: Delta, Q, E and mu = 1 + log Q / log E as
/// outward intervals, with every hypothesis checked and logged, plus series
/// evaluation of f(beta) with certified tails, effective constants, and the
/// p-adic remainder bound over Q.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irrmeter/numtheory.hpp"
#include "irrmeter/pade.hpp"
#include "irrmeter/quadratic.hpp"
#include "irrmeter/recurrence.hpp"

namespace irrmeter {

/// Delta kept in exact factored parts: scalar * radical * e^{exp_arg} *
/// extra, where extra (window mode only) is a non-certified interval factor.
struct DeltaParts {
  Rational scalar{1};
  FactoredRadical radical;
  Rational exp_arg{0};
  std::optional<Interval> extra;

  bool algebraic() const { return exp_arg.is_zero() && !extra.has_value(); }

  Interval to_interval(mpfr_prec_t prec) const {
    Interval v = Interval::of(scalar, prec) * radical.hull(prec);
    if (!exp_arg.is_zero()) v = v * Interval::exp_of(exp_arg, prec);
    if (extra) v = v * *extra;
    return v;
  }
};

struct Hypothesis {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct MeasureReport {
  std::string route;  // "main", "log", "binomial", "exp"
  std::string inputs;
  Regime regime = Regime::General;
  std::vector<Hypothesis> hypotheses;
  std::optional<DeltaParts> delta_parts;
  std::optional<Interval> delta, Q, E, mu;
  bool conclusive = false;   // all hypotheses passed, E > 1
  bool certified = true;     // false for the window heuristic
  bool mu_exact = false;     // alpha = 0 route: mu = 2 exactly
  std::vector<std::string> warnings;

  bool all_passed() const {
    for (const auto& h : hypotheses)
      if (!h.passed) return false;
    return true;
  }
};

namespace detail {

/// Decides rho * Delta < 1 (equivalently E = (rho*Delta)^{-1} > 1).  Exact
/// via exponent clearing when Delta is algebraic, else interval refinement.
inline Tribool rho_delta_below_one(const QuadraticNumber& rho, const DeltaParts& delta,
                                   mpfr_prec_t cap = 1 << 14) {
  if (delta.algebraic()) {
    Integer L = delta.radical.exponent_lcm();
    if (!L.fits_ulong_p()) throw std::domain_error("rho_delta_below_one: exponent lcm too large");
    unsigned long l = L.get_ui();
    Rational rad_pow = delta.radical.pow_rational(L);
    QuadraticNumber lhs = Rational(delta.scalar.pow(l) * rad_pow) * rho.pow(l);
    return cmp(lhs, QuadraticNumber(Rational(1))) < 0 ? Tribool::True : Tribool::False;
  }
  return refine_decision(
      [&](mpfr_prec_t p) {
        Interval v = rho.to_interval(p) * delta.to_interval(p);
        return v.lt(Rational(1));
      },
      128, cap);
}

/// Assembles Delta, Q, E intervals and, when E > 1 holds definitely at some
/// precision, mu = 1 + log Q / log E.
inline void fill_intervals(MeasureReport& rep, const CharRoots& roots, const DeltaParts& delta,
                           mpfr_prec_t prec) {
  const mpfr_prec_t cap = mpfr_prec_t(1) << 14;
  for (mpfr_prec_t p = prec;; p *= 2) {
    Interval d = delta.to_interval(p);
    Interval q = roots.rho2.to_interval(p) * d;
    Interval e = Interval::of(1, p) / (roots.rho1.to_interval(p) * d);
    Tribool above = e.gt(Rational(1));
    if (above == Tribool::Indeterminate && p <= cap) continue;
    rep.delta = d;
    rep.Q = q;
    rep.E = e;
    if (above == Tribool::True) rep.mu = Interval::of(1, p) + q.log() / e.log();
    return;
  }
}

inline void push(MeasureReport& rep, const std::string& name, bool ok, const std::string& detail = "") {
  rep.hypotheses.push_back({name, ok, detail});
}

inline Rational exp_arg_of(const Rational& y) {
  Integer d = y.den();
  return Rational(d) / Rational(totient(d));
}

}  // namespace detail

/// Theorem route for general alpha: Delta = den(alpha) den(beta)
/// exp(den(gamma)/phi(den(gamma))) nu(gamma) nu(delta/alpha);
/// Q = rho2 Delta, E = (rho1 Delta)^{-1}.  alpha = 0 delegates to mu_exp.
inline MeasureReport mu_exp(const Rational& gamma, const Rational& beta);

inline MeasureReport mu_main(const HypergeomParams& params, const Rational& beta,
                             mpfr_prec_t prec = 128) {
  if (params.alpha.is_zero()) {
    // Theorem's alpha = 0 branch: irrational with exponent exactly 2.  The
    // nondegeneracy hypotheses collapse to delta != 0.
    MeasureReport rep = mu_exp(params.gamma, beta);
    rep.route = "main";
    rep.inputs = params.describe() + ", beta=" + beta.str();
    detail::push(rep, "delta_nondegenerate", params.delta_nondegenerate(),
                 "delta not in alpha*N = {0}");
    if (!rep.all_passed()) {
      rep.conclusive = false;
      rep.mu.reset();
      rep.mu_exact = false;
    }
    return rep;
  }
  MeasureReport rep;
  rep.route = "main";
  rep.regime = Regime::General;
  rep.inputs = params.describe() + ", beta=" + beta.str();
  detail::push(rep, "beta_dominates", beta.abs() > params.alpha.abs(),
               "|beta| > |alpha| required");
  detail::push(rep, "gamma_range", params.gamma >= Rational(-1), "gamma >= -1");
  detail::push(rep, "delta_nondegenerate", params.delta_nondegenerate(), "delta not in alpha*N");
  detail::push(rep, "gamma_delta_nondegenerate", params.gamma_delta_nondegenerate(),
               "-(alpha*gamma+delta) not in alpha*N");
  if (!rep.all_passed()) return rep;

  DeltaParts delta;
  delta.scalar = Rational(Integer(params.alpha.den() * beta.den()));
  delta.exp_arg = detail::exp_arg_of(params.gamma);
  delta.radical = nu(params.gamma);
  delta.radical *= nu(params.delta / params.alpha);
  rep.delta_parts = delta;

  CharRoots roots = char_roots(params.alpha, beta);
  Tribool egt1 = detail::rho_delta_below_one(roots.rho1, delta);
  detail::push(rep, "E_above_one", egt1 == Tribool::True,
               egt1 == Tribool::Indeterminate ? "indeterminate at precision cap" : "");
  detail::fill_intervals(rep, roots, delta, prec);
  if (egt1 != Tribool::True) {
    rep.mu.reset();
    rep.warnings.push_back("E <= 1: no conclusion");
    return rep;
  }
  rep.conclusive = true;
  return rep;
}

/// Corollary route for Phi_1(x, 1/beta): Delta = den(beta)
/// exp(den(x)/phi(den(x))) nu(x); Q = rho2 Delta, E = rho2 / Delta.
inline MeasureReport mu_log(const Rational& x, const Rational& beta, mpfr_prec_t prec = 128) {
  MeasureReport rep;
  rep.route = "log";
  rep.regime = Regime::ShiftedLog;
  rep.inputs = "x=" + x.str() + ", beta=" + beta.str();
  detail::push(rep, "x_range", x.sign() >= 0 && x < Rational(1), "0 <= x < 1");
  detail::push(rep, "beta_dominates", beta.abs() > Rational(1), "|beta| > 1");
  if (!rep.all_passed()) return rep;

  DeltaParts delta;
  delta.scalar = Rational(beta.den());
  delta.exp_arg = detail::exp_arg_of(x);
  delta.radical = nu(x);
  rep.delta_parts = delta;

  CharRoots roots = char_roots(Rational(1), beta);
  Tribool egt1 = detail::rho_delta_below_one(roots.rho1, delta);
  detail::push(rep, "E_above_one", egt1 == Tribool::True,
               egt1 == Tribool::Indeterminate ? "indeterminate at precision cap" : "");
  detail::fill_intervals(rep, roots, delta, prec);
  if (egt1 != Tribool::True) {
    rep.mu.reset();
    rep.warnings.push_back("E <= 1: no conclusion");
    return rep;
  }
  rep.conclusive = true;
  return rep;
}

enum class DeltaMode { Simple, Bennett, Window };

/// Corollary route for (1-1/beta)^omega.  Delta by mode: simple
/// nu(omega)den(beta); bennett (3 sqrt 3 / 2) den(beta), only |omega| = 1/3;
/// window nu(omega) den(beta) max_{n0<=n<=n1} G_n^{-1/n} (heuristic proxy
/// for the limsup, not certified).
inline MeasureReport mu_binomial(const Rational& omega, const Rational& beta, DeltaMode mode,
                                 mpfr_prec_t prec = 128, long window_lo = 4, long window_hi = 40) {
  MeasureReport rep;
  rep.route = "binomial";
  rep.regime = Regime::Binomial;
  rep.inputs = "omega=" + omega.str() + ", beta=" + beta.str();
  detail::push(rep, "omega_not_integer", !omega.is_integer(), "omega must not be an integer");
  detail::push(rep, "beta_dominates", beta.abs() > Rational(1), "|beta| > 1");
  if (mode == DeltaMode::Bennett) {
    bool third = omega.abs() == Rational(1, 3);
    detail::push(rep, "bennett_applicability", third, "Bennett Delta bound requires |omega| = 1/3");
  }
  if (!rep.all_passed()) return rep;

  DeltaParts delta;
  switch (mode) {
    case DeltaMode::Simple:
      delta.scalar = Rational(beta.den());
      delta.radical = nu(omega);
      break;
    case DeltaMode::Bennett:
      delta.scalar = Rational(beta.den(), 2);
      delta.radical = nu(omega);  // |omega| = 1/3: nu = 3 sqrt 3
      break;
    case DeltaMode::Window: {
      delta.scalar = Rational(beta.den());
      delta.radical = nu(omega);
      if (window_lo < 1 || window_hi < window_lo)
        throw std::domain_error("mu_binomial: bad window");
      // outward max over the window of G_n^{-1/n}
      Interval mx = Interval::of(0, prec);
      for (long n = window_lo; n <= window_hi; ++n) {
        Interval g = Interval::of(Gn(omega, n), prec);
        Interval v = (Interval::of(Rational(-1, n), prec) * g.log()).exp();
        mx = Interval::hull_max(mx, v);
      }
      delta.extra = mx;
      rep.certified = false;
      rep.warnings.push_back("window mode: max G_n^{-1/n} over a finite window is a heuristic "
                             "proxy for the limsup; bound not certified");
      break;
    }
  }
  rep.delta_parts = delta;

  CharRoots roots = char_roots(Rational(1), beta);
  Tribool egt1 = detail::rho_delta_below_one(roots.rho1, delta);
  detail::push(rep, "E_above_one", egt1 == Tribool::True,
               egt1 == Tribool::Indeterminate ? "indeterminate at precision cap" : "");
  detail::fill_intervals(rep, roots, delta, prec);
  if (egt1 != Tribool::True) {
    rep.mu.reset();
    rep.warnings.push_back("E <= 1: no conclusion");
    return rep;
  }
  rep.conclusive = true;
  return rep;
}

/// alpha = 0 route: exp_gamma(1/beta) is irrational with exponent exactly 2.
/// kappa_n carries n! and the remainder decays like |delta^2/beta|^n/(2n)!,
/// which forces log Q_n / log E_n -> 1.
inline MeasureReport mu_exp(const Rational& gamma, const Rational& beta) {
  MeasureReport rep;
  rep.route = "exp";
  rep.regime = Regime::AlphaZero;
  rep.inputs = "gamma=" + gamma.str() + ", beta=" + beta.str();
  detail::push(rep, "gamma_range", gamma >= Rational(-1), "gamma >= -1");
  detail::push(rep, "beta_nonzero", !beta.is_zero(), "beta != 0");
  if (!rep.all_passed()) return rep;
  rep.mu = Interval::span(Rational(2), Rational(2), 64);
  rep.mu_exact = true;
  rep.conclusive = true;
  return rep;
}

/// f(beta) by the series with a certified geometric tail bound: once
/// |term ratio| <= r < 1 uniformly beyond K, the tail is at most
/// |t_K| r/(1-r).
inline Interval evaluate_f(const HypergeomParams& params, const Rational& beta,
                           mpfr_prec_t prec = 128, long iter_cap = 200000) {
  if (!(beta.abs() > params.alpha.abs()))
    throw std::domain_error("evaluate_f: need |beta| > |alpha|");
  if (params.gamma < Rational(-1)) throw std::domain_error("evaluate_f: need gamma >= -1");
  const Rational aa = params.alpha.abs(), dd = params.delta.abs(), bb = beta.abs();
  auto ratio_bound = [&](long K) {  // valid for every k >= K
    Rational r = (aa + dd / Rational(K + 1)) / bb;
    Rational lim = aa / bb;
    return r > lim ? r : lim;
  };
  long K = 8;
  while (!(ratio_bound(K) < Rational(1))) {
    K *= 2;
    if (K > iter_cap) throw std::runtime_error("evaluate_f: no geometric tail within iteration cap");
  }
  PhiSeries phi(params);
  Rational target = Rational(1, 2).pow(static_cast<long>(prec) + 4);
  Rational inv_beta = beta.inverse();
  for (;;) {
    Rational sum(0), pw = inv_beta;
    for (long k = 0; k <= K; ++k) {
      sum += phi.at(k) * pw;
      pw *= inv_beta;
    }
    // |t_K| = |phi.at(K)| / |beta|^{K+1}
    Rational tK = phi.at(K).abs() * bb.inverse().pow(K + 1);
    Rational r = ratio_bound(K);
    Rational tail = tK * r / (Rational(1) - r);
    Rational scale = sum.abs() + 1;
    if (tail <= target * scale)
      return Interval::span(sum - tail, sum + tail, prec);
    K *= 2;
    if (K > iter_cap) throw std::runtime_error("evaluate_f: requested precision unreachable");
  }
}

/// R_n(beta) = sum_{k>=n} lambda_{n,k} beta^{-(k+1)} with the same certified
/// tail treatment; free of the catastrophic cancellation of P0 f - P1.
inline Interval remainder_value(long n, const HypergeomParams& params, const Rational& beta,
                                mpfr_prec_t prec = 128, long iter_cap = 200000) {
  if (!(beta.abs() > params.alpha.abs()))
    throw std::domain_error("remainder_value: need |beta| > |alpha|");
  const Rational aa = params.alpha.abs(), dd = params.delta.abs(), bb = beta.abs();
  auto ratio_bound = [&](long K) {
    // (k+1)/(k+1-n) * (|alpha|(k+1)+|delta|)/(gamma+n+k+2) / |beta|, k >= K
    Rational c1 = Rational(1) + Rational(n) / Rational(K + 1 - n);
    Rational c2 = aa + dd / Rational(K + n + 1);
    Rational r = c1 * c2 / bb;
    Rational lim = aa / bb;
    return r > lim ? r : lim;
  };
  long K = 2 * n + 8;
  while (!(ratio_bound(K) < Rational(1))) {
    K *= 2;
    if (K > iter_cap) throw std::runtime_error("remainder_value: no geometric tail within cap");
  }
  Rational target = Rational(1, 2).pow(static_cast<long>(prec) + 4);
  for (;;) {
    auto lam = remainder_coeffs(n, params, K);
    Rational sum(0), pw = beta.inverse().pow(n + 1);
    for (long k = n; k <= K; ++k) {
      sum += lam[k - n] * pw;
      pw = pw / beta;
    }
    Rational tK = lam[K - n].abs() * bb.inverse().pow(K + 1);
    Rational r = ratio_bound(K);
    Rational tail = tK * r / (Rational(1) - r);
    // tail target relative to the leading term, not the (tiny) sum
    Rational scale = sum.abs() + lam[0].abs() * bb.inverse().pow(n + 1) + target;
    if (tail <= target * scale) return Interval::span(sum - tail, sum + tail, prec);
    K *= 2;
    if (K > iter_cap) throw std::runtime_error("remainder_value: requested precision unreachable");
  }
}

struct EffectiveConstants {
  Interval lambda_exp;  // log(q_base)/log(e_base)
  Interval c;           // 2 a q_base (2b)^lambda
  Rational y0_floor;    // validity floor 2 b y0 >= 1
};

/// Effective constants of the geometric criterion: Q_n = a q_base^n,
/// E_n = b^{-1} e_base^n give |y0 theta - y| >= 1/(c y0^lambda) for
/// 2 b y0 >= 1.
inline EffectiveConstants effective_constants(const Rational& a, const Rational& b,
                                              const Rational& q_base, const Rational& e_base,
                                              mpfr_prec_t prec = 128) {
  if (!(q_base > Rational(1)) || !(e_base > Rational(1)))
    throw std::domain_error("effective_constants: growth bases must be > 1");
  if (a.sign() <= 0 || b.sign() <= 0)
    throw std::domain_error("effective_constants: a, b must be positive");
  Interval lam = Interval::of(q_base, prec).log() / Interval::of(e_base, prec).log();
  Interval c = Interval::of(2 * a * q_base, prec) * Interval::of(2 * b, prec).pow(lam);
  return {lam, c, Rational(1) / (2 * b)};
}

struct PadicBound {
  Integer p;
  Rational exponent;  // bound = p^{exponent}
};

inline long delta_p(const Rational& omega, const Integer& p) {
  return mpz_divisible_p(omega.den().get_mpz_t(), p.get_mpz_t()) ? 1 : 0;
}

/// Lemma bound over Q: |kappa_n R_n(beta)|_p <= (p^{2p delta_p/(p-1)}
/// |den(beta)/beta|_p)^n, under |beta|_p > 1 (p not dividing den(omega)) or
/// |beta|_p > p^{p/(p-1)} (p dividing den(omega)).
inline PadicBound padic_remainder_bound(const Rational& omega, const Rational& beta,
                                        const Integer& p, long n) {
  if (omega.is_integer()) throw std::domain_error("padic_remainder_bound: omega must not be integer");
  if (beta.is_zero()) throw std::domain_error("padic_remainder_bound: beta must be nonzero");
  if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
    throw std::domain_error("padic_remainder_bound: p must be prime");
  long dp = delta_p(omega, p);
  long vbeta = valuation(beta, p);
  // condition (18)
  if (dp == 0) {
    if (!(vbeta < 0))
      throw std::domain_error("padic_remainder_bound: condition fails, need |beta|_p > 1");
  } else {
    // -v_p(beta) > p/(p-1)
    if (!(Rational(-vbeta) > Rational(p) / Rational(Integer(p - 1))))
      throw std::domain_error("padic_remainder_bound: condition fails, need |beta|_p > p^{p/(p-1)}");
  }
  long vden = beta.den() == 1 ? 0 : valuation(Rational(beta.den()), p);
  // log_p of the bound: n * (2p delta_p/(p-1) - v_p(den beta) + v_p(beta))
  Rational e = Rational(n) * (Rational(2 * dp) * Rational(p) / Rational(Integer(p - 1)) -
                              Rational(vden) + Rational(vbeta));
  return {p, e};
}

/// Companion verifier: upper-bounds |kappa_n R_n(beta)|_p by truncated
/// summation of kappa_n lambda_{n,k} beta^{-(k+1)} plus the tail valuation
/// bound v_p(lambda_{n,k}) >= -(n+k)(v_p(den omega) + 1/(p-1)); returns the
/// log_p of the verified upper bound.
inline Rational padic_remainder_observed(const Rational& omega, const Rational& beta,
                                         const Integer& p, long n, long extra = 64) {
  HypergeomParams params = HypergeomParams::binomial(omega);
  auto prof = kappa_n(params, beta, n, Regime::Binomial);
  long K = n + extra;
  auto lam = remainder_coeffs(n, params, K);
  Rational min_v;  // minimal valuation seen, as a rational for uniformity
  bool first = true;
  for (long k = n; k <= K; ++k) {
    Rational term = prof.kappa * lam[k - n] * beta.inverse().pow(k + 1);
    if (term.is_zero()) continue;
    Rational v(valuation(term, p));
    if (first || v < min_v) {
      min_v = v;
      first = false;
    }
  }
  if (first) return Rational(0);  // zero sum
  // every factor of (-omega)_k and (1+omega)_n has p-valuation exactly -w
  long w = omega.den() == 1 ? 0 : valuation(Rational(omega.den()), p);
  long vbeta = valuation(beta, p);
  Rational lam_slope = Rational(w) + Rational(1) / Rational(Integer(p - 1));
  Rational slope = Rational(-vbeta) - lam_slope;
  if (!(slope > Rational(0)))
    throw std::runtime_error("padic_remainder_observed: tail valuations do not increase");
  // tail bound at its minimum k = K+1
  Rational vkappa(valuation(prof.kappa, p));
  Rational vtail = vkappa - Rational(n + K + 1) * lam_slope - Rational(K + 2) * Rational(vbeta);
  Rational vmin = vtail < min_v ? vtail : min_v;
  return -vmin;  // |sum|_p <= p^{-vmin}
}

}  // namespace irrmeter
