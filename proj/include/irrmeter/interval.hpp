/// Outward-rounded interval arithmetic on MPFR.  Every operation rounds the
/// lower endpoint toward -inf and the upper endpoint toward +inf, so a result
/// interval always contains the exact value of the operation applied to any
/// points of the operand intervals.
#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "irrmeter/rational.hpp"

namespace irrmeter {

enum class Tribool { False, True, Indeterminate };

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }

  Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  Interval& operator=(Interval o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }

  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval of(const Rational& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval of(long n, mpfr_prec_t prec) { return of(Rational(n), prec); }

  static Interval of(const Integer& n, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  static Interval span(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    Interval r(prec);
    mpfr_set_q(r.lo_, lo.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.raw().get_mpq_t(), MPFR_RNDU);
    return r;
  }

  mpfr_prec_t prec() const { return prec_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  bool contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.raw().get_mpq_t()) >= 0;
  }
  bool contains(const Interval& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
  }
  bool is_positive() const { return mpfr_sgn(lo_) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_) < 0; }

  Tribool gt(const Rational& q) const {
    if (mpfr_cmp_q(lo_, q.raw().get_mpq_t()) > 0) return Tribool::True;
    if (mpfr_cmp_q(hi_, q.raw().get_mpq_t()) <= 0) return Tribool::False;
    return Tribool::Indeterminate;
  }
  Tribool lt(const Rational& q) const {
    if (mpfr_cmp_q(hi_, q.raw().get_mpq_t()) < 0) return Tribool::True;
    if (mpfr_cmp_q(lo_, q.raw().get_mpq_t()) >= 0) return Tribool::False;
    return Tribool::Indeterminate;
  }
  /// a <= b certainly (upper of a <= lower of b).
  Tribool le(const Interval& o) const {
    if (mpfr_cmp(hi_, o.lo_) <= 0) return Tribool::True;
    if (mpfr_cmp(lo_, o.hi_) > 0) return Tribool::False;
    return Tribool::Indeterminate;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a) {
    Interval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    // lower endpoint: min of the four products rounded down
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // upper endpoint: max of the four products rounded up
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
      throw std::domain_error("Interval: division by interval containing zero");
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  /// Enclosure of max(a, b): [max lo, max hi].
  static Interval hull_max(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  Interval abs() const {
    Interval r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
    mpfr_set_zero(r.lo_, 1);
    return r;
  }

  Interval sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("Interval: sqrt of negative interval");
    Interval r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  Interval log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Interval: log requires positive interval");
    Interval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  Interval exp() const {
    Interval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  /// x^e for positive x via exp(e*log x).
  Interval pow(const Interval& e) const { return (log() * e).exp(); }

  Interval pow(const Rational& e, mpfr_prec_t prec) const {
    return pow(Interval::of(e, prec));
  }

  /// Exact exp of a rational argument, outward.
  static Interval exp_of(const Rational& x, mpfr_prec_t prec) {
    return Interval::of(x, prec).exp();
  }

  double width() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    double w = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return w;
  }

  double mid_d() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_add(t, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(t, t, 2, MPFR_RNDN);
    double m = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return m;
  }

  std::string lo_str(int digits = 0) const { return fmt_(lo_, MPFR_RNDD, digits); }
  std::string hi_str(int digits = 0) const { return fmt_(hi_, MPFR_RNDU, digits); }

 private:
  std::string fmt_(mpfr_srcptr x, mpfr_rnd_t rnd, int digits) const {
    if (digits <= 0) digits = static_cast<int>(prec_ * 0.302) + 2;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*R*e", digits, rnd, x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

/// Refines a predicate on intervals by doubling the working precision until
/// the verdict is definite or the cap is reached.
inline Tribool refine_decision(const std::function<Tribool(mpfr_prec_t)>& probe,
                               mpfr_prec_t start = 128, mpfr_prec_t cap = 1 << 16) {
  for (mpfr_prec_t p = start; p <= cap; p *= 2) {
    Tribool t = probe(p);
    if (t != Tribool::Indeterminate) return t;
  }
  return Tribool::Indeterminate;
}

}  // namespace irrmeter
