/// Exact arithmetic in real quadratic extensions: values a + b*sqrt(d) with
/// rational a, b and rational d >= 0.  Comparisons and sign determination are
/// exact; perfect-square radicands collapse to rationals.
#pragma once

#include <stdexcept>
#include <string>

#include "irrmeter/interval.hpp"
#include "irrmeter/rational.hpp"

namespace irrmeter {

class QuadraticNumber {
 public:
  QuadraticNumber() : a_(0), b_(0), d_(0) {}
  QuadraticNumber(const Rational& a) : a_(a), b_(0), d_(0) {}
  QuadraticNumber(const Rational& a, const Rational& b, const Rational& d) : a_(a), b_(b), d_(d) {
    if (d_.sign() < 0) throw std::domain_error("QuadraticNumber: negative radicand");
    normalize_();
  }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_coeff() const { return b_; }
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }

  Rational as_rational() const {
    if (!is_rational()) throw std::domain_error("QuadraticNumber: value is irrational");
    return a_;
  }

  static bool same_field(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.is_rational() || y.is_rational() || x.d_ == y.d_;
  }

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    Rational d = merge_field_(x, y);
    return QuadraticNumber(x.a_ + y.a_, x.b_ + y.b_, d);
  }

  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
    Rational d = merge_field_(x, y);
    return QuadraticNumber(x.a_ - y.a_, x.b_ - y.b_, d);
  }

  friend QuadraticNumber operator-(const QuadraticNumber& x) {
    return QuadraticNumber(-x.a_, -x.b_, x.d_);
  }

  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
    Rational d = merge_field_(x, y);
    return QuadraticNumber(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }

  friend QuadraticNumber operator*(const Rational& s, const QuadraticNumber& x) {
    return QuadraticNumber(s * x.a_, s * x.b_, x.d_);
  }

  QuadraticNumber inverse() const {
    Rational nrm = a_ * a_ - b_ * b_ * d_;  // (a+b sqrt d)(a-b sqrt d)
    if (nrm.is_zero()) {
      if (a_.is_zero() && b_.is_zero()) throw std::domain_error("QuadraticNumber: inverse of zero");
      throw std::logic_error("QuadraticNumber: zero norm for nonzero value");  // d a perfect square is collapsed
    }
    return QuadraticNumber(a_ / nrm, -b_ / nrm, d_);
  }

  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
    Rational d = merge_field_(x, y);
    QuadraticNumber yy(y.a_, y.b_, d);
    return x * yy.inverse();
  }

  QuadraticNumber pow(unsigned long e) const {
    QuadraticNumber r{Rational(1)};
    QuadraticNumber base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// Exact sign of a + b*sqrt(d).
  int sign() const {
    if (b_.is_zero()) return a_.sign();
    if (a_.is_zero()) return b_.sign();
    if (a_.sign() == b_.sign()) return a_.sign();
    // opposite signs: compare a^2 with b^2 d
    Rational diff = a_ * a_ - b_ * b_ * d_;
    int c = diff.sign();
    if (c == 0) return 0;  // cannot happen after collapse, kept for safety
    return c > 0 ? a_.sign() : b_.sign();
  }

  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }

  /// Exact three-way comparison; works across different radicands.
  friend int cmp(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (same_field(x, y)) {
      Rational d = merge_field_(x, y);
      return QuadraticNumber(x.a_ - y.a_, x.b_ - y.b_, d).sign();
    }
    return sign_of_two_radical_sum_(x.a_ - y.a_, x.b_, x.d_, -y.b_, y.d_);
  }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) { return cmp(x, y) == 0; }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return cmp(x, y) < 0; }
  friend bool operator<=(const QuadraticNumber& x, const QuadraticNumber& y) { return cmp(x, y) <= 0; }
  friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return cmp(x, y) > 0; }
  friend bool operator>=(const QuadraticNumber& x, const QuadraticNumber& y) { return cmp(x, y) >= 0; }

  Interval to_interval(mpfr_prec_t prec) const {
    Interval r = Interval::of(a_, prec);
    if (!b_.is_zero())
      r = r + Interval::of(b_, prec) * Interval::of(d_, prec).sqrt();
    return r;
  }

  std::string str() const {
    if (is_rational()) return a_.str();
    return a_.str() + " + " + b_.str() + "*sqrt(" + d_.str() + ")";
  }

 private:
  // Collapse perfect-square radicands and zero coefficients.
  void normalize_() {
    if (b_.is_zero() || d_.is_zero()) {
      if (!b_.is_zero()) a_ += b_ * Rational(0);  // sqrt(0) = 0
      b_ = Rational(0);
      d_ = Rational(0);
      return;
    }
    Integer num = d_.num(), den = d_.den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
      Integer sn, sd;
      mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
      a_ += b_ * Rational(sn, sd);
      b_ = Rational(0);
      d_ = Rational(0);
    }
  }

  static Rational merge_field_(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (x.is_rational()) return y.d_;
    if (y.is_rational()) return x.d_;
    if (!(x.d_ == y.d_))
      throw std::domain_error("QuadraticNumber: mixed radicands " + x.d_.str() + " vs " + y.d_.str());
    return x.d_;
  }

  /// Sign of A + B*sqrt(d1) + C*sqrt(d2) with d1, d2 > 0 non-square radicands
  /// (B, C both nonzero here).  If d1*d2 is a rational square the radicals
  /// span the same field and the sum collapses to a single quadratic number;
  /// otherwise 1, sqrt(d1), sqrt(d2) are linearly independent over Q, the
  /// value is nonzero, and adaptive interval refinement terminates.
  static int sign_of_two_radical_sum_(const Rational& A, const Rational& B, const Rational& d1,
                                      const Rational& C, const Rational& d2) {
    Rational prod = d1 * d2;
    Integer num = prod.num(), den = prod.den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
      Integer sn, sd;
      mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
      Rational s(sn, sd);  // sqrt(d1*d2), so sqrt(d2) = (s/d1) * sqrt(d1)
      return QuadraticNumber(A, B + C * s / d1, d1).sign();
    }
    for (mpfr_prec_t p = 128;; p *= 2) {
      Interval v = Interval::of(A, p) + Interval::of(B, p) * Interval::of(d1, p).sqrt() +
                   Interval::of(C, p) * Interval::of(d2, p).sqrt();
      if (v.is_positive()) return 1;
      if (v.is_negative()) return -1;
      if (p > (1 << 22)) throw std::logic_error("QuadraticNumber: sign refinement exhausted");
    }
  }

  Rational a_, b_, d_;
};

/// Characteristic data of X^2 - 2(2*beta - alpha) X + alpha^2: exact roots
/// lambda = (2*beta - alpha) +/- 2*sqrt(beta^2 - alpha*beta) and their moduli
/// rho1 <= rho2.  Requires |beta| > |alpha|.
struct CharRoots {
  QuadraticNumber lambda1, lambda2;  // |lambda1| <= |lambda2|
  QuadraticNumber rho1, rho2;
  Rational disc;  // d = beta^2 - alpha*beta
};

inline CharRoots char_roots(const Rational& alpha, const Rational& beta) {
  if (!(beta.abs() > alpha.abs()))
    throw std::domain_error("char_roots: need |beta| > |alpha|");
  Rational d = beta * beta - alpha * beta;
  Rational r = 2 * beta - alpha;
  QuadraticNumber plus(r, Rational(2), d), minus(r, Rational(-2), d);
  CharRoots out;
  out.disc = d;
  if (r.sign() >= 0) {
    out.lambda1 = minus;
    out.lambda2 = plus;
  } else {
    out.lambda1 = plus;
    out.lambda2 = minus;
  }
  out.rho1 = out.lambda1.abs();
  out.rho2 = out.lambda2.abs();
  return out;
}

}  // namespace irrmeter
