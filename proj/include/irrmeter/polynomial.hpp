/// Dense polynomials over the rationals.  Coefficient i is the coefficient
/// of x^i; trailing zeros are trimmed and the zero polynomial has degree -1.
#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "irrmeter/rational.hpp"

namespace irrmeter {

class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim_(); }
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim_(); }

  static Poly constant(const Rational& a) { return Poly({a}); }
  static Poly x() { return Poly({Rational(0), Rational(1)}); }
  /// a*x^k
  static Poly monomial(const Rational& a, long k) {
    std::vector<Rational> c(k + 1);
    c[k] = a;
    return Poly(std::move(c));
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }

  const Rational& operator[](long i) const {
    static const Rational kZero(0);
    return (i < 0 || i >= static_cast<long>(c_.size())) ? kZero : c_[i];
  }

  Rational leading() const {
    if (is_zero()) throw std::domain_error("Poly: leading coefficient of zero polynomial");
    return c_.back();
  }

  const std::vector<Rational>& coeffs() const { return c_; }

  void set_coeff(long i, const Rational& a) {
    if (i >= static_cast<long>(c_.size())) c_.resize(i + 1);
    c_[i] = a;
    trim_();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a) {
    std::vector<Rational> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.c_[i];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Rational& s, const Poly& a) {
    if (s.is_zero()) return Poly();
    std::vector<Rational> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.c_[i];
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rational(static_cast<long>(i)) * c_[i];
    return Poly(std::move(c));
  }

  Rational eval(const Rational& x) const {
    Rational r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  /// Multiply by x^k.
  Poly shifted(long k) const {
    if (is_zero()) return Poly();
    std::vector<Rational> c(c_.size() + k);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
    return Poly(std::move(c));
  }

  /// Polynomial long division; returns {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly r = *this;
    std::vector<Rational> q;
    long dd = d.degree();
    if (r.degree() >= dd) q.resize(r.degree() - dd + 1);
    while (!r.is_zero() && r.degree() >= dd) {
      long k = r.degree() - dd;
      Rational f = r.leading() / d.leading();
      q[k] = f;
      r = r - (f * d.shifted(k));
    }
    return {Poly(std::move(q)), r};
  }

  /// Exact division; throws if the remainder is nonzero.
  Poly divexact(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("Poly: division is not exact");
    return q;
  }

  std::string str(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += c_[i].sign() > 0 ? " + " : " - ";
      else if (c_[i].sign() < 0) s += "-";
      Rational a = c_[i].abs();
      if (i == 0 || !(a == Rational(1))) s += a.str();
      if (i > 0) {
        if (!(a == Rational(1))) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim_() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Monic gcd over Q, by the Euclidean algorithm.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.leading().inverse() * a;
}

}  // namespace irrmeter
