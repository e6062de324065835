/// Arbitrary-precision rational numbers backed by GMP, always kept in
/// canonical form (coprime numerator/denominator, denominator > 0).
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace irrmeter {

using Integer = mpz_class;

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) { canonicalize_(); }
  Rational(const Integer& num, const Integer& den) : v_(num, den) { canonicalize_(); }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  const mpq_class& raw() const { return v_; }
  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_positive_integer() const { return is_integer() && sgn(v_) > 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(Integer(v_.get_den()), Integer(v_.get_num()));
  }

  /// Integer power; negative exponents invert.
  Rational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    Rational r;
    r.v_ = mpq_class(n, d);
    return r;
  }

  Integer floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }

  std::string str() const { return v_.get_str(); }

  /// Parses "p", "p/q" or "a^k/b" (e.g. "467^3/5", "-8^3").  The sign
  /// applies to the whole expression.
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = (s[i] == '-');
      ++i;
    }
    auto read_uint = [&](const char* what) {
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == start) throw std::invalid_argument(std::string("Rational: expected ") + what + " in '" + s + "'");
      return Integer(s.substr(start, i - start));
    };
    Integer base = read_uint("integer");
    Integer num = base;
    if (i < s.size() && s[i] == '^') {
      ++i;
      Integer e = read_uint("exponent");
      if (!e.fits_ulong_p()) throw std::invalid_argument("Rational: exponent too large");
      mpz_pow_ui(num.get_mpz_t(), base.get_mpz_t(), e.get_ui());
    }
    Integer den = 1;
    if (i < s.size() && s[i] == '/') {
      ++i;
      den = read_uint("denominator");
      if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    }
    if (i != s.size()) throw std::invalid_argument("Rational: trailing characters in '" + s + "'");
    if (neg) num = -num;
    return Rational(num, den);
  }

 private:
  void canonicalize_() {
    if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }

  mpq_class v_;
};

inline Rational abs(const Rational& q) { return q.abs(); }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer m;
  mpz_lcm(m.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return m;
}

inline Integer pow_ui(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// p-adic valuation of a nonzero rational.
inline long valuation(const Rational& q, const Integer& p) {
  if (q.is_zero()) throw std::domain_error("valuation: zero argument");
  auto count = [&](Integer n) {
    long v = 0;
    Integer r, qt;
    for (;;) {
      mpz_fdiv_qr(qt.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
      if (r != 0) break;
      n = qt;
      ++v;
    }
    return v;
  };
  Integer n = q.num();
  if (n < 0) n = -n;
  return count(n) - count(q.den());
}

}  // namespace irrmeter
