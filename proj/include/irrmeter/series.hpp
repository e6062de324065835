/// The coefficient functional phi_f, the Laurent coefficients of f, truncated
/// tails in 1/z, and the differential operators E and RD_n used as oracles.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "irrmeter/hypergeom.hpp"
#include "irrmeter/numtheory.hpp"
#include "irrmeter/polynomial.hpp"

namespace irrmeter {

/// phi_f(t^k) = prod_{i=1}^k (alpha*i - delta) / (gamma+2)_k, extended
/// lazily via the one-step ratio (alpha*(k+1)-delta)/(gamma+k+2).
class PhiSeries {
 public:
  explicit PhiSeries(const HypergeomParams& params) : p_(params) {
    p_.require_formal();
    c_.push_back(Rational(1));
  }

  const Rational& at(long k) {
    while (static_cast<long>(c_.size()) <= k) {
      long j = static_cast<long>(c_.size()) - 1;  // extend from index j to j+1
      Rational denom = p_.gamma + Rational(j + 2);
      c_.push_back(c_.back() * (p_.alpha * Rational(j + 1) - p_.delta) / denom);
    }
    return c_[k];
  }

  const HypergeomParams& params() const { return p_; }

 private:
  HypergeomParams p_;
  std::vector<Rational> c_;
};

/// Linear extension of phi_f over a polynomial in t.
inline Rational phi_f(const Poly& P, const HypergeomParams& params) {
  PhiSeries s(params);
  Rational r(0);
  for (long k = 0; k <= P.degree(); ++k)
    if (!P[k].is_zero()) r += P[k] * s.at(k);
  return r;
}

/// Coefficients of z^{-(k+1)} for k = 0..K, i.e. f_coeffs[k] = phi_f(t^k).
inline std::vector<Rational> f_coeffs(const HypergeomParams& params, long K) {
  if (K < 0) throw std::domain_error("f_coeffs: K must be >= 0");
  PhiSeries s(params);
  std::vector<Rational> out(K + 1);
  for (long k = 0; k <= K; ++k) out[k] = s.at(k);
  return out;
}

/// E(P) = P' + (gamma*t + delta)/(t(t-alpha)) * P, for P divisible by
/// t(t-alpha).  Stays in exact polynomial arithmetic.
inline Poly apply_E(const Poly& P, const HypergeomParams& params) {
  Poly core{Rational(0), -params.alpha, Rational(1)};  // t(t-alpha)
  Poly Q = P.divexact(core);
  Poly gt_d{params.delta, params.gamma};
  return P.derivative() + gt_d * Q;
}

/// RD_n(1) by iterating the factored first-order operators
/// RD_1 + k(2z - alpha), with RD_1(P) = aP' + (a' + b)P for
/// a = z(z-alpha), b = gamma*z + delta.
inline Poly rd_oracle(long n, const HypergeomParams& params) {
  if (n < 0) throw std::domain_error("rd_oracle: n must be >= 0");
  Poly a{Rational(0), -params.alpha, Rational(1)};
  Poly a1_plus_b = a.derivative() + Poly{params.delta, params.gamma};
  Poly two_z_minus_alpha{-params.alpha, Rational(2)};
  Poly P = Poly::constant(Rational(1));
  for (long k = n - 1; k >= 0; --k)
    P = a * P.derivative() + a1_plus_b * P + Rational(k) * (two_z_minus_alpha * P);
  return Rational(factorial(n)).inverse() * P;
}

/// Truncated tail sum_{j=1}^{L} c_j z^{-j}.
struct LaurentTail {
  long order = 0;               // L
  std::vector<Rational> coeffs;  // coeffs[j-1] = c_j

  static LaurentTail zero(long L) {
    LaurentTail t;
    t.order = L;
    t.coeffs.assign(L, Rational(0));
    return t;
  }

  const Rational& at(long j) const {
    static const Rational kZero(0);
    return (j < 1 || j > order) ? kZero : coeffs[j - 1];
  }

  LaurentTail truncated(long L) const {
    LaurentTail t = zero(L);
    for (long j = 1; j <= L && j <= order; ++j) t.coeffs[j - 1] = coeffs[j - 1];
    return t;
  }

  friend LaurentTail operator+(const LaurentTail& x, const LaurentTail& y) {
    LaurentTail t = zero(std::min(x.order, y.order));
    for (long j = 1; j <= t.order; ++j) t.coeffs[j - 1] = x.at(j) + y.at(j);
    return t;
  }

  friend LaurentTail operator*(const Rational& s, const LaurentTail& x) {
    LaurentTail t = x;
    for (auto& c : t.coeffs) c *= s;
    return t;
  }

  /// Multiplication by z drops the z^{-1} term into the polynomial part;
  /// only the tail (j >= 1) is kept, shortening the reliable order by one.
  LaurentTail times_z() const {
    LaurentTail t = zero(order - 1);
    for (long j = 1; j <= t.order; ++j) t.coeffs[j - 1] = at(j + 1);
    return t;
  }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
};

}  // namespace irrmeter
