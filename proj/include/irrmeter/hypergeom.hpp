/// Parameters (alpha, gamma, delta) of the Laurent series
///   f(z) = sum_k  prod_{i<=k}(alpha*i - delta) / (gamma+2)_k * z^{-(k+1)},
/// together with the three named specializations.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "irrmeter/rational.hpp"

namespace irrmeter {

enum class Preset { None, Binomial, ShiftedLog, ShiftedExp };

struct HypergeomParams {
  Rational alpha, gamma, delta;
  Preset preset = Preset::None;
  Rational preset_param;  // omega, x, or gamma depending on preset

  static HypergeomParams general(const Rational& a, const Rational& g, const Rational& d) {
    HypergeomParams p{a, g, d, Preset::None, Rational(0)};
    p.require_formal();
    return p;
  }

  /// (alpha,gamma,delta) = (1,-1,1+omega):  f(z) = (1/z)(1-1/z)^omega.
  static HypergeomParams binomial(const Rational& omega) {
    if (omega.is_integer()) throw std::invalid_argument("binomial preset: omega must not be an integer");
    return HypergeomParams{Rational(1), Rational(-1), Rational(1) + omega, Preset::Binomial, omega};
  }

  /// (alpha,gamma,delta) = (1,x,-x):  f(z) = (1+x)*Phi_1(x, 1/z).
  static HypergeomParams shifted_log(const Rational& x) {
    if (x.sign() < 0 || x >= Rational(1))
      throw std::invalid_argument("shifted_log preset: need 0 <= x < 1");
    return HypergeomParams{Rational(1), x, -x, Preset::ShiftedLog, x};
  }

  /// (alpha,gamma,delta) = (0,gamma,-1):  f(z) = exp_gamma(1/z).
  static HypergeomParams shifted_exp(const Rational& g) {
    HypergeomParams p{Rational(0), g, Rational(-1), Preset::ShiftedExp, g};
    p.require_formal();
    return p;
  }

  /// gamma not in {-2, -3, ...}; keeps (gamma+2)_k nonzero.
  bool formal_ok() const { return !(gamma.is_integer() && gamma <= Rational(-2)); }

  void require_formal() const {
    if (!formal_ok())
      throw std::domain_error("HypergeomParams: gamma must avoid {-2,-3,...}");
  }

  /// Membership of q in alpha*N, N = {1,2,3,...}.  For alpha = 0 this set is {0}.
  static bool in_alpha_N(const Rational& q, const Rational& alpha) {
    if (alpha.is_zero()) return q.is_zero();
    Rational k = q / alpha;
    return k.is_positive_integer();
  }

  bool delta_nondegenerate() const { return !in_alpha_N(delta, alpha); }
  bool gamma_delta_nondegenerate() const { return !in_alpha_N(-(alpha * gamma + delta), alpha); }

  std::string describe() const {
    switch (preset) {
      case Preset::Binomial: return "binomial(omega=" + preset_param.str() + ")";
      case Preset::ShiftedLog: return "shifted_log(x=" + preset_param.str() + ")";
      case Preset::ShiftedExp: return "shifted_exp(gamma=" + preset_param.str() + ")";
      default:
        return "general(alpha=" + alpha.str() + ",gamma=" + gamma.str() + ",delta=" + delta.str() + ")";
    }
  }
};

}  // namespace irrmeter
