#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "irrmeter/pade.hpp"

using namespace irrmeter;

namespace {

const std::vector<HypergeomParams> kPresets = {
    HypergeomParams::binomial(Rational(1, 3)),
    HypergeomParams::shifted_log(Rational(1, 2)),
    HypergeomParams::shifted_exp(Rational(-1)),
};

// Test-only second oracle: solve for P0 from the orthogonality conditions
// phi_f(t^k P0) = 0, k < n, plus the known leading coefficient, by Gaussian
// elimination; P1 is the polynomial part of P0*f.
PadePair pade_by_linear_solve(long n, const HypergeomParams& params) {
  PhiSeries phi(params);
  // unknowns p_0..p_n; equations: sum_j p_j phi(t^{k+j}) = 0 (k=0..n-1),
  // p_n = (n+gamma+1)_n/n!
  long m = n + 1;
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m + 1));
  for (long k = 0; k + 1 <= n; ++k)
    for (long j = 0; j <= n; ++j) M[k][j] = phi.at(k + j);
  M[n][n] = Rational(1);
  M[n][m] = pochhammer(Rational(n) + params.gamma + 1, n) / Rational(factorial(n));
  // Gaussian elimination with partial (first nonzero) pivoting
  for (long col = 0, row = 0; col < m && row < m; ++col) {
    long piv = -1;
    for (long r = row; r < m; ++r)
      if (!M[r][col].is_zero()) { piv = r; break; }
    REQUIRE(piv >= 0);
    std::swap(M[row], M[piv]);
    Rational inv = M[row][col].inverse();
    for (long c = col; c <= m; ++c) M[row][c] *= inv;
    for (long r = 0; r < m; ++r) {
      if (r == row || M[r][col].is_zero()) continue;
      Rational f = M[r][col];
      for (long c = col; c <= m; ++c) M[r][c] -= f * M[row][c];
    }
    ++row;
  }
  std::vector<Rational> p0(m);
  for (long j = 0; j <= n; ++j) p0[j] = M[j][m];
  PadePair pair{n, Poly(std::move(p0)), Poly()};
  pair.P1 = pair_polynomial_part(pair, params);
  return pair;
}

}  // namespace

TEST_CASE("pade_general small cases") {
  auto binom = HypergeomParams::binomial(Rational(1, 3));
  auto p0 = pade_general(0, binom);
  CHECK(p0.P0 == Poly::constant(Rational(1)));
  CHECK(p0.P1.is_zero());

  Rational om(1, 3);
  auto p1 = pade_general(1, binom);
  CHECK(p1.P0 == Poly{om, Rational(1)});
  CHECK(p1.P1 == Poly::constant(Rational(1)));

  auto slog0 = HypergeomParams::shifted_log(Rational(0));
  auto q1 = pade_general(1, slog0);
  CHECK(q1.P0 == Poly{Rational(-1), Rational(2)});
  CHECK(q1.P1 == Poly::constant(Rational(2)));
}

TEST_CASE("pade_binomial explicit coefficients") {
  Rational om(1, 3);
  auto p1 = pade_binomial(1, om);
  CHECK(p1.P0 == Poly{om, Rational(1)});
  CHECK(p1.P1 == Poly::constant(Rational(1)));

  auto p2 = pade_binomial(2, om);
  CHECK(p2.P0 == Poly{Rational(-1, 9), Rational(-4, 3), Rational(3)});
  CHECK(p2.P1 == Poly{Rational(-7, 3), Rational(3)});

  CHECK_THROWS_AS(pade_binomial(2, Rational(2)), std::domain_error);
}

TEST_CASE("specialization equality: pade_binomial == pade_general") {
  for (const Rational& om : {Rational(1, 3), Rational(1, 2), Rational(2, 5), Rational(-1, 3)}) {
    auto params = HypergeomParams::binomial(om);
    for (long n = 1; n <= 30; ++n) {
      auto a = pade_binomial(n, om);
      auto b = pade_general(n, params);
      CHECK(a.P0 == b.P0);
      CHECK(a.P1 == b.P1);
    }
  }
}

TEST_CASE("oracle equality: rd_oracle matches pade_general P0") {
  for (const auto& params : kPresets)
    for (long n = 0; n <= 15; ++n)
      CHECK(rd_oracle(n, params) == pade_general(n, params).P0);
}

TEST_CASE("linear-solve oracle agrees for n <= 8") {
  for (const auto& params : kPresets) {
    for (long n = 0; n <= 8; ++n) {
      auto direct = pade_general(n, params);
      auto solved = pade_by_linear_solve(n, params);
      CHECK(direct.P0 == solved.P0);
      CHECK(direct.P1 == solved.P1);
    }
  }
}

TEST_CASE("leading coefficient of P0 is (n+gamma+1)_n/n!") {
  for (const auto& params : kPresets)
    for (long n = 0; n <= 12; ++n) {
      auto pair = pade_general(n, params);
      REQUIRE(pair.P0.degree() == n);
      CHECK(pair.P0.leading() ==
            pochhammer(Rational(n) + params.gamma + 1, n) / Rational(factorial(n)));
    }
}

TEST_CASE("remainder coefficients") {
  auto binom = HypergeomParams::binomial(Rational(1, 3));
  CHECK(remainder_coeffs(1, binom, 1)[0] == Rational(-2, 9));

  auto sexp = HypergeomParams::shifted_exp(Rational(-1));
  CHECK(remainder_coeffs(1, sexp, 1)[0] == Rational(-1, 2));

  // delta = alpha: the factor (alpha*1 - delta) kills every lambda_{n,k}, n >= 1
  auto degen = HypergeomParams::general(Rational(1), Rational(0), Rational(1));
  for (long n = 1; n <= 3; ++n)
    for (const auto& lam : remainder_coeffs(n, degen, n + 6)) CHECK(lam.is_zero());
}

TEST_CASE("remainder coefficients match tail of P0*f - P1") {
  for (const auto& params : kPresets) {
    for (long n = 0; n <= 10; ++n) {
      auto pair = pade_general(n, params);
      long K = n + 8;
      LaurentTail tail = pair_tail(pair, params, K + 1);
      auto lam = remainder_coeffs(n, params, K);
      for (long j = 1; j <= n; ++j) CHECK(tail.at(j).is_zero());
      for (long k = n; k <= K; ++k) CHECK(tail.at(k + 1) == lam[k - n]);
    }
  }
}

TEST_CASE("det_M2 closed form examples") {
  auto binom = HypergeomParams::binomial(Rational(1, 3));
  CHECK(det_M2(1, binom) == Rational(-2, 3));
  CHECK(det_M2(0, binom) == Rational(1));
  CHECK(det_M2(1, HypergeomParams::shifted_log(Rational(0))) == Rational(1));
  // nondegeneracy violated: delta = 2 in alpha*N for alpha = 1
  auto bad = HypergeomParams::general(Rational(1), Rational(0), Rational(2));
  CHECK_THROWS_AS(det_M2(1, bad), std::domain_error);
}

TEST_CASE("determinant law: symbolic equals closed form, nonzero") {
  for (const auto& params : kPresets) {
    for (long n = 0; n <= 30; ++n) {
      Poly sym = det_M2_symbolic(n, params);
      Rational closed = det_M2(n, params);
      CHECK(sym.degree() <= 0);
      CHECK(sym[0] == closed);
      CHECK(!closed.is_zero());
    }
  }
}

TEST_CASE("rec_coeffs explicit values") {
  auto binom = HypergeomParams::binomial(Rational(1, 3));
  auto rc = rec_coeffs(1, binom);
  CHECK(rc.A == Rational(1, 3));
  CHECK(rc.B == Rational(7, 9));
  CHECK(rc.C == Rational(-2, 9));

  auto sexp = HypergeomParams::shifted_exp(Rational(-1));
  auto rs = rec_coeffs(1, sexp);
  CHECK(rs.A == Rational(1, 3));
  CHECK(rs.B == Rational(-1, 3));
  CHECK(rs.C == Rational(-1, 2));

  CHECK_THROWS_AS(rec_coeffs(0, binom), std::domain_error);
}

TEST_CASE("recurrence identity on polynomials and remainder tails") {
  Poly z = Poly::x();
  for (const auto& params : kPresets) {
    std::vector<PadePair> pairs;
    for (long n = 0; n <= 31; ++n) pairs.push_back(pade_general(n, params));
    for (long n = 1; n <= 30; ++n) {
      auto rc = rec_coeffs(n, params);
      Poly zero0 = rc.A * pairs[n + 1].P0 - (z - Poly::constant(rc.B)) * pairs[n].P0 +
                   rc.C * pairs[n - 1].P0;
      Poly zero1 = rc.A * pairs[n + 1].P1 - (z - Poly::constant(rc.B)) * pairs[n].P1 +
                   rc.C * pairs[n - 1].P1;
      CHECK(zero0.is_zero());
      CHECK(zero1.is_zero());
    }
    // same combination on the remainder tails vanishes to the tested order
    long K = 40;
    for (long n = 1; n <= 8; ++n) {
      auto rc = rec_coeffs(n, params);
      LaurentTail tm = pair_tail(pairs[n - 1], params, K);
      LaurentTail t0 = pair_tail(pairs[n], params, K);
      LaurentTail tp = pair_tail(pairs[n + 1], params, K);
      LaurentTail combo =
          rc.A * tp + Rational(-1) * t0.times_z() + rc.B * t0 + rc.C * tm;
      CHECK(combo.is_zero());
    }
  }
}

TEST_CASE("verify_weight") {
  for (const auto& params : kPresets)
    for (long n = 1; n <= 10; ++n) CHECK(verify_weight(n, params).ok);

  // injected fault: P1 perturbed by +1 must be flagged
  auto binom = HypergeomParams::binomial(Rational(1, 3));
  auto pair = pade_general(3, binom);
  pair.P1 = pair.P1 + Poly::constant(Rational(1));
  auto rep = verify_weight(pair, binom);
  CHECK(!rep.ok);
  CHECK(rep.failed_check == "poly_part");
  CHECK(rep.failed_index == 0);
}

TEST_CASE("integrality: kappa_n clears P_{n,i}(beta) over the regime grid") {
  struct Fixture {
    HypergeomParams params;
    Rational beta;
    Regime regime;
  };
  std::vector<Fixture> grid = {
      {HypergeomParams::binomial(Rational(1, 3)), Rational(9), Regime::Binomial},
      {HypergeomParams::binomial(Rational(1, 2)), Rational(-7, 2), Regime::Binomial},
      {HypergeomParams::binomial(Rational(2, 5)), Rational(12, 5), Regime::Binomial},
      {HypergeomParams::shifted_log(Rational(0)), Rational(9), Regime::ShiftedLog},
      {HypergeomParams::shifted_log(Rational(1, 2)), Rational(5, 3), Regime::ShiftedLog},
      {HypergeomParams::shifted_log(Rational(2, 3)), Rational(-4), Regime::ShiftedLog},
      {HypergeomParams::shifted_exp(Rational(-1)), Rational(3, 2), Regime::AlphaZero},
      {HypergeomParams::shifted_exp(Rational(1, 2)), Rational(-5), Regime::AlphaZero},
      {HypergeomParams::general(Rational(0), Rational(1, 3), Rational(2, 3)), Rational(7, 6), Regime::AlphaZero},
      {HypergeomParams::general(Rational(1), Rational(1, 2), Rational(1, 3)), Rational(11, 2), Regime::General},
      {HypergeomParams::general(Rational(1, 2), Rational(0), Rational(1, 5)), Rational(4, 3), Regime::General},
      {HypergeomParams::general(Rational(2), Rational(1, 3), Rational(-2, 3)), Rational(-13, 3), Regime::General},
      {HypergeomParams::general(Rational(-1, 2), Rational(1), Rational(1, 6)), Rational(9, 5), Regime::General},
  };
  for (const auto& fx : grid) {
    for (long n = 0; n <= 30; n += 3) {
      auto prof = kappa_n(fx.params, fx.beta, n, fx.regime);
      auto pair = pade_general(n, fx.params);
      CHECK((prof.kappa * pair.P0.eval(fx.beta)).is_integer());
      CHECK((prof.kappa * pair.P1.eval(fx.beta)).is_integer());
    }
  }
}
