#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "irrmeter/measure.hpp"
#include "irrmeter/recurrence.hpp"

using namespace irrmeter;

namespace {

SolutionTrace p0_trace(const HypergeomParams& params, const Rational& beta, long nmax) {
  auto p1 = pade_general(1, params);
  return evaluate_solution(params, beta, Rational(1), p1.P0.eval(beta), nmax);
}

}  // namespace

TEST_CASE("RationalFn reduction and evaluation") {
  // (n^2-1)/(n-1) reduces to n+1
  RationalFn r(Poly{Rational(-1), Rational(0), Rational(1)}, Poly{Rational(-1), Rational(1)});
  CHECK(r.num == Poly{Rational(1), Rational(1)});
  CHECK(r.den == Poly::constant(Rational(1)));
  CHECK(r.eval(Rational(5)) == Rational(6));
  CHECK(!r.vanishes_at_infinity());
  RationalFn v(Poly::constant(Rational(3)), Poly{Rational(0), Rational(1)});
  CHECK(v.vanishes_at_infinity());
}

TEST_CASE("monotone_threshold covers critical points") {
  // n/(n^2+1) peaks at n = 1; threshold must be past it
  RationalFn r(Poly{Rational(0), Rational(1)}, Poly{Rational(1), Rational(0), Rational(1)});
  long M = monotone_threshold(r);
  CHECK(M >= 2);
  // decreasing beyond M
  Rational prev = r.eval(Rational(M)).abs();
  for (long n = M + 1; n <= M + 12; ++n) {
    Rational cur = r.eval(Rational(n)).abs();
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("recurrence spec from params has vanishing perturbations") {
  auto params = HypergeomParams::binomial(Rational(1, 3));
  auto spec = make_recurrence_spec(params, Rational(9));
  CHECK(spec.eps0.vanishes_at_infinity());
  CHECK(spec.eps1.vanishes_at_infinity());
  // a(n), b(n) match the explicit coefficients at a few n
  for (long n : {1L, 2L, 7L, 40L}) {
    auto rc = rec_coeffs(n, params);
    CHECK(spec.a_fn.eval(Rational(n)) == -(Rational(9) - rc.B) / rc.A);
    CHECK(spec.b_fn.eval(Rational(n)) == rc.C / rc.A);
  }
}

TEST_CASE("evaluate_solution against closed-form evaluation") {
  auto params = HypergeomParams::binomial(Rational(1, 3));
  Rational beta(9);
  auto tr = p0_trace(params, beta, 50);
  CHECK(tr.values[2] == Rational(2078, 9));
  for (long n = 0; n <= 50; n += 5)
    CHECK(tr.values[n] == pade_general(n, params).P0.eval(beta));

  // the P1 sequence satisfies the same recurrence
  auto p1 = pade_general(1, params);
  auto tr1 = evaluate_solution(params, beta, Rational(0), p1.P1.eval(beta), 50);
  for (long n = 0; n <= 50; n += 10)
    CHECK(tr1.values[n] == pade_general(n, params).P1.eval(beta));

  auto zero = evaluate_solution(params, beta, Rational(0), Rational(0), 10);
  for (const auto& v : zero.values) CHECK(v.is_zero());

  auto slog = HypergeomParams::shifted_log(Rational(0));
  auto trs = p0_trace(slog, Rational(9), 2);
  CHECK(trs.values[1] == Rational(17));
}

TEST_CASE("poincare_threshold: constant coefficients give N = 1") {
  // X_{n+1} - 10 X_n + 16 X_{n-1} = 0: roots 2 and 8
  CharRoots roots;
  roots.lambda1 = QuadraticNumber(Rational(2));
  roots.lambda2 = QuadraticNumber(Rational(8));
  roots.rho1 = roots.lambda1;
  roots.rho2 = roots.lambda2;
  roots.disc = Rational(9);
  RecurrenceSpec spec(RationalFn::constant(Rational(-10)), RationalFn::constant(Rational(16)),
                      Rational(-10), Rational(16), roots);
  SolutionTrace tr;
  tr.values = {Rational(1), Rational(8)};
  for (long n = 1; n <= 30; ++n)
    tr.values.push_back(Rational(10) * tr.values[n] - Rational(16) * tr.values[n - 1]);
  auto rep = poincare_threshold(spec, tr);
  CHECK(rep.N == 1);
  CHECK(rep.monotone);
  CHECK(rep.i == 2);
}

TEST_CASE("poincare_threshold on the cube-root-of-3 recurrence") {
  auto params = HypergeomParams::binomial(Rational(1, 3));
  auto spec = make_recurrence_spec(params, Rational(9));
  auto tr = p0_trace(params, Rational(9), 120);
  auto rep = poincare_threshold(spec, tr);
  CHECK(rep.N >= 1);
  CHECK(rep.monotone);
  CHECK(rep.i == 2);  // P_{n,0}(9) grows like rho2^n
  // exactness of the scan: inequality fails at N-1 when N > 1
  if (rep.N > 1) {
    Rational nm1(rep.N - 1);
    Rational e0 = spec.eps0.eval(nm1).abs(), e1 = spec.eps1.eval(nm1).abs();
    QuadraticNumber gap = (spec.roots.lambda2 - spec.roots.lambda1).abs();
    QuadraticNumber lhs = Rational(2) * ((QuadraticNumber(2 * e0) +
                                          Rational(e1) * (spec.roots.rho1 + spec.roots.rho2)) / gap);
    CHECK(cmp(lhs, spec.roots.rho2 - spec.roots.rho1) > 0);
  }
}

TEST_CASE("index monotone over random initial pairs") {
  auto params = HypergeomParams::binomial(Rational(1, 3));
  auto spec = make_recurrence_spec(params, Rational(9));
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  int done = 0;
  while (done < 25) {
    Rational X0(num(rng), den(rng)), X1(num(rng), den(rng));
    if (X0.is_zero() && X1.is_zero()) continue;
    auto tr = evaluate_solution(params, Rational(9), X0, X1, 60);
    auto rep = poincare_threshold(spec, tr);
    CHECK(rep.monotone);
    ++done;
  }
}

TEST_CASE("ratio_estimate: geometric solution gives residual rho/(2n) exactly") {
  std::vector<Rational> v;
  Rational x(1);
  for (long n = 0; n <= 64; ++n) {
    v.push_back(x);
    x *= 8;
  }
  auto rep = ratio_estimate(v, QuadraticNumber(Rational(8)), 4, 60, 192);
  // r_n = 8/(2n) = 4/n exactly, so n^2 r_n = 4n, sup at n = 60
  CHECK(rep.sup_n2_residual == Catch::Approx(240.0).epsilon(1e-12));
}

TEST_CASE("ratio_estimate on the Pade numerator trace") {
  auto params = HypergeomParams::binomial(Rational(1, 3));
  auto tr = p0_trace(params, Rational(9), 160);
  auto roots = char_roots(Rational(1), Rational(9));
  auto rep = ratio_estimate(tr.values, roots.lambda2, 50, 150, 256);
  CHECK(rep.sup_n2_residual > 0);
  CHECK(rep.sup_n2_residual < 100.0);  // measured ~16.1
  CHECK_THROWS_AS(ratio_estimate(tr.values, roots.lambda2, 0, 10, 128), std::domain_error);
}

TEST_CASE("remainder trace: index locks to 1 and ratio approaches lambda1") {
  auto params = HypergeomParams::binomial(Rational(1, 3));
  Rational beta(9);
  auto roots = char_roots(Rational(1), beta);
  Interval l1 = roots.lambda1.to_interval(256);
  // interval remainder values R_n(9), n = 180..201
  std::vector<Interval> R;
  for (long n = 180; n <= 201; ++n) R.push_back(remainder_value(n, params, beta, 256));
  // index selection via intervals: |R_{n+1} - l1 R_n| vs |R_{n+1} - l2 R_n|
  Interval l2 = roots.lambda2.to_interval(256);
  for (std::size_t j = 0; j + 1 < R.size(); ++j) {
    Interval r1 = (R[j + 1] - l1 * R[j]).abs();
    Interval r2 = (R[j + 1] - l2 * R[j]).abs();
    CHECK(r1.le(r2) == Tribool::True);  // small root wins: i = 1
  }
  // corrected ratio residual at n = 200 within 1e-6
  long n = 200;
  Interval q = R[20 + 1] / R[20];  // R_201 / R_200
  Interval corr = Interval::of(Rational(1) - Rational(1, 2 * n), 256);
  Interval resid = (q - l1 * corr).abs();
  CHECK(resid.lt(Rational(1, 1000000)) == Tribool::True);
}

TEST_CASE("growth_bound") {
  std::vector<Rational> zero(20, Rational(0));
  CHECK(growth_bound(zero, QuadraticNumber(Rational(2))) == 0.0);

  std::vector<Rational> geo;
  Rational x(1);
  for (long n = 0; n <= 25; ++n) {
    geo.push_back(x);
    x *= 8;
  }
  // |X_n| sqrt(n) / 8^n = sqrt(n): max at n = 25
  CHECK(growth_bound(geo, QuadraticNumber(Rational(8))) == Catch::Approx(5.0).epsilon(1e-9));

  auto params = HypergeomParams::binomial(Rational(1, 3));
  auto tr = p0_trace(params, Rational(9), 120);
  auto roots = char_roots(Rational(1), Rational(9));
  double C = growth_bound(tr.values, roots.rho2, 192);
  CHECK(C > 0);
  CHECK(C < 1.0);  // regression: measured ~0.58 for this trace
  // certified prefix property with the returned constant
  Interval rho = roots.rho2.to_interval(192);
  Interval pw = Interval::of(1, 192);
  for (long n = 1; n <= 120; ++n) {
    pw = pw * rho;
    Interval lhs = Interval::of(tr.values[n], 192).abs() * Interval::of(Rational(n), 192).sqrt();
    Interval rhs = Interval::of(Rational(long(C * 1e9) + 1, 1000000000), 192) * pw;
    CHECK(lhs.le(rhs) == Tribool::True);
  }
}

TEST_CASE("u_decompose2 pure modes") {
  auto roots = char_roots(Rational(1), Rational(9));
  // g = lambda2^n: u2 = g, u1 = 0
  QuadraticNumber g0(Rational(1)), g1 = roots.lambda2;
  auto [u1, u2] = u_decompose2(Rational(1), Rational(0), roots);  // placeholder, replaced below
  // rational inputs only; use the constant-coefficient rational-root system
  CharRoots rr;
  rr.lambda1 = QuadraticNumber(Rational(2));
  rr.lambda2 = QuadraticNumber(Rational(8));
  rr.rho1 = rr.lambda1;
  rr.rho2 = rr.lambda2;
  auto [a1, a2] = u_decompose2(Rational(1), Rational(8), rr);  // g = 8^n at n=0
  CHECK(a1.is_zero());
  CHECK(a2 == QuadraticNumber(Rational(1)));
  auto [b1, b2] = u_decompose2(Rational(2), Rational(2 * 2 + 8 * 8), rr);  // g = 2^n + 8^n at n=1
  CHECK(b1 == QuadraticNumber(Rational(2)));
  CHECK(b2 == QuadraticNumber(Rational(8)));
  // reconstruction for the quadratic-root system with rational g-values
  auto [c1, c2] = u_decompose2(Rational(5), Rational(7), roots);
  CHECK(c1 + c2 == QuadraticNumber(Rational(5)));
  CHECK(roots.lambda1 * c1 + roots.lambda2 * c2 == QuadraticNumber(Rational(7)));
}

TEST_CASE("u_decompose_k on a cubic with pure top mode") {
  // P = (X-1)(X-2)(X-4) = X^3 - 7X^2 + 14X - 8; g(n) = 4^n
  std::vector<Rational> coeffs = {Rational(-8), Rational(14), Rational(-7)};
  std::vector<Rational> g = {Rational(1), Rational(4), Rational(16)};
  auto u = u_decompose_k(coeffs, g, 256);
  REQUIRE(u.size() == 3);
  CHECK(u[0].abs_d() < 1e-20);
  CHECK(u[1].abs_d() < 1e-20);
  CHECK(std::abs(u[2].re_d() - 1.0) < 1e-20);
  CHECK(std::abs(u[2].im_d()) < 1e-20);
  // reconstruction: sum_j lambda_j^l u_j = g(l)
  auto roots = char_roots_k(coeffs, 256);
  CHECK(roots.residual_bound < 1e-40);
  CHECK(std::abs(roots.roots[0].re_d() - 1.0) < 1e-30);
  CHECK(std::abs(roots.roots[1].re_d() - 2.0) < 1e-30);
  CHECK(std::abs(roots.roots[2].re_d() - 4.0) < 1e-30);
  // repeated-modulus rejection: (X-2)(X+2)(X-1)
  std::vector<Rational> bad = {Rational(4), Rational(-4), Rational(-1)};
  std::vector<Rational> gb = {Rational(1), Rational(1), Rational(1)};
  CHECK_THROWS_AS(u_decompose_k(bad, gb, 256), std::domain_error);
}

TEST_CASE("growth dichotomy at n = 200") {
  auto params = HypergeomParams::binomial(Rational(1, 3));
  Rational beta(9);
  auto tr = p0_trace(params, beta, 200);
  auto roots = char_roots(Rational(1), beta);
  // |P_{200,0}(9)|^{1/200} within 2% of rho2
  Interval v = Interval::of(tr.values[200], 256).abs();
  Interval g = (Interval::of(Rational(1, 200), 256) * v.log()).exp();
  Interval rho2 = roots.rho2.to_interval(256);
  CHECK(g.le(rho2 * Interval::of(Rational(102, 100), 256)) == Tribool::True);
  CHECK((rho2 * Interval::of(Rational(98, 100), 256)).le(g) == Tribool::True);
  // |R_200(9)|^{1/200} within 5% of rho1
  Interval R = remainder_value(200, params, beta, 256).abs();
  Interval gr = (Interval::of(Rational(1, 200), 256) * R.log()).exp();
  Interval rho1 = roots.rho1.to_interval(256);
  CHECK(gr.le(rho1 * Interval::of(Rational(105, 100), 256)) == Tribool::True);
  CHECK((rho1 * Interval::of(Rational(95, 100), 256)).le(gr) == Tribool::True);
}

TEST_CASE("alpha = 0 remainder bound grows at most polynomially") {
  // |R_n(beta)| (2n)! |beta/delta^2|^n stays polynomially bounded: compare
  // log-log slopes over [10,30] and [30,60].
  for (const auto& params :
       {HypergeomParams::shifted_exp(Rational(-1)), HypergeomParams::shifted_exp(Rational(1, 2))}) {
    Rational beta(3, 2);
    auto gval = [&](long n) {
      Interval R = remainder_value(n, params, beta, 320).abs();
      Interval scale = Interval::of(Rational(factorial(2 * n)), 320) *
                       Interval::of((beta / (params.delta * params.delta)).abs(), 320)
                           .pow(Interval::of(Rational(n), 320));
      return R * scale;
    };
    auto lg = [&](long n) { return gval(n).log().mid_d(); };
    double s1 = (lg(30) - lg(10)) / (std::log(30.0) - std::log(10.0));
    double s2 = (lg(60) - lg(30)) / (std::log(60.0) - std::log(30.0));
    CHECK(std::abs(s1) < 12.0);
    CHECK(std::abs(s2) < 12.0);
  }
}
