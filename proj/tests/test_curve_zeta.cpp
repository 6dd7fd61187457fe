#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "flagzeta/curve_zeta.hpp"

using namespace flagzeta;

static Poly P(std::initializer_list<int> cs) {
  Poly p;
  for (int x : cs) p.c.push_back(Rat(x));
  p.trim();
  return p;
}

TEST_CASE("divisor counts of the projective line") {
  // coefficient of t^d in Z(P^1,t) counts effective divisors of degree d,
  // which is the number of points of P^d(F_q)
  for (long q : {2L, 3L, 5L}) {
    CurveZeta c = projective_line(q);
    auto cs = series_coeffs(zeta_rat(c), 9);
    for (int d = 0; d <= 8; ++d) {
      Rat expect = (rat_pow(Rat(q), d + 1) - 1) / (Rat(q) - 1);
      CHECK(cs[d] == expect);
    }
  }
}

TEST_CASE("functional equation as rational functions") {
  // Z(1/(qt)) = q^{1-g} t^{2-2g} Z(t)
  CurveZeta line = projective_line(3);
  CurveZeta ell = make_curve(2, 1, {Int(1), Int(0), Int(2)});
  for (const CurveZeta* cp : {&line, &ell}) {
    const CurveZeta& c = *cp;
    RatFn lhs = substitute_monomial(zeta_rat(c), Rat(1, c.q), -1);
    RatFn scale(rat_pow(Rat(c.q), 1 - c.genus));
    RatFn mono = make_ratfn(Poly::monomial(Rat(1), 2 - 2 * c.genus), P({1}));
    RatFn rhs = scale * mono * zeta_rat(c);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("curve validation") {
  CHECK_THROWS(make_curve(1, 0, {Int(1)}));
  CHECK_THROWS(make_curve(2, -1, {Int(1)}));
  CHECK_THROWS(make_curve(2, 1, {Int(1), Int(1)}));          // deg != 2g
  CHECK_THROWS(make_curve(2, 1, {Int(2), Int(0), Int(2)}));  // P(0) != 1
  CHECK_THROWS(make_curve(2, 1, {Int(1), Int(0), Int(3)}));  // FE fails
  // P = 1 - 4t + 2t^2 satisfies the FE but P(1) = -1
  CHECK_THROWS(make_curve(2, 1, {Int(1), Int(-4), Int(2)}));

  CurveZeta e = make_curve(2, 1, {Int(1), Int(1), Int(2)});
  CHECK(class_number(e) == 4);
  CHECK(class_number(projective_line(7)) == 1);
}

static std::vector<long> brute_irreducibles(long q, int D) {
  // monic polynomials as base-q digit vectors, trial division
  auto num_monic = [&](int d) {
    long n = 1;
    for (int i = 0; i < d; ++i) n *= q;
    return n;
  };
  auto decode = [&](long code, int d) {
    std::vector<long> f(d + 1);
    for (int i = 0; i < d; ++i) {
      f[i] = code % q;
      code /= q;
    }
    f[d] = 1;
    return f;
  };
  auto divides = [&](const std::vector<long>& g, std::vector<long> f) {
    int dg = (int)g.size() - 1;
    for (int i = (int)f.size() - 1 - dg; i >= 0; --i) {
      long c = f[i + dg] % q;
      if (c)
        for (int j = 0; j <= dg; ++j)
          f[i + j] = (f[i + j] + (q - c) * g[j]) % q;
    }
    for (long v : f)
      if (v % q) return false;
    return true;
  };
  std::vector<std::vector<std::vector<long>>> irr(D + 1);
  std::vector<long> counts(D + 1, 0);
  for (int d = 1; d <= D; ++d)
    for (long code = 0; code < num_monic(d); ++code) {
      auto f = decode(code, d);
      bool ok = true;
      for (int e = 1; ok && 2 * e <= d; ++e)
        for (const auto& g : irr[e])
          if (divides(g, f)) {
            ok = false;
            break;
          }
      if (ok) {
        irr[d].push_back(f);
        ++counts[d];
      }
    }
  return counts;
}

TEST_CASE("places against trial division") {
  for (long q : {2L, 3L}) {
    int D = q == 2 ? 5 : 4;
    auto got = places_by_degree(q, D);
    auto brute = brute_irreducibles(q, D);
    CHECK(got[0] == Int(brute[1]) + 1);  // infinity is a degree-1 place
    for (int d = 2; d <= D; ++d) CHECK(got[d - 1] == Int(brute[d]));
  }
  CHECK_THROWS(places_by_degree(2, 0));
  CHECK_THROWS(places_by_degree(2, 31));
}

TEST_CASE("euler product converges to zeta") {
  // prod over places of (1 - q^{-2 deg})^{-1} -> Z(P^1, q^{-2})
  for (long q : {2L, 3L}) {
    CurveZeta c = projective_line(q);
    double target = zeta_at(c, 2).convert_to<double>();
    auto places = places_by_degree(q, 20);
    double logprod = 0.0;
    for (int d = 1; d <= 20; ++d)
      logprod -= places[d - 1].convert_to<double>() *
                 std::log1p(-std::pow((double)q, -2.0 * d));
    CHECK(std::fabs(std::exp(logprod) - target) < 1e-4 * target);
  }
  CHECK(zeta_at(projective_line(2), 2) == Rat(8, 3));
  CHECK_THROWS(zeta_at(projective_line(2), 1));
}

TEST_CASE("residue matches the limit along x") {
  // (s-1) Z(C, q^{-s}) at s -> 1, once in closed form and once as
  // s_limit of Z(C, q^{-1} x) in x = q^{-(s-1)}
  CurveZeta ell = make_curve(2, 1, {Int(1), Int(1), Int(2)});
  for (const CurveZeta& c :
       {projective_line(2), projective_line(3), projective_line(5), ell}) {
    ScaledLimit direct = curve_residue(c);
    ScaledLimit via_x = s_limit(zeta_in_x(c, 1, 1), 1);
    CHECK(direct == via_x);
    CHECK(direct.logq_pow == -1);
  }
  CHECK(curve_residue(projective_line(2)).coeff == 2);
  CHECK(curve_residue(projective_line(3)).coeff == Rat(3, 2));
}

TEST_CASE("zeta_in_x substitutions") {
  CurveZeta c = projective_line(2);
  // Z(P^1, u) with u = q^{-2}: a constant in x
  RatFn k = zeta_in_x(c, 2, 0);
  CHECK(k == RatFn(Rat(8, 3)));
  // u = q^{-2} x has no pole at x = 1
  CHECK(order_at(zeta_in_x(c, 2, 1), Rat(1)) == 0);
  CHECK(eval_at(zeta_in_x(c, 2, 1), Rat(1)) == Rat(8, 3));
  // u = q^{-1} x has a simple pole at x = 1 coming from 1 - qu
  CHECK(order_at(zeta_in_x(c, 1, 1), Rat(1)) == -1);
}
