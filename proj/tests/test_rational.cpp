#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flagzeta/rational.hpp"

using namespace flagzeta;

static Poly P(std::initializer_list<int> cs) {
  Poly p;
  for (int x : cs) p.c.push_back(Rat(x));
  p.trim();
  return p;
}

TEST_CASE("poly basics") {
  Poly a = P({1, 2, 1});
  Poly b = P({1, 1});
  CHECK(a == b * b);
  CHECK((a - a).is_zero());
  CHECK(a.eval(Rat(2)) == 9);
  Poly rem;
  Poly q = poly_divmod(a, b, rem);
  CHECK(q == b);
  CHECK(rem.is_zero());
  CHECK(poly_gcd(a, b) == b);
  CHECK(poly_gcd(P({-2, 0, 2}), P({1, 1})) == b);  // gcd made monic
}

TEST_CASE("ratfn canonical form") {
  // (2x^2-2)/(2x-2) reduces to x+1 with monic denominator
  RatFn f = make_ratfn(P({-2, 0, 2}), P({-2, 2}));
  CHECK(f.num == P({1, 1}));
  CHECK(f.den == P({1}));
  RatFn z = make_ratfn(Poly(), P({5}));
  CHECK(z.is_zero());
  CHECK(z.den == P({1}));
  CHECK_THROWS(make_ratfn(P({1}), Poly()));
}

TEST_CASE("ratfn field ops") {
  RatFn f = make_ratfn(P({1}), P({1, -1}));   // 1/(1-x)
  RatFn g = make_ratfn(P({1}), P({1, -2}));   // 1/(1-2x)
  RatFn s = f * g;
  CHECK(s == make_ratfn(P({1}), P({1, -3, 2})));
  CHECK(s / g == f);
  CHECK(f - f == RatFn());
  CHECK(f + g == make_ratfn(P({2, -3}), P({1, -3, 2})));
}

TEST_CASE("order_at") {
  RatFn s = make_ratfn(P({1}), P({1, -3, 2}));  // 1/((1-x)(1-2x))
  CHECK(order_at(s, Rat(1)) == -1);
  CHECK(order_at(s, Rat(1, 2)) == -1);
  CHECK(order_at(s, Rat(7)) == 0);
  RatFn t = make_ratfn(P({1, -2, 1}), P({1, -2}));  // (1-x)^2/(1-2x)
  CHECK(order_at(t, Rat(1)) == 2);
  CHECK_THROWS(order_at(RatFn(), Rat(1)));
}

TEST_CASE("series coefficients") {
  RatFn s = make_ratfn(P({1}), P({1, -3, 2}));
  auto c = series_coeffs(s, 7);
  Rat pw(1);
  for (int k = 0; k < 7; ++k) {
    CHECK(c[k] == 2 * pw - 1);  // 2^{k+1} - 1
    pw *= 2;
  }
  CHECK_THROWS(series_coeffs(make_ratfn(P({1}), P({0, 1})), 3));
}

TEST_CASE("s_limit") {
  RatFn f = make_ratfn(P({1}), P({1, -1}));  // 1/(1-x)
  ScaledLimit l = s_limit(f, 1);
  CHECK(l.coeff == 1);
  CHECK(l.logq_pow == -1);
  CHECK(s_limit(f, 2) == ScaledLimit());            // higher k kills it
  CHECK(s_limit(make_ratfn(P({3}), P({1})), 0).coeff == 3);
  CHECK_THROWS(s_limit(f * f, 1));                   // pole order 2 > 1
  // double pole: lim (1-x)^2 / (1-x)^2 = 1
  CHECK(s_limit(f * f, 2) == ScaledLimit(Rat(1), -2));
}

TEST_CASE("s_limit multiplicative on exact orders") {
  std::mt19937 rng(7);
  auto rnd = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int it = 0; it < 50; ++it) {
    int j = rnd(0, 2), k = rnd(0, 2);
    // build f with exact pole order j at 1, g with exact order k
    Poly omx = P({1, -1});
    RatFn f = make_ratfn(P({rnd(1, 5), rnd(0, 3)}), poly_pow(omx, j) * P({1, rnd(1, 3)}));
    RatFn g = make_ratfn(P({rnd(1, 5)}), poly_pow(omx, k) * P({2, rnd(1, 3)}));
    if (eval_at(make_ratfn(f.num, Poly(Rat(1))), Rat(1)) == 0) continue;
    CHECK(s_limit(f * g, j + k) == s_limit(f, j) * s_limit(g, k));
  }
}

TEST_CASE("scaled limit algebra") {
  ScaledLimit a(Rat(3, 2), -1), b(Rat(2), -1);
  CHECK((a * b) == ScaledLimit(Rat(3), -2));
  CHECK((a / b) == ScaledLimit(Rat(3, 4), 0));
  CHECK(sl_pow(a, 2) == ScaledLimit(Rat(9, 4), -2));
  CHECK(ScaledLimit(Rat(0), -5) == ScaledLimit());  // canonical zero
}

TEST_CASE("substitute_monomial") {
  RatFn z = make_ratfn(P({1}), P({1, -1}));  // 1/(1-t)
  // t -> y^2/4: 1/(1 - y^2/4) = -4/(y^2 - 4)
  RatFn w = substitute_monomial(z, Rat(1, 4), 2);
  CHECK(w == make_ratfn(P({-4}), P({-4, 0, 1})));
  CHECK(eval_at(w, Rat(0)) == 1);
  // t -> 2 y^{-1}: 1/(1 - 2/y) = y/(y-2)
  RatFn v = substitute_monomial(z, Rat(2), -1);
  CHECK(v == make_ratfn(P({0, 1}), P({-2, 1})));
  // t -> constant
  RatFn c = substitute_monomial(z, Rat(1, 3), 0);
  CHECK(c == RatFn(Rat(3, 2)));
}

TEST_CASE("fit_rational examples") {
  std::vector<Rat> c;
  for (int k = 0; k < 6; ++k) c.push_back(Rat((1 << (k + 1)) - 1));
  auto f = fit_rational(c, 2);
  REQUIRE(f.has_value());
  CHECK(*f == make_ratfn(P({1}), P({1, -3, 2})));

  std::vector<Rat> alt = {Rat(1), Rat(0), Rat(1), Rat(0), Rat(1), Rat(0)};
  CHECK(!fit_rational(alt, 1).has_value());
  auto g = fit_rational(alt, 2);  // enough depth: 1/(1-x^2)
  REQUIRE(g.has_value());
  CHECK(*g == make_ratfn(P({1}), P({1, 0, -1})));

  CHECK_THROWS(fit_rational(alt, 3));  // too few coefficients
}

TEST_CASE("fit_rational roundtrip") {
  std::mt19937 rng(11);
  auto rnd = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int it = 0; it < 60; ++it) {
    int dn = rnd(0, 3), dd = rnd(0, 3);
    Poly num, den;
    for (int i = 0; i <= dn; ++i) num.c.push_back(Rat(rnd(-4, 4)));
    den.c.push_back(Rat(1));
    for (int i = 1; i <= dd; ++i) den.c.push_back(Rat(rnd(-3, 3)));
    num.trim();
    den.trim();
    if (num.is_zero()) num = P({1});
    RatFn f = make_ratfn(num, den);
    int take = 2 * 4 + 2 + 3;
    auto c = series_coeffs(f, take);
    auto g = fit_rational(c, 4);
    REQUIRE(g.has_value());
    CHECK(*g == f);
  }
}

TEST_CASE("rat_pow and strings") {
  CHECK(rat_pow(Rat(2), 10) == 1024);
  CHECK(rat_pow(Rat(2), -2) == Rat(1, 4));
  CHECK(rat_pow(Rat(3, 2), 2) == Rat(9, 4));
  CHECK(rat_str(Rat(3, 4)) == "3/4");
  CHECK(rat_str(Rat(-7)) == "-7");
}
