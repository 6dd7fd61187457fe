#include "flagzeta/curve_zeta.hpp"

#include <stdexcept>

namespace flagzeta {

CurveZeta make_curve(long q, int genus, const std::vector<Int>& numerator) {
  if (q < 2) throw std::invalid_argument("make_curve: q must be >= 2");
  if (genus < 0) throw std::invalid_argument("make_curve: negative genus");
  CurveZeta c;
  c.q = q;
  c.genus = genus;
  for (const Int& v : numerator) c.numerator.c.push_back(Rat(v));
  c.numerator.trim();
  if (c.numerator.at(0) != 1)
    throw std::invalid_argument("make_curve: numerator must have P(0) = 1");
  if (c.numerator.deg() != 2 * genus)
    throw std::invalid_argument("make_curve: numerator degree must be 2g");
  Rat h = c.numerator.eval(Rat(1));
  if (h <= 0) throw std::invalid_argument("make_curve: class number not positive");
  if (c.numerator.eval(Rat(1, q)) * rat_pow(Rat(q), genus) != h)
    throw std::invalid_argument("make_curve: functional equation fails");
  return c;
}

CurveZeta projective_line(long q) { return make_curve(q, 0, {Int(1)}); }

RatFn zeta_rat(const CurveZeta& c) {
  Poly den;
  den.c = {Rat(1), Rat(-1)};
  Poly den2;
  den2.c = {Rat(1), Rat(-c.q)};
  return make_ratfn(c.numerator, den * den2);
}

Rat zeta_at(const CurveZeta& c, int m) {
  if (m < 2) throw std::invalid_argument("zeta_at: need m >= 2");
  return eval_at(zeta_rat(c), rat_pow(Rat(c.q), -m));
}

Rat class_number(const CurveZeta& c) { return c.numerator.eval(Rat(1)); }

ScaledLimit curve_residue(const CurveZeta& c) {
  Rat h = class_number(c);
  Rat v = h * rat_pow(Rat(c.q), -c.genus) / (1 - Rat(1, c.q));
  return ScaledLimit(v, -1);
}

RatFn zeta_in_x(const CurveZeta& c, int e0, int e1) {
  return substitute_monomial(zeta_rat(c), rat_pow(Rat(c.q), -e0), e1);
}

std::vector<Int> places_by_degree(long q, int D) {
  if (D < 1 || D > 30) throw std::invalid_argument("places_by_degree: D in 1..30");
  // moebius values up to D
  std::vector<int> mu(D + 1, 1);
  {
    std::vector<int> smallest(D + 1, 0);
    for (int i = 2; i <= D; ++i)
      if (!smallest[i])
        for (int j = i; j <= D; j += i)
          if (!smallest[j]) smallest[j] = i;
    for (int i = 2; i <= D; ++i) {
      int m = i, v = 1;
      bool sq = false;
      while (m > 1) {
        int p = smallest[m], k = 0;
        while (m % p == 0) {
          m /= p;
          ++k;
        }
        if (k > 1) sq = true;
        v = -v;
      }
      mu[i] = sq ? 0 : v;
    }
  }
  auto ipow = [](long b, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  std::vector<Int> out(D + 1, Int(0));
  out[1] = Int(q) + 1;  // q monic linear polynomials plus infinity
  for (int d = 2; d <= D; ++d) {
    Int s = 0;
    for (int e = 1; e <= d; ++e)
      if (d % e == 0 && mu[e] != 0) s += Int(mu[e]) * ipow(q, d / e);
    if (s % d != 0) throw std::logic_error("places_by_degree: non-integral count");
    out[d] = s / d;
  }
  out.erase(out.begin());
  return out;
}

}  // namespace flagzeta
