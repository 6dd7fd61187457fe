#include "flagzeta/tamagawa.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace flagzeta {

namespace {

int coroot_height(const PosRoot& r) {
  return std::accumulate(r.coroot.begin(), r.coroot.end(), 0);
}

}  // namespace

Rat local_density(const RootSystem& rs, const IVec& I, long q_p) {
  if (!is_prime_power(q_p))
    throw std::invalid_argument("local_density: q_p must be a prime power");
  Poly pc = poincare_polynomial(rs, I);
  return pc.eval(Rat(q_p)) / rat_pow(Rat(q_p), pc.deg());
}

Rat local_volume(long q_p, const RootSystem& rs, const IVec& I) {
  IVec all(rs.rank);
  std::iota(all.begin(), all.end(), 0);
  WeightLine line = rho_line(rs, IVec(rs.rank, 1));
  RatFn top = local_c(rs, longest_element(rs, all), line, q_p);
  RatFn bottom = local_c(rs, longest_element(rs, I), line, q_p);
  ScaledLimit v = s_limit(top / bottom, 0);
  return v.coeff;
}

LocalFactors local_factors(const RootSystem& rs, const IVec& I, long q_p) {
  ParabolicDatum pd = parabolic_datum(rs, I);
  LocalFactors lf;
  lf.q_p = q_p;
  lf.d_p = local_density(rs, I, q_p);
  lf.lambda_p = rat_pow(1 - Rat(1, q_p), -pd.t);
  lf.mu_p = local_volume(q_p, rs, I);
  if (lf.mu_p != lf.d_p)
    throw std::logic_error("local_factors: volume differs from density");
  return lf;
}

ScaledLimit tamagawa_closed(const CurveZeta& curve, const RootSystem& rs,
                            const IVec& I) {
  ParabolicDatum pd = parabolic_datum(rs, I);
  // residue^t from L(s, Pic) = zeta_C(s)^t, then the normalized product of
  // lambda_p^{-1} mu_p: each of the t simple radical roots contributes a
  // global 1/zeta_C(2), each higher radical root zeta_C(e)/zeta_C(e+1)
  Rat v = rat_pow(Rat(curve.q), (long)(1 - curve.genus) * pd.dim);
  v /= rat_pow(zeta_at(curve, 2), pd.t);
  for (int idx : pd.radical_pos) {
    int e = coroot_height(rs.positive[idx]);
    if (e == 1) continue;
    v *= zeta_at(curve, e) / zeta_at(curve, e + 1);
  }
  return v * sl_pow(curve_residue(curve), pd.t);
}

TruncatedTamagawa tamagawa_truncated(const CurveZeta& curve,
                                     const RootSystem& rs, const IVec& I,
                                     int D) {
  if (D < 3)
    throw std::invalid_argument("tamagawa_truncated: D too small for a tail");
  if (curve.genus != 0)
    throw std::invalid_argument(
        "tamagawa_truncated: place table only covers the rational base curve");
  ParabolicDatum pd = parabolic_datum(rs, I);
  Poly pc = poincare_polynomial(rs, I);
  long q = curve.q;
  auto places = places_by_degree(q, D);
  double logprod = 0.0;
  for (int d = 1; d <= D; ++d) {
    Rat qp = rat_pow(Rat(q), d);
    Rat f = rat_pow(1 - 1 / qp, pd.t) * pc.eval(qp) / rat_pow(qp, pd.dim);
    logprod += places[d - 1].convert_to<double>() *
               std::log(f.convert_to<double>());
  }
  TruncatedTamagawa out;
  double residue = curve_residue(curve).coeff.convert_to<double>();
  out.value = std::pow(residue, pd.t) *
              std::pow((double)q, (double)pd.dim) * std::exp(logprod);
  out.logq_pow = -pd.t;
  // every omitted factor is 1 + O(q_p^{-2}) with a per-root constant;
  // a_d <= 2 q^d / d makes the bound geometric
  int higher = 0;
  for (int idx : pd.radical_pos)
    if (coroot_height(rs.positive[idx]) > 1) ++higher;
  double c0 = 2.0 * (pd.t + 2.0 * higher);
  double tail = 0.0;
  for (int d = D + 1; d <= D + 200; ++d)
    tail += 2.0 * c0 * std::pow((double)q, -(double)d) / d;
  out.tail_bound = std::expm1(tail);
  return out;
}

ScaledLimit theta_star(const CurveZeta& curve, const RootSystem& rs,
                       const IVec& I) {
  ParabolicDatum pd = parabolic_datum(rs, I);
  return alpha_star(pd) * tamagawa_closed(curve, rs, I);
}

}  // namespace flagzeta
