#include "flagzeta/eisenstein.hpp"

#include <numeric>
#include <stdexcept>

namespace flagzeta {

bool is_prime_power(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  return true;
}

WeightLine rho_line(const RootSystem& rs, const IVec& direction) {
  if ((int)direction.size() != rs.rank)
    throw std::invalid_argument("rho_line: direction size mismatch");
  return WeightLine{IVec(rs.rank, 1), direction};
}

WeightLine act_line(const RootSystem& rs, const WeylElt& w,
                    const WeightLine& line) {
  return WeightLine{act_weight(rs, w, line.base),
                    act_weight(rs, w, line.direction)};
}

namespace {

int pair_coroot(const IVec& weight, const IVec& coroot) {
  int s = 0;
  for (size_t i = 0; i < coroot.size(); ++i) s += weight[i] * coroot[i];
  return s;
}

}  // namespace

RatFn local_c(const RootSystem& rs, const WeylElt& w, const WeightLine& line,
              long q_p) {
  if (!is_prime_power(q_p))
    throw std::invalid_argument("local_c: q_p must be a prime power");
  if ((int)line.base.size() != rs.rank ||
      (int)line.direction.size() != rs.rank)
    throw std::invalid_argument("local_c: line size mismatch");
  RatFn out(Rat(1));
  // one factor (1 - z/q_p)/(1 - z) per inverted root, z = q_p^{-e(u)}
  Poly num;
  num.c = {Rat(1), Rat(-1, q_p)};
  Poly den;
  den.c = {Rat(1), Rat(-1)};
  RatFn base_factor = make_ratfn(num, den);
  for (int idx : inverted_roots(rs, w)) {
    const IVec& cr = rs.positive[idx].coroot;
    int e0 = pair_coroot(line.base, cr);
    int e1 = pair_coroot(line.direction, cr);
    if (e0 == 0 && e1 == 0)
      throw std::invalid_argument("local_c: exponent vanishes along the line");
    out = out * substitute_monomial(base_factor, rat_pow(Rat(q_p), -e0), e1);
  }
  return out;
}

RatFn global_c(const CurveZeta& curve, const RootSystem& rs, const WeylElt& w,
               const WeightLine& line) {
  if ((int)line.base.size() != rs.rank ||
      (int)line.direction.size() != rs.rank)
    throw std::invalid_argument("global_c: line size mismatch");
  IVec inv = inverted_roots(rs, w);
  long norm_exp = (long)(1 - curve.genus) * (long)inv.size();
  RatFn out(rat_pow(Rat(curve.q), norm_exp));
  for (int idx : inv) {
    const IVec& cr = rs.positive[idx].coroot;
    int e0 = pair_coroot(line.base, cr);
    int e1 = pair_coroot(line.direction, cr);
    if (e0 == 0 && e1 == 0)
      throw std::invalid_argument("global_c: exponent vanishes along the line");
    out = out * zeta_in_x(curve, e0, e1) / zeta_in_x(curve, e0 + 1, e1);
  }
  return out;
}

ScaledLimit c_constant(const CurveZeta& curve, const RootSystem& rs,
                       const IVec& J, const IVec& direction) {
  if (J.empty()) return ScaledLimit(Rat(1), 0);
  if ((int)direction.size() != rs.rank)
    throw std::invalid_argument("c_constant: direction size mismatch");
  Rat scale(1);
  for (int j : J) {
    if (j < 0 || j >= rs.rank) throw std::invalid_argument("c_constant: bad J");
    if (direction[j] < 1)
      throw std::invalid_argument("c_constant: direction not generic on J");
    scale *= direction[j];
  }
  WeylElt wbar = longest_element(rs, J);
  RatFn c = global_c(curve, rs, wbar, rho_line(rs, direction));
  return scale * s_limit(c, (int)J.size());
}

ScaledLimit theorem_lhs(const CurveZeta& curve, const RootSystem& rs,
                        const IVec& I) {
  ParabolicDatum pd = parabolic_datum(rs, I);
  IVec dir(rs.rank, 1);  // the line through rho in the direction of rho
  IVec all(rs.rank);
  std::iota(all.begin(), all.end(), 0);
  ScaledLimit cg = c_constant(curve, rs, all, dir);
  ScaledLimit cp = c_constant(curve, rs, pd.I, dir);
  Rat pre(1);
  for (int a : pd.anticanonical) pre *= a;
  return (Rat(1) / pre) * (cg / cp);
}

}  // namespace flagzeta
