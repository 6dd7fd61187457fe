#pragma once

#include "flagzeta/curve_zeta.hpp"
#include "flagzeta/root_system.hpp"

namespace flagzeta {

// Affine line of weights lambda(u) = base + u*direction, both stored in
// fundamental-weight coordinates, so the exponent of a positive root is
// e(u) = <base,coroot> + u <direction,coroot> with integer parts.
struct WeightLine {
  IVec base;
  IVec direction;
};

WeightLine rho_line(const RootSystem& rs, const IVec& direction);
WeightLine act_line(const RootSystem& rs, const WeylElt& w,
                    const WeightLine& line);

bool is_prime_power(long n);

// Local intertwining constant at a place of residue size q_p, as a rational
// function of y = q_p^{-u}:
//   prod over alpha > 0 with w(alpha) < 0 of
//     (1 - q_p^{-(e_alpha+1)}) / (1 - q_p^{-e_alpha}).
// Throws when some exponent vanishes identically along the line.
RatFn local_c(const RootSystem& rs, const WeylElt& w, const WeightLine& line,
              long q_p);

// Global constant as a rational function of y = q^{-u}:
//   q^{(1-g) l(w)} * prod over inverted roots of Z_C(e_alpha)/Z_C(e_alpha+1).
RatFn global_c(const CurveZeta& curve, const RootSystem& rs, const WeylElt& w,
               const WeightLine& line);

// Regularized value of the global constant for the longest element of W_J at
// the base point rho: multiply by prod_{alpha in J} u <direction, alpha^vee>
// and take u -> 0.  Requires <direction, alpha^vee> >= 1 on J; the result
// does not depend on the admissible direction.
ScaledLimit c_constant(const CurveZeta& curve, const RootSystem& rs,
                       const IVec& J, const IVec& direction);

// Leading limit of the height zeta function from the spectral side:
//   prod_{alpha in Delta-I} <alpha^vee, 2 rho_P>^{-1} * C_G / C_P.
ScaledLimit theorem_lhs(const CurveZeta& curve, const RootSystem& rs,
                        const IVec& I);

}  // namespace flagzeta
