#pragma once

#include "flagzeta/cone_lq.hpp"
#include "flagzeta/curve_zeta.hpp"
#include "flagzeta/eisenstein.hpp"
#include "flagzeta/root_system.hpp"

namespace flagzeta {

struct LocalFactors {
  long q_p = 2;
  Rat d_p;       // point density #V(F_p) / q_p^{dim V}
  Rat lambda_p;  // convergence factor (1 - q_p^{-1})^{-t}
  Rat mu_p;      // volume, from the ratio of local intertwining constants
};

Rat local_density(const RootSystem& rs, const IVec& I, long q_p);
Rat local_volume(long q_p, const RootSystem& rs, const IVec& I);

// Computes all three and asserts mu_p == d_p (good reduction holds at every
// place for split flag data).
LocalFactors local_factors(const RootSystem& rs, const IVec& I, long q_p);

// Volume of the adelic space under the convergence-factor measure:
//   (residue of zeta_C)^t * q^{(1-g) dim V} * prod_p lambda_p^{-1} mu_p,
// with the Euler product evaluated in closed form through curve zeta values.
ScaledLimit tamagawa_closed(const CurveZeta& curve, const RootSystem& rs,
                            const IVec& I);

struct TruncatedTamagawa {
  double value = 0.0;       // same (log q)^{-t} normalization as closed form
  double tail_bound = 0.0;  // relative bound covering the omitted places
  int logq_pow = 0;
};

// Same number through the Euler product over places of degree <= D, using
// only point counts and the place table.  Rational base curve only; D >= 3.
TruncatedTamagawa tamagawa_truncated(const CurveZeta& curve,
                                     const RootSystem& rs, const IVec& I,
                                     int D);

// alpha_star * beta * tau with beta = 1 (split case, trivial Galois action
// on the Picard lattice).
ScaledLimit theta_star(const CurveZeta& curve, const RootSystem& rs,
                       const IVec& I);

}  // namespace flagzeta
