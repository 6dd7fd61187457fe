#pragma once

#include "flagzeta/rational.hpp"
#include "flagzeta/root_system.hpp"

namespace flagzeta {

// Simplicial lattice cone spanned by the rows of gens.
struct LatticeCone {
  int dim = 0;
  IMat gens;
};

LatticeCone orthant(int n);

// Coordinates of the class a in the generator basis; requires a unimodular
// generator matrix and a strictly interior class (all coordinates >= 1).
IVec cone_coords(const LatticeCone& cone, const IVec& a);

// Characteristic-function value of the cone at a: prod 1/a_i over the
// coordinates of a in the dual generator basis.
Rat chi_value(const LatticeCone& cone, const IVec& a);

// Height zeta of the cone along the line through a, as a function of
// x = q^{-(s-1)}: prod_i 1/(1 - x^{a_i}).  Pole order at x = 1 is dim.
RatFn lq_line(const LatticeCone& cone, const IVec& a, long q);

// Independent oracle: direct sum of q^{-s0 <y,a>} over dual-cone lattice
// points with <y,a> <= cap, matching lq_line evaluated at x = q^{-s0} up
// to a geometric tail.
double lq_bruteforce(const LatticeCone& cone, const IVec& a, long q, double s0,
                     int cap);

// prod over alpha in Delta-I of 1 / <alpha^vee, 2 rho_P>.
Rat alpha_star(const ParabolicDatum& pd);

}  // namespace flagzeta
