#pragma once

#include <string>
#include <vector>

#include "flagzeta/rational.hpp"

namespace flagzeta {

using IMat = std::vector<std::vector<int>>;
using IVec = std::vector<int>;

// A positive root carried in two coordinate systems: simple-root basis and
// simple-coroot basis, so pairings <weight, coroot> are plain dot products
// against weight (fundamental-weight) coordinates.
struct PosRoot {
  IVec root;
  IVec coroot;
};

struct SimpleFactor {
  char family;
  int rank;
};

struct RootSystem {
  std::vector<SimpleFactor> factors;
  int rank = 0;
  IMat cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<PosRoot> positive;  // simple roots first, then by height
};

// Accepts specs like "A2", "B3", "G2", "A1xA1", "A2xB2"; families A (rank
// >= 1), B/C (rank >= 2), D (rank >= 3), G (rank 2), total rank <= 6.
RootSystem build_root_system(const std::string& spec);

struct WeylElt {
  std::vector<int> word;  // product of simple reflections, leftmost applied last
  IMat root_action;       // matrix on root-lattice coordinates
};

WeylElt weyl_identity(const RootSystem& rs);
WeylElt simple_reflection(const RootSystem& rs, int i);
WeylElt weyl_mul(const RootSystem& rs, const WeylElt& a, const WeylElt& b);

// Full group by closure under right multiplication; throws above 100000
// elements.  Words are reduced (BFS by length).
std::vector<WeylElt> weyl_group(const RootSystem& rs);

// Longest element of the standard parabolic subgroup W_J.
WeylElt longest_element(const RootSystem& rs, const IVec& J);

// Indices into rs.positive of the roots sent negative by w; its size is the
// length of w.
IVec inverted_roots(const RootSystem& rs, const WeylElt& w);
int weyl_length(const RootSystem& rs, const WeylElt& w);

IVec act_root(const RootSystem& rs, const WeylElt& w, const IVec& v);
IVec act_weight(const RootSystem& rs, const WeylElt& w, const IVec& lambda);

struct ParabolicDatum {
  IVec I;              // defining subset of simple-root indices (0-based)
  IVec line;           // complement Delta - I, the Picard basis
  int t = 0;           // Picard rank of P\G
  int dim = 0;         // dim P\G = #radical positive roots
  IVec two_rho_P;      // weight coordinates of the anticanonical class
  IVec anticanonical;  // <alpha^vee, 2 rho_P> for alpha in `line`
  IVec levi_pos;       // indices into positive with support in I
  IVec radical_pos;    // the complement
};

ParabolicDatum parabolic_datum(const RootSystem& rs, const IVec& I);

// Length generating function of minimal coset representatives W^I, i.e. the
// point count polynomial of P\G: W(x) / W_I(x), checked to divide exactly.
Poly poincare_polynomial(const RootSystem& rs, const IVec& I);

}  // namespace flagzeta
