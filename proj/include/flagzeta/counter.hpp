#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "flagzeta/rational.hpp"
#include "flagzeta/root_system.hpp"

namespace flagzeta {

// Finite field F_q as lookup tables; elements are 0..q-1, with nonprime q
// realized as F_p[x]/(irreducible) on base-p digit codes.
struct GfTable {
  long q = 2;
  long p = 2;
  int k = 1;
  std::vector<uint8_t> add_t, mul_t;  // q*q, row-major
  std::vector<uint8_t> inv_t, neg_t;  // q

  uint8_t add(uint8_t a, uint8_t b) const { return add_t[(size_t)a * q + b]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_t[(size_t)a * q + b]; }
  uint8_t inv(uint8_t a) const { return inv_t[a]; }
  uint8_t neg(uint8_t a) const { return neg_t[a]; }
};

GfTable make_field(long q);  // q = p^k <= 121

// Polynomials over F_q as ascending coefficient vectors, no trailing zeros.
using Fpoly = std::vector<uint8_t>;
int fdeg(const Fpoly& f);  // -1 for the zero polynomial
Fpoly fmul(const GfTable& gf, const Fpoly& a, const Fpoly& b);
Fpoly fmod(const GfTable& gf, Fpoly a, const Fpoly& b);
Fpoly fgcd(const GfTable& gf, Fpoly a, Fpoly b);  // monic when nonzero

struct ProjPoint {
  std::vector<Fpoly> coords;  // coprime, first nonzero coordinate monic
  int height_deg = 0;         // max coordinate degree
};

struct CountTable {
  int rank = 1;
  std::vector<int> max_degrees;
  std::map<IVec, long long> counts;

  long long at(const IVec& d) const;
};

// Enumeration work cap: (n+1)(D+1)log2(q) must stay below this; the
// FLAGZETA_WORKCAP environment variable overrides the default of 36.
double work_cap();

// N(d) = number of points of P^n(F_q(t)) of height q^d, for d = 0..D, by
// exhaustive scan of canonical coprime tuples (gcd sieve for large rank-1
// boxes, direct scan otherwise).
CountTable enumerate_projective(int n, long q, int D, int jobs = 1);

// Product surface: N(d1,d2) multiplies the two rank-1 tables.
CountTable enumerate_p1xp1(long q, int D1, int D2, int jobs = 1);

// Incidence variety {(p,l) in P^2 x P^2 : sum p_i l_i = 0}; N(d1,d2) counts
// incident pairs with the two O(1)-heights (q^{d1}, q^{d2}).
CountTable enumerate_flag_sl3(long q, int D1, int D2, int jobs = 1);

// Materialized canonical points, ordered by (height, scan order).
std::vector<ProjPoint> list_projective(int n, long q, int D);

struct EmpiricalResidue {
  std::optional<ScaledLimit> exact;  // from a verified rational fit
  double estimate = 0.0;             // finite-difference estimate, always set
  int logq_pow = 0;
};

// Forms G(x) = sum_k N~_k q^{-k} x^k over complete anticanonical shells
// (weight of (d_i) is sum a_i d_i from pd.anticanonical) and extracts the
// order-t residue at x = 1, exactly when a rational fit reproduces every
// coefficient with the right pole order, and as a float estimate always.
EmpiricalResidue empirical_residue(const CountTable& table,
                                   const ParabolicDatum& pd, long q);

}  // namespace flagzeta
