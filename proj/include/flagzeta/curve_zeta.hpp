#pragma once

#include <vector>

#include "flagzeta/rational.hpp"

namespace flagzeta {

// Zeta function of a smooth projective curve over F_q presented by its
// numerator P(t): Z(C,t) = P(t)/((1-t)(1-qt)), P(0) = 1, deg P = 2g.
struct CurveZeta {
  long q = 2;
  int genus = 0;
  Poly numerator;
};

// Validates P(0) = 1, deg P = 2g and the functional-equation value
// P(1/q) q^g = P(1); class number P(1) must be positive.
CurveZeta make_curve(long q, int genus, const std::vector<Int>& numerator);
CurveZeta projective_line(long q);

RatFn zeta_rat(const CurveZeta& c);          // in the variable t = q^{-s}
Rat zeta_at(const CurveZeta& c, int m);      // Z(C, q^{-m}), integer m >= 2
Rat class_number(const CurveZeta& c);        // h = P(1)

// lim_{s->1} (s-1) Z(C, q^{-s}) = (h q^{-g} / (1 - q^{-1})) / log q.
ScaledLimit curve_residue(const CurveZeta& c);

// Z(C, u) as a function of x = q^{-(s-1)} where u = q^{-e0} x^{e1}; this is
// the local building block for global intertwining constants.
RatFn zeta_in_x(const CurveZeta& c, int e0, int e1);

// Number of places of F_q(t) of each degree 1..D (degree 1 includes the
// place at infinity); D <= 30.
std::vector<Int> places_by_degree(long q, int D);

}  // namespace flagzeta
