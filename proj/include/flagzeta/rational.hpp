#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace flagzeta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Rat rat_pow(const Rat& base, long e);
std::string rat_str(const Rat& r);

// Dense univariate polynomial over Q. Coefficients ascending, no trailing
// zeros; the zero polynomial has an empty coefficient vector (deg() == -1).
struct Poly {
  std::vector<Rat> c;

  Poly() = default;
  explicit Poly(const Rat& k);
  static Poly monomial(const Rat& k, int d);

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Rat at(int i) const;
  Rat eval(const Rat& x) const;
  void trim();

  bool operator==(const Poly&) const = default;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Rat& k, const Poly& a);
Poly poly_divmod(const Poly& a, const Poly& b, Poly& rem);
Poly poly_gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
Poly poly_pow(const Poly& a, int e);

// Rational function num/den in one variable, always canonical: den monic,
// gcd(num, den) = 1, zero stored as 0/1.
struct RatFn {
  Poly num, den;
  RatFn();
  explicit RatFn(const Rat& k);
  bool is_zero() const { return num.is_zero(); }
  bool operator==(const RatFn&) const = default;
};

RatFn make_ratfn(Poly num, Poly den);
RatFn operator+(const RatFn& a, const RatFn& b);
RatFn operator-(const RatFn& a, const RatFn& b);
RatFn operator*(const RatFn& a, const RatFn& b);
RatFn operator/(const RatFn& a, const RatFn& b);

// Substitute x -> coeff * x^power (power may be negative; denominators are
// cleared so the result is again a polynomial ratio).
RatFn substitute_monomial(const RatFn& f, const Rat& coeff, int power);

// Vanishing order of f at x = c: positive for zeros, negative for poles.
// Throws on f = 0.
int order_at(const RatFn& f, const Rat& c);
Rat eval_at(const RatFn& f, const Rat& x);

// Taylor coefficients at 0; requires den(0) != 0.
std::vector<Rat> series_coeffs(const RatFn& f, int count);

// An exact limit value of the form coeff * (log q)^logq_pow, used for
// residues in the height variable s where 1 - x ~ (s-1) log q near x = 1.
// The zero limit is canonically (0, 0).
struct ScaledLimit {
  Rat coeff;
  int logq_pow = 0;
  ScaledLimit() : coeff(0) {}
  ScaledLimit(const Rat& c, int p) : coeff(c), logq_pow(c == 0 ? 0 : p) {}
  bool operator==(const ScaledLimit&) const = default;
};

ScaledLimit operator*(const ScaledLimit& a, const ScaledLimit& b);
ScaledLimit operator/(const ScaledLimit& a, const ScaledLimit& b);
ScaledLimit operator*(const Rat& k, const ScaledLimit& a);
ScaledLimit sl_pow(const ScaledLimit& a, int e);

// lim_{x->1} (1-x)^k f(x) as a ScaledLimit with logq_pow = -k, i.e. the
// value of lim_{s->1} (s-1)^k f(q^{-(s-1)}).  Returns the canonical zero
// when the pole order at 1 is below k; throws when it exceeds k.
ScaledLimit s_limit(const RatFn& f, int k);

// Reconstruct a rational function from initial Taylor coefficients.
// Tries denominator degrees max_den_degree down to 0 and returns the first
// candidate that reproduces every supplied coefficient (candidates reduce,
// so extra denominator room is harmless, while windows ending in zeros
// would fool a low-degree polynomial fit tried first); at least the last
// two coefficients are never used by the solver, only for checking.
// Requires coeffs.size() >= 2*max_den_degree + 2.  nullopt = no fit.
std::optional<RatFn> fit_rational(const std::vector<Rat>& coeffs,
                                  int max_den_degree);

}  // namespace flagzeta
