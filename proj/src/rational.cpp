#include "flagzeta/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace flagzeta {

Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: 0 to negative power");
    return Rat(1) / rat_pow(base, -e);
  }
  Rat r(1), b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Poly::Poly(const Rat& k) {
  if (k != 0) c.push_back(k);
}

Poly Poly::monomial(const Rat& k, int d) {
  Poly p;
  if (k != 0) {
    p.c.assign(d + 1, Rat(0));
    p.c[d] = k;
  }
  return p;
}

Rat Poly::at(int i) const {
  if (i < 0 || i >= (int)c.size()) return Rat(0);
  return c[i];
}

Rat Poly::eval(const Rat& x) const {
  Rat v(0);
  for (int i = deg(); i >= 0; --i) v = v * x + c[i];
  return v;
}

void Poly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(i) + b.at(i);
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(i) - b.at(i);
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

Poly operator*(const Rat& k, const Poly& a) {
  if (k == 0) return Poly();
  Poly r = a;
  for (auto& x : r.c) x *= k;
  return r;
}

Poly poly_divmod(const Poly& a, const Poly& b, Poly& rem) {
  if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero");
  Poly q;
  rem = a;
  if (a.deg() < b.deg()) return q;
  q.c.assign(a.deg() - b.deg() + 1, Rat(0));
  Rat lead = b.c.back();
  while (!rem.is_zero() && rem.deg() >= b.deg()) {
    int k = rem.deg() - b.deg();
    Rat f = rem.c.back() / lead;
    q.c[k] = f;
    for (int i = 0; i <= b.deg(); ++i) rem.c[k + i] -= f * b.c[i];
    rem.trim();
  }
  q.trim();
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r;
    poly_divmod(a, b, r);
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = (Rat(1) / a.c.back()) * a;
  return a;
}

Poly poly_pow(const Poly& a, int e) {
  if (e < 0) throw std::domain_error("poly_pow: negative exponent");
  Poly r{Rat(1)};
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

RatFn::RatFn() : den(Rat(1)) {}
RatFn::RatFn(const Rat& k) : num(k), den(Rat(1)) {}

RatFn make_ratfn(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("make_ratfn: zero denominator");
  if (num.is_zero()) return RatFn();
  Poly g = poly_gcd(num, den);
  if (g.deg() > 0) {
    Poly r;
    num = poly_divmod(num, g, r);
    den = poly_divmod(den, g, r);
  }
  Rat lead = den.c.back();
  RatFn f;
  f.num = (Rat(1) / lead) * num;
  f.den = (Rat(1) / lead) * den;
  return f;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
  return make_ratfn(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFn operator-(const RatFn& a, const RatFn& b) {
  return make_ratfn(a.num * b.den - b.num * a.den, a.den * b.den);
}

RatFn operator*(const RatFn& a, const RatFn& b) {
  return make_ratfn(a.num * b.num, a.den * b.den);
}

RatFn operator/(const RatFn& a, const RatFn& b) {
  if (b.is_zero()) throw std::domain_error("RatFn: division by zero");
  return make_ratfn(a.num * b.den, a.den * b.num);
}

namespace {

// p(coeff * x^m) with denominators x^{-m deg p} cleared; returns the pair
// (numerator poly, power of x to divide by).
std::pair<Poly, int> subst_poly(const Poly& p, const Rat& coeff, int power) {
  if (p.is_zero()) return {Poly(), 0};
  int d = p.deg();
  Poly out;
  if (power >= 0) {
    out.c.assign(d * power + 1, Rat(0));
    Rat cp(1);
    for (int i = 0; i <= d; ++i) {
      out.c[i * power] += p.c[i] * cp;
      cp *= coeff;
    }
    if (power == 0) {
      out.c.resize(1);
      out.c[0] = p.eval(coeff);
    }
    out.trim();
    return {out, 0};
  }
  int m = -power;
  out.c.assign(d * m + 1, Rat(0));
  Rat cp(1);
  for (int i = 0; i <= d; ++i) {
    out.c[(d - i) * m] += p.c[i] * cp;
    cp *= coeff;
  }
  out.trim();
  return {out, d * m};
}

}  // namespace

RatFn substitute_monomial(const RatFn& f, const Rat& coeff, int power) {
  auto [n, sn] = subst_poly(f.num, coeff, power);
  auto [d, sd] = subst_poly(f.den, coeff, power);
  if (sn < sd)
    n = n * Poly::monomial(Rat(1), sd - sn);
  else if (sd < sn)
    d = d * Poly::monomial(Rat(1), sn - sd);
  return make_ratfn(n, d);
}

namespace {

// Splits off the (x - c)-part: p = (x - c)^k * rest with rest(c) != 0.
int strip_root(Poly& p, const Rat& c) {
  int k = 0;
  Poly lin;
  lin.c = {-c, Rat(1)};
  while (!p.is_zero() && p.eval(c) == 0) {
    Poly r;
    p = poly_divmod(p, lin, r);
    ++k;
  }
  return k;
}

}  // namespace

int order_at(const RatFn& f, const Rat& c) {
  if (f.is_zero()) throw std::domain_error("order_at: zero function");
  Poly n = f.num, d = f.den;
  return strip_root(n, c) - strip_root(d, c);
}

Rat eval_at(const RatFn& f, const Rat& x) {
  Rat d = f.den.eval(x);
  if (d == 0) throw std::domain_error("eval_at: pole");
  return f.num.eval(x) / d;
}

std::vector<Rat> series_coeffs(const RatFn& f, int count) {
  if (count < 0) throw std::invalid_argument("series_coeffs: negative count");
  if (f.den.at(0) == 0)
    throw std::domain_error("series_coeffs: denominator vanishes at 0");
  std::vector<Rat> out(count, Rat(0));
  Rat b0 = f.den.at(0);
  for (int k = 0; k < count; ++k) {
    Rat v = f.num.at(k);
    for (int j = 1; j <= std::min(k, f.den.deg()); ++j)
      v -= f.den.at(j) * out[k - j];
    out[k] = v / b0;
  }
  return out;
}

ScaledLimit operator*(const ScaledLimit& a, const ScaledLimit& b) {
  return ScaledLimit(a.coeff * b.coeff, a.logq_pow + b.logq_pow);
}

ScaledLimit operator/(const ScaledLimit& a, const ScaledLimit& b) {
  if (b.coeff == 0) throw std::domain_error("ScaledLimit: division by zero");
  return ScaledLimit(a.coeff / b.coeff, a.logq_pow - b.logq_pow);
}

ScaledLimit operator*(const Rat& k, const ScaledLimit& a) {
  return ScaledLimit(k * a.coeff, a.logq_pow);
}

ScaledLimit sl_pow(const ScaledLimit& a, int e) {
  if (e < 0) {
    if (a.coeff == 0) throw std::domain_error("sl_pow: zero base");
    return ScaledLimit(rat_pow(a.coeff, e), a.logq_pow * e);
  }
  return ScaledLimit(rat_pow(a.coeff, e), a.logq_pow * e);
}

ScaledLimit s_limit(const RatFn& f, int k) {
  if (k < 0) throw std::invalid_argument("s_limit: negative order");
  if (f.is_zero()) return ScaledLimit();
  Poly n = f.num, d = f.den;
  int ord = strip_root(n, Rat(1)) - strip_root(d, Rat(1));
  if (-ord > k) throw std::domain_error("s_limit: pole order exceeds k");
  if (-ord < k) return ScaledLimit();
  // f = (x-1)^ord * n/d near 1, so (1-x)^k f -> (-1)^k n(1)/d(1).
  Rat v = n.eval(Rat(1)) / d.eval(Rat(1));
  if (k % 2) v = -v;
  return ScaledLimit(v, -k);
}

std::optional<RatFn> fit_rational(const std::vector<Rat>& coeffs,
                                  int max_den_degree) {
  if (max_den_degree < 0)
    throw std::invalid_argument("fit_rational: negative denominator degree");
  int m = (int)coeffs.size() - 1;
  if (m + 1 < 2 * max_den_degree + 2)
    throw std::invalid_argument("fit_rational: too few coefficients");

  for (int d = max_den_degree; d >= 0; --d) {
    // Candidate denominator 1 + b_1 x + ... + b_d x^d, numerator degree
    // bounded so the last two coefficients stay out of the linear solve.
    int nd = m - d - 2;
    if (nd < -1) continue;

    // Solve (b*c)_k = 0 for k = nd+1 .. nd+d (a d x d system).
    std::vector<std::vector<Rat>> mat(d, std::vector<Rat>(d + 1, Rat(0)));
    for (int row = 0; row < d; ++row) {
      int k = nd + 1 + row;
      for (int j = 1; j <= d; ++j)
        mat[row][j - 1] = (k - j >= 0) ? coeffs[k - j] : Rat(0);
      mat[row][d] = -coeffs[k];
    }
    std::vector<Rat> b(d + 1, Rat(0));
    b[0] = 1;
    bool ok = true;
    {
      int rank = 0;
      std::vector<int> pivot_col(d, -1);
      for (int col = 0; col < d && rank < d; ++col) {
        int p = -1;
        for (int r = rank; r < d; ++r)
          if (mat[r][col] != 0) {
            p = r;
            break;
          }
        if (p < 0) continue;
        std::swap(mat[rank], mat[p]);
        Rat inv = Rat(1) / mat[rank][col];
        for (auto& x : mat[rank]) x *= inv;
        for (int r = 0; r < d; ++r)
          if (r != rank && mat[r][col] != 0) {
            Rat f = mat[r][col];
            for (int cc = col; cc <= d; ++cc) mat[r][cc] -= f * mat[rank][cc];
          }
        pivot_col[rank] = col;
        ++rank;
      }
      for (int r = rank; r < d; ++r)
        if (mat[r][d] != 0) ok = false;  // inconsistent
      if (ok)
        for (int r = 0; r < rank; ++r) b[pivot_col[r] + 1] = mat[r][d];
    }
    if (!ok) continue;

    // Numerator from the low-order convolution, then verify everything.
    Poly den;
    den.c = b;
    den.trim();
    Poly num;
    num.c.assign(std::max(nd + 1, 0), Rat(0));
    for (int k = 0; k <= nd; ++k) {
      Rat v(0);
      for (int j = 0; j <= std::min(k, d); ++j) v += b[j] * coeffs[k - j];
      num.c[k] = v;
    }
    num.trim();
    RatFn f = make_ratfn(num, den);
    std::vector<Rat> back = series_coeffs(f, m + 1);
    bool match = true;
    for (int k = 0; k <= m; ++k)
      if (back[k] != coeffs[k]) {
        match = false;
        break;
      }
    if (match) return f;
  }
  return std::nullopt;
}

}  // namespace flagzeta
