#include "flagzeta/cone_lq.hpp"

#include <cmath>
#include <stdexcept>

namespace flagzeta {

LatticeCone orthant(int n) {
  LatticeCone c;
  c.dim = n;
  c.gens.assign(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) c.gens[i][i] = 1;
  return c;
}

namespace {

// Solves sum_i c_i gens[i] = a exactly; second return is |det gens|.
std::pair<std::vector<Rat>, Rat> solve_coords(const LatticeCone& cone,
                                              const IVec& a) {
  int n = cone.dim;
  if ((int)cone.gens.size() != n || (int)a.size() != n)
    throw std::invalid_argument("cone: dimension mismatch");
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rat(cone.gens[j][i]);
    m[i][n] = Rat(a[i]);
  }
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) {
      det = 0;
      break;
    }
    if (p != col) {
      std::swap(m[col], m[p]);
      det = -det;
    }
    det *= m[col][col];
    Rat inv = Rat(1) / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (int r = 0; r < n; ++r)
      if (r != col && m[r][col] != 0) {
        Rat f = m[r][col];
        for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
      }
  }
  if (det == 0) throw std::invalid_argument("cone: degenerate generators");
  std::vector<Rat> coords(n);
  for (int i = 0; i < n; ++i) coords[i] = m[i][n];
  if (det < 0) det = -det;
  return {coords, det};
}

}  // namespace

IVec cone_coords(const LatticeCone& cone, const IVec& a) {
  auto [coords, det] = solve_coords(cone, a);
  if (det != 1)
    throw std::invalid_argument("cone: generators not unimodular");
  IVec out;
  for (auto& c : coords) {
    if (denominator(c) != 1)
      throw std::logic_error("cone: non-integral coordinates");
    if (c < 1)
      throw std::invalid_argument("cone: class not interior");
    out.push_back((int)numerator(c));
  }
  return out;
}

Rat chi_value(const LatticeCone& cone, const IVec& a) {
  Rat v(1);
  for (int c : cone_coords(cone, a)) v /= c;
  return v;
}

RatFn lq_line(const LatticeCone& cone, const IVec& a, long q) {
  if (q < 2) throw std::invalid_argument("lq_line: q must be >= 2");
  IVec coords = cone_coords(cone, a);
  RatFn f(Rat(1));
  for (int c : coords) {
    Poly den;
    den.c.assign(c + 1, Rat(0));
    den.c[0] = 1;
    den.c[c] = -1;
    f = f * make_ratfn(Poly(Rat(1)), den);
  }
  return f;
}

double lq_bruteforce(const LatticeCone& cone, const IVec& a, long q, double s0,
                     int cap) {
  if (s0 <= 1.0) throw std::invalid_argument("lq_bruteforce: need s0 > 1");
  if (cap < 1) throw std::invalid_argument("lq_bruteforce: cap must be >= 1");
  int n = cone.dim;
  // The dual-cone points y with <y,a> <= cap have bounded pairings with
  // every generator, hence live in a computable coordinate box.
  auto [coords, det] = solve_coords(cone, a);
  (void)det;
  for (auto& c : coords)
    if (c < 1) throw std::invalid_argument("lq_bruteforce: class not interior");
  // invert gens^T to bound |y_j| by cap * max row sum of the inverse
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) inv[i][j] = Rat(cone.gens[i][j]);
    inv[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (inv[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) throw std::invalid_argument("lq_bruteforce: degenerate cone");
    std::swap(inv[col], inv[p]);
    Rat s = Rat(1) / inv[col][col];
    for (auto& x : inv[col]) x *= s;
    for (int r = 0; r < n; ++r)
      if (r != col && inv[r][col] != 0) {
        Rat f = inv[r][col];
        for (int c = 0; c < 2 * n; ++c) inv[r][c] -= f * inv[col][c];
      }
  }
  Rat abs_sum(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = inv[i][n + j];
      abs_sum += v < 0 ? -v : v;
    }
  Rat b = abs_sum * cap;
  long bound = (long)(numerator(b) / denominator(b)) + 1;

  double total = 0.0;
  IVec y(n, 0);
  auto pair_with = [&](const IVec& v) {
    long s = 0;
    for (int i = 0; i < n; ++i) s += (long)y[i] * v[i];
    return s;
  };
  // odometer over the box [-bound, bound]^n
  for (int i = 0; i < n; ++i) y[i] = (int)-bound;
  while (true) {
    bool inside = true;
    for (int i = 0; i < n && inside; ++i)
      if (pair_with(cone.gens[i]) < 0) inside = false;
    if (inside) {
      long w = pair_with(a);
      if (w <= cap) total += std::pow((double)q, -s0 * (double)w);
    }
    int k = 0;
    while (k < n && y[k] == (int)bound) {
      y[k] = (int)-bound;
      ++k;
    }
    if (k == n) break;
    ++y[k];
  }
  return total;
}

Rat alpha_star(const ParabolicDatum& pd) {
  Rat v(1);
  for (int a : pd.anticanonical) v /= a;
  return v;
}

}  // namespace flagzeta
