#include "flagzeta/root_system.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace flagzeta {

namespace {

IMat family_cartan(char fam, int n) {
  IMat a(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto chain = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (fam) {
    case 'A':
      if (n < 1) throw std::invalid_argument("A rank must be >= 1");
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      break;
    case 'B':  // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
      if (n < 2) throw std::invalid_argument("B rank must be >= 2");
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      a[n - 1][n - 2] = -2;
      break;
    case 'C':  // alpha_n long
      if (n < 2) throw std::invalid_argument("C rank must be >= 2");
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      a[n - 2][n - 1] = -2;
      break;
    case 'D':
      if (n < 3) throw std::invalid_argument("D rank must be >= 3");
      for (int i = 0; i + 1 < n - 1; ++i) chain(i, i + 1);
      chain(n - 3, n - 1);
      break;
    case 'G':
      if (n != 2) throw std::invalid_argument("G rank must be 2");
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    default:
      throw std::invalid_argument("unknown family");
  }
  return a;
}

int height(const IVec& v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace

RootSystem build_root_system(const std::string& spec) {
  RootSystem rs;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t next = spec.find('x', pos);
    std::string tok = spec.substr(pos, next == std::string::npos ? next : next - pos);
    if (tok.size() < 2) throw std::invalid_argument("bad group spec: " + spec);
    char fam = tok[0];
    int n;
    try {
      size_t used;
      n = std::stoi(tok.substr(1), &used);
      if (used + 1 != tok.size()) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("bad group spec: " + spec);
    }
    rs.factors.push_back({fam, n});
    rs.rank += n;
    if (next != std::string::npos && next + 1 >= spec.size())
      throw std::invalid_argument("bad group spec: " + spec);
    pos = next == std::string::npos ? spec.size() : next + 1;
  }
  if (rs.factors.empty() || rs.rank > 6)
    throw std::invalid_argument("group spec empty or total rank > 6");

  rs.cartan.assign(rs.rank, IVec(rs.rank, 0));
  int off = 0;
  for (auto& f : rs.factors) {
    IMat a = family_cartan(f.family, f.rank);
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) rs.cartan[off + i][off + j] = a[i][j];
    off += f.rank;
  }

  // Positive roots by closure under simple reflections, coroots carried
  // along (the coroot of s_i(b) is s_i acting on b's coroot in the dual
  // Cartan).
  int n = rs.rank;
  std::map<IVec, IVec> seen;  // root -> coroot
  std::vector<IVec> queue;
  for (int i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    seen[e] = e;
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IVec r = queue.back();
    queue.pop_back();
    IVec cr = seen[r];
    for (int i = 0; i < n; ++i) {
      IVec nr = r, ncr = cr;
      int pr = 0, pc = 0;
      for (int j = 0; j < n; ++j) {
        pr += rs.cartan[i][j] * r[j];
        pc += rs.cartan[j][i] * cr[j];
      }
      nr[i] -= pr;
      ncr[i] -= pc;
      bool positive = true;
      for (int x : nr)
        if (x < 0) positive = false;
      if (positive && !seen.count(nr)) {
        seen[nr] = ncr;
        queue.push_back(nr);
      }
    }
  }
  std::vector<PosRoot> roots;
  for (auto& [r, cr] : seen) roots.push_back({r, cr});
  std::sort(roots.begin(), roots.end(), [](const PosRoot& a, const PosRoot& b) {
    int ha = height(a.root), hb = height(b.root);
    if (ha != hb) return ha < hb;
    return a.root > b.root;  // among simple roots keep e_0, e_1, ... order
  });
  rs.positive = std::move(roots);
  for (int i = 0; i < n; ++i)
    if (rs.positive[i].root[i] != 1 || height(rs.positive[i].root) != 1)
      throw std::logic_error("simple roots not leading the positive list");
  return rs;
}

WeylElt weyl_identity(const RootSystem& rs) {
  WeylElt w;
  w.root_action.assign(rs.rank, IVec(rs.rank, 0));
  for (int i = 0; i < rs.rank; ++i) w.root_action[i][i] = 1;
  return w;
}

WeylElt simple_reflection(const RootSystem& rs, int i) {
  if (i < 0 || i >= rs.rank) throw std::invalid_argument("bad simple index");
  WeylElt w = weyl_identity(rs);
  w.word = {i};
  for (int j = 0; j < rs.rank; ++j) w.root_action[i][j] -= rs.cartan[i][j];
  return w;
}

WeylElt weyl_mul(const RootSystem& rs, const WeylElt& a, const WeylElt& b) {
  WeylElt w;
  w.word = a.word;
  w.word.insert(w.word.end(), b.word.begin(), b.word.end());
  int n = rs.rank;
  w.root_action.assign(n, IVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a.root_action[i][k] == 0) continue;
      for (int j = 0; j < n; ++j)
        w.root_action[i][j] += a.root_action[i][k] * b.root_action[k][j];
    }
  return w;
}

std::vector<WeylElt> weyl_group(const RootSystem& rs) {
  std::vector<WeylElt> out;
  std::map<IMat, bool> seen;
  out.push_back(weyl_identity(rs));
  seen[out[0].root_action] = true;
  for (size_t head = 0; head < out.size(); ++head) {
    WeylElt w = out[head];
    for (int i = 0; i < rs.rank; ++i) {
      WeylElt nw = weyl_mul(rs, w, simple_reflection(rs, i));
      if (!seen.count(nw.root_action)) {
        seen[nw.root_action] = true;
        out.push_back(nw);
        if (out.size() > 100000)
          throw std::runtime_error("weyl_group: order exceeds 100000");
      }
    }
  }
  return out;
}

IVec act_root(const RootSystem& rs, const WeylElt& w, const IVec& v) {
  IVec out(rs.rank, 0);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) out[i] += w.root_action[i][j] * v[j];
  return out;
}

IVec act_weight(const RootSystem& rs, const WeylElt& w, const IVec& lambda) {
  // s_i on weight coords: lambda - lambda_i * (column i of cartan); apply
  // the word right to left.
  IVec v = lambda;
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    int i = *it;
    int li = v[i];
    if (li == 0) continue;
    for (int r = 0; r < rs.rank; ++r) v[r] -= rs.cartan[r][i] * li;
  }
  return v;
}

IVec inverted_roots(const RootSystem& rs, const WeylElt& w) {
  IVec out;
  for (size_t k = 0; k < rs.positive.size(); ++k) {
    IVec img = act_root(rs, w, rs.positive[k].root);
    bool neg = false, pos = false;
    for (int x : img) {
      if (x < 0) neg = true;
      if (x > 0) pos = true;
    }
    if (neg && pos) throw std::logic_error("root image with mixed signs");
    if (neg) out.push_back((int)k);
  }
  return out;
}

int weyl_length(const RootSystem& rs, const WeylElt& w) {
  return (int)inverted_roots(rs, w).size();
}

WeylElt longest_element(const RootSystem& rs, const IVec& J) {
  for (int j : J)
    if (j < 0 || j >= rs.rank) throw std::invalid_argument("bad index in J");
  WeylElt w = weyl_identity(rs);
  bool progress = true;
  while (progress) {
    progress = false;
    for (int j : J) {
      // l(w s_j) = l(w) + 1 iff w(alpha_j) > 0
      IVec img = act_root(rs, w, rs.positive[j].root);
      bool pos = false;
      for (int x : img)
        if (x > 0) pos = true;
      if (pos) {
        w = weyl_mul(rs, w, simple_reflection(rs, j));
        progress = true;
      }
    }
  }
  return w;
}

ParabolicDatum parabolic_datum(const RootSystem& rs, const IVec& I) {
  ParabolicDatum pd;
  pd.I = I;
  std::sort(pd.I.begin(), pd.I.end());
  if (std::unique(pd.I.begin(), pd.I.end()) != pd.I.end())
    throw std::invalid_argument("parabolic_datum: repeated index");
  for (int i : pd.I)
    if (i < 0 || i >= rs.rank)
      throw std::invalid_argument("parabolic_datum: index out of range");
  std::vector<bool> in_I(rs.rank, false);
  for (int i : pd.I) in_I[i] = true;
  for (int i = 0; i < rs.rank; ++i)
    if (!in_I[i]) pd.line.push_back(i);
  pd.t = (int)pd.line.size();
  if (pd.t == 0)
    throw std::invalid_argument("parabolic_datum: I must be a proper subset");

  IVec radical_sum(rs.rank, 0);
  for (size_t k = 0; k < rs.positive.size(); ++k) {
    bool levi = true;
    for (int j = 0; j < rs.rank; ++j)
      if (!in_I[j] && rs.positive[k].root[j] != 0) levi = false;
    if (levi) {
      pd.levi_pos.push_back((int)k);
    } else {
      pd.radical_pos.push_back((int)k);
      for (int j = 0; j < rs.rank; ++j) radical_sum[j] += rs.positive[k].root[j];
    }
  }
  pd.dim = (int)pd.radical_pos.size();

  // weight coordinates of 2 rho_P: pair the root-coordinate sum against
  // each simple coroot, i.e. apply the Cartan matrix.
  pd.two_rho_P.assign(rs.rank, 0);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j)
      pd.two_rho_P[i] += rs.cartan[i][j] * radical_sum[j];
  for (int i : pd.I)
    if (pd.two_rho_P[i] != 0)
      throw std::logic_error("2 rho_P not a character of the Levi");
  for (int a : pd.line) {
    if (pd.two_rho_P[a] < 2)
      throw std::logic_error("anticanonical pairing below 2");
    pd.anticanonical.push_back(pd.two_rho_P[a]);
  }
  return pd;
}

Poly poincare_polynomial(const RootSystem& rs, const IVec& I) {
  auto length_gf = [&](const IVec& gens) {
    std::map<IMat, int> seen;
    std::vector<std::pair<WeylElt, int>> queue;
    queue.push_back({weyl_identity(rs), 0});
    seen[queue[0].first.root_action] = 0;
    Poly gf;
    for (size_t head = 0; head < queue.size(); ++head) {
      auto [w, len] = queue[head];
      if (gf.deg() < len) gf.c.resize(len + 1, Rat(0));
      gf.c[len] += 1;
      for (int i : gens) {
        WeylElt nw = weyl_mul(rs, w, simple_reflection(rs, i));
        if (!seen.count(nw.root_action)) {
          seen[nw.root_action] = (int)queue.size();
          queue.push_back({nw, len + 1});
          if (queue.size() > 100000)
            throw std::runtime_error("poincare_polynomial: group too large");
        }
      }
    }
    return gf;
  };
  IVec all(rs.rank);
  std::iota(all.begin(), all.end(), 0);
  Poly w_gf = length_gf(all);
  Poly wi_gf = length_gf(I);
  Poly rem;
  Poly q = poly_divmod(w_gf, wi_gf, rem);
  if (!rem.is_zero())
    throw std::logic_error("poincare_polynomial: non-exact division");
  return q;
}

}  // namespace flagzeta
