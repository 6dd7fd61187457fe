#include "flagzeta/counter.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace flagzeta {

// ----- finite fields -----

GfTable make_field(long q) {
  if (q < 2 || q > 121) throw std::invalid_argument("make_field: q out of range");
  long p = 0;
  for (long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q;
  int k = 0;
  long m = q;
  while (m > 1) {
    if (m % p) throw std::invalid_argument("make_field: q not a prime power");
    m /= p;
    ++k;
  }
  GfTable gf;
  gf.q = q;
  gf.p = p;
  gf.k = k;
  gf.add_t.assign((size_t)q * q, 0);
  gf.mul_t.assign((size_t)q * q, 0);
  gf.inv_t.assign(q, 0);
  gf.neg_t.assign(q, 0);

  // elements are base-p digit codes; for k > 1 pick the first irreducible
  // monic of degree k by sieving monic products
  auto digits = [&](long code) {
    std::vector<int> d(k + 1, 0);
    for (int i = 0; i <= k; ++i) {
      d[i] = (int)(code % p);
      code /= p;
    }
    return d;
  };
  std::vector<int> irr;
  if (k > 1) {
    std::vector<long> powp(k + 1, 1);
    for (int i = 1; i <= k; ++i) powp[i] = powp[i - 1] * p;
    std::vector<char> comp(2 * q, 0);
    for (int dg = 1; dg <= k / 2; ++dg) {
      int dh = k - dg;
      for (long g = powp[dg]; g < 2 * powp[dg]; ++g)
        for (long h = powp[dh]; h < 2 * powp[dh]; ++h) {
          auto a = digits(g), b = digits(h);
          std::vector<int> c(k + 1, 0);
          for (int i = 0; i <= dg; ++i)
            for (int j = 0; j <= dh; ++j)
              c[i + j] = (c[i + j] + a[i] * b[j]) % (int)p;
          long code = 0;
          for (int i = k; i >= 0; --i) code = code * p + c[i];
          comp[code] = 1;
        }
    }
    for (long c = q; c < 2 * q; ++c)
      if (!comp[c]) {
        irr = digits(c);
        break;
      }
  }
  auto mulmod = [&](long a, long b) {
    auto da = digits(a), db = digits(b);
    std::vector<int> c(2 * k + 1, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) c[i + j] = (c[i + j] + da[i] * db[j]) % (int)p;
    for (int i = 2 * k - 2; i >= k; --i)
      if (c[i]) {
        int f = c[i];
        for (int j = 0; j <= k; ++j) {
          int v = (c[i - k + j] - f * irr[j]) % (int)p;
          c[i - k + j] = v < 0 ? v + (int)p : v;
        }
      }
    long code = 0;
    for (int i = k - 1; i >= 0; --i) code = code * p + c[i];
    return code;
  };
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      long s = 0, f = 1, x = a, y = b;
      for (int i = 0; i < k; ++i) {
        s += f * ((x % p + y % p) % p);
        x /= p;
        y /= p;
        f *= p;
      }
      gf.add_t[(size_t)a * q + b] = (uint8_t)s;
      gf.mul_t[(size_t)a * q + b] = (uint8_t)(k == 1 ? (a * b) % p : mulmod(a, b));
    }
  for (long a = 0; a < q; ++a) {
    long s = 0, f = 1, x = a;
    for (int i = 0; i < k; ++i) {
      s += f * ((p - x % p) % p);
      x /= p;
      f *= p;
    }
    gf.neg_t[a] = (uint8_t)s;
  }
  for (long a = 1; a < q; ++a)
    for (long b = 1; b < q; ++b)
      if (gf.mul_t[(size_t)a * q + b] == 1) {
        gf.inv_t[a] = (uint8_t)b;
        break;
      }
  for (long a = 1; a < q; ++a)
    if (!gf.inv_t[a]) throw std::logic_error("make_field: not a field");
  return gf;
}

// ----- polynomial helpers -----

int fdeg(const Fpoly& f) { return (int)f.size() - 1; }

static void ftrim(Fpoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Fpoly fmul(const GfTable& gf, const Fpoly& a, const Fpoly& b) {
  if (a.empty() || b.empty()) return {};
  Fpoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = gf.add(c[i + j], gf.mul(a[i], b[j]));
  }
  return c;
}

Fpoly fmod(const GfTable& gf, Fpoly a, const Fpoly& b) {
  if (b.empty()) throw std::invalid_argument("fmod: zero divisor");
  int db = fdeg(b);
  uint8_t lead_inv = gf.inv(b.back());
  while (fdeg(a) >= db) {
    int da = fdeg(a);
    uint8_t c = gf.mul(a.back(), lead_inv);
    for (int j = 0; j <= db; ++j)
      a[da - db + j] = gf.add(a[da - db + j], gf.neg(gf.mul(c, b[j])));
    ftrim(a);
  }
  return a;
}

Fpoly fgcd(const GfTable& gf, Fpoly a, Fpoly b) {
  while (!b.empty()) {
    Fpoly r = fmod(gf, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    uint8_t s = gf.inv(a.back());
    for (auto& c : a) c = gf.mul(c, s);
  }
  return a;
}

// exact quotient of monic polynomials
static Fpoly fdiv_exact(const GfTable& gf, Fpoly a, const Fpoly& b) {
  int db = fdeg(b);
  uint8_t lead_inv = gf.inv(b.back());
  Fpoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (fdeg(a) >= db) {
    int da = fdeg(a);
    uint8_t c = gf.mul(a.back(), lead_inv);
    q[da - db] = c;
    for (int j = 0; j <= db; ++j)
      a[da - db + j] = gf.add(a[da - db + j], gf.neg(gf.mul(c, b[j])));
    ftrim(a);
  }
  if (!a.empty()) throw std::logic_error("fdiv_exact: not divisible");
  return q;
}

// Euclid on raw digit buffers; the gcd of (A, da) and (x, dx) ends up in A
// and its degree is returned; scratch must hold dx+1 digits
static int raw_gcd(const GfTable& gf, uint8_t* A, int da, const uint8_t* x,
                   int dx, uint8_t* scratch) {
  if (dx < 0) return da;
  if (da < 0) {
    std::memcpy(A, x, dx + 1);
    return dx;
  }
  std::memcpy(scratch, x, dx + 1);
  uint8_t* pa = A;
  int la = da;
  uint8_t* pb = scratch;
  int lb = dx;
  while (lb >= 0) {
    uint8_t lead_inv = gf.inv(pb[lb]);
    while (la >= lb) {
      uint8_t c = gf.mul(pa[la], lead_inv);
      if (c) {
        int sh = la - lb;
        for (int j = 0; j < lb; ++j)
          pa[sh + j] = gf.add(pa[sh + j], gf.neg(gf.mul(c, pb[j])));
      }
      --la;
      while (la >= 0 && pa[la] == 0) --la;
    }
    std::swap(pa, pb);
    std::swap(la, lb);
  }
  if (pa != A) std::memcpy(A, pa, la + 1);
  return la;
}

long long CountTable::at(const IVec& d) const {
  auto it = counts.find(d);
  return it == counts.end() ? 0 : it->second;
}

// ----- caps -----

double work_cap() {
  const char* s = std::getenv("FLAGZETA_WORKCAP");
  if (!s || !*s) return 36.0;
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || v < 1.0)
    throw std::runtime_error("FLAGZETA_WORKCAP must be a positive number");
  return v;
}

static void check_cost(int n, long q, int D) {
  if (n < 1 || D < 0 || q < 2)
    throw std::invalid_argument("enumeration: bad n, q or D");
  double cost = (n + 1.0) * (D + 1.0) * std::log2((double)q);
  double cap = work_cap();
  if (cost > cap + 1e-9)
    throw std::runtime_error("work cap exceeded: (n+1)(D+1)log2(q) = " +
                             std::to_string(cost) + " > " +
                             std::to_string(cap));
}

// ----- canonical tuple scan -----

namespace {

struct MonicIndex {
  long q;
  int maxdeg;
  std::vector<size_t> cum;  // cum[e] = number of monics of degree < e

  MonicIndex(long q_, int maxdeg_) : q(q_), maxdeg(maxdeg_) {
    cum.assign(maxdeg + 2, 0);
    size_t pw = 1;
    for (int e = 0; e <= maxdeg; ++e) {
      cum[e + 1] = cum[e] + pw;
      pw *= q;
    }
  }
  size_t total() const { return cum[maxdeg + 1]; }
  int decode(size_t idx, uint8_t* out) const {
    int e = 0;
    while (idx >= cum[e + 1]) ++e;
    size_t rem = idx - cum[e];
    for (int i = 0; i < e; ++i) {
      out[i] = (uint8_t)(rem % q);
      rem /= q;
    }
    out[e] = 1;
    return e;
  }
};

// visits every canonical coprime tuple with max degree exactly d, first
// nonzero coordinate p and monic lead index in [lo, hi);
// visit(lead_digits, lead_deg, tails, tail_degs)
template <class F>
void scan_chunk(const GfTable& gf, int n, int d, int p, const MonicIndex& mi,
                size_t lo, size_t hi, F&& visit) {
  long q = gf.q;
  int ntail = n - p;
  std::vector<std::vector<uint8_t>> tails(ntail, std::vector<uint8_t>(d + 1, 0));
  std::vector<int> tdeg(ntail, -1);
  std::vector<uint8_t> lead(d + 1, 0);
  std::vector<uint8_t> s1(d + 2), s2(d + 2);
  for (size_t li = lo; li < hi; ++li) {
    int e = mi.decode(li, lead.data());
    for (auto& tl : tails) std::fill(tl.begin(), tl.end(), 0);
    std::fill(tdeg.begin(), tdeg.end(), -1);
    while (true) {
      int maxd = e;
      for (int c = 0; c < ntail; ++c) maxd = std::max(maxd, tdeg[c]);
      if (maxd == d) {
        std::memcpy(s1.data(), lead.data(), e + 1);
        int dg = e;
        for (int c = 0; c < ntail && dg != 0; ++c)
          if (tdeg[c] >= 0)
            dg = raw_gcd(gf, s1.data(), dg, tails[c].data(), tdeg[c], s2.data());
        if (dg == 0) visit(lead.data(), e, tails, tdeg);
      }
      // tail odometer; degrees follow the carry chain
      int c = 0, j = 0;
      bool done = false;
      while (true) {
        if (c == ntail) {
          done = true;
          break;
        }
        if ((long)(++tails[c][j]) < q) {
          if (j > tdeg[c]) tdeg[c] = j;
          for (int c2 = 0; c2 < c; ++c2) tdeg[c2] = -1;
          break;
        }
        tails[c][j] = 0;
        if (j == tdeg[c]) {
          int jj = j - 1;
          while (jj >= 0 && tails[c][jj] == 0) --jj;
          tdeg[c] = jj;
        }
        if (++j > d) {
          j = 0;
          ++c;
        }
      }
      if (done) break;
    }
  }
}

}  // namespace

// ----- rank-1 coprimality sieve -----

namespace {

size_t ipow_sz(long b, int e) {
  size_t r = 1;
  while (e-- > 0) r *= (size_t)b;
  return r;
}

// base-q integer codes for polynomials, digit i = coefficient of t^i
Fpoly code_decode(long q, size_t c) {
  Fpoly f;
  while (c) {
    f.push_back((uint8_t)(c % q));
    c /= q;
  }
  return f;
}

size_t code_encode(long q, const Fpoly& f) {
  size_t c = 0;
  for (size_t i = f.size(); i-- > 0;) c = c * q + f[i];
  return c;
}

// a prime divisor for every monic code of positive degree
std::vector<uint32_t> build_spf(const GfTable& gf, int D) {
  long q = gf.q;
  std::vector<uint32_t> spf(ipow_sz(q, D + 1), 0);
  for (int e = 1; e <= D; ++e) {
    size_t base = ipow_sz(q, e);
    for (size_t c = base; c < 2 * base; ++c) {
      if (spf[c]) continue;  // composite, a smaller prime factor is known
      Fpoly P = code_decode(q, c);
      for (int eu = 0; eu + e <= D; ++eu) {
        size_t ub = ipow_sz(q, eu);
        for (size_t u = ub; u < 2 * ub; ++u) {
          size_t m = code_encode(q, fmul(gf, P, code_decode(q, u)));
          if (!spf[m]) spf[m] = (uint32_t)c;
        }
      }
    }
  }
  return spf;
}

template <long Q>
constexpr int lane_bits() {
  return Q == 2 ? 1 : (Q == 5 ? 3 : 2);
}

template <long Q>
inline uint64_t lane_add(uint64_t a, uint64_t b) {
  if constexpr (Q == 2 || Q == 4) {
    return a ^ b;
  } else {
    constexpr uint64_t ONE = 0x1111111111111111ull;
    constexpr uint64_t HI = 0x8888888888888888ull;
    uint64_t s = a + b;
    uint64_t m = ((s + (8 - Q) * ONE) & HI) >> 3;
    return s - m * Q;
  }
}

template <long Q>
inline uint64_t lane_index(uint64_t x) {
  if constexpr (Q == 2) {
    return x;
  } else {
    constexpr uint64_t MASK =
        Q == 5 ? 0x7777777777777777ull : 0x3333333333333333ull;
#if defined(__BMI2__)
    return _pext_u64(x, MASK);
#else
    constexpr int BITS = lane_bits<Q>();
    uint64_t out = 0;
    int pos = 0;
    for (int i = 0; i < 16; ++i) {
      out |= ((x >> (4 * i)) & ((1u << BITS) - 1)) << pos;
      pos += BITS;
    }
    return out;
#endif
  }
}

template <long Q>
uint64_t lane_pack(const Fpoly& f) {
  uint64_t w = 0;
  for (size_t i = 0; i < f.size(); ++i)
    w |= (uint64_t)f[i] << (Q == 2 ? i : 4 * i);
  return w;
}

// marks every multiple P*u with deg u <= i; mult[i*Q + m] is the packed
// scalar multiple m*P shifted up i lanes, so nonprime fields work too
template <long Q>
void mark_span(std::vector<uint64_t>& bm, const uint64_t* mult, int i,
               uint64_t cur) {
  if (i == 0) {
    for (int m = 0; m < Q; ++m) {
      uint64_t idx = lane_index<Q>(lane_add<Q>(cur, mult[m]));
      bm[idx >> 6] |= 1ull << (idx & 63);
    }
    return;
  }
  for (int m = 0; m < Q; ++m)
    mark_span<Q>(bm, mult, i - 1, lane_add<Q>(cur, mult[(size_t)i * Q + m]));
}

template <long Q>
void sieve_range(const GfTable& gf, int D, const std::vector<uint32_t>& spf,
                 const std::vector<size_t>& monics, size_t lo, size_t hi,
                 std::vector<long long>& N) {
  constexpr int BITS = lane_bits<Q>();
  const int lane_shift = Q == 2 ? 1 : 4;
  size_t nbits = (size_t)1 << (BITS * (D + 1));
  std::vector<uint64_t> bm((nbits + 63) / 64, 0);
  std::vector<long long> qpow(D + 1);  // q^{j+1}
  {
    long long pw = 1;
    for (int j = 0; j <= D; ++j) {
      pw *= Q;
      qpow[j] = pw;
    }
  }
  std::vector<long long> cum(D + 1);
  std::vector<uint64_t> mult((size_t)(D + 1) * Q);
  for (size_t ai = lo; ai < hi; ++ai) {
    Fpoly a = code_decode(Q, monics[ai]);
    int e = fdeg(a);
    std::fill(bm.begin(), bm.end(), 0);
    Fpoly rest = a;
    while (fdeg(rest) > 0) {
      uint32_t pc = spf[code_encode(Q, rest)];
      Fpoly P = code_decode(Q, pc);
      do {
        rest = fdiv_exact(gf, rest, P);
      } while (fdeg(rest) >= fdeg(P) && fmod(gf, rest, P).empty());
      int s = D - fdeg(P);
      for (int m = 0; m < Q; ++m) {
        Fpoly mP(P.size());
        for (size_t ci = 0; ci < P.size(); ++ci)
          mP[ci] = gf.mul((uint8_t)m, P[ci]);
        uint64_t w = lane_pack<Q>(mP);
        for (int i = 0; i <= s; ++i)
          mult[(size_t)i * Q + m] = w << (lane_shift * i);
      }
      mark_span<Q>(bm, mult.data(), s, 0);
    }
    // prefix popcounts at the degree breakpoints
    long long running = 0;
    size_t wpos = 0;
    for (int j = 0; j <= D; ++j) {
      size_t bp = (size_t)1 << (BITS * (j + 1));
      size_t full = bp >> 6;
      while (wpos < full) running += std::popcount(bm[wpos++]);
      long long cnt = running;
      int part = (int)(bp & 63);
      if (part) cnt += std::popcount(bm[full] & (((uint64_t)1 << part) - 1));
      cum[j] = cnt;
    }
    N[e] += qpow[e] - cum[e];
    for (int d = e + 1; d <= D; ++d)
      N[d] += (qpow[d] - qpow[d - 1]) - (cum[d] - cum[d - 1]);
  }
}

template <long Q>
CountTable p1_sieve(const GfTable& gf, int D, int jobs) {
  std::vector<uint32_t> spf = build_spf(gf, D);
  std::vector<size_t> monics;
  for (int e = 0; e <= D; ++e) {
    size_t base = ipow_sz(Q, e);
    for (size_t c = base; c < 2 * base; ++c) monics.push_back(c);
  }
  std::vector<std::vector<long long>> results(jobs,
                                              std::vector<long long>(D + 1, 0));
  if (jobs == 1) {
    sieve_range<Q>(gf, D, spf, monics, 0, monics.size(), results[0]);
  } else {
    std::vector<std::thread> th;
    size_t chunk = (monics.size() + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      size_t lo = std::min(monics.size(), w * chunk);
      size_t hi = std::min(monics.size(), lo + chunk);
      th.emplace_back([&, w, lo, hi] {
        sieve_range<Q>(gf, D, spf, monics, lo, hi, results[w]);
      });
    }
    for (auto& t : th) t.join();
  }
  CountTable out;
  out.rank = 1;
  out.max_degrees = {D};
  std::vector<long long> N(D + 1, 0);
  for (auto& r : results)
    for (int d = 0; d <= D; ++d) N[d] += r[d];
  N[0] += 1;  // the point (0:1)
  for (int d = 0; d <= D; ++d) out.counts[{d}] = N[d];
  return out;
}

}  // namespace

// ----- public enumeration -----

static CountTable naive_projective(const GfTable& gf, int n, int D, int jobs) {
  CountTable out;
  out.rank = 1;
  out.max_degrees = {D};
  std::vector<long long> N(D + 1, 0);
  for (int d = 0; d <= D; ++d) {
    MonicIndex mi(gf.q, d);
    for (int p = 0; p <= n; ++p) {
      size_t total = mi.total();
      int J = jobs;
      if ((size_t)J > total) J = (int)total;
      std::vector<long long> partial(J, 0);
      auto run = [&](int w, size_t lo, size_t hi) {
        long long cnt = 0;
        scan_chunk(gf, n, d, p, mi, lo, hi,
                   [&](const uint8_t*, int, const auto&, const auto&) { ++cnt; });
        partial[w] = cnt;
      };
      if (J == 1) {
        run(0, 0, total);
      } else {
        std::vector<std::thread> th;
        size_t chunk = (total + J - 1) / J;
        for (int w = 0; w < J; ++w) {
          size_t lo = std::min(total, w * chunk);
          size_t hi = std::min(total, lo + chunk);
          th.emplace_back(run, w, lo, hi);
        }
        for (auto& t : th) t.join();
      }
      for (long long c : partial) N[d] += c;
    }
  }
  for (int d = 0; d <= D; ++d) out.counts[{d}] = N[d];
  return out;
}

CountTable enumerate_projective(int n, long q, int D, int jobs) {
  check_cost(n, q, D);
  if (jobs < 1 || jobs > 64)
    throw std::invalid_argument("enumerate_projective: jobs in 1..64");
  GfTable gf = make_field(q);
  double scans = std::pow((double)q, (double)(n + 1) * (D + 1)) / (q - 1);
  if (n == 1 && scans > 2e7 && q <= 5) {
    int bits = q == 2 ? 1 : (q == 5 ? 3 : 2);
    bool fits = bits * (D + 1) <= 28 && (q == 2 || D + 1 <= 16) &&
                ipow_sz(q, D + 1) <= (size_t)1e8;
    if (fits) {
      switch (q) {
        case 2:
          return p1_sieve<2>(gf, D, jobs);
        case 3:
          return p1_sieve<3>(gf, D, jobs);
        case 4:
          return p1_sieve<4>(gf, D, jobs);
        case 5:
          return p1_sieve<5>(gf, D, jobs);
      }
    }
  }
  return naive_projective(gf, n, D, jobs);
}

CountTable enumerate_p1xp1(long q, int D1, int D2, int jobs) {
  CountTable a = enumerate_projective(1, q, D1, jobs);
  CountTable b = D2 == D1 ? a : enumerate_projective(1, q, D2, jobs);
  CountTable out;
  out.rank = 2;
  out.max_degrees = {D1, D2};
  for (int d1 = 0; d1 <= D1; ++d1)
    for (int d2 = 0; d2 <= D2; ++d2)
      out.counts[{d1, d2}] = a.at({d1}) * b.at({d2});
  return out;
}

std::vector<ProjPoint> list_projective(int n, long q, int D) {
  check_cost(n, q, D);
  GfTable gf = make_field(q);
  std::vector<ProjPoint> pts;
  for (int d = 0; d <= D; ++d) {
    MonicIndex mi(q, d);
    for (int p = 0; p <= n; ++p)
      scan_chunk(gf, n, d, p, mi, 0, mi.total(),
                 [&](const uint8_t* lead, int e, const auto& tails,
                     const auto& tdeg) {
                   if (pts.size() >= 30000000)
                     throw std::runtime_error(
                         "work cap exceeded: too many points to materialize");
                   ProjPoint pt;
                   pt.height_deg = d;
                   for (int c = 0; c < p; ++c) pt.coords.emplace_back();
                   pt.coords.emplace_back(lead, lead + e + 1);
                   for (size_t c = 0; c < tails.size(); ++c)
                     pt.coords.emplace_back(tails[c].begin(),
                                            tails[c].begin() + tdeg[c] + 1);
                   pts.push_back(std::move(pt));
                 });
  }
  return pts;
}

// three reduced nibble-lane summands, result reduced mod q per lane
static uint64_t swar_add3(long q, uint64_t a, uint64_t b, uint64_t c) {
  if (q == 2 || q == 4) return a ^ b ^ c;
  constexpr uint64_t ONE = 0x1111111111111111ull;
  constexpr uint64_t HI = 0x8888888888888888ull;
  uint64_t s = a + b;
  s -= (((s + (8 - (uint64_t)q) * ONE) & HI) >> 3) * q;
  s += c;
  s -= (((s + (8 - (uint64_t)q) * ONE) & HI) >> 3) * q;
  return s;
}

CountTable enumerate_flag_sl3(long q, int D1, int D2, int jobs) {
  check_cost(2, q, D1);
  check_cost(2, q, D2);
  if (jobs < 1 || jobs > 64)
    throw std::invalid_argument("enumerate_flag_sl3: jobs in 1..64");
  GfTable gf = make_field(q);
  auto L1 = list_projective(2, q, D1);
  auto L2 = list_projective(2, q, D2);
  double pairs = (double)L1.size() * (double)L2.size();
  if (pairs > 1e9 * std::exp2(work_cap() - 36.0))
    throw std::runtime_error("work cap exceeded: " +
                             std::to_string((long long)pairs) +
                             " incidence pairs");

  size_t codes1 = ipow_sz(q, D1 + 1);
  std::vector<uint32_t> C1(L1.size() * 3);
  for (size_t i = 0; i < L1.size(); ++i)
    for (int c = 0; c < 3; ++c)
      C1[3 * i + c] = (uint32_t)code_encode(q, L1[i].coords[c]);
  bool swar = q <= 5 && D1 + D2 + 1 <= 16;

  int W2 = D2 + 1;
  auto worker = [&](size_t lo, size_t hi, std::vector<long long>& cnt) {
    std::vector<std::vector<uint64_t>> T(3, std::vector<uint64_t>(codes1));
    for (size_t j = lo; j < hi; ++j) {
      const ProjPoint& l = L2[j];
      if (swar) {
        // dot-product tables: T[c][x] = nibble-packed x * l_c
        for (int c = 0; c < 3; ++c)
          for (size_t x = 0; x < codes1; ++x) {
            Fpoly prod = fmul(gf, code_decode(q, x), l.coords[c]);
            uint64_t w = 0;
            for (size_t i2 = 0; i2 < prod.size(); ++i2)
              w |= (uint64_t)prod[i2] << (4 * i2);
            T[c][x] = w;
          }
        for (size_t i = 0; i < L1.size(); ++i) {
          uint64_t s = swar_add3(q, T[0][C1[3 * i]], T[1][C1[3 * i + 1]],
                                 T[2][C1[3 * i + 2]]);
          if (s == 0) ++cnt[(size_t)L1[i].height_deg * W2 + l.height_deg];
        }
      } else {
        for (size_t i = 0; i < L1.size(); ++i) {
          Fpoly dot;
          for (int c = 0; c < 3; ++c) {
            Fpoly term = fmul(gf, L1[i].coords[c], l.coords[c]);
            if (term.size() > dot.size()) dot.resize(term.size(), 0);
            for (size_t k2 = 0; k2 < term.size(); ++k2)
              dot[k2] = gf.add(dot[k2], term[k2]);
          }
          ftrim(dot);
          if (dot.empty()) ++cnt[(size_t)L1[i].height_deg * W2 + l.height_deg];
        }
      }
    }
  };

  std::vector<std::vector<long long>> partial(
      jobs, std::vector<long long>((size_t)(D1 + 1) * W2, 0));
  if (jobs == 1) {
    worker(0, L2.size(), partial[0]);
  } else {
    std::vector<std::thread> th;
    size_t chunk = (L2.size() + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      size_t lo = std::min(L2.size(), w * chunk);
      size_t hi = std::min(L2.size(), lo + chunk);
      th.emplace_back([&, w, lo, hi] { worker(lo, hi, partial[w]); });
    }
    for (auto& t : th) t.join();
  }
  CountTable out;
  out.rank = 2;
  out.max_degrees = {D1, D2};
  for (int d1 = 0; d1 <= D1; ++d1)
    for (int d2 = 0; d2 <= D2; ++d2) {
      long long s = 0;
      for (auto& c : partial) s += c[(size_t)d1 * W2 + d2];
      out.counts[{d1, d2}] = s;
    }
  return out;
}

// ----- empirical residue -----

EmpiricalResidue empirical_residue(const CountTable& table,
                                   const ParabolicDatum& pd, long q) {
  int r = table.rank;
  if ((int)pd.anticanonical.size() != r || (int)table.max_degrees.size() != r)
    throw std::invalid_argument("empirical_residue: grading rank mismatch");
  int t = pd.t;
  long long K = LLONG_MAX;
  for (int i = 0; i < r; ++i)
    K = std::min(K, (long long)pd.anticanonical[i] * (table.max_degrees[i] + 1) - 1);
  if (K + 1 < t + 3)
    throw std::invalid_argument("empirical_residue: too few complete shells");
  std::vector<Rat> c((size_t)K + 1, Rat(0));
  for (const auto& [d, cnt] : table.counts) {
    long long k = 0;
    for (int i = 0; i < r; ++i) k += (long long)pd.anticanonical[i] * d[i];
    if (k <= K) c[(size_t)k] += Rat(cnt) * rat_pow(Rat(q), -k);
  }
  EmpiricalResidue out;
  out.logq_pow = -t;
  int max_den = (int)((K + 1) / 2) - 1;
  if (max_den >= 1) {
    auto fit = fit_rational(c, max_den);
    if (fit && !fit->num.is_zero() && order_at(*fit, Rat(1)) == -t)
      out.exact = s_limit(*fit, t);
  }
  // finite differences of period sums kill the lower-order pole terms
  int L = 0;
  for (int a : pd.anticanonical) L = std::gcd(L, a);
  int M = (int)((K + 1) / L) - 1;
  if (M < t - 1)
    throw std::invalid_argument("empirical_residue: too few complete shells");
  auto period = [&](int m) {
    double s = 0;
    for (int j = 0; j < L; ++j) s += c[(size_t)m * L + j].convert_to<double>();
    return s;
  };
  double est = 0;
  long long binom = 1;
  for (int i = 0; i <= t - 1; ++i) {
    est += (i % 2 ? -1.0 : 1.0) * (double)binom * period(M - i);
    binom = binom * (t - 1 - i) / (i + 1);
  }
  out.estimate = est / std::pow((double)L, t);
  return out;
}

}  // namespace flagzeta
