#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dph/ordinal.hpp"

namespace dph {

/// Injective order-preserving map [p] -> [n] x [r], stored as its point list.
/// Product order: (a,b) <= (a',b') iff a <= a' and b <= b'.
struct Chain {
  int n = 0, r = 0;
  std::vector<std::pair<int, int>> pts;

  int p() const { return static_cast<int>(pts.size()) - 1; }
  int base(int i) const { return pts[static_cast<size_t>(i)].first; }
  int fib(int i) const { return pts[static_cast<size_t>(i)].second; }

  bool is_valid() const {
    for (size_t i = 0; i < pts.size(); ++i) {
      auto [a, b] = pts[i];
      if (a < 0 || a > n || b < 0 || b > r) return false;
      if (i > 0) {
        auto [a0, b0] = pts[i - 1];
        if (a < a0 || b < b0 || (a == a0 && b == b0)) return false;
      }
    }
    return !pts.empty();
  }
  bool is_maximal() const { return p() == n + r; }
  bool is_global() const {
    std::vector<char> hit(static_cast<size_t>(n) + 1, 0);
    for (auto& [a, b] : pts) hit[static_cast<size_t>(a)] = 1;
    for (char h : hit)
      if (!h) return false;
    return true;
  }

  OrdinalMap base_proj() const {  // pr1 o Gamma : [p] -> [n]
    std::vector<int> v;
    for (auto& q : pts) v.push_back(q.first);
    return OrdinalMap(std::move(v), n);
  }
  OrdinalMap fib_proj() const {  // pr2 o Gamma : [p] -> [r]
    std::vector<int> v;
    for (auto& q : pts) v.push_back(q.second);
    return OrdinalMap(std::move(v), r);
  }

  bool operator==(const Chain& o) const { return n == o.n && r == o.r && pts == o.pts; }
  bool operator<(const Chain& o) const { return pts < o.pts; }
};

enum class VertexClass { InnFib, InnBase, Out };

struct ChainBlock {
  int first = 0;   // v^j_0
  int size = 0;    // r_j; block vertices are first, first+1, ..., first+size
  int offset = 0;  // R^j_0 = r_1 + ... + r_{j-1}
};

/// Derived order-preserving data of a global chain.
struct ChainAnalysis {
  Chain chain;
  OrdinalMap bs;                // [n] -> [p], section of the base projection
  std::vector<int> fs;          // fs[i] for i = 0..max hit fiber level (min rule)
  std::vector<int> Fs;          // Fs[i-1] for i = 1..p-n: [p] \ Im bs, increasing
  std::vector<int> us;          // us[i-1] for i = 1..p-n
  std::vector<ChainBlock> blocks;
  std::vector<std::pair<int, VertexClass>> classified;  // block vertices, ascending

  int fiber_count() const { return static_cast<int>(Fs.size()); }
  std::optional<VertexClass> classify(int v) const {
    for (auto& [w, c] : classified)
      if (w == v) return c;
    return std::nullopt;
  }
};

inline ChainAnalysis analyze(const Chain& c) {
  if (!c.is_valid()) throw std::invalid_argument("analyze: invalid chain");
  if (!c.is_global()) throw std::invalid_argument("analyze: chain is not global");
  ChainAnalysis an;
  an.chain = c;
  const int p = c.p(), n = c.n;

  std::vector<int> bsv(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    int j = 0;
    while (c.base(j) != i) ++j;
    bsv[static_cast<size_t>(i)] = j;
  }
  an.bs = OrdinalMap(std::move(bsv), p);

  int maxf = c.fib(p);
  for (int i = 0; i <= maxf; ++i) {
    int j = 0;
    while (c.fib(j) < i) ++j;
    an.fs.push_back(j);
  }

  std::vector<char> in_bs(static_cast<size_t>(p) + 1, 0);
  for (int i = 0; i <= n; ++i) in_bs[static_cast<size_t>(an.bs(i))] = 1;
  for (int j = 0; j <= p; ++j)
    if (!in_bs[static_cast<size_t>(j)]) an.Fs.push_back(j);

  const int fc = static_cast<int>(an.Fs.size());
  for (int i = 1; i <= fc; ++i) {
    int mn = i;
    for (int j = 1; j <= fc; ++j)
      if (an.Fs[static_cast<size_t>(j - 1)] - j == an.Fs[static_cast<size_t>(i - 1)] - i) {
        mn = j;
        break;
      }
    an.us.push_back(an.Fs[static_cast<size_t>(mn - 1)] - 1);
  }

  // Blocks: maximal runs of consecutive fiber positions; us is constant on
  // each run with value (first fiber position of the run) - 1.
  int offset = 0;
  for (int i = 0; i < fc;) {
    int j = i;
    while (j + 1 < fc && an.Fs[static_cast<size_t>(j + 1)] == an.Fs[static_cast<size_t>(j)] + 1)
      ++j;
    ChainBlock b;
    b.first = an.Fs[static_cast<size_t>(i)] - 1;
    b.size = j - i + 1;
    b.offset = offset;
    offset += b.size;
    an.blocks.push_back(b);
    i = j + 1;
  }

  // Vertex classification over the block vertex set.
  std::set<int> verts;
  for (auto& b : an.blocks)
    for (int i = 0; i <= b.size; ++i) verts.insert(b.first + i);
  for (int v : verts) {
    VertexClass k = VertexClass::Out;
    if (v > 0 && v + 1 <= p) {
      bool step2 = c.base(v + 1) == c.base(v - 1) + 1 && c.fib(v + 1) == c.fib(v - 1) + 1;
      if (step2 && c.base(v + 1) == c.base(v) + 1 && c.fib(v + 1) == c.fib(v))
        k = VertexClass::InnFib;
      else if (step2 && c.base(v + 1) == c.base(v) && c.fib(v + 1) == c.fib(v) + 1)
        k = VertexClass::InnBase;
    }
    an.classified.emplace_back(v, k);
  }
  return an;
}

namespace detail {
inline void enum_chains_rec(int n, int r, int p, bool global_base, bool global_fib,
                            std::vector<std::pair<int, int>>& cur,
                            std::vector<Chain>& out) {
  if (static_cast<int>(cur.size()) == p + 1) {
    Chain c{n, r, cur};
    if (global_base && cur.back().first != n) return;
    if (global_fib && cur.back().second != r) return;
    if (global_base && !c.is_global()) return;
    if (global_fib) {
      std::vector<char> hit(static_cast<size_t>(r) + 1, 0);
      for (auto& q : cur) hit[static_cast<size_t>(q.second)] = 1;
      for (char h : hit)
        if (!h) return;
    }
    out.push_back(std::move(c));
    return;
  }
  if (cur.empty()) {
    for (int a = global_base ? 0 : 0; a <= (global_base ? 0 : n); ++a)
      for (int b = 0; b <= (global_fib ? 0 : r); ++b) {
        cur.emplace_back(a, b);
        enum_chains_rec(n, r, p, global_base, global_fib, cur, out);
        cur.pop_back();
      }
    return;
  }
  auto [a0, b0] = cur.back();
  // lexicographic successor order: smaller base coordinate first
  for (int a = a0; a <= n; ++a)
    for (int b = b0; b <= r; ++b) {
      if (a == a0 && b == b0) continue;
      cur.emplace_back(a, b);
      enum_chains_rec(n, r, p, global_base, global_fib, cur, out);
      cur.pop_back();
    }
}
}  // namespace detail

/// All injective order-preserving [p] -> [n] x [r]; optional surjectivity of
/// either projection. Deterministic lexicographic order on point lists.
inline std::vector<Chain> enumerate_chains(int n, int r, int p, bool global_base,
                                           bool global_fib) {
  std::vector<Chain> out;
  if (p < 0) return out;
  std::vector<std::pair<int, int>> cur;
  detail::enum_chains_rec(n, r, p, global_base, global_fib, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// The C(n+r, n) maximal chains [n+r] -> [n] x [r], lexicographic order.
inline std::vector<Chain> enumerate_maximal(int n, int r) {
  if (n < 0 || r < 0) throw std::invalid_argument("enumerate_maximal: negative size");
  return enumerate_chains(n, r, n + r, true, true);
}

/// Unique pair (alpha_* Gamma, beta) with (alpha x id) Gamma = (alpha_* Gamma) beta,
/// for maximal Gamma over [m] x [r] and order-preserving alpha : [m] -> [n].
inline std::pair<Chain, OrdinalMap> pushforward_pair(const Chain& c, const OrdinalMap& alpha) {
  if (!c.is_maximal()) throw std::invalid_argument("pushforward_pair: chain not maximal");
  if (alpha.dom() != c.n) throw std::invalid_argument("pushforward_pair: arity mismatch");
  const int n = alpha.cod(), r = c.r, m = c.n;
  std::vector<int> beta(static_cast<size_t>(m + r) + 1);
  for (int s = 0; s <= m + r; ++s) beta[static_cast<size_t>(s)] = alpha(c.base(s)) + c.fib(s);
  // Fiber-step arrival positions of the pushforward.
  std::vector<int> B;
  for (int i = 1; i <= r; ++i) {
    int j = 0;
    while (c.fib(j) < i) ++j;
    B.push_back(beta[static_cast<size_t>(j)]);
  }
  Chain out;
  out.n = n;
  out.r = r;
  for (int i = 0; i <= n + r; ++i) {
    int f = 0;
    for (int bj : B)
      if (bj <= i) ++f;
    out.pts.emplace_back(i - f, f);
  }
  return {out, OrdinalMap(std::move(beta), n + r)};
}

/// Pullback of a maximal chain along (alpha x id) for injective alpha.
/// Returns the pullback chain over [m] x [r] and its leg into [n+r].
inline std::pair<Chain, OrdinalMap> chain_pullback(const Chain& c, const OrdinalMap& alpha) {
  if (!c.is_maximal()) throw std::invalid_argument("chain_pullback: chain not maximal");
  if (!alpha.is_injective()) throw std::invalid_argument("chain_pullback: alpha not injective");
  if (alpha.cod() != c.n) throw std::invalid_argument("chain_pullback: arity mismatch");
  const int m = alpha.dom();
  std::vector<int> inv(static_cast<size_t>(c.n) + 1, -1);
  for (int i = 0; i <= m; ++i) inv[static_cast<size_t>(alpha(i))] = i;
  Chain out;
  out.n = m;
  out.r = c.r;
  std::vector<int> leg;
  for (int s = 0; s <= c.p(); ++s) {
    int a = c.base(s);
    if (inv[static_cast<size_t>(a)] >= 0) {
      out.pts.emplace_back(inv[static_cast<size_t>(a)], c.fib(s));
      leg.push_back(s);
    }
  }
  return {out, OrdinalMap(std::move(leg), c.p())};
}

/// Face factorization Gamma delta_v = (id x delta_h) Gamma_v for an Out
/// vertex v of a maximal chain; h is the fiber level removed.
inline std::pair<Chain, int> face_factor(const Chain& c, int v) {
  if (!c.is_maximal()) throw std::invalid_argument("face_factor: chain not maximal");
  if (c.r < 1) throw std::invalid_argument("face_factor: no fiber direction");
  const int p = c.p();
  if (v < 0 || v > p) throw std::invalid_argument("face_factor: vertex out of range");
  const int h = c.fib(v);
  int count = 0;
  for (int i = 0; i <= p; ++i)
    if (c.fib(i) == h) ++count;
  if (count != 1)
    throw std::invalid_argument("face_factor: no factorization at this vertex");
  Chain out;
  out.n = c.n;
  out.r = c.r - 1;
  for (int i = 0; i <= p - 1; ++i) {
    int s = (i < v) ? i : i + 1;
    int b = c.fib(s);
    out.pts.emplace_back(c.base(s), b > h ? b - 1 : b);
  }
  if (!out.is_maximal() || !out.is_valid())
    throw std::invalid_argument("face_factor: no factorization at this vertex");
  return {out, h};
}

/// The unique other maximal chain sharing the face at an interior vertex.
inline Chain flip(const Chain& c, int v) {
  if (!c.is_maximal()) throw std::invalid_argument("flip: chain not maximal");
  auto an = analyze(c);
  auto k = an.classify(v);
  if (!k || *k == VertexClass::Out)
    throw std::invalid_argument("flip: vertex is not an interior vertex");
  Chain out = c;
  if (*k == VertexClass::InnFib)
    out.pts[static_cast<size_t>(v)] = {c.base(v - 1) + 1, c.fib(v - 1)};
  else
    out.pts[static_cast<size_t>(v)] = {c.base(v - 1), c.fib(v - 1) + 1};
  return out;
}

/// Gamma o delta_v as a chain (one point removed).
inline Chain chain_face(const Chain& c, int v) {
  Chain out;
  out.n = c.n;
  out.r = c.r;
  for (int i = 0; i <= c.p(); ++i)
    if (i != v) out.pts.push_back(c.pts[static_cast<size_t>(i)]);
  return out;
}

}  // namespace dph
