#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dph/chains.hpp"
#include "dph/form.hpp"
#include "dph/ordinal.hpp"

namespace dph {

/// A simplex value in Eilenberg-Zilber normal form: a surjection applied to
/// a nondegenerate cell.
struct Simplex {
  OrdinalMap sigma;  // [dim] ->> [core dim]
  int core = -1;     // nondegenerate cell id

  int dim() const { return sigma.dom(); }
  bool is_nondegenerate() const { return sigma.is_identity(); }
  bool operator==(const Simplex& o) const { return core == o.core && sigma == o.sigma; }
  bool operator!=(const Simplex& o) const { return !(*this == o); }
  bool operator<(const Simplex& o) const {
    if (core != o.core) return core < o.core;
    return sigma < o.sigma;
  }
};

/// Finite simplicial set, materialized up to a dimension cap: nondegenerate
/// cells with face tables whose entries are EZ pairs.
class SimplicialSet {
 public:
  int cap = 0;
  std::vector<int> dim;                  // per cell id
  std::vector<std::vector<int>> by_dim;  // cell ids per dimension
  std::vector<std::vector<Simplex>> faces;  // per cell id, face i -> value
  std::vector<std::string> labels;

  int cell_count() const { return static_cast<int>(dim.size()); }
  int add_cell(int d, std::string label = {}) {
    int id = cell_count();
    dim.push_back(d);
    if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(static_cast<size_t>(d) + 1);
    by_dim[static_cast<size_t>(d)].push_back(id);
    faces.emplace_back();
    labels.push_back(std::move(label));
    return id;
  }
  void ensure_dims(int d) {
    if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(static_cast<size_t>(d) + 1);
  }
  Simplex nondeg(int id) const { return Simplex{ordinal_id(dim[static_cast<size_t>(id)]), id}; }

  /// Value of cell `core` along an arbitrary order-preserving map into its
  /// ordinal; resolves faces through the tables and renormalizes.
  Simplex apply_cell(int core, const OrdinalMap& a) const {
    auto [delta, sigma] = epi_mono_factor(a);
    if (delta.is_identity()) return Simplex{sigma, core};
    // peel the largest skipped index
    int m = -1;
    std::vector<char> hit(static_cast<size_t>(delta.cod()) + 1, 0);
    for (int x : delta.v) hit[static_cast<size_t>(x)] = 1;
    for (int x = delta.cod(); x >= 0; --x)
      if (!hit[static_cast<size_t>(x)]) {
        m = x;
        break;
      }
    const Simplex& fm = faces[static_cast<size_t>(core)][static_cast<size_t>(m)];
    std::vector<int> adj;
    for (int x : delta.v) adj.push_back(x > m ? x - 1 : x);
    OrdinalMap rest(std::move(adj), delta.cod() - 1);
    return apply_cell(fm.core, compose(fm.sigma, compose(rest, sigma)));
  }

  Simplex apply(const Simplex& s, const OrdinalMap& a) const {
    return apply_cell(s.core, compose(s.sigma, a));
  }
  Simplex face(const Simplex& s, int i) const {
    return apply(s, ordinal_delta(i, s.dim()));
  }
  Simplex degeneracy(const Simplex& s, int i) const {
    return apply(s, ordinal_sigma(i, s.dim()));
  }

  /// All simplex values of the given dimension (including degenerate ones).
  std::vector<Simplex> all_simplices(int d) const {
    std::vector<Simplex> out;
    for (int k = 0; k <= d && k < static_cast<int>(by_dim.size()); ++k)
      for (int id : by_dim[static_cast<size_t>(k)])
        for (auto& s : all_surjections(d, k)) out.push_back(Simplex{s, id});
    return out;
  }

  /// Checks the simplicial identities on every materialized cell.
  bool validate(std::string* why = nullptr) const {
    for (int id = 0; id < cell_count(); ++id) {
      int d = dim[static_cast<size_t>(id)];
      if (d == 0) continue;
      if (static_cast<int>(faces[static_cast<size_t>(id)].size()) != d + 1) {
        if (why) *why = "cell " + std::to_string(id) + ": face table arity";
        return false;
      }
      for (int i = 0; i <= d; ++i) {
        auto& f = faces[static_cast<size_t>(id)][static_cast<size_t>(i)];
        if (f.dim() != d - 1 || f.core < 0 || f.core >= cell_count()) {
          if (why) *why = "cell " + std::to_string(id) + ": bad face";
          return false;
        }
      }
      if (d < 2) continue;
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i < j; ++i) {
          // d_i d_j = d_{j-1} d_i
          Simplex a = face(faces[static_cast<size_t>(id)][static_cast<size_t>(j)], i);
          Simplex b = face(faces[static_cast<size_t>(id)][static_cast<size_t>(i)], j - 1);
          if (!(a == b)) {
            if (why)
              *why = "cell " + std::to_string(id) + ": d" + std::to_string(i) + " d" +
                     std::to_string(j) + " mismatch";
            return false;
          }
        }
    }
    return true;
  }
};

/// Standard simplex as a simplicial set: nondegenerate cells are the
/// strictly increasing vertex lists. Cell ids are ordered by (dim, lex).
inline SimplicialSet standard_simplex(int n) {
  SimplicialSet X;
  X.cap = n;
  std::map<std::vector<int>, int> idx;
  std::vector<std::vector<int>> subsets;
  for (int d = 0; d <= n; ++d) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
      if (static_cast<int>(cur.size()) == d + 1) {
        std::string lbl;
        for (int v : cur) lbl += (lbl.empty() ? "" : ".") + std::to_string(v);
        int id = X.add_cell(d, lbl);
        idx[cur] = id;
        subsets.push_back(cur);
        return;
      }
      for (int v = lo; v <= n; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  for (int id = 0; id < X.cell_count(); ++id) {
    auto& s = subsets[static_cast<size_t>(id)];
    int d = static_cast<int>(s.size()) - 1;
    for (int i = 0; i <= d; ++i) {
      std::vector<int> f = s;
      f.erase(f.begin() + i);
      if (d > 0) X.faces[static_cast<size_t>(id)].push_back(Simplex{ordinal_id(d - 1), idx.at(f)});
    }
  }
  return X;
}

/// The monotone vertex map of a simplex value of a standard simplex.
inline OrdinalMap standard_vertex_map(const SimplicialSet& X, const Simplex& s, int n) {
  // cell labels store the vertex list
  std::vector<int> verts;
  {
    auto& lbl = X.labels[static_cast<size_t>(s.core)];
    int v = 0;
    bool have = false;
    for (char ch : lbl) {
      if (ch == '.') {
        verts.push_back(v);
        v = 0;
        have = false;
      } else {
        v = v * 10 + (ch - '0');
        have = true;
      }
    }
    if (have) verts.push_back(v);
  }
  std::vector<int> out;
  for (int i = 0; i <= s.dim(); ++i) out.push_back(verts[static_cast<size_t>(s.sigma(i))]);
  return OrdinalMap(std::move(out), n);
}

/// Largest cell id of the standard simplex construction: the top cell.
inline int standard_top_cell(const SimplicialSet& X) { return X.cell_count() - 1; }

// ---------------------------------------------------------------------------
// Poset-like domains for mapping spaces: products of two standard simplices
// and barycentric subdivisions. Cells are nondegenerate with nondegenerate
// faces, which keeps enumeration of simplicial maps simple.

struct PNerve {
  int cap = 0;
  std::vector<int> dim;
  std::vector<std::vector<int>> by_dim;
  std::vector<std::vector<int>> faces;  // nondegenerate faces, by id

  int cell_count() const { return static_cast<int>(dim.size()); }
  int add_cell(int d) {
    int id = cell_count();
    dim.push_back(d);
    if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(static_cast<size_t>(d) + 1);
    by_dim[static_cast<size_t>(d)].push_back(id);
    faces.emplace_back();
    return id;
  }
};

/// Delta^n x Delta^r up to dimension cap; cells are the injective
/// order-preserving pairs, i.e. chains.
struct SimplexProduct {
  int n = 0, r = 0;
  PNerve nerve;
  std::vector<Chain> chain_of;      // per cell id
  std::map<Chain, int> cell_of;

  const Chain& chain(int id) const { return chain_of[static_cast<size_t>(id)]; }
};

inline SimplexProduct simplex_product(int n, int r, int cap) {
  SimplexProduct P;
  P.n = n;
  P.r = r;
  P.nerve.cap = std::min(cap, n + r);
  for (int q = 0; q <= P.nerve.cap; ++q)
    for (auto& c : enumerate_chains(n, r, q, false, false)) {
      int id = P.nerve.add_cell(q);
      P.chain_of.push_back(c);
      P.cell_of[c] = id;
    }
  for (int id = 0; id < P.nerve.cell_count(); ++id) {
    const Chain& c = P.chain_of[static_cast<size_t>(id)];
    if (c.p() == 0) continue;
    for (int i = 0; i <= c.p(); ++i)
      P.nerve.faces[static_cast<size_t>(id)].push_back(P.cell_of.at(chain_face(c, i)));
  }
  return P;
}

/// Barycentric subdivision of Delta^n: nerve of the poset of nonempty
/// subsets of [n]. Cells are strictly increasing subset chains.
struct SdSimplex {
  int n = 0;
  PNerve nerve;
  std::vector<std::vector<std::vector<int>>> chain_of;  // id -> subset chain
  std::map<std::vector<std::vector<int>>, int> cell_of;
};

inline SdSimplex sd_simplex(int n) {
  SdSimplex S;
  S.n = n;
  S.nerve.cap = n;
  std::vector<std::vector<int>> subsets;
  for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
    std::vector<int> s;
    for (int v = 0; v <= n; ++v)
      if (mask & (1 << v)) s.push_back(v);
    subsets.push_back(std::move(s));
  }
  auto is_subset = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end()) && a != b;
  };
  std::vector<std::vector<std::vector<int>>> chains;
  std::function<void(std::vector<std::vector<int>>&)> rec =
      [&](std::vector<std::vector<int>>& cur) {
        if (!cur.empty()) chains.push_back(cur);
        if (static_cast<int>(cur.size()) > n) return;
        for (auto& s : subsets) {
          if (!cur.empty() && !is_subset(cur.back(), s)) continue;
          cur.push_back(s);
          rec(cur);
          cur.pop_back();
        }
      };
  std::vector<std::vector<int>> cur;
  rec(cur);
  std::sort(chains.begin(), chains.end(), [](auto& a, auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (auto& ch : chains) {
    int id = S.nerve.add_cell(static_cast<int>(ch.size()) - 1);
    S.chain_of.push_back(ch);
    S.cell_of[ch] = id;
  }
  for (int id = 0; id < S.nerve.cell_count(); ++id) {
    auto& ch = S.chain_of[static_cast<size_t>(id)];
    if (ch.size() == 1) continue;
    for (size_t i = 0; i < ch.size(); ++i) {
      auto f = ch;
      f.erase(f.begin() + static_cast<long>(i));
      S.nerve.faces[static_cast<size_t>(id)].push_back(S.cell_of.at(f));
    }
  }
  return S;
}

// ---------------------------------------------------------------------------
// Simplicial maps out of a PNerve domain.

struct SMap {
  std::vector<Simplex> val;  // per domain cell id

  bool operator==(const SMap& o) const { return val == o.val; }
  bool operator<(const SMap& o) const { return val < o.val; }
};

/// All simplicial maps dom -> X, where dom has nondegenerate faces.
inline std::vector<SMap> enumerate_smaps(const PNerve& dom, const SimplicialSet& X) {
  std::vector<int> order;  // cells by dimension
  for (auto& level : dom.by_dim)
    for (int id : level) order.push_back(id);
  std::vector<SMap> out;
  SMap cur;
  cur.val.resize(static_cast<size_t>(dom.cell_count()), Simplex{});
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == order.size()) {
      out.push_back(cur);
      return;
    }
    int id = order[k];
    int d = dom.dim[static_cast<size_t>(id)];
    for (auto& v : X.all_simplices(d)) {
      bool ok = true;
      for (int i = 0; i <= d && ok; ++i) {
        if (d == 0) break;
        const Simplex& expect = cur.val[static_cast<size_t>(dom.faces[static_cast<size_t>(id)][static_cast<size_t>(i)])];
        if (!(X.face(v, i) == expect)) ok = false;
      }
      if (!ok) continue;
      cur.val[static_cast<size_t>(id)] = v;
      rec(k + 1);
    }
    cur.val[static_cast<size_t>(id)] = Simplex{};
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Path spaces [Delta^1, X].

/// Evaluate a path cell (a simplicial map Delta^1 x Delta^p -> X) at an
/// arbitrary order-preserving pair (b, c) : [q] -> [1] x [p].
inline Simplex eval_pair(const SimplicialSet& X, const SimplexProduct& K, const SMap& f,
                         const std::vector<int>& b, const std::vector<int>& c) {
  // joint epi-mono factorization of the pair sequence
  std::vector<std::pair<int, int>> pts;
  std::vector<int> sig;
  for (size_t s = 0; s < b.size(); ++s) {
    std::pair<int, int> pt{b[s], c[s]};
    if (pts.empty() || pts.back() != pt) pts.push_back(pt);
    sig.push_back(static_cast<int>(pts.size()) - 1);
  }
  Chain core{K.n, K.r, pts};
  OrdinalMap sigma(std::move(sig), core.p());
  return X.apply(f.val[static_cast<size_t>(K.cell_of.at(core))], sigma);
}

/// The simplicial path space of X, materialized to dimension `cap`:
/// level p holds the nondegenerate simplicial maps Delta^1 x Delta^p -> X.
class PathSpace {
 public:
  const SimplicialSet* X = nullptr;
  int cap = 0;
  std::vector<SimplexProduct> K;       // K[p] = Delta^1 x Delta^p
  SimplicialSet space;                 // the path space as a simplicial set
  std::vector<SMap> table;             // per space cell id, the map table
  std::vector<std::map<SMap, int>> index;  // per dimension, table -> cell id

  /// Face/degeneracy image of a level-p table along a : [p'] -> [p].
  SMap precompose(int p, const SMap& f, const OrdinalMap& a) const {
    int pp = a.dom();
    SMap out;
    out.val.resize(static_cast<size_t>(K[static_cast<size_t>(pp)].nerve.cell_count()));
    for (int id = 0; id < K[static_cast<size_t>(pp)].nerve.cell_count(); ++id) {
      const Chain& ch = K[static_cast<size_t>(pp)].chain(id);
      std::vector<int> b, c;
      for (auto& [x, y] : ch.pts) {
        b.push_back(x);
        c.push_back(a(y));
      }
      out.val[static_cast<size_t>(id)] = eval_pair(*X, K[static_cast<size_t>(p)], f, b, c);
    }
    return out;
  }

  /// EZ normal form of a level-p table within the path space.
  std::pair<OrdinalMap, int> normalize(int p, SMap f) const {
    OrdinalMap sigma = ordinal_id(p);
    int q = p;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = 0; j < q; ++j) {
        SMap dj = precompose(q, f, ordinal_delta(j, q));
        SMap sdj = precompose(q - 1, dj, ordinal_sigma(j, q - 1));
        if (sdj == f) {
          f = dj;
          sigma = compose(ordinal_sigma(j, q - 1), sigma);
          --q;
          changed = true;
          break;
        }
      }
    }
    return {sigma, index[static_cast<size_t>(q)].at(f)};
  }

  Simplex simplex_of(int p, const SMap& f) const {
    auto [sigma, id] = normalize(p, f);
    return Simplex{sigma, id};
  }
};

inline PathSpace path_space(const SimplicialSet& X, int cap) {
  PathSpace P;
  P.X = &X;
  P.cap = cap;
  P.space.cap = cap;
  P.space.ensure_dims(cap);
  P.index.resize(static_cast<size_t>(cap) + 1);
  for (int p = 0; p <= cap; ++p) P.K.push_back(simplex_product(1, p, p + 1));
  // enumerate and keep nondegenerate maps
  std::vector<std::vector<SMap>> nondeg(static_cast<size_t>(cap) + 1);
  for (int p = 0; p <= cap; ++p) {
    for (auto& f : enumerate_smaps(P.K[static_cast<size_t>(p)].nerve, X)) {
      bool degen = false;
      for (int j = 0; j < p && !degen; ++j) {
        SMap dj = P.precompose(p, f, ordinal_delta(j, p));
        if (P.precompose(p - 1, dj, ordinal_sigma(j, p - 1)) == f) degen = true;
      }
      if (!degen) nondeg[static_cast<size_t>(p)].push_back(f);
    }
    for (auto& f : nondeg[static_cast<size_t>(p)]) {
      int id = P.space.add_cell(p);
      P.table.push_back(f);
      P.index[static_cast<size_t>(p)][f] = id;
    }
  }
  // face tables
  for (int id = 0; id < P.space.cell_count(); ++id) {
    int p = P.space.dim[static_cast<size_t>(id)];
    if (p == 0) continue;
    for (int i = 0; i <= p; ++i) {
      SMap di = P.precompose(p, P.table[static_cast<size_t>(id)], ordinal_delta(i, p));
      auto [sigma, core] = P.normalize(p - 1, di);
      P.space.faces[static_cast<size_t>(id)].push_back(Simplex{sigma, core});
    }
  }
  return P;
}

/// Endpoint evaluation E_eps : [Delta^1, X] -> X at a path-space cell.
inline Simplex endpoint(const PathSpace& P, int cell, int eps) {
  int p = P.space.dim[static_cast<size_t>(cell)];
  std::vector<int> b(static_cast<size_t>(p) + 1, eps), c;
  for (int i = 0; i <= p; ++i) c.push_back(i);
  return eval_pair(*P.X, P.K[static_cast<size_t>(p)], P.table[static_cast<size_t>(cell)], b, c);
}

/// Totally degenerate simplex on a vertex.
inline Simplex const_simplex(const SimplicialSet& X, int vertex, int dimn) {
  return X.apply_cell(vertex, ordinal_const(dimn, 0, 0));
}

/// The hom space X(x, y): path cells whose endpoints are constant at x, y.
struct HomSpace {
  SimplicialSet space;
  std::vector<int> path_cell;  // hom cell id -> path-space cell id
};

inline HomSpace hom_space(const PathSpace& P, int x, int y) {
  HomSpace H;
  H.space.cap = P.space.cap;
  H.space.ensure_dims(P.space.cap);
  std::map<int, int> remap;
  for (int id = 0; id < P.space.cell_count(); ++id) {
    int p = P.space.dim[static_cast<size_t>(id)];
    if (endpoint(P, id, 0) == const_simplex(*P.X, x, p) &&
        endpoint(P, id, 1) == const_simplex(*P.X, y, p)) {
      int nid = H.space.add_cell(p);
      H.path_cell.push_back(id);
      remap[id] = nid;
    }
  }
  for (size_t i = 0; i < H.path_cell.size(); ++i) {
    int pid = H.path_cell[i];
    int p = P.space.dim[static_cast<size_t>(pid)];
    if (p == 0) continue;
    for (int k = 0; k <= p; ++k) {
      Simplex f = P.space.faces[static_cast<size_t>(pid)][static_cast<size_t>(k)];
      H.space.faces[i].push_back(Simplex{f.sigma, remap.at(f.core)});
    }
  }
  return H;
}

// ---------------------------------------------------------------------------
// Categorical products of general finite simplicial sets.

/// Product cell: a jointly injective pair of simplex values.
struct ProductSpace {
  const SimplicialSet* X = nullptr;
  const SimplicialSet* Y = nullptr;
  SimplicialSet space;
  std::vector<std::pair<Simplex, Simplex>> parts;  // per cell id
  std::map<std::pair<Simplex, Simplex>, int> index;
};

namespace detail {
inline bool jointly_injective(const Simplex& a, const Simplex& b) {
  for (int s = 0; s < a.dim(); ++s)
    if (a.sigma(s) == a.sigma(s + 1) && b.sigma(s) == b.sigma(s + 1)) return false;
  return true;
}
}  // namespace detail

/// EZ normal form of an arbitrary pair of simplex values in the product.
inline std::pair<OrdinalMap, std::pair<Simplex, Simplex>> product_normalize(
    const SimplicialSet& X, const SimplicialSet& Y, const Simplex& sx, const Simplex& sy) {
  std::vector<int> ia, ib, sig;
  for (int s = 0; s <= sx.dim(); ++s) {
    int a = sx.sigma(s), b = sy.sigma(s);
    if (ia.empty() || ia.back() != a || ib.back() != b) {
      ia.push_back(a);
      ib.push_back(b);
    }
    sig.push_back(static_cast<int>(ia.size()) - 1);
  }
  int k = static_cast<int>(ia.size()) - 1;
  Simplex vx = X.apply_cell(sx.core, OrdinalMap(std::move(ia), sx.sigma.cod()));
  Simplex vy = Y.apply_cell(sy.core, OrdinalMap(std::move(ib), sy.sigma.cod()));
  return {OrdinalMap(std::move(sig), k), {vx, vy}};
}

/// The categorical product, materialized to the dimension cap.
inline ProductSpace product(const SimplicialSet& X, const SimplicialSet& Y, int cap) {
  ProductSpace P;
  P.X = &X;
  P.Y = &Y;
  P.space.cap = cap;
  P.space.ensure_dims(cap);
  for (int q = 0; q <= cap; ++q)
    for (auto& vx : X.all_simplices(q))
      for (auto& vy : Y.all_simplices(q)) {
        if (!detail::jointly_injective(vx, vy)) continue;
        int id = P.space.add_cell(q);
        P.parts.emplace_back(vx, vy);
        P.index[{vx, vy}] = id;
      }
  for (int id = 0; id < P.space.cell_count(); ++id) {
    int q = P.space.dim[static_cast<size_t>(id)];
    if (q == 0) continue;
    auto& [vx, vy] = P.parts[static_cast<size_t>(id)];
    for (int i = 0; i <= q; ++i) {
      OrdinalMap di = ordinal_delta(i, q);
      Simplex fx = X.apply(vx, di), fy = Y.apply(vy, di);
      auto [sigma, core] = product_normalize(X, Y, fx, fy);
      P.space.faces[static_cast<size_t>(id)].push_back(Simplex{sigma, P.index.at(core)});
    }
  }
  return P;
}

// ---------------------------------------------------------------------------
// Finite Ex steps.

class ExSpace {
 public:
  SimplicialSet space;
  std::vector<SMap> table;  // per cell id: map Sd Delta^q -> X
  std::vector<SdSimplex> sd;
  std::vector<std::map<SMap, int>> index;
  const SimplicialSet* X = nullptr;

  SMap precompose(int q, const SMap& f, const OrdinalMap& a) const {
    // induced map Sd(a) on subset chains
    int qq = a.dom();
    SMap out;
    out.val.resize(static_cast<size_t>(sd[static_cast<size_t>(qq)].nerve.cell_count()));
    for (int id = 0; id < sd[static_cast<size_t>(qq)].nerve.cell_count(); ++id) {
      auto ch = sd[static_cast<size_t>(qq)].chain_of[static_cast<size_t>(id)];
      std::vector<std::vector<int>> img;
      std::vector<int> sig;
      for (auto& s : ch) {
        std::set<int> t;
        for (int v : s) t.insert(a(v));
        std::vector<int> tv(t.begin(), t.end());
        if (img.empty() || img.back() != tv) img.push_back(tv);
        sig.push_back(static_cast<int>(img.size()) - 1);
      }
      int core = sd[static_cast<size_t>(q)].cell_of.at(img);
      out.val[static_cast<size_t>(id)] =
          X->apply(f.val[static_cast<size_t>(core)], OrdinalMap(std::move(sig), static_cast<int>(img.size()) - 1));
    }
    return out;
  }

  std::pair<OrdinalMap, int> normalize(int q, SMap f) const {
    OrdinalMap sigma = ordinal_id(q);
    int d = q;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = 0; j < d; ++j) {
        SMap dj = precompose(d, f, ordinal_delta(j, d));
        if (precompose(d - 1, dj, ordinal_sigma(j, d - 1)) == f) {
          f = dj;
          sigma = compose(ordinal_sigma(j, d - 1), sigma);
          --d;
          changed = true;
          break;
        }
      }
    }
    return {sigma, index[static_cast<size_t>(d)].at(f)};
  }
};

inline ExSpace ex_step(const SimplicialSet& X, int cap) {
  ExSpace E;
  E.X = &X;
  E.space.cap = cap;
  E.space.ensure_dims(cap);
  E.index.resize(static_cast<size_t>(cap) + 1);
  for (int q = 0; q <= cap; ++q) E.sd.push_back(sd_simplex(q));
  std::vector<std::vector<SMap>> nondeg(static_cast<size_t>(cap) + 1);
  for (int q = 0; q <= cap; ++q) {
    for (auto& f : enumerate_smaps(E.sd[static_cast<size_t>(q)].nerve, X)) {
      bool degen = false;
      for (int j = 0; j < q && !degen; ++j) {
        SMap dj = E.precompose(q, f, ordinal_delta(j, q));
        if (E.precompose(q - 1, dj, ordinal_sigma(j, q - 1)) == f) degen = true;
      }
      if (!degen) nondeg[static_cast<size_t>(q)].push_back(f);
    }
    for (auto& f : nondeg[static_cast<size_t>(q)]) {
      int id = E.space.add_cell(q);
      E.table.push_back(f);
      E.index[static_cast<size_t>(q)][f] = id;
    }
  }
  for (int id = 0; id < E.space.cell_count(); ++id) {
    int q = E.space.dim[static_cast<size_t>(id)];
    if (q == 0) continue;
    for (int i = 0; i <= q; ++i) {
      SMap di = E.precompose(q, E.table[static_cast<size_t>(id)], ordinal_delta(i, q));
      auto [sigma, core] = E.normalize(q - 1, di);
      E.space.faces[static_cast<size_t>(id)].push_back(Simplex{sigma, core});
    }
  }
  return E;
}

/// k-fold iteration of the extension construction. Each stage materializes
/// its own simplicial set; stage 0 is a copy of the input's shape.
inline std::vector<ExSpace> ex_iterate(const SimplicialSet& X, int k, int cap) {
  std::vector<ExSpace> stages;
  const SimplicialSet* cur = &X;
  for (int i = 0; i < k; ++i) {
    stages.push_back(ex_step(*cur, cap));
    cur = &stages.back().space;
  }
  return stages;
}

/// The natural inclusion X -> Ex(X): precompose with the last-vertex map.
inline Simplex ex_include(const ExSpace& E, const SimplicialSet& X, const Simplex& s) {
  int q = s.dim();
  SMap f;
  auto& sd = E.sd[static_cast<size_t>(q)];
  f.val.resize(static_cast<size_t>(sd.nerve.cell_count()));
  for (int id = 0; id < sd.nerve.cell_count(); ++id) {
    auto& ch = sd.chain_of[static_cast<size_t>(id)];
    std::vector<int> lv;
    for (auto& sub : ch) lv.push_back(sub.back());
    f.val[static_cast<size_t>(id)] = X.apply(s, OrdinalMap(std::move(lv), q));
  }
  auto [sigma, core] = E.normalize(q, f);
  return Simplex{sigma, core};
}

// ---------------------------------------------------------------------------
// Forms on simplicial sets.

/// Compatible assignment of forms to the cells of a simplicial set: value at
/// a degenerate simplex is the pullback of the value at its core.
class FormMap {
 public:
  const SimplicialSet* X = nullptr;
  std::shared_ptr<const LinftyAlgebra> g;
  int trunc = 0;
  std::vector<EnvForm> val;  // per nondegenerate cell id

  EnvForm at(const Simplex& s) const {
    return pullback(val[static_cast<size_t>(s.core)], s.sigma);
  }

  FormMap map_values(const std::function<EnvForm(const EnvForm&)>& fn) const {
    FormMap out = *this;
    for (auto& v : out.val) v = fn(v);
    return out;
  }
};

inline FormMap zero_form_map(const SimplicialSet& X, std::shared_ptr<const LinftyAlgebra> g,
                             int W) {
  FormMap F;
  F.X = &X;
  F.g = std::move(g);
  F.trunc = W;
  for (int id = 0; id < X.cell_count(); ++id)
    F.val.push_back(EnvForm(F.g, W, X.dim[static_cast<size_t>(id)]));
  return F;
}

struct FormMapReport {
  bool ok = true;
  int cell = -1, face = -1;
  EnvForm difference;
};

/// Checks the cocone compatibility on all faces of all cells.
inline FormMapReport validate_form_map(const FormMap& F) {
  FormMapReport rep;
  const SimplicialSet& X = *F.X;
  for (int id = 0; id < X.cell_count(); ++id) {
    int d = X.dim[static_cast<size_t>(id)];
    for (int i = 0; i <= d && d > 0; ++i) {
      EnvForm a = F.at(X.faces[static_cast<size_t>(id)][static_cast<size_t>(i)]);
      EnvForm b = pullback(F.val[static_cast<size_t>(id)], ordinal_delta(i, d));
      if (!(a == b)) {
        rep.ok = false;
        rep.cell = id;
        rep.face = i;
        rep.difference = a - b;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace dph
