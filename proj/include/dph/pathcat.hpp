#pragma once

#include "dph/ainfty.hpp"
#include "dph/tot.hpp"

namespace dph {

/// Finite dg quiver: graded arrows between objects with a square-zero
/// degree -1 differential.
struct DgQuiver {
  int nobj = 0;
  std::vector<int> src, dst, deg;
  std::vector<std::string> name;
  std::map<int, GenComb> diff;

  int arrow_count() const { return static_cast<int>(src.size()); }
  int add_arrow(int s, int t, int d, std::string n) {
    src.push_back(s);
    dst.push_back(t);
    deg.push_back(d);
    name.push_back(std::move(n));
    return arrow_count() - 1;
  }
  GenComb diff_at(int a) const {
    auto it = diff.find(a);
    return it == diff.end() ? GenComb{} : it->second;
  }
  void validate() const {
    for (auto& [a, v] : diff)
      for (auto& [b, c] : v) {
        if (c == 0) continue;
        if (deg[static_cast<size_t>(b)] != deg[static_cast<size_t>(a)] - 1)
          throw std::invalid_argument("dg quiver: differential is not degree -1");
        if (src[static_cast<size_t>(b)] != src[static_cast<size_t>(a)] ||
            dst[static_cast<size_t>(b)] != dst[static_cast<size_t>(a)])
          throw std::invalid_argument("dg quiver: differential moves endpoints");
      }
    for (int a = 0; a < arrow_count(); ++a) {
      GenComb dd;
      for (auto& [b, c] : diff_at(a))
        for (auto& [e, c2] : diff_at(b)) detail::add_gen(dd, e, c * c2);
      if (!dd.empty()) throw std::invalid_argument("dg quiver: differential does not square to zero");
    }
  }
};

// ---------------------------------------------------------------------------
// Free model: planar trees over quiver arrows.

struct Tree {
  int arrow = -1;               // leaf payload
  std::vector<Tree> kids;       // nonempty for interior nodes

  bool is_leaf() const { return kids.empty(); }
  bool operator==(const Tree& o) const { return arrow == o.arrow && kids == o.kids; }
  bool operator<(const Tree& o) const {
    if (arrow != o.arrow) return arrow < o.arrow;
    return kids < o.kids;
  }
};

using TreeComb = std::map<Tree, Int>;

namespace detail {
inline void add_tree(TreeComb& e, Tree t, Int c) {
  if (c == 0) return;
  auto it = e.find(t);
  if (it == e.end())
    e.emplace(std::move(t), std::move(c));
  else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}
}  // namespace detail

inline int tree_src(const DgQuiver& Q, const Tree& t) {
  return t.is_leaf() ? Q.src[static_cast<size_t>(t.arrow)] : tree_src(Q, t.kids.front());
}
inline int tree_dst(const DgQuiver& Q, const Tree& t) {
  return t.is_leaf() ? Q.dst[static_cast<size_t>(t.arrow)] : tree_dst(Q, t.kids.back());
}
inline int tree_leaves(const Tree& t) {
  if (t.is_leaf()) return 1;
  int n = 0;
  for (auto& k : t.kids) n += tree_leaves(k);
  return n;
}
/// Shifted degree: leaves carry degree + 1, interior nodes subtract one.
inline int tree_shifted_deg(const DgQuiver& Q, const Tree& t) {
  if (t.is_leaf()) return Q.deg[static_cast<size_t>(t.arrow)] + 1;
  int d = -1;
  for (auto& k : t.kids) d += tree_shifted_deg(Q, k);
  return d;
}

/// The differential of the free model on a single tree.
inline TreeComb free_b1(const DgQuiver& Q, const Tree& t) {
  TreeComb out;
  if (t.is_leaf()) {
    for (auto& [b, c] : Q.diff_at(t.arrow)) detail::add_tree(out, Tree{b, {}}, c);
    return out;
  }
  const int k = static_cast<int>(t.kids.size());
  // b1(corolla) is forced by the square-zero relation: minus the sum of all
  // proper insertions of the structure maps.
  for (int p = 0; p < k; ++p) {
    int nu = 0;
    for (int i = 0; i < p; ++i) nu += tree_shifted_deg(Q, t.kids[static_cast<size_t>(i)]);
    int sign = (nu % 2) ? 1 : -1;  // global minus times the Koszul sign
    // r = 1: recurse into one child
    for (auto& [sub, c] : free_b1(Q, t.kids[static_cast<size_t>(p)])) {
      Tree nt = t;
      nt.kids[static_cast<size_t>(p)] = sub;
      detail::add_tree(out, std::move(nt), sign * c);
    }
    // r >= 2 proper subintervals: graft a corolla
    for (int r = 2; r < k && p + r <= k; ++r) {
      Tree inner;
      inner.kids.assign(t.kids.begin() + p, t.kids.begin() + p + r);
      Tree nt;
      nt.kids.assign(t.kids.begin(), t.kids.begin() + p);
      nt.kids.push_back(std::move(inner));
      nt.kids.insert(nt.kids.end(), t.kids.begin() + p + r, t.kids.end());
      if (nt.kids.size() == 1) nt = nt.kids.front();
      detail::add_tree(out, std::move(nt), sign);
    }
  }
  return out;
}

inline TreeComb free_b1(const DgQuiver& Q, const TreeComb& e) {
  TreeComb out;
  for (auto& [t, c] : e)
    for (auto& [t2, c2] : free_b1(Q, t)) detail::add_tree(out, t2, c * c2);
  return out;
}

/// All composable trees with at most the given number of leaves.
inline std::vector<Tree> enumerate_trees(const DgQuiver& Q, int leaf_cap) {
  std::vector<std::vector<Tree>> by_leaves(static_cast<size_t>(leaf_cap) + 1);
  for (int a = 0; a < Q.arrow_count(); ++a) by_leaves[1].push_back(Tree{a, {}});
  for (int n = 2; n <= leaf_cap; ++n) {
    // all corollas with k >= 2 children whose leaf counts sum to n
    std::vector<std::vector<Tree>> stack;
    std::function<void(std::vector<Tree>&, int)> rec = [&](std::vector<Tree>& cur, int rem) {
      if (rem == 0) {
        if (cur.size() >= 2) {
          bool ok = true;
          for (size_t i = 0; i + 1 < cur.size(); ++i)
            if (tree_dst(Q, cur[i]) != tree_src(Q, cur[i + 1])) ok = false;
          if (ok) {
            Tree t;
            t.kids = cur;
            by_leaves[static_cast<size_t>(n)].push_back(std::move(t));
          }
        }
        return;
      }
      for (int take = 1; take <= rem; ++take)
        for (auto& sub : by_leaves[static_cast<size_t>(take)]) {
          if (!cur.empty() && tree_dst(Q, cur.back()) != tree_src(Q, sub)) continue;
          cur.push_back(sub);
          rec(cur, rem - take);
          cur.pop_back();
        }
    };
    std::vector<Tree> cur;
    rec(cur, n);
  }
  std::vector<Tree> out;
  for (auto& level : by_leaves)
    for (auto& t : level) out.push_back(t);
  return out;
}

/// The universal extension of a quiver morphism into the totalized algebra:
/// leaves map through phi, corollas through the target structure maps.
inline TotElt builder_value(const DgQuiver& Q, const TotAlgebra& B,
                            const std::function<TotElt(int)>& phi, const Tree& t) {
  if (t.is_leaf()) return phi(t.arrow);
  const int k = static_cast<int>(t.kids.size());
  if (k != 2) return B.zero(0);  // b_k = 0 for k >= 3 in a dg target
  TotElt x = builder_value(Q, B, phi, t.kids[0]);
  TotElt y = builder_value(Q, B, phi, t.kids[1]);
  if (tot_is_zero(x) || tot_is_zero(y)) return B.zero(x.level + y.level);
  return B.b2(x, y);
}

inline TotElt builder_value(const DgQuiver& Q, const TotAlgebra& B,
                            const std::function<TotElt(int)>& phi, const TreeComb& e) {
  TotElt acc = B.zero(0);
  bool first = true;
  for (auto& [t, c] : e) {
    TotElt v = B.scale(c, builder_value(Q, B, phi, t));
    if (tot_is_zero(v)) continue;
    if (first || tot_is_zero(acc)) {
      acc = v;
      first = false;
    } else {
      acc = B.add(acc, v);
    }
  }
  return acc;
}

/// Memoizing evaluator for the universal extension.
class Builder {
 public:
  const DgQuiver* Q;
  const TotAlgebra* B;
  std::function<TotElt(int)> phi;
  std::map<Tree, TotElt> cache;

  Builder(const DgQuiver& q, const TotAlgebra& b, std::function<TotElt(int)> f)
      : Q(&q), B(&b), phi(std::move(f)) {}

  const TotElt& value(const Tree& t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    TotElt v;
    if (t.is_leaf()) {
      v = phi(t.arrow);
    } else if (t.kids.size() != 2) {
      v = B->zero(0);
    } else {
      const TotElt& x = value(t.kids[0]);
      const TotElt& y = value(t.kids[1]);
      v = (tot_is_zero(x) || tot_is_zero(y)) ? B->zero(x.level + y.level) : B->b2(x, y);
    }
    return cache.emplace(t, std::move(v)).first->second;
  }

  TotElt value(const TreeComb& e) {
    TotElt acc = B->zero(0);
    bool first = true;
    for (auto& [t, c] : e) {
      TotElt v = B->scale(c, value(t));
      if (tot_is_zero(v)) continue;
      if (first || tot_is_zero(acc)) {
        acc = v;
        first = false;
      } else {
        acc = B->add(acc, v);
      }
    }
    return acc;
  }
};

/// First tree (up to the leaf cap) where the induced functor fails to
/// commute with the differentials; the word-level identities at arity >= 2
/// hold by construction for a dg target.
inline std::optional<Tree> builder_commute_witness(const DgQuiver& Q, const TotAlgebra& B,
                                                   const std::function<TotElt(int)>& phi,
                                                   int leaf_cap) {
  Builder bld(Q, B, phi);
  for (auto& t : enumerate_trees(Q, leaf_cap)) {
    TotElt lhs = bld.value(free_b1(Q, t));
    TotElt rhs = B.b1(bld.value(t));
    if (!B.equal(lhs, rhs)) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite truncation of the totalized cochain algebra as explicit dg data.

/// Basis element: (level, injective face, tensor word, theta power).
struct TotToy {
  DgAlgebraData alg;
  std::vector<std::tuple<int, OrdinalMap, EnvWord, uint32_t>> basis;
  std::map<std::tuple<int, OrdinalMap, EnvWord, uint32_t>, int> index;
  std::shared_ptr<const LinftyAlgebra> g;
  int level_cap = 0, trunc = 0, theta_cap = 0;

  TotElt element(int i) const {
    auto& [q, inj, w, t] = basis[static_cast<size_t>(i)];
    TotElt e{q, {}};
    EnvForm v(g, trunc, 0);
    Form f(0);
    f.add_component(0, DpPoly::power(0, 0, t));
    v.add_term(w, f);
    e.val[inj] = v;
    return e;
  }

  /// Expansion in the basis, dropping theta powers beyond the cap.
  GenComb coords(const TotElt& e) const {
    GenComb out;
    for (auto& [inj, v] : e.val)
      for (auto& [w, f] : v.terms)
        for (auto& [mask, poly] : f.c)
          for (auto& [mono, c] : poly.terms) {
            if (mono.e[0] > static_cast<uint32_t>(theta_cap)) continue;
            auto key = std::make_tuple(e.level, inj, w, mono.e[0]);
            auto it = index.find(key);
            if (it == index.end()) continue;
            detail::add_gen(out, it->second, c);
          }
    return out;
  }
};

/// Truncated totalization: theta powers and tensor-word lengths are capped
/// (both quotients by ideals), and positive levels carry words at least as
/// long as the level, so products escaping the level range die in the word
/// ideal and the finite basis closes under both operations.
inline TotToy make_tot_toy(std::shared_ptr<const LinftyAlgebra> g, int W, int theta_cap,
                           int max_symweight = 1) {
  TotToy T;
  T.g = std::move(g);
  T.level_cap = W;
  T.trunc = W;
  T.theta_cap = theta_cap;
  // enumerate words: tensor words of wedge monomials up to the caps
  std::vector<EnvWord> words;
  std::vector<SymMono> monos;
  for (int k = 1; k <= max_symweight; ++k)
    for (auto& m : sym_words(*T.g, k)) monos.push_back(m);
  std::function<void(EnvWord&)> rec = [&](EnvWord& cur) {
    words.push_back(cur);
    if (static_cast<int>(cur.size()) >= W) return;
    for (auto& m : monos) {
      cur.push_back(m);
      rec(cur);
      cur.pop_back();
    }
  };
  EnvWord cur;
  rec(cur);
  for (int q = 0; q <= T.level_cap; ++q)
    for (int k = 0; k <= q; ++k)
      for (auto& inj : all_injections(k, q))
        for (auto& w : words) {
          if (q > 0 && static_cast<int>(w.size()) < q) continue;
          for (uint32_t t = 0; t <= static_cast<uint32_t>(theta_cap); ++t) {
            auto key = std::make_tuple(q, inj, w, t);
            int id = static_cast<int>(T.basis.size());
            T.basis.push_back(key);
            T.index[key] = id;
            std::string nm = "q" + std::to_string(q) + "w" + std::to_string(w.size()) + "t" +
                             std::to_string(t) + "#" + std::to_string(id);
            T.alg.names.push_back(nm);
            T.alg.degs.push_back(q);
          }
        }
  TotAlgebra A{T.g, W};
  for (int i = 0; i < static_cast<int>(T.basis.size()); ++i) {
    GenComb dv = T.coords(A.d(T.element(i)));
    if (!dv.empty()) T.alg.d[i] = dv;
    for (int j = 0; j < static_cast<int>(T.basis.size()); ++j) {
      GenComb mv = T.coords(A.mul(T.element(i), T.element(j)));
      if (!mv.empty()) T.alg.mul[{i, j}] = mv;
    }
  }
  T.alg.unit = T.index.at(std::make_tuple(0, ordinal_id(0), EnvWord{}, 0u));
  return T;
}

// ---------------------------------------------------------------------------
// Path quivers and the holonomy functor data.

/// The chains-on-hom-spaces quiver of a simplicial set, materialized to the
/// dimension cap. Arrows are all simplex values of the hom spaces, with the
/// alternating face sum as the differential.
struct PathQuiver {
  DgQuiver Q;
  const PathSpace* P = nullptr;
  std::vector<std::pair<std::pair<int, int>, Simplex>> arrow_data;  // ((x,y), hom simplex)
  std::vector<HomSpace> homs;  // indexed by x * nobj + y
  std::map<std::pair<std::pair<int, int>, Simplex>, int> arrow_of;
};

inline PathQuiver path_quiver(const PathSpace& P, int cap) {
  PathQuiver out;
  out.P = &P;
  const SimplicialSet& X = *P.X;
  int nv = static_cast<int>(X.by_dim[0].size());
  out.Q.nobj = nv;
  for (int x = 0; x < nv; ++x)
    for (int y = 0; y < nv; ++y) out.homs.push_back(hom_space(P, X.by_dim[0][static_cast<size_t>(x)],
                                                              X.by_dim[0][static_cast<size_t>(y)]));
  for (int x = 0; x < nv; ++x)
    for (int y = 0; y < nv; ++y) {
      const HomSpace& H = out.homs[static_cast<size_t>(x * nv + y)];
      for (int q = 0; q <= cap; ++q)
        for (auto& s : H.space.all_simplices(q)) {
          int a = out.Q.add_arrow(x, y, q,
                                  "h" + std::to_string(x) + std::to_string(y) + "d" +
                                      std::to_string(q) + "#" + std::to_string(s.core));
          out.arrow_data.push_back({{x, y}, s});
          out.arrow_of[{{x, y}, s}] = a;
        }
    }
  // differential: alternating sum of faces (all of them; the chains are the
  // unnormalized simplicial chains of the hom spaces)
  for (int a = 0; a < out.Q.arrow_count(); ++a) {
    auto& [xy, s] = out.arrow_data[static_cast<size_t>(a)];
    const HomSpace& H = out.homs[static_cast<size_t>(xy.first * nv + xy.second)];
    int q = s.dim();
    if (q == 0) continue;
    GenComb v;
    for (int i = 0; i <= q; ++i) {
      Simplex f = H.space.apply(s, ordinal_delta(i, q));
      int b = out.arrow_of.at({xy, f});
      detail::add_gen(v, b, i % 2 ? -1 : 1);
    }
    if (!v.empty()) out.Q.diff[a] = std::move(v);
  }
  return out;
}

/// Holonomy values for every arrow of a path quiver: hol at the underlying
/// path cell, transported through the arrow's degeneracy.
inline std::function<TotElt(int)> ahol_phi(const PathQuiver& PQ, const TotAlgebra& B,
                                           const FormMap& conn, int R) {
  const PathSpace& P = *PQ.P;
  int nv = PQ.Q.nobj;
  // holonomy at the nondegenerate cores only
  auto core_vals = std::make_shared<std::map<int, HolValue>>();
  auto values = std::make_shared<std::map<int, TotElt>>();
  for (int a = 0; a < PQ.Q.arrow_count(); ++a) {
    auto& [xy, s] = PQ.arrow_data[static_cast<size_t>(a)];
    const HomSpace& H = PQ.homs[static_cast<size_t>(xy.first * nv + xy.second)];
    int pcell = H.path_cell[static_cast<size_t>(s.core)];
    if (!core_vals->count(pcell)) (*core_vals)[pcell] = hol_at(P, pcell, conn, R);
    const HolValue& hv = core_vals->at(pcell);
    TotElt e{s.dim(), {}};
    for (int k = 0; k <= s.dim(); ++k)
      for (auto& inj : all_injections(k, s.dim())) {
        auto [del, sig] = epi_mono_factor(compose(s.sigma, inj));
        if (!sig.is_identity()) continue;  // normalized pairing vanishes
        auto it = hv.find(del);
        if (it != hv.end() && !it->second.is_zero()) e.val[inj] = it->second;
      }
    (*values)[a] = std::move(e);
  }
  return [values](int arrow) { return values->at(arrow); };
}

}  // namespace dph
