#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dph/dp.hpp"

namespace dph {

/// Word combination over generator ids.
using Word = std::vector<int>;
using WordComb = std::map<Word, Int>;
using GenComb = std::map<int, Int>;

namespace detail {
inline void add_word(WordComb& e, Word w, Int c) {
  if (c == 0) return;
  auto it = e.find(w);
  if (it == e.end())
    e.emplace(std::move(w), std::move(c));
  else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}
inline void add_gen(GenComb& e, int g, const Int& c) {
  if (c == 0) return;
  e[g] += c;
  if (e[g] == 0) e.erase(g);
}
}  // namespace detail

/// A-infinity category presented by a finite graded quiver basis and sparse
/// Taylor coefficients on composable words of generators.
class BasisAinfty {
 public:
  int nobj = 0;
  std::vector<int> src, dst, deg;          // per generator id
  std::vector<std::string> gen_name;
  std::map<Word, GenComb> taylor;          // pr1 of the coderivation
  std::vector<int> unit_of;                // per object, generator id or -1

  int gen_count() const { return static_cast<int>(src.size()); }
  int add_gen(int s, int t, int d, std::string name) {
    src.push_back(s);
    dst.push_back(t);
    deg.push_back(d);
    gen_name.push_back(std::move(name));
    return gen_count() - 1;
  }
  bool composable(const Word& w) const {
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (dst[static_cast<size_t>(w[i])] != src[static_cast<size_t>(w[i + 1])]) return false;
    return !w.empty();
  }
  int shifted(int gen) const { return deg[static_cast<size_t>(gen)] + 1; }

  GenComb taylor_at(const Word& w) const {
    auto it = taylor.find(w);
    return it == taylor.end() ? GenComb{} : it->second;
  }

  /// Full coderivation on a word: sum over subword replacements with the
  /// shifted Koszul sign of the passed prefix.
  WordComb coderivation_word(const Word& w) const {
    WordComb out;
    const int n = static_cast<int>(w.size());
    for (int p = 0; p < n; ++p) {
      int nu = 0;
      for (int i = 0; i < p; ++i) nu += shifted(w[static_cast<size_t>(i)]);
      for (int r = 1; p + r <= n; ++r) {
        Word mid(w.begin() + p, w.begin() + p + r);
        for (auto& [gen, c] : taylor_at(mid)) {
          Word nw(w.begin(), w.begin() + p);
          nw.push_back(gen);
          nw.insert(nw.end(), w.begin() + p + r, w.end());
          detail::add_word(out, std::move(nw), (nu % 2) ? -c : c);
        }
      }
    }
    return out;
  }

  WordComb coderivation(const WordComb& e) const {
    WordComb out;
    for (auto& [w, c] : e)
      for (auto& [w2, c2] : coderivation_word(w)) detail::add_word(out, w2, c * c2);
    return out;
  }

  /// All composable words of the given length.
  std::vector<Word> words(int len) const {
    std::vector<Word> out;
    Word cur;
    std::function<void()> rec = [&]() {
      if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (int gid = 0; gid < gen_count(); ++gid) {
        if (!cur.empty() && dst[static_cast<size_t>(cur.back())] != src[static_cast<size_t>(gid)])
          continue;
        cur.push_back(gid);
        rec();
        cur.pop_back();
      }
    };
    rec();
    return out;
  }

  /// D o D on all composable words up to the length cap; witness on failure.
  std::optional<Word> square_witness(int len_cap) const {
    for (int len = 1; len <= len_cap; ++len)
      for (auto& w : words(len)) {
        WordComb e;
        e.emplace(w, 1);
        if (!coderivation(coderivation(e)).empty()) return w;
      }
    return std::nullopt;
  }

  bool is_unit(int gen) const {
    return unit_of.size() > static_cast<size_t>(src[static_cast<size_t>(gen)]) &&
           unit_of[static_cast<size_t>(src[static_cast<size_t>(gen)])] == gen &&
           src[static_cast<size_t>(gen)] == dst[static_cast<size_t>(gen)];
  }

  /// Strict unit laws, in the shifted convention: f (x) id |-> (-1)^{|f|+1} f,
  /// id (x) f |-> -f, id (x) id |-> -id, and zero on longer unit words.
  std::optional<Word> strict_unit_witness(int len_cap) const {
    if (unit_of.empty()) return Word{};
    for (int len = 1; len <= len_cap; ++len)
      for (auto& w : words(len)) {
        bool has_unit = false;
        for (int gid : w)
          if (is_unit(gid)) has_unit = true;
        if (!has_unit) continue;
        GenComb got = taylor_at(w);
        GenComb expect;
        if (len == 2 && is_unit(w[1]) && !is_unit(w[0]))
          detail::add_gen(expect, w[0], (deg[static_cast<size_t>(w[0])] + 1) % 2 ? -1 : 1);
        else if (len == 2 && is_unit(w[0]) && !is_unit(w[1]))
          detail::add_gen(expect, w[1], -1);
        else if (len == 2 && is_unit(w[0]) && is_unit(w[1]) && w[0] == w[1])
          detail::add_gen(expect, w[0], -1);
        if (got != expect) return w;
      }
    return std::nullopt;
  }
};

/// The cosimplicial family member on objects {0,...,n}: generators (i,j)
/// for i <= j in degree zero, adjacent pairs merging with a minus sign.
class SimplexCategory {
 public:
  BasisAinfty cat;
  std::map<std::pair<int, int>, int> gen_of;

  explicit SimplexCategory(int n) {
    cat.nobj = n + 1;
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        gen_of[{i, j}] =
            cat.add_gen(i, j, 0, "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        for (int k = j; k <= n; ++k) {
          Word w{gen_of.at({i, j}), gen_of.at({j, k})};
          cat.taylor[w] = GenComb{{gen_of.at({i, k}), -1}};
        }
    cat.unit_of.assign(static_cast<size_t>(n) + 1, -1);
    for (int i = 0; i <= n; ++i) cat.unit_of[static_cast<size_t>(i)] = gen_of.at({i, i});
  }
};

/// Strict functor between basis-presented categories: object map plus
/// degree-zero components on composable words.
struct BasisFunctor {
  const BasisAinfty* A = nullptr;
  const BasisAinfty* B = nullptr;
  std::vector<int> obj_map;
  std::map<Word, GenComb> comp;  // F_k per word; empty entries are zero

  GenComb comp_at(const Word& w) const {
    auto it = comp.find(w);
    return it == comp.end() ? GenComb{} : it->second;
  }

  /// Image of a word: the sum over decompositions of tensor products of
  /// component values.
  WordComb apply_word(const Word& w) const {
    // dynamic programming over split points
    const int n = static_cast<int>(w.size());
    std::vector<WordComb> best(static_cast<size_t>(n) + 1);
    best[0].emplace(Word{}, 1);
    for (int i = 1; i <= n; ++i) {
      WordComb acc;
      for (int j = 0; j < i; ++j) {
        Word part(w.begin() + j, w.begin() + i);
        GenComb img = comp_at(part);
        if (img.empty()) continue;
        for (auto& [pre, c0] : best[static_cast<size_t>(j)])
          for (auto& [gen, c1] : img) {
            Word nw = pre;
            nw.push_back(gen);
            detail::add_word(acc, std::move(nw), c0 * c1);
          }
      }
      best[static_cast<size_t>(i)] = std::move(acc);
    }
    return best[static_cast<size_t>(n)];
  }

  WordComb apply(const WordComb& e) const {
    WordComb out;
    for (auto& [w, c] : e)
      for (auto& [w2, c2] : apply_word(w)) detail::add_word(out, w2, c * c2);
    return out;
  }

  /// First word where F D != D F, up to the length cap.
  std::optional<Word> commute_witness(int len_cap) const {
    for (int len = 1; len <= len_cap; ++len)
      for (auto& w : A->words(len)) {
        WordComb e;
        e.emplace(w, 1);
        if (apply(A->coderivation(e)) != B->coderivation(apply(e))) return w;
      }
    return std::nullopt;
  }
};

struct NerveReport {
  bool ok = true;
  std::string reason;
  Word witness;
};

/// Validates a candidate family as a unit-preserving strict functor out of a
/// cosimplicial member: unit values, vanishing on longer unit words, degree
/// bookkeeping, and commutation with the coderivations up to the word cap.
inline NerveReport nerve_validate(const SimplexCategory& A, const BasisFunctor& F, int cap) {
  NerveReport rep;
  const BasisAinfty& B = *F.B;
  for (int i = 0; i < A.cat.nobj; ++i) {
    int gid = A.gen_of.at({i, i});
    int target = B.unit_of.at(static_cast<size_t>(F.obj_map.at(static_cast<size_t>(i))));
    if (F.comp_at(Word{gid}) != GenComb{{target, 1}}) {
      rep.ok = false;
      rep.reason = "unit value at object " + std::to_string(i);
      rep.witness = Word{gid};
      return rep;
    }
  }
  for (auto& [w, out] : F.comp) {
    if (w.size() >= 2) {
      for (int gid : w)
        if (A.cat.is_unit(gid) && !out.empty()) {
          rep.ok = false;
          rep.reason = "nonzero component on a unit-bearing word";
          rep.witness = w;
          return rep;
        }
    }
    int din = 0;
    for (int gid : w) din += A.cat.deg[static_cast<size_t>(gid)] + 1;
    for (auto& [g2, c] : out)
      if (c != 0 && B.deg[static_cast<size_t>(g2)] + 1 != din) {
        rep.ok = false;
        rep.reason = "component degree mismatch";
        rep.witness = w;
        return rep;
      }
  }
  if (auto w = F.commute_witness(cap)) {
    rep.ok = false;
    rep.reason = "does not commute with the coderivations";
    rep.witness = *w;
  }
  return rep;
}

/// The induced functor of an order-preserving map between the cosimplicial
/// members.
inline BasisFunctor cosimplicial_map(const SimplexCategory& A, const SimplexCategory& B,
                                     const OrdinalMap& alpha) {
  BasisFunctor F;
  F.A = &A.cat;
  F.B = &B.cat;
  for (int i = 0; i <= alpha.dom(); ++i) F.obj_map.push_back(alpha(i));
  for (auto& [ij, gid] : A.gen_of)
    F.comp[Word{gid}] = GenComb{{B.gen_of.at({alpha(ij.first), alpha(ij.second)}), 1}};
  return F;
}

/// Strict unitalization: freely adjoined units with the case-table Taylor
/// coefficients.
struct Unitalization {
  BasisAinfty cat;
  std::vector<int> old_gen;  // new id -> old id (or -1 for units)
  std::vector<int> new_gen;  // old id -> new id
};

inline Unitalization unitalize(const BasisAinfty& A) {
  Unitalization U;
  U.cat.nobj = A.nobj;
  for (int gid = 0; gid < A.gen_count(); ++gid) {
    int nid = U.cat.add_gen(A.src[static_cast<size_t>(gid)], A.dst[static_cast<size_t>(gid)],
                            A.deg[static_cast<size_t>(gid)], A.gen_name[static_cast<size_t>(gid)]);
    U.old_gen.push_back(gid);
    U.new_gen.push_back(nid);
  }
  U.cat.unit_of.assign(static_cast<size_t>(A.nobj), -1);
  for (int x = 0; x < A.nobj; ++x) {
    int nid = U.cat.add_gen(x, x, 0, "id_" + std::to_string(x));
    U.old_gen.push_back(-1);
    U.cat.unit_of[static_cast<size_t>(x)] = nid;
  }
  // unit-free words keep their coefficients
  for (auto& [w, out] : A.taylor) {
    Word nw;
    for (int gid : w) nw.push_back(U.new_gen[static_cast<size_t>(gid)]);
    GenComb nout;
    for (auto& [g, c] : out) nout[U.new_gen[static_cast<size_t>(g)]] = c;
    U.cat.taylor[nw] = std::move(nout);
  }
  // the case table
  for (int gid = 0; gid < A.gen_count(); ++gid) {
    int f = U.new_gen[static_cast<size_t>(gid)];
    int idr = U.cat.unit_of[static_cast<size_t>(A.dst[static_cast<size_t>(gid)])];
    int idl = U.cat.unit_of[static_cast<size_t>(A.src[static_cast<size_t>(gid)])];
    U.cat.taylor[Word{f, idr}] =
        GenComb{{f, (A.deg[static_cast<size_t>(gid)] + 1) % 2 ? -1 : 1}};
    U.cat.taylor[Word{idl, f}] = GenComb{{f, -1}};
  }
  for (int x = 0; x < A.nobj; ++x) {
    int id_x = U.cat.unit_of[static_cast<size_t>(x)];
    U.cat.taylor[Word{id_x, id_x}] = GenComb{{id_x, -1}};
  }
  return U;
}

/// Extension of a strict functor along the unitalization of its source.
inline BasisFunctor unitalize_functor(const Unitalization& U, const BasisFunctor& F,
                                      const BasisAinfty& B) {
  BasisFunctor G;
  G.A = &U.cat;
  G.B = &B;
  G.obj_map = F.obj_map;
  for (auto& [w, out] : F.comp) {
    Word nw;
    for (int gid : w) nw.push_back(U.new_gen[static_cast<size_t>(gid)]);
    G.comp[nw] = out;
  }
  for (int x = 0; x < U.cat.nobj; ++x) {
    int id_x = U.cat.unit_of[static_cast<size_t>(x)];
    int target_unit = B.unit_of[static_cast<size_t>(F.obj_map[static_cast<size_t>(x)])];
    G.comp[Word{id_x}] = GenComb{{target_unit, 1}};
  }
  return G;
}

/// Finite dg algebra data for the one-object import.
struct DgAlgebraData {
  std::vector<std::string> names;
  std::vector<int> degs;
  int unit = -1;
  std::map<int, GenComb> d;
  std::map<std::pair<int, int>, GenComb> mul;

  GenComb d_at(int x) const {
    auto it = d.find(x);
    return it == d.end() ? GenComb{} : it->second;
  }
  GenComb mul_at(int x, int y) const {
    auto it = mul.find({x, y});
    return it == mul.end() ? GenComb{} : it->second;
  }
  GenComb d_lin(const GenComb& v) const {
    GenComb out;
    for (auto& [x, c] : v)
      for (auto& [y, c2] : d_at(x)) detail::add_gen(out, y, c * c2);
    return out;
  }
  GenComb mul_lin(const GenComb& v, const GenComb& w) const {
    GenComb out;
    for (auto& [x, c] : v)
      for (auto& [y, c2] : w)
        for (auto& [z, c3] : mul_at(x, y)) detail::add_gen(out, z, c * c2 * c3);
    return out;
  }
};

/// One-object import of a dg algebra: the differential and the sign-twisted
/// product as the only Taylor coefficients. Validates the algebra laws.
inline BasisAinfty from_dg_algebra(const DgAlgebraData& A) {
  const int N = static_cast<int>(A.names.size());
  auto single = [](int x) { return GenComb{{x, 1}}; };
  // degrees
  for (auto& [x, v] : A.d)
    for (auto& [y, c] : v)
      if (c != 0 && A.degs[static_cast<size_t>(y)] != A.degs[static_cast<size_t>(x)] - 1)
        throw std::invalid_argument("from_dg_algebra: differential is not degree -1");
  for (auto& [xy, v] : A.mul)
    for (auto& [z, c] : v)
      if (c != 0 && A.degs[static_cast<size_t>(z)] !=
                        A.degs[static_cast<size_t>(xy.first)] + A.degs[static_cast<size_t>(xy.second)])
        throw std::invalid_argument("from_dg_algebra: product is not degree additive");
  for (int x = 0; x < N; ++x)
    if (!A.d_lin(A.d_at(x)).empty())
      throw std::invalid_argument("from_dg_algebra: differential does not square to zero at " +
                                  A.names[static_cast<size_t>(x)]);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      GenComb lhs = A.d_lin(A.mul_at(x, y));
      GenComb rhs = A.mul_lin(A.d_at(x), single(y));
      int s = A.degs[static_cast<size_t>(x)] % 2 ? -1 : 1;
      for (auto& [z, c] : A.mul_lin(single(x), A.d_at(y))) detail::add_gen(rhs, z, s * c);
      for (auto& [z, c] : rhs) detail::add_gen(lhs, z, -c);
      if (!lhs.empty())
        throw std::invalid_argument("from_dg_algebra: Leibniz rule fails at (" +
                                    A.names[static_cast<size_t>(x)] + "," +
                                    A.names[static_cast<size_t>(y)] + ")");
    }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) {
        GenComb lhs = A.mul_lin(A.mul_at(x, y), single(z));
        for (auto& [w, c] : A.mul_lin(single(x), A.mul_at(y, z))) detail::add_gen(lhs, w, -c);
        if (!lhs.empty())
          throw std::invalid_argument("from_dg_algebra: associativity fails at (" +
                                      A.names[static_cast<size_t>(x)] + "," +
                                      A.names[static_cast<size_t>(y)] + "," +
                                      A.names[static_cast<size_t>(z)] + ")");
      }
  if (A.unit >= 0) {
    if (!A.d_at(A.unit).empty())
      throw std::invalid_argument("from_dg_algebra: unit is not closed");
    for (int x = 0; x < N; ++x) {
      if (A.mul_at(A.unit, x) != single(x) || A.mul_at(x, A.unit) != single(x))
        throw std::invalid_argument("from_dg_algebra: unit laws fail at " +
                                    A.names[static_cast<size_t>(x)]);
    }
  }

  BasisAinfty out;
  out.nobj = 1;
  for (int x = 0; x < N; ++x)
    out.add_gen(0, 0, A.degs[static_cast<size_t>(x)], A.names[static_cast<size_t>(x)]);
  for (int x = 0; x < N; ++x) {
    GenComb v = A.d_at(x);
    if (!v.empty()) out.taylor[Word{x}] = v;
  }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      GenComb v = A.mul_at(x, y);
      if (v.empty()) continue;
      int s = (A.degs[static_cast<size_t>(x)] + 1) % 2 ? -1 : 1;
      GenComb tv;
      for (auto& [z, c] : v) tv[z] = s * c;
      out.taylor[Word{x, y}] = std::move(tv);
    }
  if (A.unit >= 0) out.unit_of = {A.unit};
  return out;
}

}  // namespace dph
