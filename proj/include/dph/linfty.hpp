#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dph/dp.hpp"

namespace dph {

/// A wedge word x_{i1} ^ ... ^ x_{ik} in Sym g[1], stored as a sorted
/// multiset of generator indices. The empty word is the coalgebra unit.
using SymMono = std::vector<int>;

/// Element of Sym g[1].
using SymElt = std::map<SymMono, Int>;

/// Tensor word of Sym-monomials: a basis element of the enveloping algebra.
using EnvWord = std::vector<SymMono>;

/// Element of the (truncated) enveloping algebra.
using EnvElt = std::map<EnvWord, Int>;

/// Connected L-infinity algebra presented by a finite generator basis
/// (degrees >= 1) and sparse structure tables on shifted wedge words.
class LinftyAlgebra {
 public:
  std::vector<std::string> names;
  std::vector<int> degs;  // generator degrees, all >= 1
  int max_arity = 0;
  // l[k] : canonical wedge word of length k -> integer combination of
  // generators, as the shifted-degree -1 component map.
  std::map<int, std::map<SymMono, std::map<int, Int>>> l;

  int gen_count() const { return static_cast<int>(names.size()); }
  int shifted_deg(int gen) const { return degs.at(static_cast<size_t>(gen)) + 1; }
  int sym_deg(const SymMono& w) const {
    int d = 0;
    for (int g : w) d += shifted_deg(g);
    return d;
  }
  /// Degree of a Sym-monomial as a generator of the enveloping algebra.
  int env_gen_deg(const SymMono& w) const { return sym_deg(w) - 1; }
  int env_deg(const EnvWord& w) const {
    int d = 0;
    for (auto& m : w) d += env_gen_deg(m);
    return d;
  }

  void validate() const {
    if (names.size() != degs.size()) throw std::invalid_argument("linfty: basis mismatch");
    for (int d : degs)
      if (d < 1) throw std::invalid_argument("linfty: connectedness requires degrees >= 1");
    for (auto& [k, tab] : l) {
      for (auto& [w, out] : tab) {
        if (static_cast<int>(w.size()) != k)
          throw std::invalid_argument("linfty: arity mismatch in structure table");
        SymMono sorted = w;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != w)
          throw std::invalid_argument("linfty: structure keys must be canonical words");
        for (size_t i = 0; i + 1 < w.size(); ++i)
          if (w[i] == w[i + 1] && shifted_deg(w[i]) % 2 != 0)
            throw std::invalid_argument("linfty: repeated odd generator in structure key");
        int din = sym_deg(w);
        for (auto& [g, c] : out) {
          if (c == 0) continue;
          if (shifted_deg(g) != din - 1)
            throw std::invalid_argument("linfty: structure map is not degree -1");
        }
      }
    }
  }
};

namespace detail {
/// Sort a wedge word, tracking the Koszul sign on shifted degrees.
/// Returns 0 sign when an odd generator repeats.
inline int canon_sym(const LinftyAlgebra& g, SymMono& w) {
  int sign = 1;
  for (size_t i = 1; i < w.size(); ++i)
    for (size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      if ((g.shifted_deg(w[j]) % 2) && (g.shifted_deg(w[j - 1]) % 2)) sign = -sign;
      std::swap(w[j], w[j - 1]);
    }
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1] && g.shifted_deg(w[i]) % 2 != 0) return 0;
  return sign;
}

inline void add_sym(SymElt& e, SymMono w, Int c) {
  if (c == 0) return;
  auto it = e.find(w);
  if (it == e.end())
    e.emplace(std::move(w), std::move(c));
  else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

inline void add_env(EnvElt& e, EnvWord w, Int c) {
  if (c == 0) return;
  auto it = e.find(w);
  if (it == e.end())
    e.emplace(std::move(w), std::move(c));
  else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}
}  // namespace detail

/// The coderivation on Sym g[1] extending the structure tables: sum over
/// position subsets, structure map applied to the extracted factor, result
/// wedged in front of the remainder with the shuffle sign.
inline SymElt coderivation_mono(const LinftyAlgebra& g, const SymMono& w) {
  SymElt out;
  const int r = static_cast<int>(w.size());
  for (int mask = 1; mask < (1 << r); ++mask) {
    int k = __builtin_popcount(static_cast<unsigned>(mask));
    auto tab = g.l.find(k);
    if (tab == g.l.end()) continue;
    // shuffle sign: move selected factors to the front, preserving order
    int sign = 1;
    int unselected_before = 0;  // running shifted degree of unselected factors
    SymMono sel, rest;
    for (int i = 0; i < r; ++i) {
      int sd = g.shifted_deg(w[static_cast<size_t>(i)]);
      if (mask & (1 << i)) {
        if ((sd % 2) && (unselected_before % 2)) sign = -sign;
        sel.push_back(w[static_cast<size_t>(i)]);
      } else {
        unselected_before += sd;
        rest.push_back(w[static_cast<size_t>(i)]);
      }
    }
    int csign = detail::canon_sym(g, sel);
    if (csign == 0) continue;
    auto hit = tab->second.find(sel);
    if (hit == tab->second.end()) continue;
    for (auto& [gen, c] : hit->second) {
      SymMono word;
      word.push_back(gen);
      word.insert(word.end(), rest.begin(), rest.end());
      int s2 = detail::canon_sym(g, word);
      if (s2 == 0) continue;
      detail::add_sym(out, std::move(word), c * sign * csign * s2);
    }
  }
  return out;
}

inline SymElt coderivation(const LinftyAlgebra& g, const SymElt& e) {
  SymElt out;
  for (auto& [w, c] : e)
    for (auto& [w2, c2] : coderivation_mono(g, w)) detail::add_sym(out, w2, c * c2);
  return out;
}

/// All canonical wedge words of length exactly k.
inline std::vector<SymMono> sym_words(const LinftyAlgebra& g, int k) {
  std::vector<SymMono> out;
  SymMono cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = lo; i < g.gen_count(); ++i) {
      if (!cur.empty() && cur.back() == i && g.shifted_deg(i) % 2 != 0) continue;
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// D o D on all wedge words up to the weight cap; returns a witness word on
/// failure.
inline std::optional<SymMono> coderivation_square_witness(const LinftyAlgebra& g, int weight_cap) {
  for (int k = 1; k <= weight_cap; ++k)
    for (auto& w : sym_words(g, k)) {
      SymElt e;
      e.emplace(w, 1);
      if (!coderivation(g, coderivation(g, e)).empty()) return w;
    }
  return std::nullopt;
}

/// Input data for the dg-Lie constructor: a finite complex with a bracket.
struct DgLieData {
  std::vector<std::string> names;
  std::vector<int> degs;                       // >= 1
  std::map<int, std::map<int, Int>> diff;      // gen -> combination, degree -1
  std::map<std::pair<int, int>, std::map<int, Int>> bracket;  // on all ordered pairs
};

namespace detail {
inline std::map<int, Int> lin(const std::map<int, std::map<int, Int>>& table,
                              const std::map<int, Int>& v) {
  std::map<int, Int> out;
  for (auto& [g, c] : v) {
    auto it = table.find(g);
    if (it == table.end()) continue;
    for (auto& [h, c2] : it->second) {
      out[h] += c * c2;
      if (out[h] == 0) out.erase(h);
    }
  }
  return out;
}
}  // namespace detail

/// Builds the two-term structure tables from a dg Lie algebra, after
/// checking skew-symmetry, the Leibniz rule and the Jacobi identity on the
/// basis. Throws with the violated law and a witness.
inline LinftyAlgebra from_dg_lie(const DgLieData& d) {
  LinftyAlgebra g;
  g.names = d.names;
  g.degs = d.degs;
  g.max_arity = 2;
  const int N = static_cast<int>(d.names.size());
  auto br = [&](int x, int y) -> std::map<int, Int> {
    auto it = d.bracket.find({x, y});
    return it == d.bracket.end() ? std::map<int, Int>{} : it->second;
  };
  auto dd = [&](const std::map<int, Int>& v) { return detail::lin(d.diff, v); };
  auto single = [](int gen) { return std::map<int, Int>{{gen, 1}}; };
  auto scale = [](Int c, std::map<int, Int> v) {
    for (auto& [k, x] : v) x *= c;
    return v;
  };
  auto add = [](std::map<int, Int> a, const std::map<int, Int>& b) {
    for (auto& [k, x] : b) {
      a[k] += x;
      if (a[k] == 0) a.erase(k);
    }
    return a;
  };
  auto br_lin = [&](const std::map<int, Int>& v, const std::map<int, Int>& w) {
    std::map<int, Int> out;
    for (auto& [x, cx] : v)
      for (auto& [y, cy] : w) out = add(std::move(out), scale(cx * cy, br(x, y)));
    return out;
  };

  // degree checks
  for (auto& [x, v] : d.diff)
    for (auto& [y, c] : v)
      if (c != 0 && d.degs[static_cast<size_t>(y)] != d.degs[static_cast<size_t>(x)] - 1)
        throw std::invalid_argument("from_dg_lie: differential is not degree -1");
  for (auto& [xy, v] : d.bracket)
    for (auto& [z, c] : v)
      if (c != 0 && d.degs[static_cast<size_t>(z)] !=
                        d.degs[static_cast<size_t>(xy.first)] + d.degs[static_cast<size_t>(xy.second)])
        throw std::invalid_argument("from_dg_lie: bracket is not degree 0");
  // boundary squared
  for (int x = 0; x < N; ++x)
    if (!dd(dd(single(x))).empty())
      throw std::invalid_argument("from_dg_lie: differential does not square to zero at " +
                                  d.names[static_cast<size_t>(x)]);
  // skew-symmetry
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      int s = (d.degs[static_cast<size_t>(x)] * d.degs[static_cast<size_t>(y)]) % 2 ? 1 : -1;
      if (!add(br(x, y), scale(s == 1 ? -1 : 1, br(y, x))).empty() ||
          (x == y && d.degs[static_cast<size_t>(x)] % 2 == 0 && !br(x, x).empty()))
        throw std::invalid_argument("from_dg_lie: skew-symmetry fails at (" +
                                    d.names[static_cast<size_t>(x)] + "," +
                                    d.names[static_cast<size_t>(y)] + ")");
    }
  // Leibniz
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      auto lhs = dd(br(x, y));
      auto rhs = add(br_lin(dd(single(x)), single(y)),
                     scale(d.degs[static_cast<size_t>(x)] % 2 ? -1 : 1,
                           br_lin(single(x), dd(single(y)))));
      if (add(lhs, scale(-1, rhs)).size())
        throw std::invalid_argument("from_dg_lie: Leibniz rule fails at (" +
                                    d.names[static_cast<size_t>(x)] + "," +
                                    d.names[static_cast<size_t>(y)] + ")");
    }
  // Jacobi
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) {
        auto lhs = br_lin(single(x), br(y, z));
        auto rhs = add(br_lin(br(x, y), single(z)),
                       scale((d.degs[static_cast<size_t>(x)] * d.degs[static_cast<size_t>(y)]) % 2 ? -1 : 1,
                             br_lin(single(y), br(x, z))));
        if (add(lhs, scale(-1, rhs)).size())
          throw std::invalid_argument("from_dg_lie: Jacobi identity fails at (" +
                                      d.names[static_cast<size_t>(x)] + "," +
                                      d.names[static_cast<size_t>(y)] + "," +
                                      d.names[static_cast<size_t>(z)] + ")");
      }

  for (int x = 0; x < N; ++x) {
    auto v = dd(single(x));
    if (!v.empty()) g.l[1][SymMono{x}] = v;
  }
  for (int x = 0; x < N; ++x)
    for (int y = x; y < N; ++y) {
      auto v = br(x, y);
      if (x == y && (g.shifted_deg(x) % 2)) continue;
      if (v.empty()) continue;
      int s = d.degs[static_cast<size_t>(x)] % 2 ? 1 : -1;  // (-1)^{|x|+1}
      g.l[2][SymMono{x, y}] = scale(s, v);
    }
  g.validate();
  return g;
}

/// Abelian algebra on the given generators.
inline LinftyAlgebra abelian_algebra(std::vector<std::string> names, std::vector<int> degs) {
  LinftyAlgebra g;
  g.names = std::move(names);
  g.degs = std::move(degs);
  g.max_arity = 0;
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Enveloping algebra

/// Concatenation product, dropping words longer than the truncation cap.
inline EnvElt env_mul(const EnvElt& a, const EnvElt& b, int W) {
  EnvElt out;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > W) continue;
      EnvWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      detail::add_env(out, std::move(w), ca * cb);
    }
  return out;
}

inline EnvElt env_one() { return EnvElt{{EnvWord{}, 1}}; }

/// Reduced coproduct of a wedge word: all proper two-sided splits with
/// shuffle signs.
inline std::vector<std::tuple<SymMono, SymMono, int>> reduced_coproduct(const LinftyAlgebra& g,
                                                                        const SymMono& w) {
  std::vector<std::tuple<SymMono, SymMono, int>> out;
  const int r = static_cast<int>(w.size());
  for (int mask = 1; mask < (1 << r) - 1; ++mask) {
    SymMono left, right;
    int sign = 1;
    int right_before = 0;
    for (int i = r - 1; i >= 0; --i) {
      int sd = g.shifted_deg(w[static_cast<size_t>(i)]);
      if (mask & (1 << i)) {
        if ((sd % 2) && (right_before % 2)) sign = -sign;
        left.push_back(w[static_cast<size_t>(i)]);
      } else {
        right_before += sd;
        right.push_back(w[static_cast<size_t>(i)]);
      }
    }
    std::reverse(left.begin(), left.end());
    std::reverse(right.begin(), right.end());
    out.emplace_back(std::move(left), std::move(right), sign);
  }
  return out;
}

/// Differential of the enveloping algebra on a single generator word.
inline EnvElt env_differential_gen(const LinftyAlgebra& g, const SymMono& x, int W) {
  EnvElt out;
  for (auto& [w, c] : coderivation_mono(g, x)) detail::add_env(out, EnvWord{w}, c);
  if (W >= 2) {
    for (auto& [xl, xr, sign] : reduced_coproduct(g, x)) {
      int s = (g.sym_deg(xl) % 2) ? -1 : 1;
      detail::add_env(out, EnvWord{xl, xr}, -s * sign);
    }
  }
  return out;
}

/// Graded derivation extension to tensor words, truncated at W.
inline EnvElt env_differential(const LinftyAlgebra& g, const EnvElt& e, int W) {
  EnvElt out;
  for (auto& [w, c] : e) {
    int sgn = 1;
    for (size_t i = 0; i < w.size(); ++i) {
      for (auto& [dw, dc] : env_differential_gen(g, w[i], W)) {
        EnvWord nw;
        nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long>(i));
        nw.insert(nw.end(), dw.begin(), dw.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
        if (static_cast<int>(nw.size()) > W) continue;
        detail::add_env(out, std::move(nw), c * dc * sgn);
      }
      if (g.env_gen_deg(w[i]) % 2) sgn = -sgn;
    }
  }
  return out;
}

}  // namespace dph
