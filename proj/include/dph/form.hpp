#pragma once

#include <cstdint>
#include <memory>
#include <set>

#include "dph/dp.hpp"
#include "dph/linfty.hpp"

namespace dph {

namespace detail {
/// Koszul sign for dx_A ^ dx_B with disjoint index masks.
inline int mask_shuffle_sign(uint64_t a, uint64_t b) {
  int inv = 0;
  for (int i = 1; i < 64; ++i)
    if (b & (1ull << i)) inv += __builtin_popcountll(a >> (i + 1));
  return inv % 2 ? -1 : 1;
}
}  // namespace detail

/// Element of the divided-power de Rham complex on a standard simplex:
/// sum over strictly increasing dx index sets (as bitmasks over 1..nvars)
/// of polynomial coefficients.
class Form {
 public:
  int nvars = 0;
  std::map<uint64_t, DpPoly> c;

  Form() = default;
  explicit Form(int n) : nvars(n) {}
  static Form from_poly(DpPoly p) {
    Form f(p.nvars);
    if (!p.is_zero()) f.c.emplace(0, std::move(p));
    return f;
  }
  static Form dx(int n, int i) {
    Form f(n);
    f.c.emplace(1ull << i, DpPoly::one(n));
    return f;
  }

  bool is_zero() const { return c.empty(); }

  void add_component(uint64_t mask, const DpPoly& p) {
    if (p.is_zero()) return;
    auto it = c.find(mask);
    if (it == c.end()) {
      c.emplace(mask, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) c.erase(it);
    }
  }

  Form& operator+=(const Form& o) {
    for (auto& [m, p] : o.c) add_component(m, p);
    return *this;
  }
  Form& operator-=(const Form& o) {
    for (auto& [m, p] : o.c) add_component(m, Int(-1) * p);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Int& k, Form f) {
    if (k == 0) return Form(f.nvars);
    for (auto& [m, p] : f.c) p = k * p;
    return f;
  }
  bool operator==(const Form& o) const { return nvars == o.nvars && c == o.c; }
  bool operator!=(const Form& o) const { return !(*this == o); }
  bool operator<(const Form& o) const {
    if (nvars != o.nvars) return nvars < o.nvars;
    return c < o.c;
  }
};

inline Form wedge(const Form& a, const Form& b) {
  Form r(a.nvars);
  for (auto& [ma, pa] : a.c)
    for (auto& [mb, pb] : b.c) {
      if (ma & mb) continue;
      int s = detail::mask_shuffle_sign(ma, mb);
      DpPoly p = dp_mul(pa, pb);
      r.add_component(ma | mb, s < 0 ? Int(-1) * p : p);
    }
  return r;
}

inline Form d(const Form& f) {
  Form r(f.nvars);
  for (auto& [mask, p] : f.c)
    for (int i = 1; i <= f.nvars; ++i) {
      if (mask & (1ull << i)) continue;
      DpPoly dp = partial(p, i);
      if (dp.is_zero()) continue;
      int below = __builtin_popcountll(mask & ((1ull << i) - 1));
      r.add_component(mask | (1ull << i), below % 2 ? Int(-1) * dp : dp);
    }
  return r;
}

/// dg algebra pullback along an order-preserving map; dx collapsing to a
/// repeated index or to slot 0 vanishes.
inline Form pullback(const Form& f, const OrdinalMap& alpha) {
  Form r(alpha.dom());
  for (auto& [mask, p] : f.c) {
    uint64_t m2 = 0;
    bool dead = false;
    for (int i = 1; i <= f.nvars && !dead; ++i) {
      if (!(mask & (1ull << i))) continue;
      int j = alpha.min_index_geq(i);
      if (j <= 0) {
        dead = true;  // dx -> 0 past the image, and d(theta) = 0
        break;
      }
      if (m2 & (1ull << j)) dead = true;
      m2 |= 1ull << j;
    }
    if (dead) continue;
    r.add_component(m2, ordinal_pullback(p, alpha));
  }
  return r;
}

/// Dual-basis contraction against dx_i, extended as an interior product.
inline Form contract(const Form& f, int i) {
  if (i < 1 || i > f.nvars) throw std::invalid_argument("contract: index out of range");
  Form r(f.nvars);
  for (auto& [mask, p] : f.c) {
    if (!(mask & (1ull << i))) continue;
    int below = __builtin_popcountll(mask & ((1ull << i) - 1));
    r.add_component(mask & ~(1ull << i), below % 2 ? Int(-1) * p : p);
  }
  return r;
}

/// Formal differential form with values in the truncated enveloping algebra:
/// finite sum of (tensor word) x (scalar form) with word length <= trunc.
class EnvForm {
 public:
  std::shared_ptr<const LinftyAlgebra> g;
  int trunc = 0;
  int nvars = 0;
  std::map<EnvWord, Form> terms;

  EnvForm() = default;
  EnvForm(std::shared_ptr<const LinftyAlgebra> alg, int W, int n)
      : g(std::move(alg)), trunc(W), nvars(n) {}

  static EnvForm scalar(std::shared_ptr<const LinftyAlgebra> alg, int W, Form f) {
    EnvForm e(std::move(alg), W, f.nvars);
    if (!f.is_zero()) e.terms.emplace(EnvWord{}, std::move(f));
    return e;
  }
  static EnvForm one(std::shared_ptr<const LinftyAlgebra> alg, int W, int n) {
    return scalar(std::move(alg), W, Form::from_poly(DpPoly::one(n)));
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const EnvWord& w, const Form& f) {
    if (f.is_zero()) return;
    if (static_cast<int>(w.size()) > trunc) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, f);
    } else {
      it->second += f;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  EnvForm& operator+=(const EnvForm& o) {
    check_compatible(o);
    for (auto& [w, f] : o.terms) add_term(w, f);
    return *this;
  }
  EnvForm& operator-=(const EnvForm& o) {
    check_compatible(o);
    for (auto& [w, f] : o.terms) add_term(w, Int(-1) * f);
    return *this;
  }
  friend EnvForm operator+(EnvForm a, const EnvForm& b) { return a += b; }
  friend EnvForm operator-(EnvForm a, const EnvForm& b) { return a -= b; }
  friend EnvForm operator*(const Int& k, EnvForm e) {
    if (k == 0) e.terms.clear();
    for (auto& [w, f] : e.terms) f = k * f;
    std::erase_if(e.terms, [](auto& kv) { return kv.second.is_zero(); });
    return e;
  }
  bool operator==(const EnvForm& o) const { return nvars == o.nvars && terms == o.terms; }
  bool operator!=(const EnvForm& o) const { return !(*this == o); }

  void check_compatible(const EnvForm& o) const {
    if (nvars != o.nvars || trunc != o.trunc)
      throw std::invalid_argument("EnvForm: truncation or arity mismatch");
  }

  /// Homogeneous component with tensor-word degree p and form degree q.
  EnvForm component(int p, int q) const {
    EnvForm r(g, trunc, nvars);
    for (auto& [w, f] : terms) {
      if (g->env_deg(w) != p) continue;
      Form part(nvars);
      for (auto& [mask, poly] : f.c)
        if (__builtin_popcountll(mask) == q) part.add_component(mask, poly);
      r.add_term(w, part);
    }
    return r;
  }

  /// All (word degree, form degree) pairs present.
  std::set<std::pair<int, int>> bidegrees() const {
    std::set<std::pair<int, int>> s;
    for (auto& [w, f] : terms)
      for (auto& [mask, poly] : f.c) s.insert({g->env_deg(w), __builtin_popcountll(mask)});
    return s;
  }
};

/// Wedge with the sign rule: the scalar form of the left factor passes the
/// tensor word of the right factor.
inline EnvForm wedge(const EnvForm& a, const EnvForm& b) {
  a.check_compatible(b);
  EnvForm r(a.g, a.trunc, a.nvars);
  for (auto& [wa, fa] : a.terms)
    for (auto& [wb, fb] : b.terms) {
      if (static_cast<int>(wa.size() + wb.size()) > a.trunc) continue;
      EnvWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      int pdeg = a.g->env_deg(wb);
      for (auto& [ma, pa] : fa.c) {
        int s0 = (__builtin_popcountll(ma) * pdeg) % 2 ? -1 : 1;
        for (auto& [mb, pb] : fb.c) {
          if (ma & mb) continue;
          int s = s0 * detail::mask_shuffle_sign(ma, mb);
          DpPoly p = dp_mul(pa, pb);
          Form piece(a.nvars);
          piece.add_component(ma | mb, s < 0 ? Int(-1) * p : p);
          r.add_term(w, piece);
        }
      }
    }
  return r;
}

/// Differential acting on the form factor only.
inline EnvForm d(const EnvForm& e) {
  EnvForm r(e.g, e.trunc, e.nvars);
  for (auto& [w, f] : e.terms) r.add_term(w, d(f));
  return r;
}

inline EnvForm pullback(const EnvForm& e, const OrdinalMap& alpha) {
  EnvForm r(e.g, e.trunc, alpha.dom());
  for (auto& [w, f] : e.terms) r.add_term(w, pullback(f, alpha));
  return r;
}

}  // namespace dph
