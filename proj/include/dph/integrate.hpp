#pragma once

#include <functional>

#include "dph/chains.hpp"
#include "dph/form.hpp"
#include "dph/simplicial.hpp"

namespace dph {

/// Iterated divided-power integral of a form over the fiber directions of a
/// global chain: keeps the top fiber-degree component, integrates the fiber
/// variables in order with the chain's bounds, and relabels the base.
inline EnvForm chain_integral(const EnvForm& w, const Chain& c) {
  if (!c.is_global()) throw std::invalid_argument("chain_integral: chain must be global");
  if (w.nvars != c.p()) throw std::invalid_argument("chain_integral: arity mismatch");
  auto an = analyze(c);
  const int p = c.p();
  const int fc = an.fiber_count();
  uint64_t fmask = 0;
  for (int f : an.Fs) fmask |= 1ull << f;

  EnvForm out(w.g, w.trunc, c.n);
  for (auto& [word, form] : w.terms) {
    for (auto& [mask, poly] : form.c) {
      uint64_t sf = mask & fmask, sb = mask & ~fmask;
      if (__builtin_popcountll(sf) != fc) continue;
      // Koszul sign reordering dx_mask into (fiber part, base part)
      int inv = 0;
      for (int b = 1; b <= p; ++b)
        if (sb & (1ull << b)) inv += __builtin_popcountll(sf >> (b + 1));
      DpPoly cur = inv % 2 ? Int(-1) * poly : poly;
      for (int i = 1; i <= fc && !cur.is_zero(); ++i) {
        int lo_idx = an.Fs[static_cast<size_t>(i - 1)] + 1;
        int up_idx = an.us[static_cast<size_t>(i - 1)];
        Bound lo = lo_idx > p ? Bound::zero() : (lo_idx == 0 ? Bound::theta() : Bound::var(lo_idx));
        Bound up = up_idx == 0 ? Bound::theta() : Bound::var(up_idx);
        cur = definite_integral(cur, an.Fs[static_cast<size_t>(i - 1)], lo, up);
      }
      if (cur.is_zero()) continue;
      Form piece(p);
      piece.add_component(sb, cur);
      out.add_term(word, pullback(piece, an.bs));
    }
  }
  return out;
}

/// A form on Delta^n x Delta^r, tabulated on the cells of the chain model.
struct ProductForm {
  int n = 0, r = 0;
  std::shared_ptr<const LinftyAlgebra> g;
  int trunc = 0;
  std::shared_ptr<const SimplexProduct> K;
  std::vector<EnvForm> val;  // per cell id

  static std::shared_ptr<const SimplexProduct> model(int n, int r) {
    return std::make_shared<SimplexProduct>(simplex_product(n, r, n + r));
  }

  static ProductForm zero(int n, int r, std::shared_ptr<const LinftyAlgebra> g, int W) {
    ProductForm F;
    F.n = n;
    F.r = r;
    F.g = std::move(g);
    F.trunc = W;
    F.K = model(n, r);
    for (int id = 0; id < F.K->nerve.cell_count(); ++id)
      F.val.emplace_back(F.g, W, F.K->chain(id).p());
    return F;
  }

  /// pr_base^*(a) ^ pr_fib^* (b) for single forms a on Delta^n, b on Delta^r.
  static ProductForm separable(int n, int r, const EnvForm& a, const EnvForm& b) {
    ProductForm F = zero(n, r, a.g, a.trunc);
    for (int id = 0; id < F.K->nerve.cell_count(); ++id) {
      const Chain& ch = F.K->chain(id);
      F.val[static_cast<size_t>(id)] =
          wedge(pullback(a, ch.base_proj()), pullback(b, ch.fib_proj()));
    }
    return F;
  }

  /// Value at an arbitrary order-preserving pair [q] -> [n] x [r].
  EnvForm at_pair(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<std::pair<int, int>> pts;
    std::vector<int> sig;
    for (size_t s = 0; s < a.size(); ++s) {
      std::pair<int, int> pt{a[s], b[s]};
      if (pts.empty() || pts.back() != pt) pts.push_back(pt);
      sig.push_back(static_cast<int>(pts.size()) - 1);
    }
    Chain core{n, r, pts};
    OrdinalMap sigma(std::move(sig), core.p());
    return pullback(val[static_cast<size_t>(K->cell_of.at(core))], sigma);
  }

  ProductForm map_values(const std::function<EnvForm(const EnvForm&)>& fn) const {
    ProductForm F = *this;
    for (auto& v : F.val) v = fn(v);
    return F;
  }
  ProductForm operator+(const ProductForm& o) const {
    ProductForm F = *this;
    for (size_t i = 0; i < F.val.size(); ++i) F.val[i] += o.val[i];
    return F;
  }
  ProductForm wedge_with(const ProductForm& o) const {
    ProductForm F = *this;
    for (size_t i = 0; i < F.val.size(); ++i) F.val[i] = wedge(F.val[i], o.val[i]);
    return F;
  }
};

/// Pullback along (alpha x id).
inline ProductForm product_pullback_base(const ProductForm& F, const OrdinalMap& alpha) {
  ProductForm G = ProductForm::zero(alpha.dom(), F.r, F.g, F.trunc);
  for (int id = 0; id < G.K->nerve.cell_count(); ++id) {
    const Chain& ch = G.K->chain(id);
    std::vector<int> a, b;
    for (auto& [x, y] : ch.pts) {
      a.push_back(alpha(x));
      b.push_back(y);
    }
    G.val[static_cast<size_t>(id)] = F.at_pair(a, b);
  }
  return G;
}

/// Pullback along (id x alpha).
inline ProductForm product_pullback_fiber(const ProductForm& F, const OrdinalMap& alpha) {
  ProductForm G = ProductForm::zero(F.n, alpha.dom(), F.g, F.trunc);
  for (int id = 0; id < G.K->nerve.cell_count(); ++id) {
    const Chain& ch = G.K->chain(id);
    std::vector<int> a, b;
    for (auto& [x, y] : ch.pts) {
      a.push_back(x);
      b.push_back(alpha(y));
    }
    G.val[static_cast<size_t>(id)] = F.at_pair(a, b);
  }
  return G;
}

/// Face compatibility check for product forms.
inline bool validate_product_form(const ProductForm& F) {
  for (int id = 0; id < F.K->nerve.cell_count(); ++id) {
    const Chain& ch = F.K->chain(id);
    for (int i = 0; i <= ch.p() && ch.p() > 0; ++i) {
      const Chain f = chain_face(ch, i);
      EnvForm a = F.val[static_cast<size_t>(F.K->cell_of.at(f))];
      EnvForm b = pullback(F.val[static_cast<size_t>(id)], ordinal_delta(i, ch.p()));
      if (!(a == b)) return false;
    }
  }
  return true;
}

/// Fiberwise integration over the fiber factor of Delta^n x Delta^r: the EZ
/// core is integrated chainwise and the degeneracy is pulled back.
inline EnvForm fiberwise(const ProductForm& F) {
  // peel the base-direction degeneracies of the adjoint simplex
  for (int j = 0; j < F.n; ++j) {
    OrdinalMap collapse = compose(ordinal_delta(j, F.n), ordinal_sigma(j, F.n - 1));
    ProductForm G = product_pullback_base(F, collapse);
    bool same = true;
    for (size_t i = 0; i < F.val.size() && same; ++i)
      if (!(G.val[i] == F.val[i])) same = false;
    if (same) {
      ProductForm core = product_pullback_base(F, ordinal_delta(j, F.n));
      return pullback(fiberwise(core), ordinal_sigma(j, F.n - 1));
    }
  }
  EnvForm out(F.g, F.trunc, F.n);
  for (auto& c : enumerate_maximal(F.n, F.r))
    out += chain_integral(F.val[static_cast<size_t>(F.K->cell_of.at(c))], c);
  return out;
}

// ---------------------------------------------------------------------------
// Forms on a product of simplicial sets X x U.

struct PairForm {
  const SimplicialSet* X = nullptr;
  const SimplicialSet* U = nullptr;
  std::shared_ptr<const LinftyAlgebra> g;
  int trunc = 0;
  // value at a pair of equal-dimension simplex values
  std::function<EnvForm(const Simplex&, const Simplex&)> value;

  PairForm differential() const {
    auto v = value;
    PairForm out = *this;
    out.value = [v](const Simplex& sx, const Simplex& su) { return d(v(sx, su)); };
    return out;
  }

  static PairForm separable(const SimplicialSet& X, const SimplicialSet& U, const FormMap& a,
                            const FormMap& b) {
    PairForm F;
    F.X = &X;
    F.U = &U;
    F.g = a.g;
    F.trunc = a.trunc;
    F.value = [&a, &b](const Simplex& sx, const Simplex& su) {
      return wedge(a.at(sx), b.at(su));
    };
    return F;
  }
};

/// Restriction of a pair form to Delta^n x Delta^r along a cell of X and a
/// simplex value of U.
inline ProductForm restrict_pair(const PairForm& F, int x_cell, const Simplex& u) {
  const int n = F.X->dim[static_cast<size_t>(x_cell)];
  const int r = u.dim();
  ProductForm P = ProductForm::zero(n, r, F.g, F.trunc);
  for (int id = 0; id < P.K->nerve.cell_count(); ++id) {
    const Chain& ch = P.K->chain(id);
    Simplex sx = F.X->apply_cell(x_cell, ch.base_proj());
    Simplex su = F.U->apply(u, ch.fib_proj());
    P.val[static_cast<size_t>(id)] = F.value(sx, su);
  }
  return P;
}

/// Degeneracy of the adjoint simplex of (id x u)^* omega in the fiber
/// direction: true when the pullback along (id x collapse_j) is the identity
/// on all restrictions.
inline bool pair_form_degenerate_at(const PairForm& F, const Simplex& u, int j) {
  const int r = u.dim();
  Simplex uc = F.U->apply(u, compose(ordinal_delta(j, r), ordinal_sigma(j, r - 1)));
  for (int x = 0; x < F.X->cell_count(); ++x) {
    ProductForm A = restrict_pair(F, x, u);
    ProductForm B = restrict_pair(F, x, uc);
    for (size_t i = 0; i < A.val.size(); ++i)
      if (!(A.val[i] == B.val[i])) return false;
  }
  return true;
}

inline bool pair_form_nondegenerate(const PairForm& F, const Simplex& u) {
  for (int j = 0; j < u.dim(); ++j)
    if (pair_form_degenerate_at(F, u, j)) return false;
  return true;
}

struct SupportSet {
  std::vector<int> supp;  // nondegenerate cells of U
  std::vector<int> part;  // maximal elements
};

/// Fiber-direction support: nondegenerate cells of U whose restricted form
/// is nondegenerate, ordered by the face relation; part holds its maxima.
inline SupportSet support(const PairForm& F) {
  SupportSet S;
  const SimplicialSet& U = *F.U;
  for (int u = 0; u < U.cell_count(); ++u)
    if (pair_form_nondegenerate(F, U.nondeg(u))) S.supp.push_back(u);
  auto below = [&](int u1, int u2) {
    if (u1 == u2) return false;
    int d1 = U.dim[static_cast<size_t>(u1)], d2 = U.dim[static_cast<size_t>(u2)];
    if (d1 > d2) return false;
    for (auto& a : all_ordinal_maps(d1, d2))
      if (U.apply_cell(u2, a) == U.nondeg(u1)) return true;
    return false;
  };
  for (int u : S.supp) {
    bool maximal = true;
    for (int v : S.supp)
      if (below(u, v)) maximal = false;
    if (maximal) S.part.push_back(u);
  }
  return S;
}

/// Fiberwise integration of a single fiber simplex: x |-> integral of the
/// restriction to Delta^dim(x) x Delta^dim(u).
inline FormMap fiberwise_along(const PairForm& F, const Simplex& u) {
  FormMap out = zero_form_map(*F.X, F.g, F.trunc);
  for (int x = 0; x < F.X->cell_count(); ++x)
    out.val[static_cast<size_t>(x)] = fiberwise(restrict_pair(F, x, u));
  return out;
}

/// Full fiberwise integration: the sum over the maximal support simplices.
inline FormMap fiberwise_general(const PairForm& F) {
  FormMap out = zero_form_map(*F.X, F.g, F.trunc);
  auto S = support(F);
  for (int u : S.part) {
    FormMap piece = fiberwise_along(F, F.U->nondeg(u));
    for (size_t i = 0; i < out.val.size(); ++i) out.val[i] += piece.val[i];
  }
  return out;
}

/// Boundary fiberwise integration: alternating face sum over the maximal
/// support simplices. The faces carry the orientation signs (-1)^i; the
/// Stokes identity forces them (see the calibration tests).
inline FormMap boundary_fiberwise(const PairForm& F) {
  FormMap out = zero_form_map(*F.X, F.g, F.trunc);
  auto S = support(F);
  for (int u : S.part) {
    int r = F.U->dim[static_cast<size_t>(u)];
    if (r == 0) continue;
    for (int i = 0; i <= r; ++i) {
      Simplex face = F.U->face(F.U->nondeg(u), i);
      FormMap piece = fiberwise_along(F, face);
      for (size_t k = 0; k < out.val.size(); ++k)
        if (i % 2)
          out.val[k] -= piece.val[k];
        else
          out.val[k] += piece.val[k];
    }
  }
  return out;
}

/// Residual of the fiberwise Stokes identity; identically zero. All three
/// terms integrate over the support of the input form: the domain of
/// integration is fixed by omega, not re-derived from d omega.
inline FormMap stokes_residual(const PairForm& F) {
  FormMap res = zero_form_map(*F.X, F.g, F.trunc);
  auto S = support(F);
  PairForm dF = F.differential();
  for (int u : S.part) {
    FormMap piece = fiberwise_along(dF, F.U->nondeg(u));
    for (size_t i = 0; i < res.val.size(); ++i) res.val[i] += piece.val[i];
  }
  FormMap b = boundary_fiberwise(F);
  for (size_t i = 0; i < res.val.size(); ++i) res.val[i] -= b.val[i];
  for (int u : S.part) {
    int r = F.U->dim[static_cast<size_t>(u)];
    FormMap piece = fiberwise_along(F, F.U->nondeg(u));
    for (size_t i = 0; i < res.val.size(); ++i) {
      EnvForm dv = d(piece.val[i]);
      if (r % 2)
        res.val[i] += dv;
      else
        res.val[i] -= dv;
    }
  }
  return res;
}

inline bool form_map_is_zero(const FormMap& F) {
  for (auto& v : F.val)
    if (!v.is_zero()) return false;
  return true;
}

}  // namespace dph
