#pragma once

#include "dph/integrate.hpp"
#include "dph/simplicial.hpp"

namespace dph {

// ---------------------------------------------------------------------------
// Pointwise algebra of form maps.

inline FormMap fm_add(const FormMap& a, const FormMap& b) {
  FormMap out = a;
  for (size_t i = 0; i < out.val.size(); ++i) out.val[i] += b.val[i];
  return out;
}
inline FormMap fm_sub(const FormMap& a, const FormMap& b) {
  FormMap out = a;
  for (size_t i = 0; i < out.val.size(); ++i) out.val[i] -= b.val[i];
  return out;
}
inline FormMap fm_scale(const Int& k, const FormMap& a) {
  FormMap out = a;
  for (auto& v : out.val) v = k * v;
  return out;
}
inline FormMap fm_wedge(const FormMap& a, const FormMap& b) {
  FormMap out = a;
  for (size_t i = 0; i < out.val.size(); ++i) out.val[i] = wedge(out.val[i], b.val[i]);
  return out;
}
inline FormMap fm_d(const FormMap& a) {
  FormMap out = a;
  for (auto& v : out.val) v = d(v);
  return out;
}

/// Total degree (form degree minus word degree) of a homogeneous form map.
/// Zero maps report the fallback degree.
inline std::optional<int> form_map_degree(const FormMap& F) {
  std::optional<int> deg;
  for (auto& v : F.val)
    for (auto& [p, q] : v.bidegrees()) {
      int t = q - p;
      if (deg && *deg != t) return std::nullopt;
      deg = t;
    }
  return deg ? deg : std::optional<int>(0);
}

// ---------------------------------------------------------------------------
// Iterated integrals over the path space.

/// Value of the iterated integral of ws at one path-space cell: the pulled
/// back wedge over the evaluation maps, fiberwise integrated over Delta^r.
inline EnvForm iterated_integral_at(const PathSpace& P, int cell,
                                    const std::vector<const FormMap*>& ws,
                                    const std::shared_ptr<const LinftyAlgebra>& g, int W) {
  const int p = P.space.dim[static_cast<size_t>(cell)];
  const int r = static_cast<int>(ws.size());
  if (r == 0) return EnvForm::one(g, W, p);
  ProductForm F = ProductForm::zero(p, r, g, W);
  const SimplexProduct& Kp = P.K[static_cast<size_t>(p)];
  const SMap& table = P.table[static_cast<size_t>(cell)];
  for (int id = 0; id < F.K->nerve.cell_count(); ++id) {
    const Chain& ch = F.K->chain(id);
    EnvForm acc = EnvForm::one(g, W, ch.p());
    for (int j = 1; j <= r; ++j) {
      std::vector<int> b, c;
      for (auto& [y, t] : ch.pts) {
        b.push_back(t >= j ? 1 : 0);
        c.push_back(y);
      }
      Simplex sx = eval_pair(*P.X, Kp, table, b, c);
      acc = wedge(acc, ws[static_cast<size_t>(j - 1)]->at(sx));
      if (acc.is_zero()) break;
    }
    F.val[static_cast<size_t>(id)] = acc;
  }
  return fiberwise(F);
}

/// The iterated integral as a form map on the path space.
inline FormMap iterated_integral(const PathSpace& P, const std::vector<const FormMap*>& ws,
                                 const std::shared_ptr<const LinftyAlgebra>& g, int W) {
  FormMap out = zero_form_map(P.space, g, W);
  for (int cell = 0; cell < P.space.cell_count(); ++cell)
    out.val[static_cast<size_t>(cell)] = iterated_integral_at(P, cell, ws, g, W);
  return out;
}

/// Sign of the degree-1 wrapping map on a tensor slot sequence of total
/// degrees: (-1)^{sum (r-i)(deg_i - 1)}.
inline int c_map_sign(const std::vector<int>& degs) {
  int r = static_cast<int>(degs.size());
  long e = 0;
  for (int i = 1; i <= r; ++i) e += static_cast<long>(r - i) * (degs[static_cast<size_t>(i - 1)] - 1);
  return ((e % 2) + 2) % 2 ? -1 : 1;
}

/// Sign-wrapped iterated integral.
inline FormMap c_map(const PathSpace& P, const std::vector<const FormMap*>& ws,
                     const std::shared_ptr<const LinftyAlgebra>& g, int W) {
  std::vector<int> degs;
  for (auto* w : ws) {
    auto dg = form_map_degree(*w);
    if (!dg) throw std::invalid_argument("c_map: inhomogeneous slot");
    degs.push_back(*dg);
  }
  return fm_scale(c_map_sign(degs), iterated_integral(P, ws, g, W));
}

/// Endpoint pullback E_eps^* omega as a form map on the path space.
inline FormMap endpoint_pullback(const PathSpace& P, const FormMap& w, int eps) {
  FormMap out = zero_form_map(P.space, w.g, w.trunc);
  for (int cell = 0; cell < P.space.cell_count(); ++cell)
    out.val[static_cast<size_t>(cell)] = w.at(endpoint(P, cell, eps));
  return out;
}

/// Bidegrees (word degree, form degree) of a bidegree-homogeneous form map.
inline std::pair<int, int> form_map_bidegree(const FormMap& F) {
  std::optional<std::pair<int, int>> bd;
  for (auto& v : F.val)
    for (auto& b : v.bidegrees()) {
      if (bd && *bd != b) throw std::invalid_argument("form map is not bidegree-homogeneous");
      bd = b;
    }
  return bd.value_or(std::make_pair(0, 0));
}

/// Left side minus right side of the differential formula for iterated
/// integrals; identically zero on bidegree-homogeneous inputs. The signs are
/// the coefficient-corrected ones: the derivative sum carries the form
/// degrees of the earlier slots and the word degrees of the later slots, and
/// the final endpoint term carries the word degree of the last slot. For
/// forms with trivial coefficient words all exponents reduce to the plain
/// form-degree bookkeeping.
inline FormMap diff_formula_residual(const PathSpace& P, const std::vector<const FormMap*>& ws,
                                     const std::shared_ptr<const LinftyAlgebra>& g, int W) {
  const int r = static_cast<int>(ws.size());
  std::vector<int> ps, qs;
  for (auto* w : ws) {
    auto [p, q] = form_map_bidegree(*w);
    ps.push_back(p);
    qs.push_back(q);
  }
  FormMap res = fm_d(iterated_integral(P, ws, g, W));
  // d omega_i terms
  for (int i = 1; i <= r; ++i) {
    std::vector<const FormMap*> slots = ws;
    FormMap dwi = fm_d(*ws[static_cast<size_t>(i - 1)]);
    slots[static_cast<size_t>(i - 1)] = &dwi;
    long e = r;
    for (int l = 1; l < i; ++l) e += qs[static_cast<size_t>(l - 1)];
    for (int l = i + 1; l <= r; ++l) e += ps[static_cast<size_t>(l - 1)];
    FormMap term = iterated_integral(P, slots, g, W);
    res = (e % 2) ? fm_add(res, term) : fm_sub(res, term);
  }
  // merged-slot terms
  for (int i = 1; i <= r - 1; ++i) {
    std::vector<const FormMap*> slots;
    FormMap merged = fm_wedge(*ws[static_cast<size_t>(i - 1)], *ws[static_cast<size_t>(i)]);
    for (int l = 1; l <= r; ++l) {
      if (l == i) {
        slots.push_back(&merged);
      } else if (l == i + 1) {
        continue;
      } else {
        slots.push_back(ws[static_cast<size_t>(l - 1)]);
      }
    }
    long e = r - 1 - i;
    FormMap term = iterated_integral(P, slots, g, W);
    res = (e % 2) ? fm_add(res, term) : fm_sub(res, term);
  }
  // endpoint terms
  {
    std::vector<const FormMap*> tail(ws.begin() + 1, ws.end());
    FormMap term = fm_wedge(endpoint_pullback(P, *ws[0], 1), iterated_integral(P, tail, g, W));
    long e = static_cast<long>(r - 1) * (qs[0] - 1);
    res = (e % 2) ? fm_add(res, term) : fm_sub(res, term);
  }
  {
    std::vector<const FormMap*> head(ws.begin(), ws.end() - 1);
    FormMap term = fm_wedge(iterated_integral(P, head, g, W),
                            endpoint_pullback(P, *ws[static_cast<size_t>(r - 1)], 0));
    long e = static_cast<long>(ps[static_cast<size_t>(r - 1)]) * (r - 1);
    res = (e % 2) ? fm_sub(res, term) : fm_add(res, term);
  }
  return res;
}

// ---------------------------------------------------------------------------
// The de Rham pairing and cochains.

/// <omega, x>: fiberwise integration of the restriction along a simplex
/// value, producing a coefficient in words (x) Z<theta>.
inline EnvForm de_rham_pair(const FormMap& w, const Simplex& x) {
  const SimplicialSet& X = *w.X;
  const int q = x.dim();
  ProductForm F = ProductForm::zero(0, q, w.g, w.trunc);
  for (int id = 0; id < F.K->nerve.cell_count(); ++id) {
    const Chain& ch = F.K->chain(id);
    F.val[static_cast<size_t>(id)] = w.at(X.apply(x, ch.fib_proj()));
  }
  return fiberwise(F);
}

/// Normalized cochain with coefficients in words (x) Z<theta>: values on the
/// nondegenerate simplex values per dimension.
struct Cochain {
  const SimplicialSet* X = nullptr;
  std::shared_ptr<const LinftyAlgebra> g;
  int trunc = 0;
  int cap = 0;
  std::map<Simplex, EnvForm> val;  // zero-variable forms

  EnvForm at(const Simplex& s) const {
    if (!s.is_nondegenerate()) return EnvForm(g, trunc, 0);  // normalized
    auto it = val.find(s);
    return it == val.end() ? EnvForm(g, trunc, 0) : it->second;
  }
  void set(const Simplex& s, EnvForm v) {
    if (v.is_zero()) return;
    val[s] = std::move(v);
  }
};

/// de Rham image of a form map: a cochain on X up to the dimension cap.
inline Cochain de_rham(const FormMap& w, int cap) {
  Cochain c;
  c.X = w.X;
  c.g = w.g;
  c.trunc = w.trunc;
  c.cap = cap;
  for (int id = 0; id < w.X->cell_count(); ++id) {
    if (w.X->dim[static_cast<size_t>(id)] > cap) continue;
    c.set(w.X->nondeg(id), de_rham_pair(w, w.X->nondeg(id)));
  }
  return c;
}

/// Alexander-Whitney cup product of cochains.
inline Cochain cup(const Cochain& a, const Cochain& b) {
  Cochain out;
  out.X = a.X;
  out.g = a.g;
  out.trunc = a.trunc;
  out.cap = a.cap;
  const SimplicialSet& X = *a.X;
  for (int id = 0; id < X.cell_count(); ++id) {
    int q = X.dim[static_cast<size_t>(id)];
    if (q > a.cap) continue;
    EnvForm acc(a.g, a.trunc, 0);
    for (int q1 = 0; q1 <= q; ++q1) {
      std::vector<int> fr, bk;
      for (int i = 0; i <= q1; ++i) fr.push_back(i);
      for (int i = q1; i <= q; ++i) bk.push_back(i);
      Simplex front = X.apply_cell(id, OrdinalMap(std::move(fr), q));
      Simplex back = X.apply_cell(id, OrdinalMap(std::move(bk), q));
      acc += wedge(a.at(front), b.at(back));
    }
    out.set(X.nondeg(id), std::move(acc));
  }
  return out;
}

/// The unit cochain: 1 on every vertex.
inline Cochain cochain_unit(const SimplicialSet& X, std::shared_ptr<const LinftyAlgebra> g,
                            int W, int cap) {
  Cochain c;
  c.X = &X;
  c.g = std::move(g);
  c.trunc = W;
  c.cap = cap;
  for (int id : X.by_dim[0]) c.set(X.nondeg(id), EnvForm::one(c.g, W, 0));
  return c;
}

// ---------------------------------------------------------------------------
// Holonomy.

/// Holonomy value at a path-space cell: for each nondegenerate face c of the
/// cell's simplex, the paired series sum_{r<=R} of the wrapped iterated
/// integrals of the connection. Keyed by the injective map of the face.
using HolValue = std::map<OrdinalMap, EnvForm>;

namespace detail {
/// Expand a connection into bidegree-homogeneous components.
inline std::vector<std::pair<int, FormMap>> homogeneous_components(const FormMap& conn) {
  std::set<std::pair<int, int>> bds;
  for (auto& v : conn.val)
    for (auto& bd : v.bidegrees()) bds.insert(bd);
  std::vector<std::pair<int, FormMap>> out;
  for (auto& [p, q] : bds) {
    FormMap comp = conn;
    for (auto& v : comp.val) v = v.component(p, q);
    out.emplace_back(q - p, comp);
  }
  return out;
}
}  // namespace detail

/// The order-r term of the holonomy series at one path cell, as a form on
/// the cell's simplex: the wrapped iterated integral with all slots equal to
/// the connection, expanded over its homogeneous components.
inline EnvForm hol_term_at(const PathSpace& P, int cell, const FormMap& conn, int r) {
  auto comps = detail::homogeneous_components(conn);
  const int p = P.space.dim[static_cast<size_t>(cell)];
  EnvForm acc(conn.g, conn.trunc, p);
  if (r == 0) return EnvForm::one(conn.g, conn.trunc, p);
  std::vector<int> choice(static_cast<size_t>(r), 0);
  const int m = static_cast<int>(comps.size());
  if (m == 0) return acc;
  while (true) {
    std::vector<const FormMap*> slots;
    std::vector<int> degs;
    for (int i = 0; i < r; ++i) {
      slots.push_back(&comps[static_cast<size_t>(choice[static_cast<size_t>(i)])].second);
      degs.push_back(comps[static_cast<size_t>(choice[static_cast<size_t>(i)])].first);
    }
    EnvForm term = iterated_integral_at(P, cell, slots, conn.g, conn.trunc);
    acc += Int(c_map_sign(degs)) * term;
    int i = r - 1;
    while (i >= 0 && choice[static_cast<size_t>(i)] == m - 1) --i;
    if (i < 0) break;
    ++choice[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) choice[static_cast<size_t>(j)] = 0;
  }
  return acc;
}

/// Holonomy of a connection at a path-space cell, up to order R: the de Rham
/// pairing of the series against every nondegenerate face of the simplex.
inline HolValue hol_at(const PathSpace& P, int cell, const FormMap& conn, int R) {
  const int p = P.space.dim[static_cast<size_t>(cell)];
  EnvForm series(conn.g, conn.trunc, p);
  for (int r = 0; r <= R; ++r) series += hol_term_at(P, cell, conn, r);
  HolValue out;
  for (int k = 0; k <= p; ++k)
    for (auto& inj : all_injections(k, p)) {
      // pair against the face: restrict and integrate over the k-fiber
      ProductForm F = ProductForm::zero(0, k, conn.g, conn.trunc);
      for (int id = 0; id < F.K->nerve.cell_count(); ++id) {
        const Chain& ch = F.K->chain(id);
        F.val[static_cast<size_t>(id)] = pullback(series, compose(inj, ch.fib_proj()));
      }
      EnvForm v = fiberwise(F);
      if (!v.is_zero()) out[inj] = std::move(v);
    }
  return out;
}

/// Full holonomy table over the path space.
inline std::vector<HolValue> hol(const PathSpace& P, const FormMap& conn, int R) {
  std::vector<HolValue> out;
  for (int cell = 0; cell < P.space.cell_count(); ++cell)
    out.push_back(hol_at(P, cell, conn, R));
  return out;
}

}  // namespace dph
