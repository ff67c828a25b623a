#pragma once

#include <random>

#include "dph/form.hpp"

namespace dph::sampling {

struct Rng {
  std::mt19937 eng;
  explicit Rng(uint32_t seed) : eng(seed) {}
  int uniform(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(eng);
  }
};

/// Random divided-power polynomial: up to `nterms` monomials, total degree
/// at most maxdeg, coefficients bounded by maxcoeff.
inline DpPoly random_dp(Rng& rng, int nvars, int maxdeg, int maxcoeff, int nterms) {
  DpPoly p(nvars);
  for (int t = 0; t < nterms; ++t) {
    DpMono m;
    m.e.assign(static_cast<size_t>(nvars) + 1, 0);
    int budget = rng.uniform(0, maxdeg);
    for (int i = 0; i <= nvars && budget > 0; ++i) {
      int k = rng.uniform(0, budget);
      m.e[static_cast<size_t>(i)] = static_cast<uint32_t>(k);
      budget -= k;
    }
    int c = rng.uniform(-maxcoeff, maxcoeff);
    p.add_term(std::move(m), c);
  }
  return p;
}

inline Bound random_bound(Rng& rng, int nvars) {
  int k = rng.uniform(0, nvars + 1);
  if (k == 0) return Bound::theta();
  if (k == nvars + 1) return Bound::zero();
  return Bound::var(k);
}

/// Random scalar form on random strictly increasing dx sets.
inline Form random_form(Rng& rng, int nvars, int maxdeg, int maxcoeff, int nterms) {
  Form f(nvars);
  for (int t = 0; t < nterms; ++t) {
    uint64_t mask = 0;
    for (int i = 1; i <= nvars; ++i)
      if (rng.uniform(0, 2) == 0) mask |= 1ull << i;
    f.add_component(mask, random_dp(rng, nvars, maxdeg, maxcoeff, 2));
  }
  return f;
}

/// Random coefficient-valued form with random tensor words.
inline EnvForm random_envform(Rng& rng, const std::shared_ptr<const LinftyAlgebra>& g, int W,
                              int nvars, int maxdeg, int maxcoeff, int nterms,
                              int max_symweight = 2) {
  EnvForm e(g, W, nvars);
  for (int t = 0; t < nterms; ++t) {
    EnvWord w;
    int len = rng.uniform(0, W);
    for (int i = 0; i < len; ++i) {
      SymMono m;
      int sw = rng.uniform(1, max_symweight);
      for (int j = 0; j < sw; ++j) m.push_back(rng.uniform(0, g->gen_count() - 1));
      int s = dph::detail::canon_sym(*g, m);
      if (s == 0) {
        m.pop_back();
        if (m.empty()) m.push_back(rng.uniform(0, g->gen_count() - 1));
        std::sort(m.begin(), m.end());
      }
      w.push_back(m);
    }
    e.add_term(w, random_form(rng, nvars, maxdeg, maxcoeff, 2));
  }
  return e;
}

/// Random bidegree-homogeneous form.
inline EnvForm random_homogeneous(Rng& rng, const std::shared_ptr<const LinftyAlgebra>& g, int W,
                                  int nvars, int p, int q, int maxdeg, int maxcoeff) {
  auto full = random_envform(rng, g, W, nvars, maxdeg, maxcoeff, 6);
  return full.component(p, q);
}

}  // namespace dph::sampling
