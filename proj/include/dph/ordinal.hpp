#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dph {

/// Order-preserving map [m] -> [n] between finite ordinals, stored by its
/// value list. m = values.size() - 1.
struct OrdinalMap {
  std::vector<int> v;  // v[i] = image of i
  int n = 0;           // codomain is [n] = {0,...,n}

  OrdinalMap() = default;
  OrdinalMap(std::vector<int> vals, int codomain) : v(std::move(vals)), n(codomain) {
    assert(is_monotone());
  }

  int dom() const { return static_cast<int>(v.size()) - 1; }
  int cod() const { return n; }
  int operator()(int i) const { return v.at(static_cast<size_t>(i)); }

  bool is_monotone() const {
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] > n) return false;
      if (i > 0 && v[i] < v[i - 1]) return false;
    }
    return true;
  }
  bool is_injective() const {
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] == v[i - 1]) return false;
    return true;
  }
  bool is_surjective() const {
    if (v.empty()) return false;
    if (v.front() != 0 || v.back() != n) return false;
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] - v[i - 1] > 1) return false;
    return true;
  }
  bool is_identity() const { return dom() == n && is_injective() && is_surjective(); }

  /// min{ j | v[j] >= i }, or -1 when no such j exists.
  int min_index_geq(int i) const {
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] >= i) return static_cast<int>(j);
    return -1;
  }

  bool operator==(const OrdinalMap& o) const { return n == o.n && v == o.v; }
  bool operator!=(const OrdinalMap& o) const { return !(*this == o); }
  bool operator<(const OrdinalMap& o) const {
    if (n != o.n) return n < o.n;
    return v < o.v;
  }
};

inline OrdinalMap ordinal_id(int n) {
  std::vector<int> v(static_cast<size_t>(n) + 1);
  std::iota(v.begin(), v.end(), 0);
  return OrdinalMap(std::move(v), n);
}

/// Coface delta_i : [n-1] -> [n], skipping i.
inline OrdinalMap ordinal_delta(int i, int n) {
  assert(n >= 1 && i >= 0 && i <= n);
  std::vector<int> v;
  v.reserve(static_cast<size_t>(n));
  for (int j = 0; j <= n; ++j)
    if (j != i) v.push_back(j);
  return OrdinalMap(std::move(v), n);
}

/// Codegeneracy sigma_i : [n+1] -> [n], repeating i.
inline OrdinalMap ordinal_sigma(int i, int n) {
  assert(i >= 0 && i <= n);
  std::vector<int> v;
  v.reserve(static_cast<size_t>(n) + 2);
  for (int j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
  return OrdinalMap(std::move(v), n);
}

/// g after f: (g o f)(i) = g(f(i)); requires f.cod() == g.dom().
inline OrdinalMap compose(const OrdinalMap& g, const OrdinalMap& f) {
  assert(f.cod() == g.dom());
  std::vector<int> v(f.v.size());
  for (size_t i = 0; i < f.v.size(); ++i) v[i] = g(f.v[i]);
  return OrdinalMap(std::move(v), g.cod());
}

/// Constant map [m] -> [n] at value c.
inline OrdinalMap ordinal_const(int m, int c, int n) {
  std::vector<int> v(static_cast<size_t>(m) + 1, c);
  return OrdinalMap(std::move(v), n);
}

/// Epi-mono factorization alpha = delta o sigma with sigma surjective onto
/// [k] and delta injective.
inline std::pair<OrdinalMap, OrdinalMap> epi_mono_factor(const OrdinalMap& a) {
  std::vector<int> image;
  for (int x : a.v)
    if (image.empty() || image.back() != x) image.push_back(x);
  int k = static_cast<int>(image.size()) - 1;
  std::vector<int> sv(a.v.size());
  for (size_t i = 0; i < a.v.size(); ++i) {
    sv[i] = static_cast<int>(std::lower_bound(image.begin(), image.end(), a.v[i]) - image.begin());
  }
  OrdinalMap sigma(std::move(sv), k);
  OrdinalMap delta(std::move(image), a.cod());
  return {delta, sigma};
}

/// All order-preserving maps [m] -> [n].
inline std::vector<OrdinalMap> all_ordinal_maps(int m, int n) {
  std::vector<OrdinalMap> out;
  std::vector<int> cur(static_cast<size_t>(m) + 1, 0);
  while (true) {
    out.emplace_back(cur, n);
    int i = m;
    while (i >= 0 && cur[static_cast<size_t>(i)] == n) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int j = i + 1; j <= m; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(i)];
  }
  return out;
}

/// All strictly increasing maps [m] -> [n].
inline std::vector<OrdinalMap> all_injections(int m, int n) {
  std::vector<OrdinalMap> out;
  for (auto& a : all_ordinal_maps(m, n))
    if (a.is_injective()) out.push_back(a);
  return out;
}

/// All surjective order-preserving maps [m] -> [n].
inline std::vector<OrdinalMap> all_surjections(int m, int n) {
  std::vector<OrdinalMap> out;
  for (auto& a : all_ordinal_maps(m, n))
    if (a.is_surjective()) out.push_back(a);
  return out;
}

}  // namespace dph
