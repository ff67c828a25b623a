#pragma once

#include "dph/chains.hpp"
#include "dph/holonomy.hpp"

namespace dph {

/// Element of the totalized cochain algebra: a normalized cochain on the
/// standard simplex of its level, with coefficients in words (x) Z<theta>.
/// Values are keyed by the injective faces; degenerate simplices pair to 0.
struct TotElt {
  int level = 0;
  std::map<OrdinalMap, EnvForm> val;
};

inline bool tot_is_zero(const TotElt& e) {
  for (auto& [k, v] : e.val)
    if (!v.is_zero()) return false;
  return true;
}

/// The totalized algebra of cochain levels: Moore differential and the
/// shuffle product with the levelwise front/back cup.
struct TotAlgebra {
  std::shared_ptr<const LinftyAlgebra> g;
  int trunc = 0;

  EnvForm value(const TotElt& e, const OrdinalMap& y) const {
    auto [del, sig] = epi_mono_factor(y);
    if (!sig.is_identity()) return EnvForm(g, trunc, 0);
    auto it = e.val.find(del);
    return it == e.val.end() ? EnvForm(g, trunc, 0) : it->second;
  }

  TotElt zero(int level) const { return TotElt{level, {}}; }

  TotElt unit() const {
    TotElt e{0, {}};
    e.val[ordinal_id(0)] = EnvForm::one(g, trunc, 0);
    return e;
  }

  TotElt add(TotElt a, const TotElt& b) const {
    if (tot_is_zero(a)) return b;
    if (tot_is_zero(b)) return a;
    if (a.level != b.level) throw std::invalid_argument("tot add: level mismatch");
    for (auto& [k, v] : b.val) {
      auto it = a.val.find(k);
      if (it == a.val.end())
        a.val[k] = v;
      else {
        it->second += v;
        if (it->second.is_zero()) a.val.erase(it);
      }
    }
    return a;
  }

  TotElt scale(const Int& c, TotElt a) const {
    if (c == 0) return zero(a.level);
    for (auto& [k, v] : a.val) v = c * v;
    return a;
  }

  bool equal(const TotElt& a, const TotElt& b) const {
    if (tot_is_zero(a) && tot_is_zero(b)) return true;
    if (a.level != b.level) return false;
    for (int k = 0; k <= a.level; ++k)
      for (auto& inj : all_injections(k, a.level)) {
        auto ia = a.val.find(inj);
        auto ib = b.val.find(inj);
        EnvForm va = ia == a.val.end() ? EnvForm(g, trunc, 0) : ia->second;
        EnvForm vb = ib == b.val.end() ? EnvForm(g, trunc, 0) : ib->second;
        if (!(va == vb)) return false;
      }
    return true;
  }

  /// Alternating sum of face restrictions.
  TotElt d(const TotElt& a) const {
    TotElt out{a.level - 1, {}};
    if (a.level == 0) return TotElt{0, {}};
    for (int k = 0; k <= out.level; ++k)
      for (auto& inj : all_injections(k, out.level)) {
        EnvForm acc(g, trunc, 0);
        for (int i = 0; i <= a.level; ++i) {
          EnvForm t = value(a, compose(ordinal_delta(i, a.level), inj));
          if (i % 2)
            acc -= t;
          else
            acc += t;
        }
        if (!acc.is_zero()) out.val[inj] = acc;
      }
    return out;
  }

  /// Shuffle product over maximal chains, cupped levelwise.
  TotElt mul(const TotElt& a, const TotElt& b) const {
    TotElt out{a.level + b.level, {}};
    const int q = out.level;
    for (int k = 0; k <= q; ++k)
      for (auto& inj : all_injections(k, q)) {
        EnvForm acc(g, trunc, 0);
        for (auto& ch : enumerate_maximal(a.level, b.level)) {
          int inv = 0;
          std::vector<int> kinds;
          for (int s = 1; s <= q; ++s) kinds.push_back(ch.base(s) != ch.base(s - 1) ? 1 : 0);
          for (int s = 0; s < q; ++s)
            if (kinds[static_cast<size_t>(s)] == 0)
              for (int t = s + 1; t < q; ++t)
                if (kinds[static_cast<size_t>(t)] == 1) ++inv;
          OrdinalMap fa = ch.base_proj(), fb = ch.fib_proj();
          EnvForm cupped(g, trunc, 0);
          for (int k1 = 0; k1 <= k; ++k1) {
            std::vector<int> f, bb;
            for (int i = 0; i <= k1; ++i) f.push_back(i);
            for (int i = k1; i <= k; ++i) bb.push_back(i);
            EnvForm va = value(a, compose(fa, compose(inj, OrdinalMap(std::move(f), k))));
            if (va.is_zero()) continue;
            EnvForm vb = value(b, compose(fb, compose(inj, OrdinalMap(std::move(bb), k))));
            cupped += wedge(va, vb);
          }
          if (inv % 2)
            acc -= cupped;
          else
            acc += cupped;
        }
        if (!acc.is_zero()) out.val[inj] = acc;
      }
    return out;
  }

  /// Taylor coefficients of the induced one-object structure on shifted
  /// words: the differential and the sign-twisted product.
  TotElt b1(const TotElt& x) const { return d(x); }
  TotElt b2(const TotElt& x, const TotElt& y) const {
    return scale((x.level + 1) % 2 ? -1 : 1, mul(x, y));
  }
};

/// Holonomy value as a totalized element at the cell's level.
inline TotElt tot_from_hol(const TotAlgebra& A, const HolValue& h, int level) {
  TotElt e{level, {}};
  for (auto& [inj, v] : h)
    if (!v.is_zero()) e.val[inj] = v;
  return e;
}

/// Pullback of a totalized element along an ordinal map between levels:
/// restriction of the cochain.
inline TotElt tot_pull(const TotAlgebra& A, const TotElt& e, const OrdinalMap& alpha) {
  TotElt out{alpha.dom(), {}};
  for (int k = 0; k <= out.level; ++k)
    for (auto& inj : all_injections(k, out.level)) {
      EnvForm v = A.value(e, compose(alpha, inj));
      if (!v.is_zero()) out.val[inj] = v;
    }
  return out;
}

}  // namespace dph
