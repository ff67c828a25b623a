#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dph/ordinal.hpp"

namespace dph {

using Int = mpz_class;
using Rat = mpq_class;

/// C(n, k) as an exact big integer.
inline Int binom(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Exponent vector of a divided-power monomial. Slot 0 is the distinguished
/// variable theta; slots 1..nvars are the simplex coordinates.
struct DpMono {
  std::vector<uint32_t> e;

  uint32_t total() const {
    uint32_t t = 0;
    for (auto x : e) t += x;
    return t;
  }
  bool operator==(const DpMono& o) const { return e == o.e; }
  /// Graded-lexicographic order; ties broken lexicographically.
  bool operator<(const DpMono& o) const {
    uint32_t a = total(), b = o.total();
    if (a != b) return a < b;
    return e < o.e;
  }
};

/// Element of Z<theta, x_1, ..., x_n>: finite sum of divided-power monomials
/// with big-integer coefficients. Terms never store a zero coefficient.
class DpPoly {
 public:
  int nvars = 0;
  std::map<DpMono, Int> terms;

  DpPoly() = default;
  explicit DpPoly(int n) : nvars(n) {}

  static DpPoly zero(int n) { return DpPoly(n); }
  static DpPoly constant(int n, Int c) {
    DpPoly p(n);
    p.add_term(DpMono{std::vector<uint32_t>(static_cast<size_t>(n) + 1, 0)}, std::move(c));
    return p;
  }
  static DpPoly one(int n) { return constant(n, 1); }
  /// x_i^[N] (variable index 0 = theta).
  static DpPoly power(int n, int i, uint32_t N, Int c = 1) {
    DpPoly p(n);
    std::vector<uint32_t> e(static_cast<size_t>(n) + 1, 0);
    e.at(static_cast<size_t>(i)) = N;
    p.add_term(DpMono{std::move(e)}, std::move(c));
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(DpMono m, Int c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  DpPoly& operator+=(const DpPoly& o) {
    check_vars(o);
    for (auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  DpPoly& operator-=(const DpPoly& o) {
    check_vars(o);
    for (auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
  }
  friend DpPoly operator+(DpPoly a, const DpPoly& b) { return a += b; }
  friend DpPoly operator-(DpPoly a, const DpPoly& b) { return a -= b; }
  friend DpPoly operator*(const Int& c, DpPoly p) {
    if (c == 0) return DpPoly(p.nvars);
    for (auto& [m, v] : p.terms) v *= c;
    return p;
  }
  DpPoly operator-() const { return Int(-1) * (*this); }

  bool operator==(const DpPoly& o) const { return nvars == o.nvars && terms == o.terms; }
  bool operator!=(const DpPoly& o) const { return !(*this == o); }
  bool operator<(const DpPoly& o) const {
    if (nvars != o.nvars) return nvars < o.nvars;
    return terms < o.terms;
  }

  void check_vars(const DpPoly& o) const {
    if (nvars != o.nvars) throw std::invalid_argument("DpPoly: variable-count mismatch");
  }

  std::string str() const;
};

/// x^[a] * x^[b] = C(a+b, a) x^[a+b], per variable.
inline DpPoly dp_mul(const DpPoly& a, const DpPoly& b) {
  a.check_vars(b);
  DpPoly r(a.nvars);
  for (auto& [ma, ca] : a.terms) {
    for (auto& [mb, cb] : b.terms) {
      Int c = ca * cb;
      DpMono m;
      m.e.resize(ma.e.size());
      for (size_t i = 0; i < ma.e.size(); ++i) {
        m.e[i] = ma.e[i] + mb.e[i];
        if (ma.e[i] != 0 && mb.e[i] != 0) c *= binom(m.e[i], ma.e[i]);
      }
      r.add_term(std::move(m), std::move(c));
    }
  }
  return r;
}

inline DpPoly dp_pow(const DpPoly& a, uint32_t k) {
  DpPoly r = DpPoly::one(a.nvars);
  for (uint32_t i = 0; i < k; ++i) r = dp_mul(r, a);
  return r;
}

/// Integration bound: theta, a variable x_i, or the constant 0.
struct Bound {
  enum Kind { Theta, Var, Zero } kind = Zero;
  int index = 0;  // meaningful for Var only, 1-based

  static Bound theta() { return Bound{Theta, 0}; }
  static Bound var(int i) { return Bound{Var, i}; }
  static Bound zero() { return Bound{Zero, 0}; }
  bool operator==(const Bound& o) const { return kind == o.kind && index == o.index; }
};

namespace detail {
// Multiply x_slot^[N] into monomial m (coefficient c adjusted with the
// divided-power binomial when the slot is already populated).
inline void merge_power(DpMono& m, Int& c, size_t slot, uint32_t N) {
  if (N == 0) return;
  uint32_t prev = m.e[slot];
  m.e[slot] = prev + N;
  if (prev != 0) c *= binom(prev + N, N);
}
}  // namespace detail

/// Unique algebra morphism with eps_bar(x_i^[N]) = eps(x_i)^[N]. The map
/// `eps` sends slot i to a slot index, or -1 for the constant 0; slot 0
/// (theta) must stay fixed. Target variable count is `nvars_out`.
inline DpPoly substitute(const DpPoly& f, const std::vector<int>& eps, int nvars_out) {
  if (eps.size() != static_cast<size_t>(f.nvars) + 1)
    throw std::invalid_argument("substitute: eps arity mismatch");
  if (eps[0] != 0) throw std::invalid_argument("substitute: theta must be fixed");
  DpPoly r(nvars_out);
  for (auto& [m, c0] : f.terms) {
    Int c = c0;
    DpMono out;
    out.e.assign(static_cast<size_t>(nvars_out) + 1, 0);
    bool dead = false;
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      int t = eps[i];
      if (t < 0) {
        dead = true;  // 0^[N] = 0 for N >= 1
        break;
      }
      detail::merge_power(out, c, static_cast<size_t>(t), m.e[i]);
    }
    if (!dead) r.add_term(std::move(out), std::move(c));
  }
  return r;
}

/// Simplicial pullback along an order-preserving alpha : [m] -> [n]:
/// x_i |-> x_{min{j | alpha(j) >= i}} (or 0 past the image), theta fixed.
inline DpPoly ordinal_pullback(const DpPoly& f, const OrdinalMap& alpha) {
  if (!alpha.is_monotone()) throw std::invalid_argument("ordinal_pullback: non-monotone map");
  if (alpha.cod() != f.nvars) throw std::invalid_argument("ordinal_pullback: arity mismatch");
  std::vector<int> eps(static_cast<size_t>(f.nvars) + 1);
  eps[0] = 0;
  for (int i = 1; i <= f.nvars; ++i) eps[static_cast<size_t>(i)] = alpha.min_index_geq(i);
  // substitute() interprets -1 as 0; min_index_geq returns -1 exactly when
  // alpha(m) < i.
  return substitute(f, eps, alpha.dom());
}

/// Divided-power partial derivative: x_i^[N] -> x_i^[N-1]; kills theta.
inline DpPoly partial(const DpPoly& f, int i) {
  if (i < 1 || i > f.nvars) throw std::invalid_argument("partial: index out of range");
  DpPoly r(f.nvars);
  for (auto& [m, c] : f.terms) {
    if (m.e[static_cast<size_t>(i)] == 0) continue;
    DpMono m2 = m;
    --m2.e[static_cast<size_t>(i)];
    r.add_term(std::move(m2), c);
  }
  return r;
}

/// Definite divided-power integral: replaces x_i^[N] by
/// upper^[N+1] - lower^[N+1] multiplied into the remaining monomial.
inline DpPoly definite_integral(const DpPoly& f, int i, const Bound& lower, const Bound& upper) {
  if (i < 1 || i > f.nvars) throw std::invalid_argument("definite_integral: index out of range");
  auto check = [&](const Bound& b) {
    if (b.kind == Bound::Var && (b.index < 1 || b.index > f.nvars))
      throw std::invalid_argument("definite_integral: bound out of range");
  };
  check(lower);
  check(upper);
  DpPoly r(f.nvars);
  for (auto& [m, c0] : f.terms) {
    uint32_t N = m.e[static_cast<size_t>(i)];
    DpMono base = m;
    base.e[static_cast<size_t>(i)] = 0;
    for (int sgn : {+1, -1}) {
      const Bound& b = (sgn > 0) ? upper : lower;
      if (b.kind == Bound::Zero) continue;
      Int c = sgn * c0;
      DpMono m2 = base;
      size_t slot = (b.kind == Bound::Theta) ? 0 : static_cast<size_t>(b.index);
      detail::merge_power(m2, c, slot, N + 1);
      r.add_term(std::move(m2), std::move(c));
    }
  }
  return r;
}

/// The substitution eps_{i,X} fixing every variable except x_i |-> X.
inline DpPoly eps_sub(const DpPoly& f, int i, const Bound& X) {
  std::vector<int> eps(static_cast<size_t>(f.nvars) + 1);
  for (int j = 0; j <= f.nvars; ++j) eps[static_cast<size_t>(j)] = j;
  switch (X.kind) {
    case Bound::Theta: eps[static_cast<size_t>(i)] = 0; break;
    case Bound::Var: eps[static_cast<size_t>(i)] = X.index; break;
    case Bound::Zero: eps[static_cast<size_t>(i)] = -1; break;
  }
  return substitute(f, eps, f.nvars);
}

// ---------------------------------------------------------------------------
// Rational-coefficient image (test oracle): x^[N] |-> x^N / N!.

class RatPoly {
 public:
  int nvars = 0;
  std::map<DpMono, Rat> terms;

  explicit RatPoly(int n = 0) : nvars(n) {}

  void add_term(DpMono m, Rat c) {
    c.canonicalize();
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  RatPoly& operator+=(const RatPoly& o) {
    for (auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    RatPoly r(a.nvars);
    for (auto& [ma, ca] : a.terms)
      for (auto& [mb, cb] : b.terms) {
        DpMono m;
        m.e.resize(ma.e.size());
        for (size_t i = 0; i < ma.e.size(); ++i) m.e[i] = ma.e[i] + mb.e[i];
        r.add_term(std::move(m), ca * cb);
      }
    return r;
  }
  bool operator==(const RatPoly& o) const { return nvars == o.nvars && terms == o.terms; }
};

inline RatPoly to_rational(const DpPoly& f) {
  RatPoly r(f.nvars);
  for (auto& [m, c] : f.terms) {
    Int fact = 1;
    for (auto N : m.e) {
      Int nf;
      mpz_fac_ui(nf.get_mpz_t(), N);
      fact *= nf;
    }
    r.add_term(m, Rat(c) / Rat(fact));
  }
  return r;
}

inline std::string DpPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      if (i == 0)
        os << "*th^[" << m.e[i] << "]";
      else
        os << "*x" << i << "^[" << m.e[i] << "]";
    }
  }
  return os.str();
}

}  // namespace dph
