// Acceptance suite: runs every criterion at its stated scope and prints one
// pass/fail line per criterion. Exact arithmetic throughout; no tolerances.

#include <chrono>
#include <cstdio>
#include <functional>

#include "dph/holonomy.hpp"
#include "dph/integrate.hpp"
#include "dph/pathcat.hpp"
#include "dph/sampling.hpp"

using namespace dph;
using sampling::Rng;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& run) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string err;
  try {
    ok = run();
  } catch (const std::exception& e) {
    err = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              secs, err.empty() ? "" : " error: ", err.c_str());
  if (!ok) ++g_failures;
}

std::shared_ptr<const LinftyAlgebra> abelian2() {
  return std::make_shared<LinftyAlgebra>(abelian_algebra({"e", "f"}, {1, 2}));
}
std::shared_ptr<const LinftyAlgebra> abelian2_deg1() {
  return std::make_shared<LinftyAlgebra>(abelian_algebra({"e", "f"}, {1, 1}));
}
std::shared_ptr<const LinftyAlgebra> nilpotent3() {
  DgLieData d;
  d.names = {"a", "b", "c"};
  d.degs = {1, 1, 2};
  d.bracket[{0, 1}] = {{2, 1}};
  d.bracket[{1, 0}] = {{2, 1}};
  return std::make_shared<LinftyAlgebra>(from_dg_lie(d));
}

FormMap simplex_form_map(const SimplicialSet& X, int n, const EnvForm& top) {
  FormMap F = zero_form_map(X, top.g, top.trunc);
  for (int id = 0; id < X.cell_count(); ++id)
    F.val[static_cast<size_t>(id)] = pullback(top, standard_vertex_map(X, X.nondeg(id), n));
  return F;
}

long binom_l(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool composite_equals(const Chain& big, const OrdinalMap& beta, const OrdinalMap& alpha,
                      const Chain& small) {
  for (int s = 0; s <= small.p(); ++s)
    if (big.base(beta(s)) != alpha(small.base(s)) || big.fib(beta(s)) != small.fib(s))
      return false;
  return true;
}

// --- criterion bodies -------------------------------------------------------

bool chain_counts() {
  for (int n = 0; n <= 5; ++n)
    for (int r = 0; r <= 5; ++r)
      if (static_cast<long>(enumerate_maximal(n, r).size()) != binom_l(n + r, n)) return false;
  for (int n = 0; n <= 3; ++n)
    for (int r = 0; r <= 3; ++r) {
      auto fast = enumerate_maximal(n, r);
      std::vector<Chain> slow;
      for (auto& c : enumerate_chains(n, r, n + r, false, false))
        if (c.is_global()) slow.push_back(c);
      if (!(fast == slow)) return false;
    }
  return true;
}

bool glueing_suite() {
  for (int n = 0; n <= 3; ++n)
    for (int r = 0; r <= 3; ++r) {
      // full-length injective monotone maps are global in both directions
      for (auto& c : enumerate_chains(n, r, n + r, false, false)) {
        if (!c.is_global()) return false;
        std::set<int> fib;
        for (auto& q : c.pts) fib.insert(q.second);
        if (static_cast<int>(fib.size()) != r + 1) return false;
      }
      for (auto& c : enumerate_maximal(n, r)) {
        auto an = analyze(c);
        if (!an.bs.is_injective()) return false;
        for (size_t i = 1; i < an.fs.size(); ++i)
          if (an.fs[i] <= an.fs[i - 1]) return false;
        for (int i = 0; i <= c.p(); ++i)
          if (c.base(i) + c.fib(i) != i) return false;
        // face transport at block ends
        int nb = static_cast<int>(an.blocks.size());
        for (int j = 0; j < nb; ++j)
          for (int i = 0; i <= an.blocks[static_cast<size_t>(j)].size; ++i) {
            Chain face = chain_face(c, an.blocks[static_cast<size_t>(j)].first + i);
            if (!face.is_global()) continue;
            auto anf = analyze(face);
            for (int l = 0; l < nb; ++l) {
              int vl = an.blocks[static_cast<size_t>(l)].first + an.blocks[static_cast<size_t>(l)].size;
              int lhs = an.bs.min_index_geq(vl + 1);
              int rhs = anf.bs.min_index_geq(l < j ? vl + 1 : vl);
              if (lhs >= 0 && rhs >= 0 && lhs != rhs) return false;
            }
          }
        // flip transport and involution; face factorization on Out
        for (auto& [v, k] : an.classified) {
          if (k == VertexClass::Out) {
            if (r >= 1) {
              auto [cv, h] = face_factor(c, v);
              Chain face = chain_face(c, v);
              OrdinalMap dh = ordinal_delta(h, r);
              for (int i = 0; i <= face.p(); ++i)
                if (face.base(i) != cv.base(i) || face.fib(i) != dh(cv.fib(i))) return false;
              int found = 0;
              for (auto& cand : enumerate_maximal(n, r - 1))
                for (int hh = 0; hh <= r; ++hh) {
                  OrdinalMap dd = ordinal_delta(hh, r);
                  bool okc = true;
                  for (int i = 0; i <= face.p(); ++i)
                    if (face.base(i) != cand.base(i) || face.fib(i) != dd(cand.fib(i))) okc = false;
                  if (okc) ++found;
                }
              if (found != 1) return false;
            }
            bool threw = false;
            try {
              flip(c, v);
            } catch (const std::exception&) {
              threw = true;
            }
            if (!threw) return false;
          } else {
            Chain c2 = flip(c, v);
            if (c2 == c || !(flip(c2, v) == c)) return false;
            if (!(chain_face(c, v) == chain_face(c2, v))) return false;
            bool threw = false;
            try {
              face_factor(c, v);
            } catch (const std::exception&) {
              threw = true;
            }
            if (r >= 1 && !threw) return false;
            auto anf = analyze(chain_face(c, v));
            for (int i = 0; i <= v; ++i)
              if (an.bs.min_index_geq(i) != anf.bs.min_index_geq(i)) return false;
            int lo = (k == VertexClass::InnFib) ? v + 1 : v + 2;
            for (int i = lo; i <= n + r; ++i)
              if (an.bs.min_index_geq(i) != anf.bs.min_index_geq(i - 1)) return false;
          }
        }
      }
    }
  // squares: pushforward transports; pullback legs; uniqueness
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (int r = 0; r <= 2; ++r)
        for (auto& alpha : all_ordinal_maps(m, n))
          for (auto& c : enumerate_maximal(m, r)) {
            auto [cf, beta] = pushforward_pair(c, alpha);
            if (!composite_equals(cf, beta, alpha, c)) return false;
            int found = 0;
            for (auto& cand : enumerate_maximal(n, r))
              for (auto& b : all_ordinal_maps(m + r, n + r))
                if (composite_equals(cand, b, alpha, c)) ++found;
            if (found != 1) return false;
            auto a1 = analyze(cf), a2 = analyze(c);
            for (int i = 1; i <= r; ++i)
              if (beta(a2.fs[static_cast<size_t>(i)]) != a1.fs[static_cast<size_t>(i)]) return false;
            if (alpha.is_injective()) {
              for (int i = 1; i <= r; ++i) {
                if (beta(a2.us[static_cast<size_t>(i - 1)]) != a1.us[static_cast<size_t>(i - 1)])
                  return false;
                int lhs = beta.min_index_geq(a1.fs[static_cast<size_t>(i)] + 1);
                if (lhs < 0) lhs = m + r + 1;
                if (lhs != a2.fs[static_cast<size_t>(i)] + 1) return false;
              }
              for (int i = 0; i <= m; ++i)
                if (beta(a2.bs(i)) != a1.bs(alpha(i))) return false;
            }
          }
  // pullback: total order, legs, gap witness
  for (int m = 0; m <= 3; ++m)
    for (int n = m; n <= 3; ++n)
      for (int r = 0; r <= 2; ++r)
        for (auto& alpha : all_injections(m, n))
          for (auto& c : enumerate_maximal(n, r)) {
            auto [pc, beta] = chain_pullback(c, alpha);
            if (!pc.is_valid()) return false;
            for (size_t i = 1; i < pc.pts.size(); ++i) {
              if (pc.pts[i - 1].first > pc.pts[i].first) return false;
              if (pc.pts[i - 1].second > pc.pts[i].second) return false;
            }
            if (pc.is_global()) {
              auto an1 = analyze(c);
              auto an2 = analyze(pc);
              for (int i = 0; i <= m; ++i)
                if (beta(an2.bs(i)) != an1.bs(alpha(i))) return false;
            }
            if (pc.p() < m + r && r >= 1) {
              auto an = analyze(c);
              std::set<int> im_alpha, im_bs;
              for (int i = 0; i <= m; ++i) im_alpha.insert(alpha(i));
              for (int i = 0; i <= n; ++i) im_bs.insert(an.bs(i));
              bool witness = false;
              for (int l = 0; l <= n; ++l)
                if (!im_alpha.count(l) && !im_bs.count(an.bs(l) + 1)) witness = true;
              if (!witness) return false;
            }
          }
  // base/fiber relabeling transport on monomial generators
  for (int n = 0; n <= 3; ++n)
    for (int r = 0; r <= 3 - n; ++r)
      for (int m = 0; m <= n; ++m)
        for (auto& alpha : all_ordinal_maps(m, n))
          for (auto& c : enumerate_maximal(m, r)) {
            auto [cf, beta] = pushforward_pair(c, alpha);
            auto a1 = analyze(cf);
            auto a2 = analyze(c);
            auto incl = [&](const ChainAnalysis& an, int k, int i, uint32_t N) {
              for (int j = 1; j <= k; ++j)
                if (an.bs(j) == i) return DpPoly::power(k + r, j, N);
              for (int j = 1; j <= r; ++j)
                if (an.Fs[static_cast<size_t>(j - 1)] == i) return DpPoly::power(k + r, k + j, N);
              return DpPoly(k + r);
            };
            auto alpha_split = [&](const DpPoly& f) {
              std::vector<int> eps(static_cast<size_t>(n + r) + 1);
              eps[0] = 0;
              for (int i = 1; i <= n; ++i) {
                int j = alpha.min_index_geq(i);
                eps[static_cast<size_t>(i)] = j < 0 ? -1 : j;
              }
              for (int i = 1; i <= r; ++i) eps[static_cast<size_t>(n + i)] = m + i;
              return substitute(f, eps, m + r);
            };
            for (int i = 1; i <= n + r; ++i)
              for (uint32_t N = 1; N <= 2; ++N) {
                DpPoly lhs = alpha_split(incl(a1, n, i, N));
                DpPoly pb = ordinal_pullback(DpPoly::power(n + r, i, N), beta);
                DpPoly rhs(m + r);
                for (auto& [mono, coeff] : pb.terms) {
                  DpPoly term = DpPoly::constant(m + r, coeff);
                  term = dp_mul(term, DpPoly::power(m + r, 0, mono.e[0]));
                  for (int ii = 1; ii <= m + r; ++ii)
                    if (mono.e[static_cast<size_t>(ii)] > 0)
                      term = dp_mul(term, incl(a2, m, ii, mono.e[static_cast<size_t>(ii)]));
                  rhs += term;
                }
                if (!(lhs == rhs)) return false;
              }
          }
  // stability of integration against base degeneracies (the operational
  // content of the face-stability lemma; see the decisions notes for the
  // literal statement's counterexamples)
  {
    Rng rng(91);
    auto g = abelian2();
    for (int it = 0; it < 40; ++it) {
      int n = rng.uniform(1, 3), r = rng.uniform(0, 3 - n + 1);
      ProductForm F = ProductForm::zero(n, r, g, 2);
      for (int k = 0; k < 2; ++k)
        F = F + ProductForm::separable(n, r, sampling::random_envform(rng, g, 2, n, 3, 5, 2),
                                       sampling::random_envform(rng, g, 2, r, 3, 5, 2));
      EnvForm naive(g, 2, n);
      for (auto& c : enumerate_maximal(n, r))
        naive += chain_integral(F.val[static_cast<size_t>(F.K->cell_of.at(c))], c);
      if (!(naive == fiberwise(F))) return false;
    }
  }
  return true;
}

bool calculus_suite() {
  Rng rng(31337);
  for (int checked = 0; checked < 500; ++checked) {
    int n = rng.uniform(1, 4), i = rng.uniform(1, n);
    DpPoly f = sampling::random_dp(rng, n, 5, 9, 4);
    Bound X = sampling::random_bound(rng, n), Y = sampling::random_bound(rng, n);
    if (definite_integral(partial(f, i), i, X, Y) != eps_sub(f, i, Y) - eps_sub(f, i, X))
      return false;
  }
  for (int checked = 0; checked < 500; ++checked) {
    int n = rng.uniform(1, 4), i = rng.uniform(1, n);
    DpPoly f = sampling::random_dp(rng, n, 4, 9, 3);
    DpPoly h = sampling::random_dp(rng, n, 4, 9, 3);
    Bound X = sampling::random_bound(rng, n), Y = sampling::random_bound(rng, n);
    auto fg = dp_mul(f, h);
    if (definite_integral(dp_mul(f, partial(h, i)), i, X, Y) !=
        eps_sub(fg, i, Y) - eps_sub(fg, i, X) -
            definite_integral(dp_mul(partial(f, i), h), i, X, Y))
      return false;
  }
  int checked = 0;
  while (checked < 500) {
    int n = rng.uniform(2, 4), i = rng.uniform(1, n), Xv = rng.uniform(1, n);
    DpPoly f0 = sampling::random_dp(rng, n, 4, 9, 3);
    DpPoly f(n);
    for (auto& [m, c] : f0.terms)
      if (m.e[static_cast<size_t>(Xv)] == 0) f.add_term(m, c);
    Bound Y = sampling::random_bound(rng, n);
    if (Y.kind == Bound::Var && Y.index == Xv) continue;
    if (partial(definite_integral(f, i, Bound::var(Xv), Y), Xv) != -eps_sub(f, i, Bound::var(Xv)))
      return false;
    ++checked;
  }
  return true;
}

bool stokes_suite() {
  Rng rng(20240808);
  std::vector<SimplicialSet> simplices;
  for (int n = 0; n <= 3; ++n) simplices.push_back(standard_simplex(n));
  int done = 0;
  for (auto& g : {abelian2(), nilpotent3()}) {
    for (int it = 0; it < 52; ++it) {
      int n = rng.uniform(0, 3), r = rng.uniform(1, 3);
      const SimplicialSet& X = simplices[static_cast<size_t>(n)];
      const SimplicialSet& U = simplices[static_cast<size_t>(r)];
      FormMap a = simplex_form_map(X, n, sampling::random_envform(rng, g, 2, n, 3, 5, 2));
      FormMap b = simplex_form_map(U, r, sampling::random_envform(rng, g, 2, r, 3, 5, 2));
      PairForm F = PairForm::separable(X, U, a, b);
      if (!form_map_is_zero(stokes_residual(F))) return false;
      ++done;
    }
  }
  return done >= 100;
}

bool diff_formula_suite() {
  Rng rng(4711);
  auto g = abelian2_deg1();
  auto D1 = standard_simplex(1);
  auto D2 = standard_simplex(2);
  PathSpace P1 = path_space(D1, 2);
  PathSpace P2 = path_space(D2, 1);
  struct Case {
    const SimplicialSet* X;
    PathSpace* P;
    int n;
  } cases[] = {{&D1, &P1, 1}, {&D2, &P2, 2}};
  for (auto& cs : cases) {
    for (int r = 1; r <= 3; ++r) {
      for (int it = 0; it < (cs.n == 1 ? 4 : 2); ++it) {
        std::vector<FormMap> keep;
        for (int i = 0; i < r; ++i) {
          int p = rng.uniform(0, 1), q = rng.uniform(0, std::min(cs.n, 1));
          EnvForm top = sampling::random_homogeneous(rng, g, 3, cs.n, p, q, 3, 4);
          keep.push_back(simplex_form_map(*cs.X, cs.n, top));
        }
        std::vector<const FormMap*> slots;
        for (auto& k : keep) slots.push_back(&k);
        if (!form_map_is_zero(diff_formula_residual(*cs.P, slots, g, 3))) return false;
      }
    }
  }
  return true;
}

bool derham_suite() {
  Rng rng(1009);
  auto g = abelian2();
  // standard simplices up to dimension 3 and a glued two-triangle complex
  std::vector<SimplicialSet> spaces;
  for (int n = 1; n <= 3; ++n) spaces.push_back(standard_simplex(n));
  for (size_t si = 0; si < spaces.size(); ++si) {
    int n = static_cast<int>(si) + 1;
    const SimplicialSet& X = spaces[si];
    for (int it = 0; it < 6; ++it) {
      FormMap w = simplex_form_map(X, n, sampling::random_envform(rng, g, 2, n, 3, 5, 3));
      for (int id = 0; id < X.cell_count(); ++id) {
        Simplex x = X.nondeg(id);
        if (x.dim() == 0 || x.dim() > 3) continue;
        EnvForm lhs = de_rham_pair(fm_d(w), x);
        EnvForm rhs(g, 2, 0);
        for (int i = 0; i <= x.dim(); ++i) {
          EnvForm t = de_rham_pair(w, X.face(x, i));
          if (i % 2)
            rhs -= t;
          else
            rhs += t;
        }
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

bool holonomy_exponential() {
  auto g = std::make_shared<const LinftyAlgebra>(abelian_algebra({"e"}, {1}));
  auto D1 = standard_simplex(1);
  PathSpace P = path_space(D1, 0);
  const int R = 8;
  FormMap conn = zero_form_map(D1, g, R);
  EnvForm v(g, R, 1);
  Form f(1);
  f.add_component(1ull << 1, DpPoly::one(1));
  v.add_term(EnvWord{{0}}, f);
  conn.val[static_cast<size_t>(standard_top_cell(D1))] = v;
  int id = -1;
  for (int cell : P.space.by_dim[0]) {
    if (endpoint(P, cell, 0).core == 0 && endpoint(P, cell, 1).core == 1) id = cell;
  }
  if (id < 0) return false;
  EnvForm got = hol_at(P, id, conn, R).at(ordinal_id(0));
  EnvForm expect(g, R, 0);
  for (int r = 0; r <= R; ++r)
    expect.add_term(EnvWord(static_cast<size_t>(r), SymMono{0}),
                    Form::from_poly(DpPoly::power(0, 0, static_cast<uint32_t>(r))));
  if (!(got == expect)) return false;
  // rational image: the truncated exponential
  for (auto& [w, form] : got.terms) {
    RatPoly r = to_rational(form.c.at(0));
    Int fact = 1;
    for (size_t i = 1; i <= w.size(); ++i) fact *= static_cast<long>(i);
    if (r.terms.begin()->second != Rat(1) / Rat(fact)) return false;
  }
  return true;
}

bool square_zero_suite() {
  // Sym coderivations
  if (coderivation_square_witness(*abelian2(), 4)) return false;
  if (coderivation_square_witness(*nilpotent3(), 4)) return false;
  // enveloping differential, exact below the truncation
  for (auto& g : {nilpotent3()}) {
    const int W = 4;
    std::vector<SymMono> gens;
    for (int k = 1; k <= 2; ++k)
      for (auto& w : sym_words(*g, k)) gens.push_back(w);
    for (auto& x : gens)
      for (auto& y : gens) {
        EnvElt e{{EnvWord{x, y}, 1}};
        if (!env_differential(*g, env_differential(*g, e, W), W).empty()) return false;
      }
  }
  // dg algebra import
  {
    DgAlgebraData E;
    E.names = {"1", "x"};
    E.degs = {0, 1};
    E.unit = 0;
    E.mul[{0, 0}] = GenComb{{0, 1}};
    E.mul[{0, 1}] = GenComb{{1, 1}};
    E.mul[{1, 0}] = GenComb{{1, 1}};
    if (from_dg_algebra(E).square_witness(4)) return false;
  }
  {
    TotToy T = make_tot_toy(std::make_shared<LinftyAlgebra>(abelian_algebra({"e"}, {1})), 2, 1);
    if (from_dg_algebra(T.alg).square_witness(3)) return false;
  }
  // unitalization
  {
    SimplexCategory A2(2);
    if (unitalize(A2.cat).cat.square_witness(4)) return false;
    BasisAinfty A;
    A.nobj = 1;
    A.add_gen(0, 0, 1, "u");
    if (unitalize(A).cat.square_witness(4)) return false;
  }
  // free model
  {
    DgQuiver Q;
    Q.nobj = 2;
    Q.add_arrow(0, 1, 1, "a");
    int b = Q.add_arrow(1, 0, 2, "b");
    int c = Q.add_arrow(1, 0, 1, "c");
    Q.diff[b] = GenComb{{c, 1}};
    Q.validate();
    for (auto& t : enumerate_trees(Q, 4))
      if (!free_b1(Q, free_b1(Q, t)).empty()) return false;
  }
  // cosimplicial members
  for (int n = 0; n <= 3; ++n)
    if (SimplexCategory(n).cat.square_witness(4)) return false;
  return true;
}

bool cosimplicial_nerve_suite() {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      SimplexCategory Am(m), An(n);
      for (auto& alpha : all_ordinal_maps(m, n)) {
        BasisFunctor F = cosimplicial_map(Am, An, alpha);
        if (F.commute_witness(3)) return false;
        for (int k = 0; k <= 2; ++k) {
          SimplexCategory Ak(k);
          for (auto& beta : all_ordinal_maps(k, m)) {
            BasisFunctor G = cosimplicial_map(Ak, Am, beta);
            BasisFunctor H = cosimplicial_map(Ak, An, compose(alpha, beta));
            for (int len = 1; len <= 2; ++len)
              for (auto& w : Ak.cat.words(len)) {
                WordComb e;
                e.emplace(w, 1);
                if (F.apply(G.apply(e)) != H.apply(e)) return false;
              }
          }
        }
      }
    }
  // nerve gate in the truncated totalization
  TotToy T = make_tot_toy(std::make_shared<LinftyAlgebra>(abelian_algebra({"e"}, {1})), 2, 1);
  BasisAinfty B = from_dg_algebra(T.alg);
  SimplexCategory A2(2);
  int f01 = T.index.at(std::make_tuple(0, ordinal_id(0), EnvWord{SymMono{0}}, 1u));
  int f12 = T.index.at(std::make_tuple(0, ordinal_id(0), EnvWord{SymMono{0}}, 0u));
  int h = T.index.at(std::make_tuple(1, OrdinalMap({1}, 1), EnvWord{SymMono{0}, SymMono{0}}, 0u));
  GenComb f02 = T.alg.mul_at(f01, f12);
  for (auto& [z, c] : T.alg.d_at(h)) detail::add_gen(f02, z, -c);
  auto candidate = [&](const GenComb& v02, const GenComb& filler) {
    BasisFunctor F;
    F.A = &A2.cat;
    F.B = &B;
    F.obj_map = {0, 0, 0};
    for (int i = 0; i <= 2; ++i)
      F.comp[Word{A2.gen_of.at({i, i})}] = GenComb{{T.alg.unit, 1}};
    F.comp[Word{A2.gen_of.at({0, 1})}] = GenComb{{f01, 1}};
    F.comp[Word{A2.gen_of.at({1, 2})}] = GenComb{{f12, 1}};
    F.comp[Word{A2.gen_of.at({0, 2})}] = v02;
    F.comp[Word{A2.gen_of.at({0, 1}), A2.gen_of.at({1, 2})}] = filler;
    return F;
  };
  if (candidate(f02, GenComb{{h, 1}}).commute_witness(3)) return false;
  GenComb bad02;
  for (auto& [z, c] : f02) bad02[z] = -c;
  if (!candidate(bad02, GenComb{{h, 1}}).commute_witness(3)) return false;
  if (!candidate(f02, GenComb{{h, -1}}).commute_witness(3)) return false;
  return true;
}

bool ahol_suite() {
  auto g = abelian2_deg1();
  auto D2 = standard_simplex(2);
  PathSpace P = path_space(D2, 2);
  PathQuiver PQ = path_quiver(P, 2);
  const int W = 3, R = 3;
  TotAlgebra B{g, W};
  FormMap conn = zero_form_map(D2, g, W);
  EnvForm v(g, W, 2);
  Form f1(2), f2(2);
  f1.add_component(1ull << 1, DpPoly::one(2));
  f2.add_component(1ull << 2, DpPoly::one(2));
  v.add_term(EnvWord{{0}}, f1);
  v.add_term(EnvWord{{1}}, f2);
  for (int id = 0; id < D2.cell_count(); ++id)
    conn.val[static_cast<size_t>(id)] = pullback(v, standard_vertex_map(D2, D2.nondeg(id), 2));
  if (!validate_form_map(conn).ok) return false;
  auto phi = ahol_phi(PQ, B, conn, R);
  for (int a = 0; a < PQ.Q.arrow_count(); ++a) {
    TotElt lhs = B.zero(std::max(PQ.Q.deg[static_cast<size_t>(a)] - 1, 0));
    for (auto& [b, c] : PQ.Q.diff_at(a)) lhs = B.add(lhs, B.scale(c, phi(b)));
    if (!B.equal(lhs, B.d(phi(a)))) return false;
  }
  return builder_commute_witness(PQ.Q, B, phi, 4) == std::nullopt;
}

}  // namespace

int main() {
  criterion(1, "maximal chain counts match the binomial and the search oracle", chain_counts);
  criterion(2, "glueing and transport identities, exhaustive n,r <= 3", glueing_suite);
  criterion(3, "divided-power integral calculus on 500 random polynomials", calculus_suite);
  criterion(4, "fiberwise Stokes residual on 104 random coefficient forms", stokes_suite);
  criterion(5, "iterated-integral differential formula, r <= 3 over the interval and triangle",
            diff_formula_suite);
  criterion(6, "de Rham pairing chain-map law on simplices of dimension <= 3", derham_suite);
  criterion(7, "holonomy of the constant connection is the divided-power exponential",
            holonomy_exponential);
  criterion(8, "square-zero suite across all coderivation constructions", square_zero_suite);
  criterion(9, "cosimplicial functoriality and the nerve gate", cosimplicial_nerve_suite);
  criterion(10, "holonomy functor commutes with the differentials at word cap 3", ahol_suite);
  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all criteria pass\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criteria FAILED\n", g_failures);
  return 1;
}
