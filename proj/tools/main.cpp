#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "dph/holonomy.hpp"
#include "dph/integrate.hpp"
#include "dph/json_io.hpp"
#include "dph/pathcat.hpp"
#include "dph/sampling.hpp"

using namespace dph;
using sampling::Rng;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  if (!j.contains("v") || j.at("v").get<int>() != 1)
    throw std::runtime_error(path + ": missing or unsupported schema version");
  return j;
}

void emit(const json& j, const std::string& out_path) {
  json full = j;
  full["v"] = 1;
  if (out_path.empty()) {
    std::cout << full.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << full.dump(2) << "\n";
  }
}

struct Suite {
  int passed = 0, failed = 0;
  bool exhaustive_defaults = true;

  void report(const std::string& label, bool ok, const std::string& scope) {
    std::cout << (ok ? "pass" : "FAIL") << "  " << label << "  [" << scope << "]\n";
    (ok ? passed : failed)++;
  }
};

std::shared_ptr<const LinftyAlgebra> default_algebra() {
  return std::make_shared<LinftyAlgebra>(abelian_algebra({"e", "f"}, {1, 2}));
}

std::shared_ptr<const LinftyAlgebra> nilpotent_algebra() {
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

int run_stokes(int count, int ncap, int rcap, uint32_t seed,
               std::shared_ptr<const LinftyAlgebra> g, int W) {
  Rng rng(seed);
  int ok = 0;
  std::vector<SimplicialSet> simplices;
  for (int n = 0; n <= std::max(ncap, rcap); ++n) simplices.push_back(standard_simplex(n));
  for (int it = 0; it < count; ++it) {
    int n = rng.uniform(0, ncap), r = rng.uniform(1, std::max(rcap, 1));
    const SimplicialSet& X = simplices[static_cast<size_t>(n)];
    const SimplicialSet& U = simplices[static_cast<size_t>(r)];
    FormMap a = simplex_form_map(X, n, sampling::random_envform(rng, g, W, n, 3, 5, 2));
    FormMap b = simplex_form_map(U, r, sampling::random_envform(rng, g, W, r, 3, 5, 2));
    PairForm F = PairForm::separable(X, U, a, b);
    if (form_map_is_zero(stokes_residual(F))) ++ok;
  }
  std::cout << "residual 0 in " << ok << "/" << count << " (seed " << seed << ", n<=" << ncap
            << ", r<=" << rcap << ")\n";
  return ok == count ? 0 : 1;
}

int run_selftest(uint32_t seed, int ncap, int rcap) {
  Suite S;
  std::string exh = "exhaustive n,r<=" + std::to_string(ncap);
  if (ncap < 3 || rcap < 3) exh = "NONEXHAUSTIVE caps n<=" + std::to_string(ncap) + " r<=" + std::to_string(rcap);
  std::cout << "seed " << seed << "\n";
  Rng rng(seed);
  auto g = default_algebra();

  {  // dp calculus
    bool ok = true;
    for (int it = 0; it < 200 && ok; ++it) {
      int n = rng.uniform(1, 4), i = rng.uniform(1, n);
      DpPoly f = sampling::random_dp(rng, n, 5, 9, 4);
      DpPoly h = sampling::random_dp(rng, n, 4, 9, 3);
      Bound X = sampling::random_bound(rng, n), Y = sampling::random_bound(rng, n);
      if (definite_integral(partial(f, i), i, X, Y) != eps_sub(f, i, Y) - eps_sub(f, i, X))
        ok = false;
      auto fg = dp_mul(f, h);
      if (definite_integral(dp_mul(f, partial(h, i)), i, X, Y) !=
          eps_sub(fg, i, Y) - eps_sub(fg, i, X) -
              definite_integral(dp_mul(partial(f, i), h), i, X, Y))
        ok = false;
    }
    S.report("integral-calculus", ok, "randomized 200");
  }
  {  // chain combinatorics
    bool ok = true;
    for (int n = 0; n <= ncap && ok; ++n)
      for (int r = 0; r <= rcap && ok; ++r) {
        auto cs = enumerate_maximal(n, r);
        Int expect = binom(static_cast<unsigned long>(n + r), static_cast<unsigned long>(n));
        if (Int(static_cast<long>(cs.size())) != expect) ok = false;
        for (auto& c : cs) {
          auto an = analyze(c);
          for (int i = 0; i <= c.p(); ++i)
            if (c.base(i) + c.fib(i) != i) ok = false;
          for (auto& [v, k] : an.classified) {
            if (k == VertexClass::Out) {
              if (r >= 1) face_factor(c, v);
            } else if (!(flip(flip(c, v), v) == c)) {
              ok = false;
            }
          }
        }
      }
    S.report("chain-combinatorics", ok, exh);
  }
  {  // transports along squares
    bool ok = true;
    for (int m = 0; m <= ncap && ok; ++m)
      for (int n = 0; n <= ncap && ok; ++n)
        for (int r = 1; r <= std::min(rcap, 2) && ok; ++r)
          for (auto& alpha : all_ordinal_maps(m, n))
            for (auto& c : enumerate_maximal(m, r)) {
              auto [cf, beta] = pushforward_pair(c, alpha);
              auto a1 = analyze(cf), a2 = analyze(c);
              for (int i = 1; i <= r; ++i)
                if (beta(a2.fs[static_cast<size_t>(i)]) != a1.fs[static_cast<size_t>(i)]) ok = false;
              bool pointwise = true;
              for (int s = 0; s <= c.p(); ++s)
                if (cf.base(beta(s)) != alpha(c.base(s)) || cf.fib(beta(s)) != c.fib(s))
                  pointwise = false;
              if (!pointwise) ok = false;
            }
    S.report("square-transports", ok, exh);
  }
  {  // de Rham complex laws
    bool ok = true;
    for (int it = 0; it < 100 && ok; ++it) {
      int n = rng.uniform(1, 4);
      EnvForm a = sampling::random_envform(rng, g, 3, n, 4, 9, 3);
      if (!d(d(a)).is_zero()) ok = false;
    }
    S.report("differential-squared", ok, "randomized 100");
  }
  {  // coderivations
    bool ok = coderivation_square_witness(*nilpotent_algebra(), 4) == std::nullopt &&
              coderivation_square_witness(*g, 4) == std::nullopt;
    S.report("coderivation-squared", ok, "weight<=4");
  }
  {  // integration
    bool ok = true;
    for (int it = 0; it < 30 && ok; ++it) {
      int n = rng.uniform(0, std::min(ncap, 2)), r = rng.uniform(0, std::min(rcap, 2));
      ProductForm F = ProductForm::zero(n, r, g, 2);
      for (int k = 0; k < 2; ++k) {
        EnvForm a = sampling::random_envform(rng, g, 2, n, 3, 5, 2);
        EnvForm b = sampling::random_envform(rng, g, 2, r, 3, 5, 2);
        F = F + ProductForm::separable(n, r, a, b);
      }
      for (auto& alpha : all_ordinal_maps(rng.uniform(0, 2), n))
        if (!(pullback(fiberwise(F), alpha) == fiberwise(product_pullback_base(F, alpha))))
          ok = false;
      for (int h = 0; h <= r; ++h)
        if (!fiberwise(product_pullback_fiber(F, ordinal_sigma(h, r))).is_zero()) ok = false;
    }
    S.report("integration-naturality", ok, "randomized 30");
  }
  {  // the residual identity
    int rc = run_stokes(25, std::min(ncap, 2), std::min(rcap, 2), seed + 1, g, 2);
    S.report("stokes-residual", rc == 0, "randomized 25");
  }
  {  // holonomy exponential
    auto ge = std::make_shared<const LinftyAlgebra>(abelian_algebra({"e"}, {1}));
    auto D1 = standard_simplex(1);
    auto P = path_space(D1, 0);
    FormMap conn = zero_form_map(D1, ge, 6);
    EnvForm v(ge, 6, 1);
    Form f(1);
    f.add_component(1ull << 1, DpPoly::one(1));
    v.add_term(EnvWord{{0}}, f);
    conn.val[static_cast<size_t>(standard_top_cell(D1))] = v;
    int id = -1;
    for (int cell : P.space.by_dim[0]) {
      Simplex e0 = endpoint(P, cell, 0), e1 = endpoint(P, cell, 1);
      if (e0.core == 0 && e1.core == 1) id = cell;
    }
    HolValue hv = hol_at(P, id, conn, 6);
    EnvForm got = hv.at(ordinal_id(0));
    EnvForm expect(ge, 6, 0);
    for (int r = 0; r <= 6; ++r)
      expect.add_term(EnvWord(static_cast<size_t>(r), SymMono{0}),
                      Form::from_poly(DpPoly::power(0, 0, static_cast<uint32_t>(r))));
    S.report("holonomy-exponential", got == expect, "order 6");
  }
  {  // algebraic layer
    SimplexCategory A2(2);
    bool ok = A2.cat.square_witness(4) == std::nullopt &&
              A2.cat.strict_unit_witness(3) == std::nullopt;
    Unitalization U = unitalize(A2.cat);
    ok = ok && U.cat.square_witness(3) == std::nullopt;
    TotToy T = make_tot_toy(std::make_shared<LinftyAlgebra>(abelian_algebra({"e"}, {1})), 2, 1);
    try {
      BasisAinfty B = from_dg_algebra(T.alg);
      ok = ok && B.square_witness(3) == std::nullopt;
    } catch (const std::exception&) {
      ok = false;
    }
    S.report("ainfty-square-zero", ok, "word length<=4");
  }

  std::cout << (S.failed == 0 ? "SELFTEST PASS" : "SELFTEST FAIL") << " (" << S.passed
            << " passed, " << S.failed << " failed)\n";
  return S.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simplicial holonomy toolkit over divided powers"};
  app.require_subcommand(1);

  // chains
  auto* sc_chains = app.add_subcommand("chains", "Enumerate maximal chains of [n] x [r]");
  int cn = 1, cr = 1;
  bool cjson = false;
  sc_chains->add_option("--n", cn, "base size")->required();
  sc_chains->add_option("--r", cr, "fiber size")->required();
  sc_chains->add_flag("--json", cjson, "JSON output");

  // integrate
  auto* sc_int = app.add_subcommand("integrate", "Chain integral of a form along a global chain");
  std::string int_form, int_chain, int_out;
  sc_int->add_option("--form", int_form, "form JSON file")->required();
  sc_int->add_option("--chain", int_chain, "chain JSON file")->required();
  sc_int->add_option("-o,--out", int_out, "output path (stdout otherwise)");

  // stokes
  auto* sc_stokes = app.add_subcommand("stokes", "Randomized residual suite");
  int st_count = 100, st_n = 2, st_r = 2, st_W = 2;
  uint32_t st_seed = 7;
  std::string st_alg;
  sc_stokes->add_option("--random", st_count, "number of random forms");
  sc_stokes->add_option("--n", st_n, "base dimension cap");
  sc_stokes->add_option("--r", st_r, "fiber dimension cap");
  sc_stokes->add_option("--seed", st_seed, "random seed");
  sc_stokes->add_option("--trunc", st_W, "word-length cap");
  sc_stokes->add_option("--algebra", st_alg, "algebra JSON file (default: rank-2)");

  // derham
  auto* sc_dr = app.add_subcommand("derham", "de Rham pairing of a form map");
  std::string dr_space, dr_form, dr_out;
  sc_dr->add_option("--space", dr_space, "simplicial set JSON")->required();
  sc_dr->add_option("--form", dr_form, "form map JSON")->required();
  sc_dr->add_option("-o,--out", dr_out, "output path");

  // hol
  auto* sc_hol = app.add_subcommand("hol", "Holonomy over the path space");
  std::string h_space, h_conn, h_out;
  int h_order = 4, h_cap = 1;
  sc_hol->add_option("--space", h_space, "simplicial set JSON")->required();
  sc_hol->add_option("--conn", h_conn, "connection JSON")->required();
  sc_hol->add_option("--order", h_order, "series order cap");
  sc_hol->add_option("--cap", h_cap, "path-space dimension cap");
  sc_hol->add_option("-o,--out", h_out, "output path");

  // ainfty-check
  auto* sc_ai = app.add_subcommand("ainfty-check", "Structural validation of algebra files");
  std::string ai_file;
  int ai_cap = 4;
  sc_ai->add_option("--file", ai_file, "input JSON")->required();
  sc_ai->add_option("--cap", ai_cap, "word length cap");

  // selftest
  auto* sc_self = app.add_subcommand("selftest", "Run the module invariant suites");
  uint32_t self_seed = 2024;
  int self_n = 3, self_r = 3;
  sc_self->add_option("--seed", self_seed, "random seed");
  sc_self->add_option("--n", self_n, "exhaustive base cap");
  sc_self->add_option("--r", self_r, "exhaustive fiber cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc_chains) {
      auto cs = enumerate_maximal(cn, cr);
      if (cjson) {
        json arr = json::array();
        for (auto& c : cs) arr.push_back(to_json(c));
        emit(json{{"count", cs.size()}, {"chains", std::move(arr)}}, "");
      } else {
        std::cout << cs.size() << " maximal chains of [" << cn << "]x[" << cr << "]\n";
        for (auto& c : cs) {
          for (auto& [a, b] : c.pts) std::cout << "(" << a << "," << b << ") ";
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (*sc_int) {
      json jf = load_json(int_form);
      Chain c = chain_from_json(load_json(int_chain));
      auto g = std::make_shared<const LinftyAlgebra>(linfty_from_json(jf.at("algebra")));
      EnvForm w = envform_from_json(jf.at("form"), g);
      EnvForm res = chain_integral(w, c);
      emit(json{{"algebra", to_json(*g)}, {"form", to_json(res, *g)}}, int_out);
      return 0;
    }
    if (*sc_stokes) {
      std::shared_ptr<const LinftyAlgebra> g =
          st_alg.empty()
              ? default_algebra()
              : std::make_shared<const LinftyAlgebra>(linfty_from_json(load_json(st_alg)));
      return run_stokes(st_count, st_n, st_r, st_seed, g, st_W);
    }
    if (*sc_dr) {
      SimplicialSet X = sset_from_json(load_json(dr_space));
      FormMap F = formmap_from_json(load_json(dr_form), X);
      auto rep = validate_form_map(F);
      if (!rep.ok) {
        std::cerr << "form map incompatible at cell " << rep.cell << " face " << rep.face << "\n";
        return 1;
      }
      json values = json::object();
      bool chain_law = true;
      for (int id = 0; id < X.cell_count(); ++id) {
        Simplex x = X.nondeg(id);
        values[std::to_string(id)] = to_json(de_rham_pair(F, x), *F.g);
        if (x.dim() > 0) {
          EnvForm lhs = de_rham_pair(fm_d(F), x);
          EnvForm rhs(F.g, F.trunc, 0);
          for (int i = 0; i <= x.dim(); ++i) {
            EnvForm t = de_rham_pair(F, X.face(x, i));
            if (i % 2)
              rhs -= t;
            else
              rhs += t;
          }
          if (!(lhs == rhs)) chain_law = false;
        }
      }
      emit(json{{"pairings", std::move(values)}, {"chain_map_law", chain_law}}, dr_out);
      return chain_law ? 0 : 1;
    }
    if (*sc_hol) {
      SimplicialSet X = sset_from_json(load_json(h_space));
      FormMap conn = formmap_from_json(load_json(h_conn), X);
      auto rep = validate_form_map(conn);
      if (!rep.ok) {
        std::cerr << "connection incompatible at cell " << rep.cell << " face " << rep.face
                  << "\n";
        return 1;
      }
      PathSpace P = path_space(X, h_cap);
      json table = json::object();
      for (int cell = 0; cell < P.space.cell_count(); ++cell) {
        HolValue v = hol_at(P, cell, conn, h_order);
        json per = json::object();
        for (auto& [inj, val] : v) {
          std::string key;
          for (int x : inj.v) key += (key.empty() ? "" : ".") + std::to_string(x);
          per[key.empty() ? "pt" : key] = to_json(val, *conn.g);
        }
        table[std::to_string(cell)] = std::move(per);
      }
      emit(json{{"order", h_order},
                {"cells", P.space.cell_count()},
                {"exact_word_degrees_up_to", std::min(h_order, conn.trunc)},
                {"holonomy", std::move(table)}},
           h_out);
      return 0;
    }
    if (*sc_ai) {
      json j = load_json(ai_file);
      std::string type = j.value("type", "linfty");
      if (type == "linfty") {
        LinftyAlgebra g = linfty_from_json(j);
        auto w = coderivation_square_witness(g, ai_cap);
        if (w) {
          std::cout << "FAIL coderivation square at a weight-" << w->size() << " word\n";
          return 1;
        }
        std::cout << "pass: coderivation squares to zero (weight<=" << ai_cap << ")\n";
        return 0;
      }
      std::cerr << "unknown file type " << type << "\n";
      return 2;
    }
    if (*sc_self) return run_selftest(self_seed, self_n, self_r);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
