#include <catch2/catch.hpp>

#include "dph/form.hpp"
#include "testutil.hpp"

using namespace dph;
using testutil::Rng;

namespace {

std::shared_ptr<const LinftyAlgebra> toy_algebra() {
  return std::make_shared<LinftyAlgebra>(abelian_algebra({"e", "f"}, {1, 1}));
}

RatPoly rat_partial(const RatPoly& p, int i) {
  RatPoly r(p.nvars);
  for (auto& [m, c] : p.terms) {
    uint32_t N = m.e[static_cast<size_t>(i)];
    if (N == 0) continue;
    DpMono m2 = m;
    --m2.e[static_cast<size_t>(i)];
    r.add_term(std::move(m2), c * Rat(N));
  }
  return r;
}

}  // namespace

TEST_CASE("wedge antisymmetry and odd squares") {
  int n = 2;
  Form dx1 = Form::dx(n, 1), dx2 = Form::dx(n, 2);
  CHECK(wedge(dx1, dx2) == Int(-1) * wedge(dx2, dx1));
  CHECK(wedge(dx1, dx1).is_zero());
}

TEST_CASE("wedge sign across tensor words") {
  auto g = toy_algebra();
  int n = 2, W = 3;
  EnvForm a(g, W, n), b(g, W, n);
  Form f1(n);
  f1.add_component(1ull << 1, DpPoly::power(n, 1, 1));
  a.add_term(EnvWord{{0}}, f1);  // e (x) x1 dx1
  Form f2(n);
  f2.add_component(1ull << 2, DpPoly::power(n, 2, 1));
  b.add_term(EnvWord{{1}}, f2);  // f (x) x2 dx2
  auto w = wedge(a, b);
  REQUIRE(w.terms.size() == 1);
  auto& [word, form] = *w.terms.begin();
  CHECK(word == EnvWord{{0}, {1}});
  Form expect(n);
  expect.add_component((1ull << 1) | (1ull << 2),
                       Int(-1) * dp_mul(DpPoly::power(n, 1, 1), DpPoly::power(n, 2, 1)));
  CHECK(form == expect);
}

TEST_CASE("differential basics") {
  int n = 2;
  // d(x1^[2]) = x1^[1] dx1
  Form f = Form::from_poly(DpPoly::power(n, 1, 2));
  Form expect(n);
  expect.add_component(1ull << 1, DpPoly::power(n, 1, 1));
  CHECK(d(f) == expect);
  // d(dx1) = 0
  CHECK(d(Form::dx(n, 1)).is_zero());
  // d(x1 x2) = x2 dx1 + x1 dx2
  Form f2 = Form::from_poly(dp_mul(DpPoly::power(n, 1, 1), DpPoly::power(n, 2, 1)));
  Form e2(n);
  e2.add_component(1ull << 1, DpPoly::power(n, 2, 1));
  e2.add_component(1ull << 2, DpPoly::power(n, 1, 1));
  CHECK(d(f2) == e2);
}

TEST_CASE("differential against the rational oracle") {
  Rng rng(808);
  for (int it = 0; it < 150; ++it) {
    int n = rng.uniform(1, 4);
    DpPoly p = testutil::random_dp(rng, n, 4, 9, 3);
    Form df = d(Form::from_poly(p));
    for (int i = 1; i <= n; ++i) {
      auto it2 = df.c.find(1ull << i);
      RatPoly got = it2 == df.c.end() ? RatPoly(n) : to_rational(it2->second);
      CHECK(got == rat_partial(to_rational(p), i));
    }
  }
}

TEST_CASE("d squares to zero on random forms") {
  Rng rng(9001);
  auto g = toy_algebra();
  for (int it = 0; it < 200; ++it) {
    int n = rng.uniform(1, 4);
    EnvForm e = testutil::random_envform(rng, g, 3, n, 4, 9, 3);
    CHECK(d(d(e)).is_zero());
  }
}

TEST_CASE("graded Leibniz rule on scalar forms") {
  Rng rng(515);
  for (int it = 0; it < 200; ++it) {
    int n = rng.uniform(1, 4);
    int q1 = rng.uniform(0, n), q2 = rng.uniform(0, n - q1);
    // homogeneous scalar forms of the chosen degrees
    Form a(n), b(n);
    for (auto& [mask, poly] : testutil::random_form(rng, n, 4, 9, 4).c)
      if (__builtin_popcountll(mask) == q1) a.add_component(mask, poly);
    for (auto& [mask, poly] : testutil::random_form(rng, n, 4, 9, 4).c)
      if (__builtin_popcountll(mask) == q2) b.add_component(mask, poly);
    Form lhs = d(wedge(a, b));
    Form rhs = wedge(d(a), b) + (q1 % 2 ? Int(-1) : Int(1)) * wedge(a, d(b));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("twisted Leibniz rule with coefficients") {
  // With the differential acting on the form factor only,
  // d(a^b) = (-1)^{p_b} da^b + (-1)^{q_a} a^db for bidegree-homogeneous a, b.
  Rng rng(516);
  auto g = toy_algebra();
  for (int it = 0; it < 300; ++it) {
    int n = rng.uniform(1, 3);
    int q1 = rng.uniform(0, n), q2 = rng.uniform(0, n - q1);
    int p1 = rng.uniform(0, 2), p2 = rng.uniform(0, 2);
    EnvForm a = testutil::random_homogeneous(rng, g, 4, n, p1, q1, 3, 9);
    EnvForm b = testutil::random_homogeneous(rng, g, 4, n, p2, q2, 3, 9);
    EnvForm lhs = d(wedge(a, b));
    EnvForm rhs = (p2 % 2 ? Int(-1) : Int(1)) * wedge(d(a), b) +
                  (q1 % 2 ? Int(-1) : Int(1)) * wedge(a, d(b));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("wedge associativity") {
  Rng rng(517);
  auto g = toy_algebra();
  for (int it = 0; it < 150; ++it) {
    int n = rng.uniform(1, 3);
    EnvForm a = testutil::random_envform(rng, g, 4, n, 3, 5, 2);
    EnvForm b = testutil::random_envform(rng, g, 4, n, 3, 5, 2);
    EnvForm c = testutil::random_envform(rng, g, 4, n, 3, 5, 2);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("pullback basics") {
  int n = 1;
  CHECK(pullback(Form::dx(n, 1), ordinal_delta(1, 1)).is_zero());
  CHECK(pullback(Form::from_poly(DpPoly::power(1, 1, 2)), ordinal_delta(0, 1)) ==
        Form::from_poly(DpPoly::power(0, 0, 2)));
  Form x1dx1(n);
  x1dx1.add_component(1ull << 1, DpPoly::power(1, 1, 1));
  Form x2dx2(2);
  x2dx2.add_component(1ull << 2, DpPoly::power(2, 2, 1));
  CHECK(pullback(x1dx1, ordinal_sigma(0, 1)) == x2dx2);
}

TEST_CASE("pullback is a dg algebra morphism and functorial") {
  Rng rng(606);
  auto g = toy_algebra();
  for (int m = 0; m <= 3; ++m)
    for (int k = 0; k <= 3; ++k)
      for (auto& alpha : all_ordinal_maps(m, k)) {
        EnvForm a = testutil::random_envform(rng, g, 3, k, 3, 5, 2);
        EnvForm b = testutil::random_envform(rng, g, 3, k, 3, 5, 2);
        CHECK(pullback(d(a), alpha) == d(pullback(a, alpha)));
        CHECK(pullback(wedge(a, b), alpha) == wedge(pullback(a, alpha), pullback(b, alpha)));
        for (int n = 0; n <= 2; ++n)
          for (auto& beta : all_ordinal_maps(k, n)) {
            EnvForm f = testutil::random_envform(rng, g, 3, n, 3, 5, 2);
            CHECK(pullback(f, compose(beta, alpha)) == pullback(pullback(f, beta), alpha));
          }
        EnvForm f = testutil::random_envform(rng, g, 3, k, 3, 5, 2);
        CHECK(pullback(f, ordinal_id(k)) == f);
      }
}

TEST_CASE("contraction") {
  int n = 2;
  Form f = testutil::random_form(*new Rng(77), n, 3, 5, 3);  // arbitrary fixed form
  Form fg(n);
  DpPoly F = testutil::random_dp(*new Rng(78), n, 3, 5, 2);
  DpPoly G = testutil::random_dp(*new Rng(79), n, 3, 5, 2);
  fg.add_component(1ull << 1, F);
  fg.add_component(1ull << 2, G);
  CHECK(contract(fg, 1) == Form::from_poly(F));
  Form f1(n);
  f1.add_component(1ull << 1, F);
  CHECK(contract(f1, 2).is_zero());
  // chi_1(F dx1^dx2) = F dx2
  Form f12(n);
  f12.add_component((1ull << 1) | (1ull << 2), F);
  Form expect(n);
  expect.add_component(1ull << 2, F);
  CHECK(contract(f12, 1) == expect);
  // chi_i o chi_i = 0
  Rng rng(80);
  for (int it = 0; it < 100; ++it) {
    Form h = testutil::random_form(rng, 3, 3, 5, 4);
    for (int i = 1; i <= 3; ++i) CHECK(contract(contract(h, i), i).is_zero());
  }
  // partial derivative is recovered as contraction after d
  for (int it = 0; it < 50; ++it) {
    DpPoly p = testutil::random_dp(rng, 3, 4, 9, 3);
    for (int i = 1; i <= 3; ++i)
      CHECK(contract(d(Form::from_poly(p)), i) == Form::from_poly(partial(p, i)));
  }
}
