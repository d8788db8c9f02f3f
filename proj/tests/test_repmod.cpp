#include <doctest.h>

#include <random>

#include "cosilt/repmod.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cosilt;
using F2 = Fp<2>;
using F3 = Fp<3>;

namespace {

template <class F>
Module<F> sum_of(const Algebra<F>& alg, const std::vector<Module<F>>& parts) {
  return direct_sum(alg.quiver(), parts).module;
}

template <class F>
std::vector<Module<F>> a3_modules(const Algebra<F>& alg) {
  std::vector<Module<F>> out;
  for (int v = 0; v < alg.num_vertices(); ++v) {
    out.push_back(simple(alg, v));
    out.push_back(projective(alg, v));
    out.push_back(injective(alg, v));
  }
  return out;
}

/// Conjugates every vertex space by a random invertible matrix.
template <class F, class Rng>
Module<F> conjugate(const Quiver& q, const Module<F>& m, Rng& rng, ModMap<F>* change = nullptr) {
  std::vector<Mat<F>> g;
  for (int d : m.dims) g.push_back(random_invertible<F>(d, rng));
  Module<F> out = m;
  for (int a = 0; a < q.num_arrows(); ++a)
    out.action[a] = mul(g[q.arrows[a].target], mul(m.action[a], inverse(g[q.arrows[a].source])));
  if (change) change->components = g;
  return out;
}

}  // namespace

TEST_SUITE("repmod") {

TEST_CASE("hom examples over A2") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s1 = simple(alg, 0), s2 = simple(alg, 1), p1 = projective(alg, 0);
  CHECK(hom_dim(alg, s1, s1) == 1);
  CHECK(hom_dim(alg, s1, s2) == 0);
  CHECK(hom_dim(alg, p1, s1) == 1);
  CHECK(hom_dim(alg, s2, p1) == 1);
  CHECK(hom_dim(alg, s1, p1) == 0);
  for (const auto& f : hom_basis(alg, p1, s1)) CHECK(is_homomorphism(alg.quiver(), p1, s1, f));
}

TEST_CASE("exhaustive hom check over F2") {
  auto alg = build_algebra(fixtures::linear_a<F2>(3));
  auto mods = a3_modules(alg);
  for (const auto& m : mods)
    for (const auto& n : mods) {
      // Count all vertexwise linear maps that intertwine.
      Index len = map_length(m, n);
      if (len > 12) continue;
      int count = 0;
      for (long long bits = 0; bits < (1LL << len); ++bits) {
        Vec<F2> x(len);
        for (Index k = 0; k < len; ++k) x(k) = F2((bits >> k) & 1);
        if (is_homomorphism(alg.quiver(), m, n, unflatten(m, n, x))) ++count;
      }
      CHECK(count == (1 << hom_dim(alg, m, n)));
    }
}

TEST_CASE("Yoneda dimensions") {
  auto alg = build_algebra(fixtures::commutative_square<F3>());
  std::mt19937 rng(5);
  auto mods = a3_modules(alg);
  for (const auto& m : mods) {
    Module<F3> c = conjugate(alg.quiver(), m, rng);
    for (int v = 0; v < alg.num_vertices(); ++v) {
      CHECK(hom_dim(alg, projective(alg, v), c) == c.dims[v]);
      CHECK(hom_dim(alg, c, injective(alg, v)) == c.dims[v]);
    }
  }
}

TEST_CASE("ext examples") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s1 = simple(alg, 0), s2 = simple(alg, 1), p1 = projective(alg, 0);
  auto e = ext1(alg, s1, s2);
  CHECK(e.dimension == 1);
  auto middles = ext1_middle_terms(alg, s1, s2);
  REQUIRE(middles.size() == 2);
  int found = 0;
  for (const auto& m : middles) found += iso_test(alg, m, p1);
  CHECK(found == 1);
  for (const auto& x : {s1, s2, p1}) {
    CHECK(ext1_dim(alg, p1, x) == 0);
    CHECK(ext1_dim(alg, projective(alg, 1), x) == 0);
  }

  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  auto s = simple(kx, 0), a = projective(kx, 0);
  CHECK(ext1_dim(kx, s, s) == 1);
  int regular = 0;
  for (const auto& m : ext1_middle_terms(kx, s, s)) {
    CHECK(m.dimension() == 2);
    regular += iso_test(kx, m, a);
  }
  CHECK(regular == 1);
  CHECK_THROWS_AS(ext1_middle_terms(build_algebra(fixtures::linear_a<Rational>(2)), simple(build_algebra(fixtures::linear_a<Rational>(2)), 0),
                                    simple(build_algebra(fixtures::linear_a<Rational>(2)), 1)),
                  UnsupportedFieldError);
}

TEST_CASE("ext agrees with the cocycle oracle") {
  auto check_all = [](const auto& alg, const auto& mods) {
    for (const auto& m : mods)
      for (const auto& n : mods) CHECK(ext1_dim(alg, m, n) == oracles::ext1_by_cocycles(alg, m, n));
  };
  auto a3 = build_algebra(fixtures::linear_a<F2>(3));
  check_all(a3, a3_modules(a3));
  auto sink = build_algebra(fixtures::a3_sink<F3>());
  check_all(sink, a3_modules(sink));
  auto rel = build_algebra(fixtures::a3_zero_relation<F2>());
  check_all(rel, a3_modules(rel));
  auto sq = build_algebra(fixtures::commutative_square<F3>());
  check_all(sq, a3_modules(sq));
  auto kx = build_algebra(fixtures::truncated_loop<F2>(3));
  std::vector<Module<F2>> kmods{simple(kx, 0), projective(kx, 0), quotient(kx.quiver(), projective(kx, 0), socle(kx.quiver(), projective(kx, 0))).module};
  check_all(kx, kmods);
  auto q = build_algebra(fixtures::linear_a<Rational>(3));
  check_all(q, a3_modules(q));
}

TEST_CASE("extension middle terms are modules of the right size") {
  auto alg = build_algebra(fixtures::linear_a<F3>(3));
  auto mods = a3_modules(alg);
  for (const auto& m : mods)
    for (const auto& n : mods)
      for_each_extension<F3>(alg, m, n, [&](const Vec<F3>&, const Module<F3>& e) {
        CHECK_NOTHROW(validate_module(alg, e));
        CHECK(e.dimension() == m.dimension() + n.dimension());
      });
}

TEST_CASE("kernel cokernel image") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto p1 = projective(alg, 0), s1 = simple(alg, 0);
  auto id = map_kernel_cokernel_image(alg, p1, p1, identity_map(p1));
  CHECK(id.kernel.module.dimension() == 0);
  CHECK(id.cokernel.module.dimension() == 0);
  auto z = map_kernel_cokernel_image(alg, p1, s1, zero_map(p1, s1));
  CHECK(z.kernel.module.dims == p1.dims);
  CHECK(z.cokernel.module.dims == s1.dims);
  auto h = hom_basis(alg, p1, s1);
  REQUIRE(h.size() == 1);
  auto d = map_kernel_cokernel_image(alg, p1, s1, h[0]);
  CHECK(iso_test(alg, d.kernel.module, simple(alg, 1)));
}

TEST_CASE("submodule enumeration") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  CHECK(enumerate_submodules(alg, simple(alg, 0)).size() == 2);
  CHECK(enumerate_submodules(alg, projective(alg, 0)).size() == 3);
  auto pt = build_algebra(fixtures::point<F2>());
  auto ss = sum_of(pt, {simple(pt, 0), simple(pt, 0)});
  CHECK(enumerate_submodules(pt, ss).size() == 5);
  auto s3 = sum_of(pt, {simple(pt, 0), simple(pt, 0), simple(pt, 0)});
  CHECK_THROWS_AS(enumerate_submodules(pt, s3, 4), BudgetError);
  CHECK_THROWS_AS(enumerate_submodules(build_algebra(fixtures::point<Rational>()), simple(build_algebra(fixtures::point<Rational>()), 0)),
                  UnsupportedFieldError);

  auto a3 = build_algebra(fixtures::linear_a<F2>(3));
  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  std::vector<std::pair<const Algebra<F2>*, Module<F2>>> cases{
      {&a3, projective(a3, 0)},
      {&a3, sum_of(a3, {projective(a3, 1), simple(a3, 1)})},
      {&a3, sum_of(a3, {injective(a3, 1), projective(a3, 1)})},
      {&kx, sum_of(kx, {projective(kx, 0), simple(kx, 0)})},
      {&pt, s3},
  };
  for (const auto& [a, m] : cases) {
    auto subs = enumerate_submodules(*a, m);
    CHECK(static_cast<int>(subs.size()) == oracles::count_submodules_f2(a->quiver(), m));
    for (const auto& s : subs) CHECK(is_submodule(a->quiver(), m, s));
  }
}

TEST_CASE("injective envelopes and copresentations") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto i1 = injective(alg, 0), s2 = simple(alg, 1), p1 = projective(alg, 0);
  auto env = injective_envelope(alg, i1);
  CHECK(env.envelope.vertices == std::vector<int>{0});
  CHECK(is_iso(env.mono));
  auto env2 = injective_envelope(alg, s2);
  CHECK(env2.envelope.vertices == std::vector<int>{1});
  CHECK(iso_test(alg, env2.envelope.module(), p1));

  auto mu_inj = min_inj_copresentation(alg, p1);
  CHECK(mu_inj.e1.size() == 0);
  auto mu = min_inj_copresentation(alg, s2);
  CHECK(mu.e0.vertices == std::vector<int>{1});
  CHECK(mu.e1.vertices == std::vector<int>{0});
  CHECK(iso_test(alg, realize(alg.quiver(), mu.e0.module(), kernel_of(mu.differential)).module, s2));

  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  auto s = simple(kx, 0);
  auto mus = min_inj_copresentation(kx, s);
  CHECK(mus.e0.size() == 1);
  CHECK(mus.e1.size() == 1);
  CHECK(rank(mus.differential.components[0]) == 1);

  auto zero = min_inj_copresentation(alg, zero_module<F2>(alg.quiver()));
  CHECK(zero.e0.size() == 0);
  CHECK(zero.e1.size() == 0);
}

TEST_CASE("projective presentations") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto p1 = projective(alg, 0), s1 = simple(alg, 0);
  auto pp = min_proj_presentation(alg, p1);
  CHECK(pp.p0.vertices == std::vector<int>{0});
  CHECK(pp.p1.size() == 0);
  auto ps = min_proj_presentation(alg, s1);
  CHECK(ps.p0.vertices == std::vector<int>{0});
  CHECK(ps.p1.vertices == std::vector<int>{1});
  CHECK(iso_test(alg, ps.syzygy.module, simple(alg, 1)));
  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  auto pk = min_proj_presentation(kx, simple(kx, 0));
  CHECK(pk.p0.size() == 1);
  CHECK(pk.p1.size() == 1);
  CHECK(iso_test(kx, pk.syzygy.module, simple(kx, 0)));
}

TEST_CASE("Auslander-Reiten translates") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s1 = simple(alg, 0), s2 = simple(alg, 1), p1 = projective(alg, 0);
  CHECK(tau_inverse(alg, p1).dimension() == 0);
  CHECK(tau_inverse(alg, s1).dimension() == 0);
  CHECK(iso_test(alg, tau_inverse(alg, s2), s1));
  CHECK(iso_test(alg, tau(alg, s1), s2));
  CHECK(tau(alg, p1).dimension() == 0);
  CHECK(tau(alg, zero_module<F2>(alg.quiver())).dimension() == 0);

  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  CHECK(iso_test(kx, tau_inverse(kx, simple(kx, 0)), simple(kx, 0)));
  CHECK(iso_test(kx, tau(kx, simple(kx, 0)), simple(kx, 0)));
  CHECK(tau_inverse(kx, projective(kx, 0)).dimension() == 0);
}

TEST_CASE("tau and its inverse undo each other on hereditary algebras") {
  auto check = [](const auto& alg) {
    std::vector<std::decay_t<decltype(simple(alg, 0))>> orbit;
    for (int v = 0; v < alg.num_vertices(); ++v) orbit.push_back(projective(alg, v));
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      auto next = tau_inverse(alg, orbit[k]);
      if (next.dimension() == 0) continue;
      CHECK(iso_test(alg, tau(alg, next), orbit[k]));
      bool seen = false;
      for (const auto& o : orbit) seen = seen || iso_test(alg, o, next);
      if (!seen) orbit.push_back(next);
    }
    for (const auto& m : orbit) {
      auto t = tau(alg, m);
      if (t.dimension() > 0) CHECK(iso_test(alg, tau_inverse(alg, t), m));
    }
    return orbit.size();
  };
  CHECK(check(build_algebra(fixtures::linear_a<F2>(3))) == 6);
  CHECK(check(build_algebra(fixtures::a3_sink<F3>())) == 6);
  CHECK(check(build_algebra(fixtures::linear_a<Rational>(4))) == 10);
}

TEST_CASE("decomposition") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s1 = simple(alg, 0), s2 = simple(alg, 1), p1 = projective(alg, 0);
  auto d = decompose(alg, p1);
  CHECK(d.pieces.size() == 1);
  auto dd = decompose(alg, sum_of(alg, {s1, s1}));
  CHECK(dd.num_classes() == 1);
  CHECK(dd.multiplicity[0] == 2);
  auto mixed = decompose(alg, sum_of(alg, {p1, s2}));
  REQUIRE(mixed.num_classes() == 2);
  CHECK(mixed.multiplicity == std::vector<int>{1, 1});
  CHECK(decompose(alg, zero_module<F2>(alg.quiver())).pieces.empty());
}

TEST_CASE("decomposition of conjugated sums") {
  auto run = [](const auto& alg, unsigned seed) {
    using F = std::decay_t<decltype(simple(alg, 0).action[0](0, 0))>;
    std::mt19937 rng(seed);
    auto mods = a3_modules(alg);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<Module<F>> parts;
      std::vector<int> chosen;
      int count = 2 + trial % 3;
      for (int k = 0; k < count; ++k) {
        int i = static_cast<int>(rng() % mods.size());
        chosen.push_back(i);
        parts.push_back(mods[i]);
      }
      Module<F> m = conjugate(alg.quiver(), sum_of(alg, parts), rng);
      auto d = decompose(alg, m);
      CHECK(d.pieces.size() == parts.size());
      for (const auto& p : d.pieces) {
        CHECK(is_indecomposable(alg, p.module));
        int matches = 0;
        for (const auto& x : mods) matches += iso_test(alg, p.module, x) ? 1 : 0;
        CHECK(matches >= 1);
      }
      CHECK(iso_test(alg, m, sum_of(alg, parts)));
    }
  };
  run(build_algebra(fixtures::linear_a<F2>(3)), 1);
  run(build_algebra(fixtures::commutative_square<F3>()), 2);
  run(build_algebra(fixtures::linear_a<Rational>(3)), 3);
}

TEST_CASE("endomorphism algebras") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s1 = simple(alg, 0), s2 = simple(alg, 1), p1 = projective(alg, 0);
  auto eb = end_algebra(alg, s1);
  CHECK(eb.dimension() == 1);
  CHECK(eb.radical.empty());
  CHECK(eb.is_local);
  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  auto ea = end_algebra(kx, projective(kx, 0));
  CHECK(ea.dimension() == 2);
  CHECK(ea.radical.size() == 1);
  CHECK(ea.is_local);
  auto es = end_algebra(alg, sum_of(alg, {s1, s2}));
  CHECK(es.dimension() == 2);
  CHECK(es.radical.empty());
  CHECK_FALSE(es.is_local);
  auto e2 = end_algebra(alg, sum_of(alg, {p1, s1, s1}));
  CHECK(e2.dimension() == 1 + 4 + 2);
  CHECK(e2.radical.size() == 2);
  // Radical elements are nilpotent and form an ideal.
  for (const auto& r : e2.radical) {
    CHECK(detail::is_nilpotent(r, 4));
    for (const auto& b : e2.basis) {
      CHECK(in_span(flatten_all(e2.radical, map_length(e2.module, e2.module)), Mat<F2>(flatten(compose(b, r)))));
      CHECK(in_span(flatten_all(e2.radical, map_length(e2.module, e2.module)), Mat<F2>(flatten(compose(r, b)))));
    }
  }
}

TEST_CASE("socle over the endomorphism ring") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto p1 = projective(alg, 0);
  CHECK(soc_over_end(alg, p1).dimension() == 2);
  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  auto a = projective(kx, 0);
  CHECK(same_submodule(soc_over_end(kx, a), socle(kx.quiver(), a)));
  auto both = sum_of(alg, {simple(alg, 0), simple(alg, 1)});
  CHECK(soc_over_end(alg, both).dimension() == 2);
}

TEST_CASE("bricks") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  CHECK(is_brick(alg, simple(alg, 0)));
  CHECK(is_brick(alg, projective(alg, 0)));
  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  CHECK_FALSE(is_brick(kx, projective(kx, 0)));
  CHECK_THROWS_AS(is_brick(alg, sum_of(alg, {simple(alg, 0), simple(alg, 1)})), InputError);
}

TEST_CASE("isomorphism tests") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto p1 = projective(alg, 0), i2 = injective(alg, 1);
  CHECK(iso_test(alg, p1, p1));
  CHECK_FALSE(iso_test(alg, simple(alg, 0), simple(alg, 1)));
  CHECK(iso_test(alg, i2, p1));
  auto two = sum_of(alg, {simple(alg, 0), simple(alg, 1)});
  CHECK_FALSE(iso_test(alg, two, p1));
  std::mt19937 rng(9);
  ModMap<F2> g;
  auto c = conjugate(alg.quiver(), sum_of(alg, {p1, simple(alg, 1)}), rng, &g);
  auto iso = find_isomorphism(alg, sum_of(alg, {simple(alg, 1), p1}), c);
  REQUIRE(iso);
  CHECK(is_homomorphism(alg.quiver(), sum_of(alg, {simple(alg, 1), p1}), c, *iso));
  CHECK(is_iso(*iso));
}

TEST_CASE("left minimal approximations") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s2 = simple(alg, 1), p1 = projective(alg, 0);
  auto same = left_min_approx(alg, p1, {p1});
  CHECK(same.summands == std::vector<int>{0});
  CHECK(is_iso(same.map));
  auto a = left_min_approx(alg, s2, {s2, p1});
  CHECK(a.summands == std::vector<int>{0});
  CHECK(is_iso(a.map));
  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  auto b = left_min_approx(kx, simple(kx, 0), {projective(kx, 0)});
  CHECK(b.summands == std::vector<int>{0});
  CHECK(is_mono(b.map));

  // Preenvelope property on a 3-vertex example.
  auto a3 = build_algebra(fixtures::linear_a<F2>(3));
  auto mods = a3_modules(a3);
  std::vector<Module<F2>> targets{injective(a3, 0), injective(a3, 1)};
  for (const auto& m : mods) {
    auto ap = left_min_approx(a3, m, targets);
    for (const auto& t : targets)
      for (const auto& f : hom_basis(a3, m, t)) CHECK(detail::factors_through(a3, m, ap.target.module, t, ap.map, f));
  }
}

}
