#include <doctest.h>

#include "cosilt/module.hpp"
#include "fixtures.hpp"

using namespace cosilt;
using F2 = Fp<2>;
using F3 = Fp<3>;

namespace {

template <class F>
void check_structure(const Algebra<F>& alg) {
  int n = alg.num_vertices(), dp = 0, di = 0;
  for (int v = 0; v < n; ++v) {
    auto p = projective(alg, v), i = injective(alg, v), s = simple(alg, v);
    validate_module(alg, p);
    validate_module(alg, i);
    validate_module(alg, s);
    dp += p.dimension();
    di += i.dimension();
  }
  CHECK(dp == alg.dimension());
  CHECK(di == alg.dimension());
  // Orthogonal idempotents, unit, associativity on the basis.
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const auto& prod = alg.product(alg.idempotent(u), alg.idempotent(v));
      if (u == v) {
        REQUIRE(prod.size() == 1);
        CHECK(prod[0].first == alg.idempotent(u));
        CHECK(prod[0].second == F(1));
      } else {
        CHECK(prod.empty());
      }
    }
  int d = alg.dimension();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        std::vector<F> left(d, F(0)), right(d, F(0));
        for (auto [b, c] : alg.product(i, j))
          for (auto [b2, c2] : alg.product(b, k)) left[b2] += c * c2;
        for (auto [b, c] : alg.product(j, k))
          for (auto [b2, c2] : alg.product(i, b)) right[b2] += c * c2;
        CHECK(left == right);
      }
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("basis of A2") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  CHECK(alg.dimension() == 3);
  check_structure(alg);
}

TEST_CASE("truncated polynomial ring") {
  auto alg = build_algebra(fixtures::truncated_loop<F2>(2));
  CHECK(alg.dimension() == 2);
  check_structure(alg);
  CHECK(build_algebra(fixtures::truncated_loop<F3>(4)).dimension() == 4);
}

TEST_CASE("point algebra") {
  auto alg = build_algebra(fixtures::point<F2>());
  CHECK(alg.dimension() == 1);
  check_structure(alg);
}

TEST_CASE("relations reduce the basis") {
  auto zero_rel = build_algebra(fixtures::a3_zero_relation<F2>());
  CHECK(zero_rel.dimension() == 5);
  check_structure(zero_rel);
  auto square = build_algebra(fixtures::commutative_square<F3>());
  CHECK(square.dimension() == 4 + 4 + 1);
  check_structure(square);
  auto a4 = build_algebra(fixtures::linear_a<Rational>(4));
  CHECK(a4.dimension() == 10);
  check_structure(a4);
}

TEST_CASE("admissibility and bound errors") {
  auto s = fixtures::linear_a<F2>(2);
  s.relations.push_back({PathTerm<F2>{F2(1), {0}}});
  CHECK_THROWS_AS(build_algebra(s), InputError);

  auto t = fixtures::linear_a<F2>(3);
  t.relations.push_back({PathTerm<F2>{F2(1), {1, 0}}});
  CHECK_THROWS_AS(build_algebra(t), InputError);

  auto sq = fixtures::commutative_square<F2>();
  sq.relations.push_back({PathTerm<F2>{F2(1), {0, 1}}, PathTerm<F2>{F2(1), {0}}});
  CHECK_THROWS_AS(build_algebra(sq), InputError);

  auto loop = fixtures::truncated_loop<F2>(3);
  loop.nilpotency_bound = 2;
  CHECK_THROWS_WITH_AS(build_algebra(loop), doctest::Contains("nilpotency_bound"), InputError);

  QuiverSpec<F2> free_loop;
  free_loop.quiver.vertices = {"1"};
  free_loop.quiver.arrows = {{"x", 0, 0}};
  free_loop.nilpotency_bound = 4;
  CHECK_THROWS_AS(build_algebra(free_loop), InputError);
}

TEST_CASE("standard modules of A2") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s1 = simple(alg, 0);
  CHECK(s1.dims == std::vector<int>{1, 0});
  CHECK(s1.action[0].rows() == 0);
  auto p1 = projective(alg, 0);
  CHECK(p1.dims == std::vector<int>{1, 1});
  CHECK(p1.action[0](0, 0) == F2(1));
  auto i2 = injective(alg, 1);
  CHECK(i2.dims == std::vector<int>{1, 1});
  CHECK(i2.action[0](0, 0) == F2(1));
  CHECK_THROWS_AS(projective(alg, 5), InputError);
}

TEST_CASE("radical socle top") {
  auto alg = build_algebra(fixtures::linear_a<F2>(2));
  auto s1 = module_radical_socle_top(alg, simple(alg, 0));
  CHECK(s1.radical.dimension() == 0);
  CHECK(s1.socle.dimension() == 1);
  CHECK(s1.top.module.dimension() == 1);

  auto p1 = module_radical_socle_top(alg, projective(alg, 0));
  CHECK(p1.radical.dims() == std::vector<int>{0, 1});
  CHECK(p1.socle.dims() == std::vector<int>{0, 1});
  CHECK(p1.top.module.dims == std::vector<int>{1, 0});

  auto kx = build_algebra(fixtures::truncated_loop<F2>(2));
  auto a = module_radical_socle_top(kx, projective(kx, 0));
  CHECK(a.radical.dimension() == 1);
  CHECK(same_submodule(a.radical, a.socle));
  CHECK(a.top.module.dimension() == 1);
}

TEST_CASE("module validation") {
  auto alg = build_algebra(fixtures::truncated_loop<F2>(2));
  auto bad = fixtures::module_from<F2>(alg.quiver(), {2}, {{{1, 1}, {0, 1}}});
  CHECK_THROWS_AS(validate_module(alg, bad), InputError);
  auto good = fixtures::module_from<F2>(alg.quiver(), {2}, {{{0, 0}, {1, 0}}});
  CHECK_NOTHROW(validate_module(alg, good));
  auto shape = good;
  shape.action[0] = zeros<F2>(1, 2);
  CHECK_THROWS_AS(validate_module(alg, shape), InputError);
}

}
