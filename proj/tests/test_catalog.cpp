#include <doctest.h>

#include <memory>

#include "cosilt/catalog.hpp"
#include "fixtures.hpp"

using namespace cosilt;
using F2 = Fp<2>;
using F3 = Fp<3>;

namespace {

template <class F>
std::shared_ptr<const Algebra<F>> share(QuiverSpec<F> s) {
  return std::make_shared<const Algebra<F>>(build_algebra(std::move(s)));
}

template <class F>
QuiverSpec<F> quiver_only(std::vector<std::string> vertices, std::vector<Arrow> arrows, int bound) {
  QuiverSpec<F> s;
  s.quiver.vertices = std::move(vertices);
  s.quiver.arrows = std::move(arrows);
  s.nilpotency_bound = bound;
  return s;
}

template <class F>
int index_of(const Catalog<F>& cat, const std::string& name) {
  for (int i = 0; i < cat.size(); ++i)
    if (cat.names[i] == name) return i;
  FAIL("no member named " << name);
  return -1;
}

/// Some bijection between the members of two catalogs given by iso_test.
template <class F>
bool iso_bijection(const Catalog<F>& a, const Catalog<F>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (int i = 0; i < a.size(); ++i) {
    bool hit = false;
    for (int j = 0; j < b.size() && !hit; ++j)
      if (!used[j] && iso_test(a.alg(), a.members[i], b.members[j])) used[j] = hit = true;
    if (!hit) return false;
  }
  return true;
}

template <class F>
void check_catalog_invariants(const Catalog<F>& cat) {
  const auto& alg = cat.alg();
  for (int i = 0; i < cat.size(); ++i) {
    CHECK(is_indecomposable(alg, cat.members[i]));
    for (int j = i + 1; j < cat.size(); ++j) CHECK_FALSE(iso_test(alg, cat.members[i], cat.members[j]));
    for (int v = 0; v < alg.num_vertices(); ++v) {
      CHECK(hom_dim(alg, projective(alg, v), cat.members[i]) == cat.members[i].dims[v]);
      CHECK(hom_dim(alg, cat.members[i], injective(alg, v)) == cat.members[i].dims[v]);
    }
    if (cat.tau_minus[i] >= 0) CHECK(cat.tau[cat.tau_minus[i]] == i);
    if (cat.tau[i] >= 0) CHECK(cat.tau_minus[cat.tau[i]] == i);
    // Brick, or an explicit nonzero nilpotent endomorphism.
    auto e = end_algebra(alg, cat.members[i]);
    if (cat.brick[i]) {
      CHECK(e.dimension() == 1);
    } else {
      REQUIRE_FALSE(e.radical.empty());
      CHECK_FALSE(is_zero_map(e.radical[0]));
      CHECK_FALSE(is_iso(e.radical[0]));
    }
  }
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("A2 hereditary catalog and tables") {
  auto cat = build_hereditary(share(fixtures::linear_a<F2>(2)));
  REQUIRE(cat.size() == 3);
  CHECK(cat.completeness == Completeness::builtin);
  CHECK(cat.names == std::vector<std::string>{"S2", "S1", "P1"});
  int s1 = index_of(cat, "S1"), s2 = index_of(cat, "S2"), p1 = index_of(cat, "P1");
  int nonzero = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) nonzero += cat.hom[i][j] != 0;
  CHECK(nonzero == 5);
  CHECK(cat.hom[s1][s1] == 1);
  CHECK(cat.hom[s2][s2] == 1);
  CHECK(cat.hom[p1][p1] == 1);
  CHECK(cat.hom[p1][s1] == 1);
  CHECK(cat.hom[s2][p1] == 1);
  int ext_nonzero = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ext_nonzero += cat.ext[i][j] != 0;
  CHECK(ext_nonzero == 1);
  CHECK(cat.ext[s1][s2] == 1);
  CHECK(cat.tau_minus[s2] == s1);
  CHECK(cat.tau_minus[s1] == kZero);
  CHECK(cat.tau_minus[p1] == kZero);
  CHECK(cat.tau[s1] == s2);
  CHECK(cat.projective_index == std::vector<int>{p1, s2});
  CHECK(cat.injective_index == std::vector<int>{s1, p1});
  check_catalog_invariants(cat);

  auto again = cat;
  fill_tables(again);
  CHECK(again.hom == cat.hom);
  CHECK(again.ext == cat.ext);
  CHECK(again.tau == cat.tau);
  CHECK(again.tau_minus == cat.tau_minus);
  CHECK(again.names == cat.names);
  CHECK(again.shift_hom == cat.shift_hom);
}

TEST_CASE("linear A_n has n(n+1)/2 indecomposables") {
  for (int n = 1; n <= 5; ++n) {
    auto cat = build_hereditary(share(fixtures::linear_a<F2>(n)));
    CHECK(cat.size() == n * (n + 1) / 2);
    for (int i = 0; i < cat.size(); ++i) CHECK(cat.brick[i]);
    if (n <= 4) check_catalog_invariants(cat);
  }
  auto q = build_hereditary(share(fixtures::linear_a<Rational>(3)));
  CHECK(q.size() == 6);
}

TEST_CASE("other Dynkin quivers") {
  auto sink = build_hereditary(share(fixtures::a3_sink<F3>()));
  CHECK(sink.size() == 6);
  check_catalog_invariants(sink);
  auto pt = build_hereditary(share(fixtures::point<F2>()));
  CHECK(pt.size() == 1);
  CHECK(pt.names == std::vector<std::string>{"S1"});

  // D4 with all arrows into the centre: 12 positive roots.
  auto d4 = build_hereditary(share(quiver_only<F2>({"0", "1", "2", "3"}, {{"a", 1, 0}, {"b", 2, 0}, {"c", 3, 0}}, 3)));
  CHECK(d4.size() == 12);
  CHECK(d4.family == "hereditary D4");
  check_catalog_invariants(d4);

  auto two = build_hereditary(share(quiver_only<F2>({"1", "2", "3"}, {{"a", 0, 1}}, 3)));
  CHECK(two.size() == 4);
  CHECK(two.family == "hereditary A2 A1");
}

TEST_CASE("non-Dynkin hereditary input is rejected") {
  auto kronecker = share(quiver_only<F2>({"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}}, 3));
  CHECK_THROWS_AS(build_hereditary(kronecker), RepresentationInfiniteError);
  auto triangle = share(quiver_only<F2>({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}, {"c", 0, 2}}, 4));
  CHECK_THROWS_AS(build_hereditary(triangle), RepresentationInfiniteError);
  auto d4_tilde = share(quiver_only<F2>({"0", "1", "2", "3", "4"}, {{"a", 1, 0}, {"b", 2, 0}, {"c", 3, 0}, {"d", 4, 0}}, 3));
  CHECK_THROWS_AS(build_hereditary(d4_tilde), RepresentationInfiniteError);
  CHECK_THROWS_AS(build_hereditary(share(fixtures::a3_zero_relation<F2>())), InputError);
  CHECK_FALSE(dynkin_types(quiver_only<F2>({"0", "1", "2", "3", "4", "5", "6"},
                                           {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 3}, {"d", 3, 4}, {"e", 2, 5}, {"f", 5, 6}}, 2)
                               .quiver));
  auto e6 = dynkin_types(
      quiver_only<F2>({"0", "1", "2", "3", "4", "5"}, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 3}, {"d", 3, 4}, {"e", 2, 5}}, 2).quiver);
  REQUIRE(e6);
  CHECK(*e6 == std::vector<std::string>{"E6"});
}

TEST_CASE("Nakayama catalogs") {
  auto kx2 = build_nakayama(share(fixtures::truncated_loop<F2>(2)));
  CHECK(kx2.size() == 2);
  CHECK(kx2.brick == std::vector<bool>{true, false});
  CHECK(kx2.tau_minus[0] == 0);
  CHECK(kx2.tau_minus[1] == kZero);
  check_catalog_invariants(kx2);
  auto kx3 = build_nakayama(share(fixtures::truncated_loop<F2>(3)));
  CHECK(kx3.size() == 3);
  check_catalog_invariants(kx3);
  auto zr = build_nakayama(share(fixtures::a3_zero_relation<F2>()));
  CHECK(zr.size() == 5);
  check_catalog_invariants(zr);

  auto a2 = share(fixtures::linear_a<F2>(2));
  CHECK(iso_bijection(build_nakayama(a2), build_hereditary(a2)));
  auto a4 = share(fixtures::linear_a<F2>(4));
  CHECK(iso_bijection(build_nakayama(a4), build_hereditary(a4)));

  CHECK_THROWS_AS(build_nakayama(share(fixtures::a3_sink<F2>())), InputError);
  CHECK_THROWS_AS(build_nakayama(share(fixtures::commutative_square<F2>())), InputError);
}

TEST_CASE("explicit catalogs") {
  auto alg = share(fixtures::linear_a<F2>(2));
  std::vector<Module<F2>> three{projective(*alg, 0), simple(*alg, 0), simple(*alg, 1)};
  auto cat = build_explicit(alg, three, true);
  CHECK(cat.completeness == Completeness::user_asserted);
  CHECK(iso_bijection(cat, build_hereditary(alg)));
  CHECK(cat.names == build_hereditary(alg).names);

  auto dup = build_explicit(alg, std::vector<Module<F2>>{simple(*alg, 0), injective(*alg, 0), simple(*alg, 0)}, false);
  CHECK(dup.size() == 1);
  CHECK(dup.completeness == Completeness::none);
  CHECK_FALSE(dup.complete());

  auto sum = direct_sum(alg->quiver(), std::vector<Module<F2>>{simple(*alg, 0), simple(*alg, 1)}).module;
  try {
    build_explicit(alg, std::vector<Module<F2>>{projective(*alg, 0), sum}, true);
    FAIL("decomposable entry accepted");
  } catch (const DecomposableEntryError& e) {
    CHECK(e.entry == 1);
    REQUIRE(e.summands.size() == 2);
    auto dims = e.summands;
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  }

  // Members with the same dimension vector get distinct names.
  auto sink = share(fixtures::a3_sink<F2>());
  auto full = build_hereditary(sink);
  std::set<std::string> names(full.names.begin(), full.names.end());
  CHECK(names.size() == full.names.size());
}

}
