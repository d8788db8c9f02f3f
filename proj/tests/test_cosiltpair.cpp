#include <doctest.h>

#include <memory>

#include "cosilt/cosiltpair.hpp"
#include "fixtures.hpp"

using namespace cosilt;
using F2 = Fp<2>;

namespace {

template <class F>
std::shared_ptr<const Algebra<F>> share(QuiverSpec<F> s) {
  return std::make_shared<const Algebra<F>>(build_algebra(std::move(s)));
}

template <class F>
int member(const Catalog<F>& cat, const std::string& name) {
  auto it = std::find(cat.names.begin(), cat.names.end(), name);
  REQUIRE(it != cat.names.end());
  return static_cast<int>(it - cat.names.begin());
}

template <class F>
Mask named(const Catalog<F>& cat, std::initializer_list<const char*> names) {
  Mask m = 0;
  for (const char* n : names) m |= bit(member(cat, n));
  return m;
}

template <class F>
struct Setup {
  Catalog<F> cat;
  SubTable table;
  TorsLattice lat;
  std::vector<std::vector<int>> inj;

  explicit Setup(Catalog<F> c)
      : cat(std::move(c)), table(sub_table(cat)), lat(torsion_lattice(cat, table)), inj(injective_hom_table(cat)) {}
  GrainContext<F> grains() const { return grain_context(cat, table, lat); }
};

template <class F>
void check_pair_bijection(const Setup<F>& s) {
  std::vector<CosiltingPair> image;
  for (const auto& p : s.lat.pairs) {
    auto cp = pair_of_torsion_pair(s.cat, p, s.inj);
    CHECK(torsion_pair_of_pair(s.cat, cp) == p);
    CHECK(std::find(image.begin(), image.end(), cp) == image.end());
    image.push_back(cp);
    auto rep = assemble_and_check(s.cat, cp);
    CHECK(rep.cosilting);
    CHECK(rep.cogen_matches);
    CHECK(rep.count_matches());
  }
  auto found = exhaustive_cosilting_pairs(s.cat, s.inj);
  CHECK(found.size() == s.lat.pairs.size());
  for (const auto& cp : found) CHECK(std::find(image.begin(), image.end(), cp) != image.end());
  for (int a = 0; a < s.lat.size(); ++a)
    for (int b = 0; b < s.lat.size(); ++b) {
      Mask ta = s.lat.pairs[a].t, tb = s.lat.pairs[b].t;
      Order expected = ta == tb ? Order::equal
                       : subset(ta, tb) ? Order::less
                       : subset(tb, ta) ? Order::greater
                                        : Order::incomparable;
      CHECK(order_compare(s.cat, image[a], image[b]) == expected);
    }
}

template <class F>
void check_brick_grain(const Setup<F>& s) {
  auto g = s.grains();
  int bricks = 0, grains_cmi = 0;
  for (int b = 0; b < s.cat.size(); ++b) {
    if (!s.cat.brick[b]) continue;
    ++bricks;
    auto rec = grain_of_brick(g, b);
    CHECK(rec.brick == b);
  }
  for (int n = 0; n < s.cat.size(); ++n) {
    auto rec = is_grain(g, n);
    CHECK(rec.is_grain == (rec.tau_orthogonal && rec.mu_rigid));
    if (!rec.is_grain || !rec.is_cmi) continue;
    ++grains_cmi;
    auto back = grain_of_brick(g, rec.brick);
    CHECK(back.member == n);
    auto rs = reject_sequence(s.cat.alg(), s.cat.members[n]);
    if (s.cat.brick[n]) {
      CHECK(rs.s_n.module.dims == s.cat.members[n].dims);
      CHECK(rs.n_tilde.module.is_zero());
    } else if (!rs.s_n.module.is_zero()) {
      CHECK(left_almost_split_certificate(s.cat, n, rs));
    }
  }
  CHECK(bricks == grains_cmi);
}

}  // namespace

TEST_SUITE("cosiltpair") {

TEST_CASE("A2 cosilting pairs") {
  Setup<F2> s(build_hereditary(share(fixtures::linear_a<F2>(2))));
  const auto& cat = s.cat;
  auto cp_of = [&](Mask t) { return pair_of_torsion_pair(cat, s.lat.pairs[*s.lat.find_t(t)], s.inj); };
  CHECK(cp_of(0) == CosiltingPair{named(cat, {"S1", "P1"}), 0});
  CHECK(cp_of(named(cat, {"S2"})) == CosiltingPair{named(cat, {"S1"}), bit(1)});
  CHECK(cp_of(all_members(3)) == CosiltingPair{0, bit(0) | bit(1)});
  CHECK(cp_of(named(cat, {"S1"})) == CosiltingPair{named(cat, {"S2", "P1"}), 0});
  CHECK(cp_of(named(cat, {"S1", "P1"})) == CosiltingPair{named(cat, {"S2"}), bit(0)});
  CHECK(pair_names(cat, cp_of(named(cat, {"S2"}))) == "({S1}, {I2})");

  CHECK(torsion_pair_of_pair(cat, {named(cat, {"S1", "P1"}), 0}) == TorsionPair{0, all_members(3)});
  CHECK(torsion_pair_of_pair(cat, {0, 3}) == TorsionPair{all_members(3), 0});
  CHECK(torsion_pair_of_pair(cat, {named(cat, {"S2", "P1"}), 0}) == TorsionPair{named(cat, {"S1"}), named(cat, {"S2", "P1"})});

  CHECK(verify_cosilting_pair(cat, {named(cat, {"S2", "P1"}), 0}, s.inj).ok);
  CHECK(verify_cosilting_pair(cat, {named(cat, {"S1"}), bit(1)}, s.inj).ok);
  auto bad = verify_cosilting_pair(cat, {named(cat, {"S2"}), 0}, s.inj);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failed == "maximal");
  CHECK(bad.witness == "can be added: P1, I1");
  auto not_rigid = verify_cosilting_pair(cat, {named(cat, {"S1", "S2"}), 0}, s.inj);
  CHECK(not_rigid.failed == "rigid");
  auto not_orth = verify_cosilting_pair(cat, {named(cat, {"P1"}), bit(0)}, s.inj);
  CHECK(not_orth.failed == "hom");

  auto r1 = assemble_and_check(cat, {named(cat, {"S2", "P1"}), 0});
  CHECK(r1.cosilting);
  CHECK(r1.z_count + r1.i_count == 2);
  auto r2 = assemble_and_check(cat, {named(cat, {"S1"}), bit(1)});
  CHECK(r2.cosilting);
  CHECK(r2.z_count == 1);
  CHECK(r2.i_count == 1);
  CHECK(assemble_and_check(cat, {named(cat, {"S1", "P1"}), 0}).cosilting);

  CosiltingPair bottom{named(cat, {"S1", "P1"}), 0}, top{0, 3};
  CHECK(order_compare(cat, bottom, top) == Order::less);
  CHECK(order_compare(cat, top, bottom) == Order::greater);
  CHECK(order_compare(cat, {named(cat, {"S1"}), bit(1)}, {named(cat, {"S2", "P1"}), 0}) == Order::incomparable);
  CHECK(order_compare(cat, top, top) == Order::equal);

  check_pair_bijection(s);
}

TEST_CASE("A2 grains and bricks") {
  Setup<F2> s(build_hereditary(share(fixtures::linear_a<F2>(2))));
  auto g = s.grains();
  for (const char* n : {"S1", "S2", "P1"}) {
    auto rec = is_grain(g, member(s.cat, n));
    CHECK(rec.is_grain);
    CHECK(rec.tau_orthogonal);
    CHECK(rec.mu_rigid);
    REQUIRE(rec.submodule_criterion);
    CHECK(*rec.submodule_criterion);
    CHECK(rec.is_cmi);
    CHECK(rec.brick == member(s.cat, n));
    CHECK(grain_of_brick(g, member(s.cat, n)).member == member(s.cat, n));
  }
  auto rs = reject_sequence(s.cat.alg(), s.cat.members[member(s.cat, "P1")]);
  CHECK(rs.phi_target.module.is_zero());
  CHECK(rs.s_n.module.dims == std::vector<int>{1, 1});
  CHECK(rs.n_tilde.module.is_zero());
  check_brick_grain(s);
}

TEST_CASE("k[x]/(x^2) grain and reject sequence") {
  Setup<F2> s(build_nakayama(share(fixtures::truncated_loop<F2>(2))));
  REQUIRE(s.cat.size() == 2);
  int sm = 0, a = 1;
  auto g = s.grains();
  auto rs_rec = is_grain(g, sm);
  CHECK_FALSE(rs_rec.is_grain);
  CHECK_FALSE(rs_rec.tau_orthogonal);
  CHECK_FALSE(*rs_rec.submodule_criterion);
  CHECK(s.cat.tau_minus[sm] == sm);
  auto ra = is_grain(g, a);
  CHECK(ra.is_grain);
  CHECK(ra.tpair == TorsionPair{0, 3});
  CHECK(ra.is_cmi);
  CHECK(ra.brick == sm);
  CHECK(grain_of_brick(g, sm).member == a);

  auto rs = reject_sequence(s.cat.alg(), s.cat.members[a]);
  CHECK(rs.end.radical.size() == 1);
  CHECK(iso_test(s.cat.alg(), rs.s_n.module, s.cat.members[sm]));
  CHECK(iso_test(s.cat.alg(), rs.n_tilde.module, s.cat.members[sm]));
  CHECK(same_submodule(image_of(rs.s_n.inclusion), soc_over_end(s.cat.alg(), s.cat.members[a])));
  CHECK(left_almost_split_certificate(s.cat, a, rs));

  check_pair_bijection(s);
  check_brick_grain(s);
}

TEST_CASE("A3 round trips") {
  Setup<F2> s(build_hereditary(share(fixtures::linear_a<F2>(3))));
  CHECK(s.lat.size() == 14);
  auto g = s.grains();
  int i2 = member(s.cat, "I2");
  CHECK(s.cat.members[i2].dims == std::vector<int>{1, 1, 0});
  CHECK(is_grain(g, i2).brick == i2);
  check_pair_bijection(s);
  check_brick_grain(s);
}

TEST_CASE("grain criteria and pair counts on further algebras") {
  for (int n = 3; n <= 4; ++n) {
    Setup<F2> s(build_nakayama(share(fixtures::truncated_loop<F2>(n))));
    check_pair_bijection(s);
    check_brick_grain(s);
  }
  Setup<F2> sink(build_hereditary(share(fixtures::a3_sink<F2>())));
  check_pair_bijection(sink);
  check_brick_grain(sink);
  Setup<F2> zr(build_nakayama(share(fixtures::a3_zero_relation<F2>())));
  check_pair_bijection(zr);
  check_brick_grain(zr);
  Setup<F2> pt(build_hereditary(share(fixtures::point<F2>())));
  CHECK(exhaustive_cosilting_pairs(pt.cat, pt.inj).size() == 2);
  check_pair_bijection(pt);
}

TEST_CASE("exhaustive search budget") {
  Setup<F2> s(build_hereditary(share(fixtures::linear_a<F2>(2))));
  CHECK_THROWS_AS(exhaustive_cosilting_pairs(s.cat, s.inj, 8), BudgetError);
}

}
