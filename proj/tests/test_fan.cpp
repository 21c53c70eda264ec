#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toric/fan.hpp"

using namespace toric;

namespace {

Fan p2() { return Fan{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}}; }
Fan wp112() { return Fan{2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}}}; }
Fan p1xp1() { return Fan{2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}}; }
Fan orthant() { return Fan{2, {{1, 0}, {0, 1}}, {{0, 1}}}; }

}  // namespace

TEST_CASE("validation accepts genuine fans") {
  CHECK_FALSE(validate_fan(p2()).has_value());
  CHECK_FALSE(validate_fan(wp112()).has_value());
  CHECK_FALSE(validate_fan(p1xp1()).has_value());
  CHECK_FALSE(validate_fan(orthant()).has_value());
  CHECK_FALSE(validate_fan(Fan{1, {{1}}, {{0}}}).has_value());
  CHECK_FALSE(validate_fan(Fan{2, {}, {{}}}).has_value());
}

TEST_CASE("validation reports overlapping cones") {
  const Fan bad{2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {{0, 1}, {2, 3}}};
  const auto v = validate_fan(bad);
  REQUIRE(v.has_value());
  CHECK(v->kind == FanViolation::Kind::BadIntersection);
  CHECK(v->first == 0);
  CHECK(v->second == 1);
}

TEST_CASE("validation reports malformed input") {
  using K = FanViolation::Kind;
  CHECK(validate_fan(Fan{0, {}, {{}}})->kind == K::BadRank);
  CHECK(validate_fan(Fan{2, {{2, 0}}, {{0}}})->kind == K::NonPrimitiveRay);
  CHECK(validate_fan(Fan{2, {{1, 0}, {1, 0}}, {{0}, {1}}})->kind == K::DuplicateRay);
  CHECK(validate_fan(Fan{2, {{1, 0}}, {{0, 3}}})->kind == K::BadIndex);
  CHECK(validate_fan(Fan{2, {{1, 0}, {0, 1}}, {{0}}})->kind == K::UnusedRay);
  CHECK(validate_fan(Fan{2, {{1, 0}, {0, 1}}, {{0}, {0, 1}}})->kind == K::NestedCones);
  CHECK(validate_fan(Fan{1, {{1}, {-1}}, {{0, 1}}})->kind == K::NotStronglyConvex);
  CHECK(validate_fan(Fan{2, {{1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}}})->kind == K::RayNotExtreme);
}

TEST_CASE("global properties") {
  GlobalProps g = global_props(p2());
  CHECK(g.smooth);
  CHECK(g.simplicial);
  CHECK(g.complete);
  g = global_props(wp112());
  CHECK_FALSE(g.smooth);
  CHECK(g.simplicial);
  CHECK(g.complete);
  g = global_props(orthant());
  CHECK(g.smooth);
  CHECK(g.simplicial);
  CHECK_FALSE(g.complete);
  // Two half-planes' worth of cones that do not close up.
  CHECK_FALSE(global_props(Fan{2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}}}).complete);
  CHECK(global_props(Fan{1, {{1}, {-1}}, {{0}, {1}}}).complete);
}

TEST_CASE("wall incidence") {
  for (const auto& [wall, owners] : walls(p2())) CHECK(owners.size() == 2);
  CHECK(walls(p2()).size() == 3);
  const auto w = walls(orthant());
  CHECK(w.size() == 2);
  for (const auto& [wall, owners] : w) CHECK(owners.size() == 1);
}

TEST_CASE("orbit poset sizes") {
  CHECK(orbit_poset(p2()).size() == 7);
  CHECK(orbit_poset(Fan{1, {{1}}, {{0}}}).size() == 2);
  CHECK(orbit_poset(p1xp1()).size() == 9);
}

TEST_CASE("orbit poset structure") {
  const OrbitPoset p = orbit_poset(p2());
  CHECK(p.cones.front().rays.empty());
  CHECK(p.cones.front().dim == 0);
  // The zero cone is covered by the three rays; its closure is everything.
  CHECK(p.covers[0].size() == 3);
  CHECK(p.closure(0).size() == 7);
  const std::size_t ray = *p.index_of({0});
  const auto up = p.closure(ray);
  CHECK(up.size() == 3);
  for (auto j : up)
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p.is_face(j, k)) CHECK(std::find(up.begin(), up.end(), k) != up.end());
}

TEST_CASE("invariant charts") {
  const auto charts = invariant_charts(wp112());
  CHECK(charts.size() == 7);
  CHECK(charts.front().generators.size() == 4);
  for (const auto& c : charts) {
    if (c.rays == RaySet{0, 1}) CHECK(c.generators == std::vector<IntVector>{{0, 1}, {1, 0}});
    if (c.rays == RaySet{0, 2}) CHECK(c.generators == std::vector<IntVector>{{0, -1}, {1, -1}, {2, -1}});
  }
}
