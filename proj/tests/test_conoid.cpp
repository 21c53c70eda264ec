#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "toric/conoid.hpp"
#include "toric/corpus.hpp"

using namespace toric;

namespace {

AmpleGroup ample(const Fan& f, MergePolicy policy = MergePolicy::MinimalRank) {
  return build_ample_group(f, is_divisorial(f).certificates, policy);
}

}  // namespace

TEST_CASE("ample group ranks") {
  const Fan p2 = builtin_fan("p2");
  const AmpleGroup g = ample(p2);
  CHECK(g.rank() == 1);
  CHECK(g.basis_degrees[0] == IntVector{1});
  CHECK_FALSE(verify_ample_group(p2, g).has_value());

  const Fan w = builtin_fan("wp112");
  const AmpleGroup gw = ample(w);
  CHECK(gw.rank() == 1);
  CHECK(gw.basis_degrees[0] == IntVector{2});

  const Fan q = builtin_fan("p1xp1");
  const AmpleGroup gq = ample(q);
  CHECK(gq.rank() == 1);
  CHECK(gq.basis_degrees[0] == IntVector{1, 1});
  CHECK(ample(q, MergePolicy::PerCone).rank() == 1);
  const Fan h = builtin_fan("hirzebruch_1");
  CHECK(ample(h, MergePolicy::PerCone).rank() <= 2);
  CHECK_FALSE(verify_ample_group(h, ample(h, MergePolicy::PerCone)).has_value());

  AmpleGroup broken = g;
  broken.sections[0].section[0] += 1;
  CHECK(verify_ample_group(p2, broken).has_value());
}

TEST_CASE("section semigroups") {
  const Fan p1 = builtin_fan("p1");
  const AmpleGroup g1 = ample(p1);
  const SectionSemigroup s1 = section_semigroup(p1, g1, 3);
  CHECK(s1.complete);
  CHECK(s1.generators.size() == 2);
  for (const auto& x : s1.generators) CHECK(x[1] == 1);

  const Fan p2 = builtin_fan("p2");
  const SectionSemigroup s2 = section_semigroup(p2, ample(p2), 3);
  CHECK(s2.complete);
  CHECK(s2.generators.size() == 3);

  const Fan w = builtin_fan("wp112");
  const AmpleGroup gw = ample(w);
  const SectionSemigroup sw = section_semigroup(w, gw, 3);
  CHECK(sw.complete);
  REQUIRE(sw.generators.size() == 4);
  for (const auto& x : sw.generators) CHECK(x[2] == 1);
  const ConoidPresentation cp = conoid_presentation(w, gw, sw);
  CHECK(cp.relations.size() == 1);
  CHECK(cp.free);
  for (const auto& d : cp.distinguished) CHECK_FALSE(d.empty());
  // Sums of generators stay inside.
  for (const auto& a : sw.generators)
    for (const auto& b : sw.generators) CHECK(sw.contains(add(a, b)));
}

TEST_CASE("a zero bound withholds generators") {
  const Fan p2 = builtin_fan("p2");
  const SectionSemigroup s = section_semigroup(p2, ample(p2), 0);
  CHECK_FALSE(s.complete);
  CHECK(s.generators.empty());
}

TEST_CASE("binomial relations") {
  // x0 x2 = x1^2 for the points 0, 1, 2 on a line at height 1.
  const auto r = binomial_relations({{0, 1}, {1, 1}, {2, 1}}, 2);
  REQUIRE(r.size() == 1);
  CHECK(((r[0].plus == IntVector{0, 2, 0} && r[0].minus == IntVector{1, 0, 1}) ||
         (r[0].minus == IntVector{0, 2, 0} && r[0].plus == IntVector{1, 0, 1})));
  CHECK(binomial_relations({{1, 0}, {0, 1}}, 3).empty());
}

TEST_CASE("cox presentations") {
  ConoidPresentation c = cox_presentation(builtin_fan("p2"));
  CHECK(c.generators.size() == 3);
  CHECK(c.free);
  CHECK(c.irrelevant == std::vector<IntVector>{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  for (const auto& s : c.stabilizers) CHECK(s == 1);

  c = cox_presentation(builtin_fan("wp112"));
  CHECK(c.degrees() == std::vector<IntVector>{{1}, {2}, {1}});
  CHECK_FALSE(c.free);
  CHECK(c.stabilizers == std::vector<Integer>{1, 1, 2});

  c = cox_presentation(builtin_fan("p1xp1"));
  CHECK(c.degrees() == std::vector<IntVector>{{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  for (const auto& m : c.irrelevant) {
    Integer t = 0;
    for (const auto& x : m) t += x;
    CHECK(t == 2);
  }
}

TEST_CASE("stabilizers of smooth complete fans are trivial") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const Fan f = gen::random_complete_fan(rng, 3, 8, true);
    REQUIRE(global_props(f).smooth);
    CHECK(cox_presentation(f).free);
  }
}

TEST_CASE("finite group quotient") {
  const ConoidPresentation p2 = cox_presentation(builtin_fan("p2"));
  const ConoidPresentation same = finite_group_quotient(p2);
  CHECK(same.generators.size() == p2.generators.size());
  CHECK(same.characteristic_zero);

  const ConoidPresentation w = cox_presentation(builtin_fan("wp112"));
  const ConoidPresentation inv = finite_group_quotient(w);
  CHECK(inv.free);
  CHECK(inv.kind == "invariants");
  std::vector<IntVector> monomials;
  for (const auto& g : inv.generators) monomials.push_back(g.exponent);
  CHECK(monomials == std::vector<IntVector>{{0, 0, 2}, {0, 1, 0}, {1, 0, 1}, {2, 0, 0}});
  for (const auto& g : inv.generators) CHECK(g.degree == IntVector{1});
  // Same count and degrees as the sections of O(2).
  const Fan wf = builtin_fan("wp112");
  const AmpleGroup gw = ample(wf);
  CHECK(section_semigroup(wf, gw, 3).generators.size() == inv.generators.size());

  const ConoidPresentation twice = finite_group_quotient(inv);
  CHECK(twice.generators.size() == inv.generators.size());
  CHECK(twice.degrees() == inv.degrees());
}
