#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "generators.hpp"
#include "toric_oracles.hpp"
#include "toric/corpus.hpp"
#include "toric/divisor.hpp"

using namespace toric;
using oracle::cartier_space_dim;
using oracle::linear_system_size;

TEST_CASE("class groups") {
  ClassGroup c = class_group(builtin_fan("p2"));
  CHECK(c.group.describe() == "Z^1");
  CHECK(c.ray_degrees() == std::vector<IntVector>{{1}, {1}, {1}});
  c = class_group(builtin_fan("wp112"));
  CHECK(c.ray_degrees() == std::vector<IntVector>{{1}, {2}, {1}});
  c = class_group(builtin_fan("p1xp1"));
  CHECK(c.group.free_rank == 2);
  CHECK(c.ray_degrees() == std::vector<IntVector>{{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  CHECK_THROWS_AS(class_group(Fan{2, {{1, 0}}, {{0}}}), SpanError);
}

TEST_CASE("principal divisors have trivial class") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Fan f = gen::random_complete_fan(rng, 3, 8, false);
    const ClassGroup c = class_group(f);
    for (std::size_t j = 0; j < f.rank; ++j) {
      IntVector u(f.rank, 0);
      u[j] = 1;
      CHECK(is_zero(c.degree(principal_divisor(f, u))));
    }
  }
}

TEST_CASE("cartier data") {
  const Fan p2 = builtin_fan("p2");
  const CartierOutcome d = cartier_data(p2, {0, 0, 1});
  REQUIRE(d.data.has_value());
  CHECK(d.data->local == std::vector<IntVector>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(check_cartier(p2, *d.data));

  const Fan w = builtin_fan("wp112");
  const CartierOutcome odd = cartier_data(w, {1, 0, 0});
  CHECK_FALSE(odd.data.has_value());
  CHECK(odd.failing_cone == 2);
  CHECK(cartier_data(w, {2, 0, 0}).data.has_value());

  std::mt19937 rng(8);
  for (const auto& name : {"p1xp1", "hirzebruch_3", "p2"}) {
    const Fan f = builtin_fan(name);
    for (int trial = 0; trial < 10; ++trial) {
      IntVector a(f.rays.size());
      for (auto& x : a) x = static_cast<int>(rng() % 9) - 4;
      CHECK(cartier_data(f, a).data.has_value());
    }
  }
}

TEST_CASE("global sections") {
  const Fan p2 = builtin_fan("p2");
  CHECK(global_sections(p2, {0, 0, 1}).points.size() == 3);
  const SectionPolytope zero = global_sections(p2, {0, 0, 0});
  CHECK(zero.points == std::vector<IntVector>{{0, 0}});

  const Fan w = builtin_fan("wp112");
  const IntVector d{0, 1, 0};
  REQUIRE(cartier_data(w, d).data.has_value());
  CHECK(class_group(w).degree(d) == IntVector{2});
  CHECK(global_sections(w, d).points.size() == 4);
  CHECK(linear_system_size(w, d, 3) == 4);
  CHECK(linear_system_size(p2, {0, 0, 2}, 3) == global_sections(p2, {0, 0, 2}).points.size());

  const Fan orthant{2, {{1, 0}, {0, 1}}, {{0, 1}}};
  CHECK_THROWS_AS(global_sections(orthant, {0, 0}), UnboundedError);
  CHECK(global_sections(orthant, {0, 0}, Integer(2)).points.size() == 9);
}

TEST_CASE("divisoriality of P2") {
  const Fan p2 = builtin_fan("p2");
  const DivisorialResult r = is_divisorial(p2);
  REQUIRE(r.divisorial);
  REQUIRE(r.certificates.size() == 3);
  CHECK(r.certificates[0].divisor.coeffs == IntVector{0, 0, 1});
  for (const auto& c : r.certificates) CHECK_FALSE(verify_certificate(p2, c).has_value());
  DivisorialCertificate broken = r.certificates[0];
  broken.divisor.coeffs[2] = 0;
  CHECK(verify_certificate(p2, broken).has_value());
}

TEST_CASE("divisoriality of the perturbed cube fails") {
  const Fan f = builtin_fan("nondivisorial3");
  CHECK_FALSE(validate_fan(f).has_value());
  CHECK(global_props(f).complete);
  CHECK_FALSE(global_props(f).simplicial);
  CHECK(cartier_space_dim(f) == f.rank);
  CHECK(cartier_lattice(f).cols() == f.rank);
  const DivisorialResult r = is_divisorial(f);
  CHECK_FALSE(r.divisorial);
  CHECK(r.failing_cone == 0);
}

TEST_CASE("random simplicial fans are divisorial") {
  const unsigned seed = 77;
  std::mt19937 rng(seed);
  for (int trial = 0; trial < 6; ++trial) {
    const Fan f = gen::random_complete_fan(rng, 3, 8, false);
    REQUIRE_FALSE(validate_fan(f).has_value());
    const DivisorialResult r = is_divisorial(f);
    CHECK(r.divisorial);
    for (const auto& c : r.certificates) CHECK_FALSE(verify_certificate(f, c).has_value());
  }
}

TEST_CASE("localization identity") {
  for (const auto& name : {"p2", "wp112"}) {
    const Fan f = builtin_fan(name);
    for (const auto& c : is_divisorial(f).certificates) {
      const LocalizationCheck l = check_localization(f, c);
      CHECK_MESSAGE(l.ok, l.failure);
      CHECK(l.section_points_checked > 0);
    }
  }
}

TEST_CASE("k-divisoriality") {
  using S = KDivisorialResult::Status;
  CHECK(k_divisorial_status(builtin_fan("wp112"), 2).reason == "simplicial");
  CHECK(k_divisorial_status(builtin_fan("wp112"), 2).status == S::Yes);
  CHECK(k_divisorial_status(builtin_fan("nondivisorial3"), 1).status == S::No);
  CHECK(k_divisorial_status(builtin_fan("nondivisorial3"), 3).status == S::No);
  const Fan p2 = builtin_fan("p2");
  const KDivisorialResult r = k_divisorial_status(p2, 3);
  REQUIRE(r.status == S::Yes);
  REQUIRE(r.sections.size() == 1);
  CHECK(class_group(p2).degree(r.sections[0].coeffs) == IntVector{1});
  CHECK_FALSE(verify_section_certificate(p2, r.sections[0]).has_value());
  for (std::size_t k = 1; k <= 4; ++k) CHECK(k_divisorial_status(builtin_fan("p1xp1"), k).status == S::Yes);
}
