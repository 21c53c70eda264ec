#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toric/polyhedral.hpp"

using namespace toric;

namespace {

RationalCone cone(std::size_t rank, std::vector<IntVector> gens) {
  return RationalCone::generated_by(rank, std::move(gens));
}

IntVector random_vector(std::mt19937& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntVector v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    if (i == j) j = (j + 1) % n;
    u.add_row_multiple(i, j, static_cast<int>(rng() % 5) - 2);
  }
  return u;
}

}  // namespace

TEST_CASE("dual cone examples") {
  CHECK(dual_cone(cone(2, {{1, 0}, {0, 1}})) == cone(2, {{1, 0}, {0, 1}}));
  const RationalCone d = dual_cone(cone(2, {{1, 0}, {1, 2}}));
  CHECK(d.generators() == std::vector<IntVector>{{0, 1}, {2, -1}});
  const RationalCone all = dual_cone(RationalCone::zero(2));
  CHECK(all.generators() == std::vector<IntVector>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
  CHECK_FALSE(cone_props(all).strongly_convex);
}

TEST_CASE("canonical form removes redundancy and scales to primitive") {
  const RationalCone c = cone(2, {{2, 0}, {1, 1}, {0, 3}});
  CHECK(c.generators() == std::vector<IntVector>{{0, 1}, {1, 0}});
  CHECK(c.contains(IntVector{3, 4}));
  CHECK_FALSE(c.contains(IntVector{-1, 4}));
  // A half-plane: one lineality direction plus one ray.
  const RationalCone h = cone(2, {{1, 0}, {-1, 0}, {1, 1}});
  CHECK(h.generators() == std::vector<IntVector>{{-1, 0}, {0, 1}, {1, 0}});
}

TEST_CASE("faces") {
  CHECK(faces(cone(2, {{1, 0}, {0, 1}})).size() == 4);
  CHECK(faces(cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).size() == 8);
  const RationalCone square = cone(3, {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}});
  const auto fs = faces(square);
  CHECK(fs.size() == 10);
  CHECK(fs.front().is_zero());
  CHECK(fs.back() == square);
  CHECK_THROWS(faces(dual_cone(RationalCone::zero(2))));
}

TEST_CASE("intersections") {
  const RationalCone orthant = cone(2, {{1, 0}, {0, 1}});
  CHECK(intersect(orthant, orthant) == orthant);
  const RationalCone i = intersect(cone(2, {{1, 0}, {1, 1}}), cone(2, {{1, 1}, {0, 1}}));
  CHECK(i == cone(2, {{1, 1}}));
  // membership sampling cross-check
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const IntVector p{a, b};
      CHECK(i.contains(p) == (cone(2, {{1, 0}, {1, 1}}).contains(p) && cone(2, {{1, 1}, {0, 1}}).contains(p)));
    }
  CHECK(intersect(cone(2, {{1, 0}}), cone(2, {{-1, 0}})).is_zero());
}

TEST_CASE("cone properties") {
  auto p = cone_props(cone(2, {{1, 0}, {0, 1}}));
  CHECK(p.dim == 2);
  CHECK(p.smooth);
  CHECK(*p.multiplicity == 1);
  p = cone_props(cone(2, {{1, 0}, {-1, -2}}));
  CHECK(p.dim == 2);
  CHECK(p.simplicial);
  CHECK_FALSE(p.smooth);
  CHECK(*p.multiplicity == 2);
  p = cone_props(cone(3, {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}}));
  CHECK(p.dim == 3);
  CHECK_FALSE(p.simplicial);
  CHECK_FALSE(p.multiplicity.has_value());
  p = cone_props(RationalCone::zero(3));
  CHECK(p.dim == 0);
  CHECK(p.smooth);
}

TEST_CASE("dual cone is an involution on full-dimensional pointed cones") {
  const unsigned seed = 99;
  std::mt19937 rng(seed);
  int tested = 0;
  while (tested < 40) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n + rng() % 3; ++i) gens.push_back(random_vector(rng, n, 3));
    const RationalCone c = cone(n, gens);
    const ConeProps p = cone_props(c);
    if (!p.strongly_convex || p.dim != n) continue;
    ++tested;
    CHECK(dual_cone(dual_cone(c)) == c);
    for (const auto& f : faces(c))
      for (const auto& g : faces(f)) CHECK(is_face(g, c));
  }
}

TEST_CASE("multiplicity is invariant under unimodular changes of basis") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(random_vector(rng, n, 3));
    const RationalCone c = cone(n, gens);
    const ConeProps p = cone_props(c);
    if (!p.simplicial || p.dim != n) continue;
    const IntMatrix u = random_unimodular(rng, n);
    std::vector<IntVector> moved;
    for (const auto& g : c.generators()) moved.push_back(u * g);
    const ConeProps q = cone_props(cone(n, moved));
    CHECK(*q.multiplicity == *p.multiplicity);
    CHECK(*p.multiplicity == abs(oracle::det(IntMatrix::from_rows(c.generators(), n))));
  }
}

TEST_CASE("dual semigroup generators") {
  CHECK(dual_semigroup_generators(cone(2, {{1, 0}, {0, 1}})) == std::vector<IntVector>{{0, 1}, {1, 0}});
  const auto gens = dual_semigroup_generators(cone(2, {{1, 0}, {-1, -2}}));
  CHECK(gens == std::vector<IntVector>{{0, -1}, {1, -1}, {2, -1}});
  // Brute force: irreducible lattice points of the dual within a box.
  const RationalCone d = dual_cone(cone(2, {{1, 0}, {-1, -2}}));
  std::vector<IntVector> pts, irreducible;
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b)
      if ((a || b) && d.contains(IntVector{a, b})) pts.push_back(IntVector{a, b});
  for (const auto& x : pts) {
    bool red = false;
    for (const auto& y : pts) {
      const IntVector z = subtract(x, y);
      if (!is_zero(z) && std::find(pts.begin(), pts.end(), z) != pts.end()) red = true;
    }
    if (!red) irreducible.push_back(x);
  }
  std::sort(irreducible.begin(), irreducible.end());
  CHECK(irreducible == gens);
  CHECK(dual_semigroup_generators(RationalCone::zero(2)).size() == 4);
  // A ray in the plane: its dual is a half-plane.
  const auto half = dual_semigroup_generators(cone(2, {{1, 1}}));
  CHECK(half.size() == 3);
  for (const auto& g : half) CHECK(dot(g, IntVector{1, 1}) >= 0);
}

TEST_CASE("lp feasibility examples") {
  LinearSystem s;
  s.add_variable("x");
  s.add(IntVector{1}, -1, Relation::GreaterEqual);
  s.add(IntVector{-1}, 0, Relation::GreaterEqual);
  CHECK_FALSE(lp_feasible(s).has_value());

  LinearSystem t;
  t.add_variable("x");
  t.add_variable("y");
  t.add(IntVector{1, 1}, 0, Relation::Equal);
  t.add(IntVector{1, 0}, -1, Relation::GreaterEqual);
  const auto w = lp_feasible(t);
  REQUIRE(w.has_value());
  CHECK(t.satisfied_by(*w));

  const LpOutcome best = lp_minimize(t, IntVector{1, 0});
  CHECK(best.status == LpOutcome::Status::Optimal);
  CHECK(best.point == RatVector{1, -1});
  CHECK(lp_minimize(t, IntVector{-1, 0}).status == LpOutcome::Status::Unbounded);
}

TEST_CASE("lp feasibility agrees with Fourier-Motzkin") {
  const unsigned seed = 424242;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t vars = 1 + rng() % 3;
    LinearSystem s;
    for (std::size_t v = 0; v < vars; ++v) s.add_variable("x" + std::to_string(v));
    std::vector<std::pair<RatVector, Rational>> fm;
    const std::size_t rows = 1 + rng() % 5;
    for (std::size_t r = 0; r < rows; ++r) {
      IntVector a(vars);
      for (auto& x : a) x = coef(rng);
      const Integer c = coef(rng);
      const int kind = static_cast<int>(rng() % 4);
      const Relation rel = kind == 0 ? Relation::Equal : kind == 1 ? Relation::LessEqual : Relation::GreaterEqual;
      s.add(a, c, rel);
      RatVector ra(a.begin(), a.end());
      RatVector na;
      for (const auto& x : a) na.push_back(-x);
      if (rel != Relation::LessEqual) fm.emplace_back(ra, Rational(-c));
      if (rel != Relation::GreaterEqual) fm.emplace_back(na, Rational(c));
    }
    const auto w = lp_feasible(s);
    CHECK(w.has_value() == oracle::fm_feasible(fm, vars));
    if (w) CHECK(s.satisfied_by(*w));
  }
}

TEST_CASE("integer feasibility") {
  LinearSystem s;
  s.add_variable("x");
  s.add(IntVector{2}, -1, Relation::Equal);
  CHECK_FALSE(integer_feasible(s, 10).has_value());
  LinearSystem t;
  t.add_variable("x");
  t.add_variable("y");
  t.add(IntVector{2, 3}, -7, Relation::Equal);
  t.add(IntVector{1, 0}, 0, Relation::GreaterEqual);
  const auto p = integer_feasible(t, 10);
  REQUIRE(p.has_value());
  CHECK(2 * (*p)[0] + 3 * (*p)[1] == 7);
}
