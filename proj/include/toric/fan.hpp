// Fans stored by their maximal cones, validation, global properties, the
// orbit poset and the invariant affine charts.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/polyhedral.hpp"

namespace toric {

using RaySet = std::vector<std::size_t>;  // sorted ray indices

struct Fan {
  std::size_t rank = 0;
  std::vector<IntVector> rays;
  std::vector<RaySet> max_cones;

  RationalCone cone_of(const RaySet& ray_set) const;
  /// One row per ray: the map M -> Z^rays, u -> (u(v_rho)).
  IntMatrix ray_matrix() const;
  /// Index of the ray equal to v, if any.
  std::optional<std::size_t> ray_index(const IntVector& v) const;

  friend bool operator==(const Fan& a, const Fan& b) = default;
};

struct FanViolation {
  enum class Kind {
    BadRank,
    BadRay,
    NonPrimitiveRay,
    DuplicateRay,
    BadIndex,
    EmptyCone,
    UnusedRay,
    NestedCones,
    NotStronglyConvex,
    RayNotExtreme,
    BadIntersection,
  };
  Kind kind;
  std::size_t first = 0;   // offending cone (or ray) index
  std::size_t second = 0;  // second cone of a bad pair
  std::string message;
};

/// nullopt when the fan is valid; otherwise the first violation found.
std::optional<FanViolation> validate_fan(const Fan& f);

struct GlobalProps {
  bool smooth = false;
  bool simplicial = false;
  bool complete = false;
};

GlobalProps global_props(const Fan& f);

struct OrbitCone {
  RaySet rays;
  std::size_t dim = 0;
};

/// All cones of the fan ordered by (dimension, ray set). The orbit of cone i
/// lies in the closure of the orbit of cone j iff cone j is a face of cone i.
struct OrbitPoset {
  std::vector<OrbitCone> cones;
  /// covers[i]: cones having cone i as a facet.
  std::vector<std::vector<std::size_t>> covers;

  std::size_t size() const { return cones.size(); }
  std::optional<std::size_t> index_of(const RaySet& rays) const;
  bool is_face(std::size_t face, std::size_t cone) const;
  /// Indices of the cones containing cone i (the orbit closure of cone i).
  std::vector<std::size_t> closure(std::size_t i) const;
};

OrbitPoset orbit_poset(const Fan& f);

/// Walls (codimension-one cones) with the maximal cones containing them.
std::vector<std::pair<RaySet, std::vector<std::size_t>>> walls(const Fan& f);

struct Chart {
  RaySet rays;
  std::vector<IntVector> generators;  // of the semigroup sigma^dual ∩ M
};

std::vector<Chart> invariant_charts(const Fan& f);

std::string describe(const RaySet& s);

}  // namespace toric
