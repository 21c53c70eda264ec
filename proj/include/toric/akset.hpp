// Finite orbit spaces and their maximal U_k-subsets.
//
// The default family U consists of the invariant affine charts. A U_k-subset
// for this family is one in which any k orbits share an invariant chart. This
// is strictly stronger than the A_k property: P^1 is A_2 (its fixed points
// have a common non-invariant affine neighbourhood) but no invariant chart
// contains both fixed points. Separatedness questions go through
// is_separated and k_divisorial_status instead.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toric/embed.hpp"
#include "toric/fan.hpp"

namespace toric {

/// Set of points of a FiniteSpace, bit i for point i. At most 64 points.
using PointSet = std::uint64_t;

struct FiniteSpace {
  std::vector<std::string> names;
  /// closure[i]: points in the closure of point i.
  std::vector<PointSet> closure;

  std::size_t size() const { return closure.size(); }
  PointSet all() const;
  PointSet closure_of(PointSet s) const;
  bool is_open(PointSet s) const;
  /// Smallest open set containing s.
  PointSet open_hull(PointSet s) const;
  std::string describe(PointSet s) const;
};

/// Points are the orbits of the fan, closure(orbit of tau) = orbits of cones containing tau.
FiniteSpace orbit_space(const Fan& f);
/// Points are the listed faces, closure(I) = listed faces containing I.
FiniteSpace orbit_space(const QuotientPresentation& qp);

/// Invariant affine charts: the open hull of each closed point (for a fan,
/// the orbits of the faces of a maximal cone).
std::vector<PointSet> invariant_chart_family(const FiniteSpace& space);

/// Irreducible components of X^k minus the union of the U^k, each given by
/// its generic k-tuple of points. Sorted lexicographically.
std::vector<std::vector<std::size_t>> complement_components(const FiniteSpace& space,
                                                            const std::vector<PointSet>& family, std::size_t k);

/// X minus the closures of the projections p_i(A_j) that miss y.
PointSet xy_operator(const FiniteSpace& space, const std::vector<std::vector<std::size_t>>& components, PointSet y);

/// Any k points of s lie in a common member of the family.
bool is_uk_subset(const std::vector<PointSet>& family, PointSet s, std::size_t k);

struct AkAnalysis {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> components;
  /// Distinct projection points, in the order used by meet patterns.
  std::vector<std::size_t> projections;
  /// (meet pattern over `projections`, X(Y) for any Y with that pattern).
  std::vector<std::pair<PointSet, PointSet>> xy_table;
  /// Maximal open U_k-subsets, sorted by encoding.
  std::vector<PointSet> maximal;
};

AkAnalysis analyze_uk(const FiniteSpace& space, const std::vector<PointSet>& family, std::size_t k);

inline std::vector<PointSet> maximal_uk_subsets(const FiniteSpace& space, const std::vector<PointSet>& family,
                                                std::size_t k) {
  return analyze_uk(space, family, k).maximal;
}

}  // namespace toric
