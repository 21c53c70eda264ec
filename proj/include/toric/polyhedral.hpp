// Exact rational polyhedral cones and an exact rational linear-feasibility
// kernel. No floating point anywhere.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

/// V-representation of {x : a.x >= 0 for every inequality a}. Rays are only
/// determined modulo the lineality space.
struct ConeDescription {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

/// A rational polyhedral cone given by primitive generators in canonical
/// form: lineality directions appear as +/- pairs of a Hermite basis, the
/// pointed part by its extreme rays (projected onto the orthogonal complement
/// of the lineality space), all sorted lexicographically.
class RationalCone {
 public:
  RationalCone() = default;
  /// Canonicalizes the cone generated by `generators` (zero vectors ignored).
  static RationalCone generated_by(std::size_t ambient_rank, std::vector<IntVector> generators);
  static RationalCone zero(std::size_t ambient_rank) { return generated_by(ambient_rank, {}); }
  /// Canonical form computed from a V-representation.
  static RationalCone from_description(std::size_t ambient_rank, const ConeDescription& desc);

  std::size_t ambient_rank() const { return ambient_rank_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }
  bool contains(const IntVector& v) const;
  /// Inequalities a.x >= 0 cutting out the cone (the dual cone's generators).
  const std::vector<IntVector>& inequalities() const { return inequalities_; }
  std::string describe() const;

  friend bool operator==(const RationalCone& a, const RationalCone& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.generators_ == b.generators_;
  }
  friend bool operator<(const RationalCone& a, const RationalCone& b) {
    if (a.ambient_rank_ != b.ambient_rank_) return a.ambient_rank_ < b.ambient_rank_;
    return a.generators_ < b.generators_;
  }

 private:
  std::size_t ambient_rank_ = 0;
  std::vector<IntVector> generators_;
  std::vector<IntVector> inequalities_;
};

ConeDescription double_description(const std::vector<IntVector>& inequalities, std::size_t dim);

RationalCone dual_cone(const RationalCone& c);
/// Cone of {x : a.x >= 0} in canonical form.
RationalCone cone_from_inequalities(const std::vector<IntVector>& inequalities, std::size_t dim);

/// All faces (the cone itself and the zero cone included), ordered by
/// dimension and then generators. Requires a strongly convex cone.
std::vector<RationalCone> faces(const RationalCone& c);
bool is_face(const RationalCone& face, const RationalCone& c);

RationalCone intersect(const RationalCone& a, const RationalCone& b);

struct ConeProps {
  std::size_t dim = 0;
  bool strongly_convex = false;
  bool simplicial = false;
  bool smooth = false;
  std::optional<Integer> multiplicity;  // simplicial cones only
};

ConeProps cone_props(const RationalCone& c);

/// Lattice points of cone ∩ Z^n that are not sums of two nonzero such points.
/// Requires a pointed cone; pointed full-dimensional or not, the semigroup is
/// taken in the ambient lattice.
std::vector<IntVector> hilbert_basis(const RationalCone& c);

/// Generators of the semigroup c^∨ ∩ Z^n: a Hilbert basis of the pointed part
/// plus +/- a basis of c^⊥ ∩ Z^n.
std::vector<IntVector> dual_semigroup_generators(const RationalCone& c);

// ---------------------------------------------------------------------------
// Linear systems

enum class Relation { Equal, GreaterEqual, LessEqual };

/// coeffs . x + constant  (relation)  0
struct LinearConstraint {
  IntVector coeffs;
  Integer constant;
  Relation relation = Relation::GreaterEqual;
};

struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<LinearConstraint> constraints;

  std::size_t add_variable(std::string name);
  void add(IntVector coeffs, Integer constant, Relation relation);
  bool satisfied_by(const RatVector& x) const;
  std::string describe() const;
};

/// A rational point satisfying every constraint, or nullopt when infeasible.
std::optional<RatVector> lp_feasible(const LinearSystem& system);

struct LpOutcome {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  RatVector point;
};

/// Minimizes objective . x over the system.
LpOutcome lp_minimize(const LinearSystem& system, const IntVector& objective);

/// Integer point by branch and bound; every variable is confined to
/// [-box, box] in addition to the system.
std::optional<IntVector> integer_feasible(const LinearSystem& system, const Integer& box);

}  // namespace toric
