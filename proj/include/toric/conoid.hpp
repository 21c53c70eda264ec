// Groups of line bundles, their section semigroups and the conoid
// presentations built from them, including the Cox presentation.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/divisor.hpp"

namespace toric {

enum class MergePolicy { MinimalRank, PerCone };

/// The canonical section of one certificate divisor, seen inside the
/// section algebra: multiplier * D_sigma = a(lambda) + div(chi^section).
struct CoverSection {
  std::size_t certificate = 0;
  IntVector section;  // in M
  IntVector lambda;   // in Z^r
  Integer multiplier = 1;
};

struct AmpleGroup {
  std::vector<DivisorialCertificate> certificates;
  std::vector<CartierData> basis;
  std::vector<IntVector> basis_degrees;  // class group coordinates
  std::vector<CoverSection> sections;
  ClassGroup class_group;
  MergePolicy policy = MergePolicy::MinimalRank;

  std::size_t rank() const { return basis.size(); }
  /// Coefficients of sum lambda_i L_i.
  IntVector divisor(const IntVector& lambda) const;
};

AmpleGroup build_ample_group(const Fan& f, const std::vector<DivisorialCertificate>& certs,
                             MergePolicy policy = MergePolicy::MinimalRank);
std::optional<std::string> verify_ample_group(const Fan& f, const AmpleGroup& g);

/// Elements (u, lambda) of M x Z^r with u(v_rho) + a(lambda)_rho >= 0.
struct SectionSemigroup {
  std::size_t lattice_rank = 0;
  std::size_t lambda_rank = 0;
  RationalCone cone;
  std::vector<IntVector> generators;
  bool complete = false;
  std::size_t bound = 0;

  bool contains(const IntVector& element) const { return cone.contains(element); }
};

/// Hilbert basis of the section cone. Generators with |lambda| above the
/// bound are withheld and clear the completeness flag.
SectionSemigroup section_semigroup(const Fan& f, const AmpleGroup& g, std::size_t bound);

/// x^plus - x^minus in the generator coordinates.
struct Binomial {
  IntVector plus;
  IntVector minus;
};

/// Binomial relations among `images` with total degree <= max_degree on each
/// side; pairs with a common variable and multiples of earlier ones are skipped.
std::vector<Binomial> binomial_relations(const std::vector<IntVector>& images, std::size_t max_degree);

struct ConoidGenerator {
  IntVector exponent;  // meaning depends on the presentation kind
  IntVector degree;    // in the grading group
};

struct ConoidPresentation {
  std::string kind;  // "cox", "sections" or "invariants"
  FinAbGroup grading;
  std::vector<ConoidGenerator> generators;
  std::vector<Binomial> relations;
  /// Exponent vectors (in generator coordinates) of the sections f_i.
  std::vector<IntVector> distinguished;
  /// Orthant faces: generator sets vanishing at the distinguished point of a chart.
  std::vector<RaySet> cones;
  /// Monomials whose common zero set is removed to form the quasiaffine locus.
  std::vector<IntVector> irrelevant;
  /// Stabilizer order per cone; 0 means infinite.
  std::vector<Integer> stabilizers;
  bool free = false;
  bool characteristic_zero = false;

  std::vector<IntVector> degrees() const;
};

/// Generators of the section semigroup as coordinates graded by Z^r. The
/// cone of a maximal cone sigma lists the generators vanishing at its
/// distinguished point.
ConoidPresentation conoid_presentation(const Fan& f, const AmpleGroup& g, const SectionSemigroup& s,
                                       std::size_t relation_degree = 2);

/// Order of the stabilizer at the distinguished point of the face I:
/// |G / <deg e_j : j not in I>|, 0 when infinite.
Integer stabilizer_order(const FinAbGroup& group, const std::vector<IntVector>& degrees, const RaySet& face);

/// One coordinate per ray graded by Cl; lifted cones are the maximal cones.
ConoidPresentation cox_presentation(const Fan& f);

/// Invariants of the finite group generated by the stabilizers. Identity on
/// free input; throws std::invalid_argument on infinite stabilizers.
ConoidPresentation finite_group_quotient(const ConoidPresentation& cp);

}  // namespace toric
