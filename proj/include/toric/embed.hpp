// Quotient presentations of toric (pre)varieties by a diagonal group acting
// on affine space, and the embedding of divisorial fans into a smooth
// ambient built from a section semigroup.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/conoid.hpp"

namespace toric {

/// Orthant faces I (cone(e_i : i in I)) of Z^n, graded by `group`, with the
/// projection Q : Z^n -> N'. Only the maximal faces are stored; the family is
/// their down-closure.
struct QuotientPresentation {
  std::size_t n = 0;
  FinAbGroup group;
  std::vector<IntVector> degrees;
  IntMatrix q;
  std::vector<RaySet> cones;

  /// All listed faces, ordered by size and then lexicographically.
  std::vector<RaySet> family() const;
};

/// nullopt when the degree sequence is exact (characters trivial on H are
/// exactly the rows of Q) and every listed face is in the free locus.
std::optional<std::string> validate_presentation(const QuotientPresentation& qp);

QuotientPresentation presentation_from_cox(const Fan& f);

/// Down-closure of a family of faces, ordered by size then lexicographically.
std::vector<RaySet> down_closure(const std::vector<RaySet>& faces);
/// Maximal members of a family.
std::vector<RaySet> maximal_faces(const std::vector<RaySet>& faces);

/// Faces I whose complementary degrees generate the group, ordered like family().
std::vector<RaySet> free_locus(const QuotientPresentation& qp);
bool is_free_face(const QuotientPresentation& qp, const RaySet& face);

struct SeparationResult {
  bool separated = true;
  std::optional<std::pair<RaySet, RaySet>> witness;
  std::string reason;
};

/// Q(a) ∩ Q(b) = Q(a ∩ b) for every pair of listed faces and every image
/// cone strongly convex. The witness is the first failing pair.
SeparationResult is_separated(const QuotientPresentation& qp);

/// The fan of image cones of a separated presentation, when every used
/// coordinate maps to a distinct nonzero vector.
std::optional<Fan> image_fan(const QuotientPresentation& qp);

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A chart-level surjectivity record: each generator h of the source chart
/// semigroup equals sum_g exponents_g u_g with zero total degree and
/// nonnegative exponents on the chart's vanishing coordinates.
struct ChartRecord {
  RaySet source_cone;  // the source chart U_tau equal to the preimage
  RaySet ambient_chart;
  std::vector<std::pair<IntVector, IntVector>> lifts;  // (h, exponents)
};

struct EmbeddingArtifact {
  Fan source;
  std::size_t k = 2;
  std::size_t bound = 0;
  std::vector<IntVector> lambda_basis;  // coefficients of L_1..L_r
  std::vector<IntVector> generators;    // (u, lambda) per ambient coordinate
  QuotientPresentation ambient;
  bool separated = false;
  bool smooth = false;
  bool maximal_among_explored = true;
  std::vector<ChartRecord> charts;
  std::vector<std::string> transcript;

  /// Ambient coordinates vanishing at the distinguished point of a source cone.
  RaySet vanishing(const RaySet& cone) const;
};

struct EmbeddingOutcome {
  enum class Status { Ok, BoundExhausted, NotDivisorial, Unknown };
  Status status = Status::Unknown;
  std::optional<EmbeddingArtifact> artifact;
  std::string reason;
};

EmbeddingOutcome build_embedding(const Fan& f, std::size_t k, std::size_t bound);

/// Builds the chart records (searching for lifts) and checks everything;
/// throws VerificationFailure naming the chart and the missing element.
std::vector<ChartRecord> verify_closed_embedding(EmbeddingArtifact& art);

/// Re-checks a finished artifact, including its recorded lifts, without
/// searching. Returns the transcript lines; throws VerificationFailure.
std::vector<std::string> check_artifact(const EmbeddingArtifact& art);

}  // namespace toric
