// Invariant divisors on a fan: class group, Cartier data, section polytopes,
// divisoriality certificates and the bounded k-divisoriality search.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

struct SpanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Principal divisor of the character u: (u(v_rho))_rho.
IntVector principal_divisor(const Fan& f, const IntVector& u);

struct ClassGroup {
  FinAbGroup group;
  IntMatrix degree_map;  // group coordinates x rays

  IntVector degree(const IntVector& coeffs) const;
  IntVector ray_degree(std::size_t ray) const;
  std::vector<IntVector> ray_degrees() const;
};

/// Z^rays / M. Throws SpanError unless the rays span N_Q.
ClassGroup class_group(const Fan& f);

/// Local functionals m_sigma, one per maximal cone, with
/// m_sigma(v_rho) = -a_rho for every ray of sigma.
struct CartierData {
  IntVector coeffs;
  std::vector<IntVector> local;
};

struct CartierOutcome {
  std::optional<CartierData> data;
  std::size_t failing_cone = 0;  // lowest maximal cone without an integral m_sigma
};

CartierOutcome cartier_data(const Fan& f, const IntVector& coeffs);
bool check_cartier(const Fan& f, const CartierData& c);

/// Basis (as columns) of the lattice of Cartier coefficient vectors.
IntMatrix cartier_lattice(const Fan& f);

struct SectionPolytope {
  IntVector coeffs;
  bool bounded = false;
  std::vector<IntVector> points;  // sorted lattice points of P_D (within the box if unbounded)
};

/// Lattice points of P_D = {u : u(v_rho) >= -a_rho}. Without `box` an
/// unbounded P_D throws UnboundedError; with it the search is confined to
/// [-box, box]^n.
SectionPolytope global_sections(const Fan& f, const IntVector& coeffs, std::optional<Integer> box = std::nullopt);
bool in_section_polytope(const Fan& f, const IntVector& coeffs, const IntVector& u);

/// D_sigma with U_sigma = X \ Supp(D_sigma).
struct DivisorialCertificate {
  std::size_t cone = 0;
  RaySet rays;
  CartierData divisor;
};

/// nullopt when the certificate checks out, otherwise the reason.
std::optional<std::string> verify_certificate(const Fan& f, const DivisorialCertificate& c);

struct DivisorialResult {
  bool divisorial = false;
  std::vector<DivisorialCertificate> certificates;
  std::size_t failing_cone = 0;
};

DivisorialResult is_divisorial(const Fan& f);
/// The certificate for one maximal cone, or nullopt when its system is infeasible.
std::optional<DivisorialCertificate> divisorial_certificate(const Fan& f, std::size_t cone);

/// Degree-zero part of the localized section semigroup compared with the
/// chart semigroup of sigma.
struct LocalizationCheck {
  bool ok = true;
  std::vector<std::pair<IntVector, Integer>> chart_generators;  // h with the least n such that h in n P_D
  std::size_t section_points_checked = 0;
  std::string failure;
};

LocalizationCheck check_localization(const Fan& f, const DivisorialCertificate& c, int max_multiple = 2);

// ---------------------------------------------------------------------------
// k-divisoriality

/// A section f = sum_{u in S} c_u chi^u of O(D) with generic coefficients.
/// X_f is affine and contains the distinguished points of `covered`.
struct SectionCertificate {
  IntVector coeffs;
  std::vector<IntVector> support;
  std::vector<std::size_t> covered;
};

struct KDivisorialOptions {
  int coefficient_bound = 3;
  std::size_t support_bound = 4;
};

struct KDivisorialResult {
  enum class Status { Yes, No, Unknown };
  Status status = Status::Unknown;
  std::size_t k = 1;
  std::string reason;
  std::vector<DivisorialCertificate> divisorial;  // k = 1
  std::vector<SectionCertificate> sections;       // bounded search
  std::size_t witness_cone = 0;                   // NO
};

KDivisorialResult k_divisorial_status(const Fan& f, std::size_t k, const KDivisorialOptions& opts = {});

/// Which distinguished points the generic section over `support` misses,
/// and whether its non-vanishing locus is affine.
struct SectionLocus {
  bool affine = false;
  std::vector<std::size_t> contains;  // maximal cones whose distinguished point lies in X_f
};

SectionLocus section_locus(const Fan& f, const CartierData& d, const std::vector<IntVector>& support);
std::optional<std::string> verify_section_certificate(const Fan& f, const SectionCertificate& c);

std::string to_string(KDivisorialResult::Status s);

}  // namespace toric
