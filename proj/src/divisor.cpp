#include "toric/divisor.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace toric {

IntVector principal_divisor(const Fan& f, const IntVector& u) {
  IntVector out;
  for (const auto& v : f.rays) out.push_back(dot(u, v));
  return out;
}

IntVector ClassGroup::degree(const IntVector& coeffs) const { return group.reduce(degree_map * coeffs); }

IntVector ClassGroup::ray_degree(std::size_t ray) const { return group.reduce(degree_map.column(ray)); }

std::vector<IntVector> ClassGroup::ray_degrees() const {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < degree_map.cols(); ++i) out.push_back(ray_degree(i));
  return out;
}

ClassGroup class_group(const Fan& f) {
  const IntMatrix rm = f.ray_matrix();
  if (rank(rm) != f.rank) throw SpanError("rays do not span the lattice rationally");
  Cokernel c = cokernel(rm);
  // Orient the free coordinates so that the sum of all ray degrees is nonnegative.
  for (std::size_t i = 0; i < c.group.free_rank; ++i) {
    Integer total = 0;
    for (std::size_t j = 0; j < c.projection.cols(); ++j) total += c.projection(i, j);
    if (total < 0) c.projection.negate_row(i);
  }
  return ClassGroup{c.group, c.projection};
}

namespace {

IntMatrix cone_rows(const Fan& f, const RaySet& s) {
  std::vector<IntVector> rows;
  for (auto i : s) rows.push_back(f.rays[i]);
  return IntMatrix::from_rows(rows, f.rank);
}

bool contains_ray(const RaySet& s, std::size_t r) { return std::binary_search(s.begin(), s.end(), r); }

}  // namespace

CartierOutcome cartier_data(const Fan& f, const IntVector& coeffs) {
  if (coeffs.size() != f.rays.size()) throw std::invalid_argument("coefficient count differs from ray count");
  CartierData d{coeffs, {}};
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    IntVector rhs;
    for (auto r : f.max_cones[c]) rhs.push_back(-coeffs[r]);
    const auto m = solve_integral(cone_rows(f, f.max_cones[c]), rhs);
    if (!m) return CartierOutcome{std::nullopt, c};
    d.local.push_back(*m);
  }
  return CartierOutcome{std::move(d), 0};
}

bool check_cartier(const Fan& f, const CartierData& c) {
  if (c.coeffs.size() != f.rays.size() || c.local.size() != f.max_cones.size()) return false;
  for (std::size_t t = 0; t < f.max_cones.size(); ++t) {
    if (c.local[t].size() != f.rank) return false;
    for (auto r : f.max_cones[t])
      if (dot(c.local[t], f.rays[r]) != -c.coeffs[r]) return false;
  }
  return true;
}

IntMatrix cartier_lattice(const Fan& f) {
  const std::size_t n_rays = f.rays.size();
  IntMatrix acc = IntMatrix::identity(n_rays);
  for (const auto& s : f.max_cones) {
    std::vector<IntVector> cols;
    for (std::size_t r = 0; r < n_rays; ++r)
      if (!contains_ray(s, r)) {
        IntVector e(n_rays, 0);
        e[r] = 1;
        cols.push_back(e);
      }
    for (std::size_t j = 0; j < f.rank; ++j) {
      IntVector col(n_rays, 0);
      for (auto r : s) col[r] = f.rays[r][j];
      cols.push_back(col);
    }
    acc = lattice_intersection(acc, IntMatrix::from_columns(cols, n_rays));
  }
  return acc;
}

bool in_section_polytope(const Fan& f, const IntVector& coeffs, const IntVector& u) {
  for (std::size_t r = 0; r < f.rays.size(); ++r)
    if (dot(u, f.rays[r]) < -coeffs[r]) return false;
  return true;
}

namespace {

void for_each_box_point(const IntVector& lo, const IntVector& hi, const std::function<void(const IntVector&)>& visit) {
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return;
  IntVector p = lo;
  while (true) {
    visit(p);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (p[i] < hi[i]) {
        ++p[i];
        break;
      }
      p[i] = lo[i];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace

SectionPolytope global_sections(const Fan& f, const IntVector& coeffs, std::optional<Integer> box) {
  const std::size_t n = f.rank;
  std::vector<IntVector> ineqs;
  for (std::size_t r = 0; r < f.rays.size(); ++r) {
    IntVector row = f.rays[r];
    row.push_back(coeffs[r]);
    ineqs.push_back(row);
  }
  IntVector t(n + 1, 0);
  t[n] = 1;
  ineqs.push_back(t);
  const ConeDescription d = double_description(ineqs, n + 1);

  SectionPolytope out;
  out.coeffs = coeffs;
  out.bounded = d.lineality.empty() &&
                std::all_of(d.rays.begin(), d.rays.end(), [n](const IntVector& r) { return r[n] > 0; });
  IntVector lo(n), hi(n);
  if (out.bounded) {
    if (d.rays.empty()) return out;
    for (std::size_t j = 0; j < n; ++j) {
      Rational mn, mx;
      for (std::size_t k = 0; k < d.rays.size(); ++k) {
        const Rational x(d.rays[k][j], d.rays[k][n]);
        if (k == 0 || x < mn) mn = x;
        if (k == 0 || x > mx) mx = x;
      }
      mpz_fdiv_q(lo[j].get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
      mpz_cdiv_q(hi[j].get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    }
  } else {
    if (!box) throw UnboundedError("section polytope is unbounded and no bound was given");
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = -*box;
      hi[j] = *box;
    }
  }
  for_each_box_point(lo, hi, [&](const IntVector& u) {
    if (in_section_polytope(f, coeffs, u)) out.points.push_back(u);
  });
  return out;
}

std::optional<std::string> verify_certificate(const Fan& f, const DivisorialCertificate& c) {
  if (c.cone >= f.max_cones.size()) return "cone index out of range";
  if (c.rays != f.max_cones[c.cone]) return "ray set does not match cone " + std::to_string(c.cone);
  if (!check_cartier(f, c.divisor)) return "local functionals do not match the coefficients";
  for (std::size_t r = 0; r < f.rays.size(); ++r) {
    const Integer& a = c.divisor.coeffs[r];
    if (contains_ray(c.rays, r) && a != 0) return "coefficient of ray " + std::to_string(r) + " should be 0";
    if (!contains_ray(c.rays, r) && a < 1) return "coefficient of ray " + std::to_string(r) + " should be positive";
  }
  return std::nullopt;
}

std::optional<DivisorialCertificate> divisorial_certificate(const Fan& f, std::size_t cone) {
  const std::size_t n_rays = f.rays.size();
  const RaySet& sigma = f.max_cones.at(cone);
  LinearSystem sys;
  for (std::size_t r = 0; r < n_rays; ++r) sys.add_variable("a" + std::to_string(r));
  for (std::size_t t = 0; t < f.max_cones.size(); ++t)
    for (std::size_t j = 0; j < f.rank; ++j) sys.add_variable("m" + std::to_string(t) + "_" + std::to_string(j));
  const std::size_t vars = sys.variables.size();
  for (std::size_t t = 0; t < f.max_cones.size(); ++t)
    for (auto r : f.max_cones[t]) {
      IntVector row(vars, 0);
      row[r] = 1;
      for (std::size_t j = 0; j < f.rank; ++j) row[n_rays + t * f.rank + j] = f.rays[r][j];
      sys.add(row, 0, Relation::Equal);
    }
  for (std::size_t r = 0; r < n_rays; ++r) {
    IntVector row(vars, 0);
    row[r] = 1;
    if (contains_ray(sigma, r)) sys.add(row, 0, Relation::Equal);
    else sys.add(row, -1, Relation::GreaterEqual);
  }
  IntVector objective(vars, 0);
  for (std::size_t r = 0; r < n_rays; ++r) objective[r] = 1;
  const LpOutcome lp = lp_minimize(sys, objective);
  if (lp.status != LpOutcome::Status::Optimal) return std::nullopt;

  // Scaling by a positive integer keeps the equalities and can only raise
  // the a_rho >= 1 rows, so the integral point is still a solution.
  const Integer den = common_denominator(lp.point);
  IntVector x;
  for (const auto& q : lp.point) x.push_back(Integer(q * den));
  x = primitive(x);

  DivisorialCertificate c;
  c.cone = cone;
  c.rays = sigma;
  c.divisor.coeffs.assign(x.begin(), x.begin() + n_rays);
  for (std::size_t t = 0; t < f.max_cones.size(); ++t)
    c.divisor.local.emplace_back(x.begin() + n_rays + t * f.rank, x.begin() + n_rays + (t + 1) * f.rank);
  if (auto err = verify_certificate(f, c)) throw std::logic_error("divisoriality certificate failed: " + *err);
  return c;
}

DivisorialResult is_divisorial(const Fan& f) {
  DivisorialResult out;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    auto cert = divisorial_certificate(f, c);
    if (!cert) {
      out.divisorial = false;
      out.failing_cone = c;
      out.certificates.clear();
      return out;
    }
    out.certificates.push_back(std::move(*cert));
  }
  out.divisorial = true;
  return out;
}

LocalizationCheck check_localization(const Fan& f, const DivisorialCertificate& c, int max_multiple) {
  LocalizationCheck out;
  const RationalCone sigma = f.cone_of(c.rays);
  const RationalCone sigma_dual = dual_cone(sigma);
  const IntVector& a = c.divisor.coeffs;
  // Every chart generator becomes a section of some multiple of D_sigma.
  for (const auto& h : dual_semigroup_generators(sigma)) {
    Integer n = 0;
    for (std::size_t r = 0; r < f.rays.size(); ++r) {
      const Integer val = dot(h, f.rays[r]);
      if (val >= 0) continue;
      if (a[r] <= 0) {
        out.ok = false;
        out.failure = "generator " + to_string(h) + " is negative on ray " + std::to_string(r) + " with zero coefficient";
        return out;
      }
      Integer need;
      mpz_cdiv_q(need.get_mpz_t(), Integer(-val).get_mpz_t(), a[r].get_mpz_t());
      n = std::max(n, need);
    }
    if (!in_section_polytope(f, scale(a, n), h)) {
      out.ok = false;
      out.failure = "generator " + to_string(h) + " is not a section of " + n.get_str() + " D";
      return out;
    }
    out.chart_generators.emplace_back(h, n);
  }
  // Every section of n D_sigma is regular on the chart.
  for (int n = 1; n <= max_multiple; ++n) {
    const SectionPolytope p = global_sections(f, scale(a, n), Integer(6));
    for (const auto& u : p.points) {
      ++out.section_points_checked;
      if (!sigma_dual.contains(u)) {
        out.ok = false;
        out.failure = "section " + to_string(u) + " of " + std::to_string(n) + " D is not regular on the chart";
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SectionLocus section_locus(const Fan& f, const CartierData& d, const std::vector<IntVector>& support) {
  SectionLocus out;
  if (support.empty()) return out;
  const auto& a = d.coeffs;
  for (std::size_t s = 0; s < f.max_cones.size(); ++s) {
    const bool hit = std::any_of(support.begin(), support.end(), [&](const IntVector& u) {
      return std::all_of(f.max_cones[s].begin(), f.max_cones[s].end(),
                         [&](std::size_t r) { return dot(u, f.rays[r]) == -a[r]; });
    });
    if (hit) out.contains.push_back(s);
  }
  // X_f inside a single chart U_sigma: f vanishes on every divisor off sigma.
  for (const auto& s : f.max_cones) {
    bool inside = true;
    for (std::size_t r = 0; r < f.rays.size() && inside; ++r) {
      if (contains_ray(s, r)) continue;
      for (const auto& u : support)
        if (dot(u, f.rays[r]) <= -a[r]) inside = false;
    }
    if (inside) {
      out.affine = true;
      return out;
    }
  }
  // Complete fan: the Newton polytope of f must have normal fan equal to the fan.
  if (!global_props(f).complete) return out;
  for (const auto& s : f.max_cones) {
    const RationalCone dual = dual_cone(f.cone_of(s));
    bool found = false;
    for (const auto& v : support) {
      bool minimal = true;
      for (auto r : s)
        for (const auto& u : support)
          if (dot(u, f.rays[r]) < dot(v, f.rays[r])) minimal = false;
      if (!minimal) continue;
      std::vector<IntVector> diffs;
      for (const auto& u : support) diffs.push_back(subtract(u, v));
      if (RationalCone::generated_by(f.rank, diffs) == dual) {
        found = true;
        break;
      }
    }
    if (!found) return out;
  }
  out.affine = true;
  return out;
}

std::optional<std::string> verify_section_certificate(const Fan& f, const SectionCertificate& c) {
  const CartierOutcome d = cartier_data(f, c.coeffs);
  if (!d.data) return "divisor is not Cartier on cone " + std::to_string(d.failing_cone);
  for (const auto& a : c.coeffs)
    if (a < 0) return "divisor is not effective";
  for (const auto& u : c.support)
    if (!in_section_polytope(f, c.coeffs, u)) return "support point " + to_string(u) + " is not a section";
  const SectionLocus locus = section_locus(f, *d.data, c.support);
  if (!locus.affine) return "non-vanishing locus is not certified affine";
  for (auto s : c.covered)
    if (!std::binary_search(locus.contains.begin(), locus.contains.end(), s))
      return "distinguished point of cone " + std::to_string(s) + " is not in the locus";
  return std::nullopt;
}

std::string to_string(KDivisorialResult::Status s) {
  switch (s) {
    case KDivisorialResult::Status::Yes:
      return "YES";
    case KDivisorialResult::Status::No:
      return "NO";
    case KDivisorialResult::Status::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

/// Nonnegative coefficient vectors with entries <= bound, by increasing sum.
std::vector<IntVector> effective_candidates(std::size_t n_rays, int bound) {
  std::vector<IntVector> out;
  IntVector v(n_rays, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n_rays) {
      if (left == 0) out.push_back(v);
      return;
    }
    for (int x = 0; x <= std::min(bound, left); ++x) {
      v[i] = x;
      rec(i + 1, left - x);
    }
    v[i] = 0;
  };
  for (int total = 1; total <= bound * static_cast<int>(n_rays); ++total) rec(0, total);
  return out;
}

}  // namespace

KDivisorialResult k_divisorial_status(const Fan& f, std::size_t k, const KDivisorialOptions& opts) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  KDivisorialResult out;
  out.k = k;
  DivisorialResult div = is_divisorial(f);
  if (!div.divisorial) {
    out.status = KDivisorialResult::Status::No;
    out.witness_cone = div.failing_cone;
    out.reason = "not divisorial: no certificate for cone " + std::to_string(div.failing_cone);
    return out;
  }
  if (k == 1) {
    out.status = KDivisorialResult::Status::Yes;
    out.reason = "divisorial";
    out.divisorial = std::move(div.certificates);
    return out;
  }
  if (k == 2 && global_props(f).simplicial) {
    out.status = KDivisorialResult::Status::Yes;
    out.reason = "simplicial";
    return out;
  }

  // Tuples of distinguished points of closed orbits still to be covered.
  const std::size_t cones = f.max_cones.size();
  const std::size_t width = std::min(k, cones);
  std::vector<std::vector<std::size_t>> pending;
  {
    std::vector<std::size_t> idx(width);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
      if (depth == width) {
        pending.push_back(idx);
        return;
      }
      for (std::size_t i = start; i < cones; ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  }

  for (const auto& coeffs : effective_candidates(f.rays.size(), opts.coefficient_bound)) {
    const CartierOutcome d = cartier_data(f, coeffs);
    if (!d.data) continue;
    SectionPolytope p;
    try {
      p = global_sections(f, coeffs);
    } catch (const UnboundedError&) {
      p = global_sections(f, coeffs, Integer(opts.coefficient_bound));
    }
    const auto& pts = p.points;
    std::vector<IntVector> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) {
      if (!chosen.empty()) {
        const SectionLocus locus = section_locus(f, *d.data, chosen);
        if (locus.affine) {
          const auto before = pending.size();
          std::erase_if(pending, [&](const std::vector<std::size_t>& tuple) {
            return std::includes(locus.contains.begin(), locus.contains.end(), tuple.begin(), tuple.end());
          });
          if (pending.size() != before) out.sections.push_back({coeffs, chosen, locus.contains});
          if (pending.empty()) return true;
        }
      }
      if (chosen.size() == opts.support_bound) return false;
      for (std::size_t i = start; i < pts.size(); ++i) {
        chosen.push_back(pts[i]);
        if (rec(i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (rec(0)) {
      out.status = KDivisorialResult::Status::Yes;
      out.reason = "section search";
      return out;
    }
  }
  out.status = KDivisorialResult::Status::Unknown;
  out.reason = "search bound exhausted with " + std::to_string(pending.size()) + " uncovered point tuples";
  return out;
}

}  // namespace toric
