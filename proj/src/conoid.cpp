#include "toric/conoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace toric {

namespace {

IntVector free_part(const IntVector& g, std::size_t free_rank) { return IntVector(g.begin(), g.begin() + free_rank); }

Integer torsion_exponent(const FinAbGroup& g) { return g.torsion.empty() ? Integer(1) : g.torsion.back(); }

CartierData combine(const std::vector<std::pair<Integer, const CartierData*>>& terms, std::size_t rays,
                    std::size_t cones, std::size_t rank) {
  CartierData out{IntVector(rays, 0), std::vector<IntVector>(cones, IntVector(rank, 0))};
  for (const auto& [k, d] : terms) {
    if (k == 0) continue;
    out.coeffs = add(out.coeffs, scale(d->coeffs, k));
    for (std::size_t c = 0; c < cones; ++c) out.local[c] = add(out.local[c], scale(d->local[c], k));
  }
  return out;
}

}  // namespace

IntVector AmpleGroup::divisor(const IntVector& lambda) const {
  IntVector a(class_group.degree_map.cols(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) a = add(a, scale(basis[i].coeffs, lambda[i]));
  return a;
}

AmpleGroup build_ample_group(const Fan& f, const std::vector<DivisorialCertificate>& certs, MergePolicy policy) {
  AmpleGroup g;
  g.certificates = certs;
  g.policy = policy;
  g.class_group = class_group(f);
  const FinAbGroup& cl = g.class_group.group;
  const std::size_t fr = cl.free_rank;
  const Integer e = torsion_exponent(cl);
  const std::size_t k = certs.size();

  // e * deg(D_sigma) has no torsion part; only its free coordinates matter.
  std::vector<IntVector> scaled;
  for (const auto& c : certs) scaled.push_back(scale(free_part(g.class_group.degree(c.divisor.coeffs), fr), e));

  std::vector<IntVector> basis_free;
  if (policy == MergePolicy::MinimalRank) {
    // Hermite basis of the span, tracking the combination of certificates.
    IntMatrix aug(k, fr + k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < fr; ++j) aug(i, j) = scaled[i][j];
      aug(i, fr + i) = 1;
    }
    const IntMatrix h = hermite_rows(aug);
    for (std::size_t i = 0; i < h.rows(); ++i) {
      const IntVector row = h.row(i);
      const IntVector b = free_part(row, fr);
      if (is_zero(b)) break;
      std::vector<std::pair<Integer, const CartierData*>> terms;
      for (std::size_t s = 0; s < k; ++s) terms.emplace_back(row[fr + s] * e, &certs[s].divisor);
      g.basis.push_back(combine(terms, f.rays.size(), f.max_cones.size(), f.rank));
      basis_free.push_back(b);
    }
  } else {
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<IntVector> trial = basis_free;
      trial.push_back(scaled[s]);
      if (rank(IntMatrix::from_rows(trial, fr)) == trial.size()) {
        basis_free = trial;
        g.basis.push_back(combine({{e, &certs[s].divisor}}, f.rays.size(), f.max_cones.size(), f.rank));
      }
    }
  }
  for (const auto& b : g.basis) g.basis_degrees.push_back(g.class_group.degree(b.coeffs));

  const IntMatrix bmat = IntMatrix::from_columns(basis_free, fr);
  const IntMatrix rm = f.ray_matrix();
  for (std::size_t s = 0; s < k; ++s) {
    CoverSection cs;
    cs.certificate = s;
    const auto lam = solve_rational(bmat, scaled[s]);
    if (!lam) throw std::logic_error("certificate degree outside the ample span");
    const Integer den = common_denominator(*lam);
    for (const auto& q : *lam) cs.lambda.push_back(Integer(q * den));
    cs.multiplier = e * den;
    const auto w = solve_integral(rm, subtract(scale(certs[s].divisor.coeffs, cs.multiplier), g.divisor(cs.lambda)));
    if (!w) throw std::logic_error("certificate multiple is not linearly equivalent to its ample class");
    cs.section = *w;
    g.sections.push_back(cs);
  }
  if (auto err = verify_ample_group(f, g)) throw std::logic_error("ample group failed verification: " + *err);
  return g;
}

std::optional<std::string> verify_ample_group(const Fan& f, const AmpleGroup& g) {
  for (const auto& c : g.certificates)
    if (auto err = verify_certificate(f, c)) return "certificate for cone " + std::to_string(c.cone) + ": " + *err;
  for (const auto& b : g.basis)
    if (!check_cartier(f, b)) return "basis divisor is not Cartier";
  std::vector<IntVector> free_degrees;
  for (const auto& d : g.basis_degrees) {
    free_degrees.push_back(free_part(d, g.class_group.group.free_rank));
    for (std::size_t t = g.class_group.group.free_rank; t < d.size(); ++t)
      if (d[t] != 0) return "basis degree has torsion";
  }
  if (!free_degrees.empty() && rank(IntMatrix::from_rows(free_degrees, g.class_group.group.free_rank)) != g.rank())
    return "basis degrees are dependent";
  if (g.sections.size() != g.certificates.size()) return "one cover section per certificate expected";
  for (const auto& s : g.sections) {
    const IntVector lhs = scale(g.certificates[s.certificate].divisor.coeffs, s.multiplier);
    const IntVector rhs = add(g.divisor(s.lambda), principal_divisor(f, s.section));
    if (s.multiplier < 1 || lhs != rhs) return "cover section " + std::to_string(s.certificate) + " has the wrong divisor";
  }
  return std::nullopt;
}

SectionSemigroup section_semigroup(const Fan& f, const AmpleGroup& g, std::size_t bound) {
  SectionSemigroup s;
  s.lattice_rank = f.rank;
  s.lambda_rank = g.rank();
  s.bound = bound;
  std::vector<IntVector> ineqs;
  for (std::size_t r = 0; r < f.rays.size(); ++r) {
    IntVector row = f.rays[r];
    for (const auto& b : g.basis) row.push_back(b.coeffs[r]);
    ineqs.push_back(row);
  }
  s.cone = cone_from_inequalities(ineqs, f.rank + g.rank());
  s.complete = true;
  for (const auto& h : hilbert_basis(s.cone)) {
    bool within = true;
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (abs(h[f.rank + i]) > bound) within = false;
    if (within) s.generators.push_back(h);
    else s.complete = false;
  }
  return s;
}

std::vector<Binomial> binomial_relations(const std::vector<IntVector>& images, std::size_t max_degree) {
  const std::size_t m = images.size();
  std::map<IntVector, std::vector<IntVector>> fibres;
  if (m == 0) return {};
  IntVector e(m, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == m) {
      IntVector img(images[0].size(), 0);
      bool nonzero = false;
      for (std::size_t j = 0; j < m; ++j)
        if (e[j] != 0) {
          img = add(img, scale(images[j], e[j]));
          nonzero = true;
        }
      if (nonzero) fibres[img].push_back(e);
      return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
      e[i] = static_cast<long>(x);
      rec(i + 1, left - x);
    }
    e[i] = 0;
  };
  rec(0, max_degree);

  auto total = [](const IntVector& v) {
    Integer t = 0;
    for (const auto& x : v) t += x;
    return t;
  };
  auto leq = [](const IntVector& a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  std::vector<Binomial> candidates;
  for (const auto& [img, monos] : fibres)
    for (std::size_t a = 0; a < monos.size(); ++a)
      for (std::size_t b = a + 1; b < monos.size(); ++b) {
        bool disjoint = true;
        for (std::size_t j = 0; j < m; ++j)
          if (monos[a][j] != 0 && monos[b][j] != 0) disjoint = false;
        if (disjoint) candidates.push_back({monos[b], monos[a]});
      }
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Binomial& x, const Binomial& y) {
    const Integer dx = std::max(total(x.plus), total(x.minus));
    const Integer dy = std::max(total(y.plus), total(y.minus));
    if (dx != dy) return dx < dy;
    return std::tie(x.plus, x.minus) < std::tie(y.plus, y.minus);
  });
  std::vector<Binomial> out;
  for (const auto& c : candidates) {
    const bool redundant = std::any_of(out.begin(), out.end(), [&](const Binomial& r) {
      return (leq(r.plus, c.plus) && leq(r.minus, c.minus)) || (leq(r.plus, c.minus) && leq(r.minus, c.plus));
    });
    if (!redundant) out.push_back(c);
  }
  return out;
}

std::vector<IntVector> ConoidPresentation::degrees() const {
  std::vector<IntVector> out;
  for (const auto& g : generators) out.push_back(g.degree);
  return out;
}

Integer stabilizer_order(const FinAbGroup& group, const std::vector<IntVector>& degrees, const RaySet& face) {
  std::vector<IntVector> rest;
  for (std::size_t j = 0; j < degrees.size(); ++j)
    if (!std::binary_search(face.begin(), face.end(), j)) rest.push_back(degrees[j]);
  return quotient_order(group, rest);
}

namespace {

void finish(ConoidPresentation& cp) {
  const auto degs = cp.degrees();
  cp.stabilizers.clear();
  for (const auto& c : cp.cones) cp.stabilizers.push_back(stabilizer_order(cp.grading, degs, c));
  cp.free = std::all_of(cp.stabilizers.begin(), cp.stabilizers.end(), [](const Integer& s) { return s == 1; });
}

std::vector<IntVector> complement_monomials(const std::vector<RaySet>& cones, std::size_t n) {
  std::vector<IntVector> out;
  for (const auto& c : cones) {
    IntVector x(n, 1);
    for (auto i : c) x[i] = 0;
    out.push_back(x);
  }
  return out;
}

}  // namespace

ConoidPresentation conoid_presentation(const Fan& f, const AmpleGroup& g, const SectionSemigroup& s,
                                       std::size_t relation_degree) {
  ConoidPresentation cp;
  cp.kind = "sections";
  cp.grading = FinAbGroup{g.rank(), {}};
  for (const auto& h : s.generators)
    cp.generators.push_back({h, IntVector(h.begin() + f.rank, h.end())});
  const std::size_t m = cp.generators.size();

  for (const auto& sec : g.sections) {
    IntVector target = sec.section;
    target.insert(target.end(), sec.lambda.begin(), sec.lambda.end());
    LinearSystem sys;
    for (std::size_t j = 0; j < m; ++j) sys.add_variable("e" + std::to_string(j));
    for (std::size_t i = 0; i < target.size(); ++i) {
      IntVector row(m);
      for (std::size_t j = 0; j < m; ++j) row[j] = s.generators[j][i];
      sys.add(row, -target[i], Relation::Equal);
    }
    for (std::size_t j = 0; j < m; ++j) {
      IntVector row(m, 0);
      row[j] = 1;
      sys.add(row, 0, Relation::GreaterEqual);
    }
    const auto ex = integer_feasible(sys, 64);
    cp.distinguished.push_back(ex ? *ex : IntVector{});
  }
  cp.irrelevant = cp.distinguished;

  for (const auto& sigma : f.max_cones) {
    RaySet vanishing;
    for (std::size_t j = 0; j < m; ++j) {
      const IntVector u(s.generators[j].begin(), s.generators[j].begin() + f.rank);
      const IntVector a = g.divisor(cp.generators[j].degree);
      for (auto r : sigma)
        if (dot(u, f.rays[r]) + a[r] > 0) {
          vanishing.push_back(j);
          break;
        }
    }
    cp.cones.push_back(vanishing);
  }
  std::vector<IntVector> images;
  for (const auto& gen : cp.generators) images.push_back(gen.exponent);
  cp.relations = binomial_relations(images, relation_degree);
  finish(cp);
  return cp;
}

ConoidPresentation cox_presentation(const Fan& f) {
  const ClassGroup cl = class_group(f);
  ConoidPresentation cp;
  cp.kind = "cox";
  cp.grading = cl.group;
  for (std::size_t r = 0; r < f.rays.size(); ++r) {
    IntVector e(f.rays.size(), 0);
    e[r] = 1;
    cp.generators.push_back({e, cl.ray_degree(r)});
  }
  cp.cones = f.max_cones;
  cp.irrelevant = complement_monomials(cp.cones, f.rays.size());
  cp.distinguished = cp.irrelevant;
  finish(cp);
  return cp;
}

ConoidPresentation finite_group_quotient(const ConoidPresentation& cp) {
  ConoidPresentation out = cp;
  out.characteristic_zero = true;
  if (cp.free) return out;
  for (const auto& s : cp.stabilizers)
    if (s == 0) throw std::invalid_argument("stabilizers must be finite");

  const FinAbGroup& g = cp.grading;
  const std::size_t c = g.coordinate_count();
  const std::size_t n = cp.generators.size();
  std::vector<IntVector> relations;
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    IntVector r(c, 0);
    r[g.free_rank + t] = g.torsion[t];
    relations.push_back(r);
  }
  // Characters trivial on every stabilizer.
  IntMatrix invariant = IntMatrix::identity(c);
  for (const auto& face : cp.cones) {
    std::vector<IntVector> cols = relations;
    for (std::size_t j = 0; j < n; ++j)
      if (!std::binary_search(face.begin(), face.end(), j)) cols.push_back(cp.generators[j].degree);
    invariant = lattice_intersection(invariant, IntMatrix::from_columns(cols, c));
  }
  const Cokernel q = cokernel(invariant);
  auto member = [&](const IntVector& e) {
    IntVector d(c, 0);
    for (std::size_t j = 0; j < n; ++j)
      if (e[j] != 0) d = add(d, scale(cp.generators[j].degree, e[j]));
    return is_zero(q.project(d));
  };
  IntVector order(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n, 0);
    do ++e[j];
    while (!member(e));
    order[j] = e[j];
  }
  // Minimal nonzero members of the orthant; they lie in the box [0, order].
  std::vector<IntVector> members;
  IntVector e(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (!is_zero(e) && member(e)) members.push_back(e);
      return;
    }
    for (Integer x = 0; x <= order[i]; ++x) {
      e[i] = x;
      rec(i + 1);
    }
    e[i] = 0;
  };
  rec(0);
  auto leq = [](const IntVector& a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  std::vector<IntVector> minimal;
  for (const auto& x : members)
    if (std::none_of(members.begin(), members.end(), [&](const IntVector& y) { return y != x && leq(y, x); }))
      minimal.push_back(x);
  std::sort(minimal.begin(), minimal.end());

  // New grading: the invariant lattice modulo the torsion relations.
  std::vector<IntVector> rel_coords;
  for (const auto& r : relations) rel_coords.push_back(*solve_integral(invariant, r));
  const Cokernel grading = cokernel(IntMatrix::from_columns(rel_coords, invariant.cols()));

  out.kind = "invariants";
  out.grading = grading.group;
  out.generators.clear();
  for (const auto& x : minimal) {
    IntVector d(c, 0);
    for (std::size_t j = 0; j < n; ++j) d = add(d, scale(cp.generators[j].degree, x[j]));
    out.generators.push_back({x, grading.project(*solve_integral(invariant, d))});
  }
  out.cones.clear();
  for (const auto& face : cp.cones) {
    RaySet nf;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      for (auto j : face)
        if (minimal[k][j] != 0) {
          nf.push_back(k);
          break;
        }
    out.cones.push_back(nf);
  }
  out.irrelevant = complement_monomials(out.cones, minimal.size());
  out.distinguished = out.irrelevant;
  out.relations = binomial_relations(minimal, 2);
  finish(out);
  return out;
}

}  // namespace toric
