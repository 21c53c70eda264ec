#include "toric/embed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toric {

namespace {

bool subset_of(const RaySet& a, const RaySet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool face_order(const RaySet& a, const RaySet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

RationalCone image_cone(const QuotientPresentation& qp, const RaySet& face) {
  std::vector<IntVector> gens;
  for (auto i : face) gens.push_back(qp.q.column(i));
  return RationalCone::generated_by(qp.q.rows(), gens);
}

RaySet intersection(const RaySet& a, const RaySet& b) {
  RaySet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Exponent matrix rows: the characters of T^n trivial on H.
IntMatrix degree_kernel(const QuotientPresentation& qp) {
  const std::size_t c = qp.group.coordinate_count();
  std::vector<IntVector> cols = qp.degrees;
  for (std::size_t t = 0; t < qp.group.torsion.size(); ++t) {
    IntVector r(c, 0);
    r[qp.group.free_rank + t] = qp.group.torsion[t];
    cols.push_back(r);
  }
  const IntMatrix k = kernel_basis(IntMatrix::from_columns(cols, c));
  // Keep only the first n coordinates of each kernel vector.
  std::vector<IntVector> rows;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    const IntVector v = k.column(j);
    rows.emplace_back(v.begin(), v.begin() + qp.n);
  }
  return hermite_rows(IntMatrix::from_rows(rows, qp.n));
}

}  // namespace

std::vector<RaySet> down_closure(const std::vector<RaySet>& faces) {
  std::set<RaySet> all;
  for (const auto& f : faces) {
    const std::size_t m = f.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      RaySet s;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      all.insert(s);
    }
  }
  std::vector<RaySet> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), face_order);
  return out;
}

std::vector<RaySet> maximal_faces(const std::vector<RaySet>& faces) {
  std::vector<RaySet> out;
  for (const auto& f : faces) {
    const bool covered = std::any_of(faces.begin(), faces.end(),
                                     [&](const RaySet& g) { return g != f && subset_of(f, g); });
    if (!covered && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RaySet> QuotientPresentation::family() const { return down_closure(cones); }

bool is_free_face(const QuotientPresentation& qp, const RaySet& face) {
  std::vector<IntVector> rest;
  for (std::size_t j = 0; j < qp.n; ++j)
    if (!std::binary_search(face.begin(), face.end(), j)) rest.push_back(qp.degrees[j]);
  return generates(qp.group, rest);
}

std::vector<RaySet> free_locus(const QuotientPresentation& qp) {
  std::vector<RaySet> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << qp.n); ++mask) {
    RaySet s;
    for (std::size_t i = 0; i < qp.n; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (is_free_face(qp, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), face_order);
  return out;
}

std::optional<std::string> validate_presentation(const QuotientPresentation& qp) {
  if (qp.degrees.size() != qp.n) return "degree count differs from n";
  for (const auto& d : qp.degrees)
    if (d.size() != qp.group.coordinate_count()) return "degree has the wrong number of coordinates";
  if (qp.q.cols() != qp.n) return "Q has the wrong number of columns";
  for (const auto& c : qp.cones) {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] >= qp.n || (i > 0 && c[i] <= c[i - 1])) return "cone " + describe(c) + " has an invalid index";
  }
  if (hermite_rows(qp.q) != degree_kernel(qp)) return "rows of Q are not the characters trivial on H";
  for (const auto& c : qp.family())
    if (!is_free_face(qp, c)) return "face " + describe(c) + " is not in the free locus";
  return std::nullopt;
}

QuotientPresentation presentation_from_cox(const Fan& f) {
  const ClassGroup cl = class_group(f);
  QuotientPresentation qp;
  qp.n = f.rays.size();
  qp.group = cl.group;
  qp.degrees = cl.ray_degrees();
  qp.q = f.ray_matrix().transpose();
  qp.cones = f.max_cones;
  return qp;
}

SeparationResult is_separated(const QuotientPresentation& qp) {
  SeparationResult out;
  const auto fam = qp.family();
  std::vector<RationalCone> images;
  for (const auto& c : fam) {
    images.push_back(image_cone(qp, c));
    if (!cone_props(images.back()).strongly_convex) {
      out.separated = false;
      out.witness = std::make_pair(c, c);
      out.reason = "image of " + describe(c) + " is not strongly convex";
      return out;
    }
  }
  std::map<RaySet, std::size_t> index;
  for (std::size_t i = 0; i < fam.size(); ++i) index[fam[i]] = i;
  for (std::size_t a = 0; a < fam.size(); ++a)
    for (std::size_t b = a + 1; b < fam.size(); ++b) {
      const RaySet meet = intersection(fam[a], fam[b]);
      if (intersect(images[a], images[b]) != images[index.at(meet)]) {
        out.separated = false;
        out.witness = std::make_pair(fam[a], fam[b]);
        out.reason = "images of " + describe(fam[a]) + " and " + describe(fam[b]) + " overlap beyond the image of " +
                     describe(meet);
        return out;
      }
    }
  return out;
}

std::optional<Fan> image_fan(const QuotientPresentation& qp) {
  const auto maxes = maximal_faces(qp.family());
  std::vector<std::size_t> used;
  for (const auto& c : maxes) used.insert(used.end(), c.begin(), c.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  Fan f;
  f.rank = qp.q.rows();
  std::map<std::size_t, std::size_t> ray_of;
  for (auto i : used) {
    const IntVector v = qp.q.column(i);
    if (is_zero(v)) return std::nullopt;
    const IntVector p = primitive(v);
    if (f.ray_index(p)) return std::nullopt;
    ray_of[i] = f.rays.size();
    f.rays.push_back(p);
  }
  for (const auto& c : maxes) {
    RaySet s;
    for (auto i : c) s.push_back(ray_of.at(i));
    std::sort(s.begin(), s.end());
    f.max_cones.push_back(s);
  }
  if (validate_fan(f)) return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------

RaySet EmbeddingArtifact::vanishing(const RaySet& cone) const {
  RaySet out;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const IntVector& gen = generators[g];
    IntVector a(source.rays.size(), 0);
    for (std::size_t i = 0; i < lambda_basis.size(); ++i) a = add(a, scale(lambda_basis[i], gen[source.rank + i]));
    const IntVector u(gen.begin(), gen.begin() + source.rank);
    for (auto r : cone)
      if (dot(u, source.rays[r]) + a[r] > 0) {
        out.push_back(g);
        break;
      }
  }
  return out;
}

namespace {

/// The source cone whose chart is the preimage of the ambient chart, if any.
std::optional<RaySet> preimage_cone(const EmbeddingArtifact& art, const OrbitPoset& orbits, const RaySet& chart,
                                    bool& meets) {
  RaySet hit;
  for (std::size_t i = 0; i < orbits.size(); ++i)
    if (subset_of(art.vanishing(orbits.cones[i].rays), chart)) hit.push_back(i);
  meets = !hit.empty();
  if (!meets) return std::nullopt;
  // The preimage is open, so it is U_tau exactly when hit is the face set of its largest cone.
  const RaySet& top = orbits.cones[hit.back()].rays;
  RaySet faces_of;
  for (std::size_t i = 0; i < orbits.size(); ++i)
    if (subset_of(orbits.cones[i].rays, top)) faces_of.push_back(i);
  if (faces_of == hit) return top;
  return std::nullopt;
}

void mark_covered(const Fan& f, const RaySet& source, std::vector<bool>& covered) {
  for (std::size_t s = 0; s < f.max_cones.size(); ++s)
    if (f.max_cones[s] == source) covered[s] = true;
}

void check_lift(const EmbeddingArtifact& art, const ChartRecord& rec, const IntVector& h, const IntVector& ex) {
  const std::size_t n = art.generators.size();
  const std::string where = "chart " + describe(rec.ambient_chart) + " over cone " + describe(rec.source_cone);
  if (ex.size() != n) throw VerificationFailure(where + ": lift of " + to_string(h) + " has the wrong length");
  IntVector u(art.source.rank, 0);
  IntVector deg = art.ambient.group.zero();
  for (std::size_t g = 0; g < n; ++g) {
    if (ex[g] < 0 && std::binary_search(rec.ambient_chart.begin(), rec.ambient_chart.end(), g))
      throw VerificationFailure(where + ": lift of " + to_string(h) + " inverts a vanishing coordinate");
    const IntVector ug(art.generators[g].begin(), art.generators[g].begin() + art.source.rank);
    u = add(u, scale(ug, ex[g]));
    deg = add(deg, scale(art.ambient.degrees[g], ex[g]));
  }
  if (u != h) throw VerificationFailure(where + ": lift does not restrict to " + to_string(h));
  if (!is_zero(art.ambient.group.reduce(deg)))
    throw VerificationFailure(where + ": lift of " + to_string(h) + " is not invariant");
}

std::vector<std::string> structural_checks(const EmbeddingArtifact& art) {
  std::vector<std::string> log;
  if (auto err = validate_fan(art.source)) throw VerificationFailure("source fan: " + err->message);
  const std::size_t n = art.generators.size();
  if (art.ambient.n != n) throw VerificationFailure("ambient dimension differs from the generator count");
  for (const auto& g : art.generators)
    if (g.size() != art.source.rank + art.lambda_basis.size())
      throw VerificationFailure("generator " + to_string(g) + " has the wrong length");
  // Every generator is a section: nonnegative vanishing orders.
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t r = 0; r < art.source.rays.size(); ++r) {
      IntVector a(art.source.rays.size(), 0);
      for (std::size_t i = 0; i < art.lambda_basis.size(); ++i)
        a = add(a, scale(art.lambda_basis[i], art.generators[g][art.source.rank + i]));
      const IntVector u(art.generators[g].begin(), art.generators[g].begin() + art.source.rank);
      if (dot(u, art.source.rays[r]) + a[r] < 0)
        throw VerificationFailure("generator " + std::to_string(g) + " has a pole along ray " + std::to_string(r));
    }
  if (auto err = validate_presentation(art.ambient)) throw VerificationFailure("ambient presentation: " + *err);
  log.push_back("ambient presentation exact; all " + std::to_string(art.ambient.family().size()) +
                " listed faces are free");
  // The ambient grading must be the Lambda-grading up to isomorphism.
  {
    std::vector<IntVector> lam;
    for (const auto& g : art.generators) lam.emplace_back(g.begin() + art.source.rank, g.end());
    const IntMatrix lk = kernel_basis(IntMatrix::from_columns(lam, art.lambda_basis.size()));
    if (hermite_rows(lk.transpose()) != hermite_rows(art.ambient.q))
      throw VerificationFailure("ambient grading does not match the generator degrees");
  }
  const SeparationResult sep = is_separated(art.ambient);
  if (sep.separated != art.separated) throw VerificationFailure("recorded separatedness flag is wrong");
  log.push_back(std::string("ambient ") + (sep.separated ? "separated" : "not separated: " + sep.reason));
  if (sep.separated) {
    const auto img = image_fan(art.ambient);
    const bool smooth = img && global_props(*img).smooth;
    if (smooth != art.smooth) throw VerificationFailure("recorded smoothness flag is wrong");
    log.push_back(std::string("image fan ") + (smooth ? "smooth" : "not smooth"));
  }
  return log;
}

}  // namespace

std::vector<ChartRecord> verify_closed_embedding(EmbeddingArtifact& art) {
  std::vector<std::string> log = structural_checks(art);
  const OrbitPoset orbits = orbit_poset(art.source);
  const auto charts = maximal_faces(art.ambient.family());
  std::vector<ChartRecord> records;
  std::vector<bool> covered(art.source.max_cones.size(), false);
  const std::size_t n = art.generators.size();
  for (const auto& chart : charts) {
    bool meets = false;
    const auto s = preimage_cone(art, orbits, chart, meets);
    if (!meets) {
      log.push_back("chart " + describe(chart) + " misses the image");
      continue;
    }
    if (!s) throw VerificationFailure("chart " + describe(chart) + " pulls back to no source chart");
    ChartRecord rec{*s, chart, {}};
    for (const auto& h : dual_semigroup_generators(art.source.cone_of(*s))) {
      LinearSystem sys;
      for (std::size_t g = 0; g < n; ++g) sys.add_variable("e" + std::to_string(g));
      for (std::size_t j = 0; j < art.source.rank; ++j) {
        IntVector row(n);
        for (std::size_t g = 0; g < n; ++g) row[g] = art.generators[g][j];
        sys.add(row, -h[j], Relation::Equal);
      }
      const std::size_t c = art.ambient.group.coordinate_count();
      // Torsion-free ambient gradings only arise here; torsion would need a modulus variable.
      if (!art.ambient.group.torsion.empty()) throw VerificationFailure("ambient grading has torsion");
      for (std::size_t i = 0; i < c; ++i) {
        IntVector row(n);
        for (std::size_t g = 0; g < n; ++g) row[g] = art.ambient.degrees[g][i];
        sys.add(row, 0, Relation::Equal);
      }
      for (auto g : chart) {
        IntVector row(n, 0);
        row[g] = 1;
        sys.add(row, 0, Relation::GreaterEqual);
      }
      const auto ex = integer_feasible(sys, 64);
      if (!ex)
        throw VerificationFailure("chart " + describe(chart) + " over cone " + describe(*s) +
                                  ": no ambient monomial restricts to " + to_string(h));
      check_lift(art, rec, h, *ex);
      rec.lifts.emplace_back(h, *ex);
    }
    mark_covered(art.source, *s, covered);
    log.push_back("chart " + describe(chart) + " -> cone " + describe(*s) + ": " +
                  std::to_string(rec.lifts.size()) + " semigroup generators lifted");
    records.push_back(std::move(rec));
  }
  for (std::size_t s = 0; s < covered.size(); ++s)
    if (!covered[s])
      throw VerificationFailure("source cone " + describe(art.source.max_cones[s]) + " has no covering ambient chart");
  art.charts = records;
  art.transcript = log;
  return records;
}

std::vector<std::string> check_artifact(const EmbeddingArtifact& art) {
  std::vector<std::string> log = structural_checks(art);
  const OrbitPoset orbits = orbit_poset(art.source);
  const auto charts = maximal_faces(art.ambient.family());
  std::vector<bool> covered(art.source.max_cones.size(), false);
  for (const auto& rec : art.charts) {
    if (std::find(charts.begin(), charts.end(), rec.ambient_chart) == charts.end())
      throw VerificationFailure("recorded chart " + describe(rec.ambient_chart) + " is not an ambient chart");
    bool meets = false;
    const auto s = preimage_cone(art, orbits, rec.ambient_chart, meets);
    if (!s || *s != rec.source_cone)
      throw VerificationFailure("chart " + describe(rec.ambient_chart) + " does not pull back to the recorded cone");
    const auto hb = dual_semigroup_generators(art.source.cone_of(*s));
    std::vector<IntVector> lifted;
    for (const auto& [h, ex] : rec.lifts) {
      check_lift(art, rec, h, ex);
      lifted.push_back(h);
    }
    std::sort(lifted.begin(), lifted.end());
    if (lifted != hb)
      throw VerificationFailure("chart " + describe(rec.ambient_chart) + " does not lift every semigroup generator");
    mark_covered(art.source, *s, covered);
    log.push_back("chart " + describe(rec.ambient_chart) + " lifts re-checked");
  }
  for (const auto& chart : charts) {
    bool meets = false;
    preimage_cone(art, orbits, chart, meets);
    const bool recorded = std::any_of(art.charts.begin(), art.charts.end(),
                                      [&](const ChartRecord& r) { return r.ambient_chart == chart; });
    if (meets && !recorded) throw VerificationFailure("chart " + describe(chart) + " meets the image but has no record");
  }
  for (std::size_t s = 0; s < covered.size(); ++s)
    if (!covered[s])
      throw VerificationFailure("source cone " + describe(art.source.max_cones[s]) + " has no covering ambient chart");
  return log;
}

EmbeddingOutcome build_embedding(const Fan& f, std::size_t k, std::size_t bound) {
  using S = EmbeddingOutcome::Status;
  EmbeddingOutcome out;
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const DivisorialResult div = is_divisorial(f);
  if (!div.divisorial) {
    out.status = S::NotDivisorial;
    out.reason = "no divisoriality certificate for cone " + std::to_string(div.failing_cone);
    return out;
  }
  const bool simplicial = global_props(f).simplicial;
  if (!simplicial || k > 2) {
    const KDivisorialResult kd = k_divisorial_status(f, std::max<std::size_t>(k, 2));
    if (kd.status != KDivisorialResult::Status::Yes) {
      out.status = kd.status == KDivisorialResult::Status::No ? S::NotDivisorial : S::Unknown;
      out.reason = "k-divisoriality not established: " + kd.reason;
      return out;
    }
  }
  const AmpleGroup ag = build_ample_group(f, div.certificates);
  const SectionSemigroup ss = section_semigroup(f, ag, bound);
  if (!ss.complete) {
    out.status = S::BoundExhausted;
    out.reason = "section semigroup has generators beyond degree bound " + std::to_string(bound);
    return out;
  }

  EmbeddingArtifact art;
  art.source = f;
  art.k = k;
  art.bound = bound;
  for (const auto& b : ag.basis) art.lambda_basis.push_back(b.coeffs);
  art.generators = ss.generators;
  const std::size_t n = art.generators.size();

  // Ambient grading: Z^n modulo the invariant exponents.
  std::vector<IntVector> lam;
  for (const auto& g : art.generators) lam.emplace_back(g.begin() + f.rank, g.end());
  const IntMatrix kb = kernel_basis(IntMatrix::from_columns(lam, ag.rank()));
  Cokernel grading = cokernel(kb);
  for (std::size_t i = 0; i < grading.group.free_rank; ++i) {
    Integer total = 0;
    for (std::size_t j = 0; j < n; ++j) total += grading.projection(i, j);
    if (total < 0) grading.projection.negate_row(i);
  }
  QuotientPresentation& qp = art.ambient;
  qp.n = n;
  qp.group = grading.group;
  for (std::size_t j = 0; j < n; ++j) qp.degrees.push_back(grading.projection.column(j));
  qp.q = hermite_rows(kb.transpose());
  if (qp.q.rows() == 0) qp.q = IntMatrix(0, n);

  std::vector<RaySet> initial;
  for (const auto& s : f.max_cones) initial.push_back(art.vanishing(s));
  qp.cones = maximal_faces(initial);
  std::ostringstream head;
  head << "ambient: " << n << " coordinates graded by " << qp.group.describe() << "; " << qp.cones.size()
       << " lifted charts";
  std::vector<std::string> notes{head.str()};

  for (const auto& face : free_locus(qp)) {
    const auto fam = qp.family();
    if (std::find(fam.begin(), fam.end(), face) != fam.end()) continue;
    QuotientPresentation trial = qp;
    trial.cones.push_back(face);
    trial.cones = maximal_faces(trial.family());
    if (!is_separated(trial).separated) continue;
    if (k > 2) {
      const auto img = image_fan(trial);
      if (!img || k_divisorial_status(*img, k).status != KDivisorialResult::Status::Yes) continue;
    }
    qp = trial;
    notes.push_back("added face " + describe(face));
  }
  art.separated = is_separated(qp).separated;
  const auto img = art.separated ? image_fan(qp) : std::nullopt;
  art.smooth = img && global_props(*img).smooth;
  verify_closed_embedding(art);
  art.transcript.insert(art.transcript.begin(), notes.begin(), notes.end());
  out.status = S::Ok;
  out.artifact = std::move(art);
  return out;
}

}  // namespace toric
