#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace toric {

RationalCone Fan::cone_of(const RaySet& ray_set) const {
  std::vector<IntVector> gens;
  for (auto i : ray_set) gens.push_back(rays.at(i));
  return RationalCone::generated_by(rank, std::move(gens));
}

IntMatrix Fan::ray_matrix() const { return IntMatrix::from_rows(rays, rank); }

std::optional<std::size_t> Fan::ray_index(const IntVector& v) const {
  auto it = std::find(rays.begin(), rays.end(), v);
  if (it == rays.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rays.begin());
}

std::string describe(const RaySet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

namespace {

FanViolation violation(FanViolation::Kind kind, std::size_t a, std::size_t b, std::string msg) {
  return FanViolation{kind, a, b, std::move(msg)};
}

bool subset_of(const RaySet& a, const RaySet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

RaySet to_ray_set(const Fan& f, const RationalCone& c) {
  RaySet out;
  for (const auto& g : c.generators()) out.push_back(*f.ray_index(g));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<FanViolation> validate_fan(const Fan& f) {
  using K = FanViolation::Kind;
  if (f.rank == 0) return violation(K::BadRank, 0, 0, "lattice rank must be positive");
  std::set<IntVector> seen;
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    const auto& r = f.rays[i];
    if (r.size() != f.rank || is_zero(r))
      return violation(K::BadRay, i, 0, "ray " + std::to_string(i) + " is zero or has the wrong length");
    if (content(r) != 1)
      return violation(K::NonPrimitiveRay, i, 0, "ray " + std::to_string(i) + " " + to_string(r) + " is not primitive");
    if (!seen.insert(r).second)
      return violation(K::DuplicateRay, i, 0, "ray " + std::to_string(i) + " is listed twice");
  }
  if (f.max_cones.empty()) return violation(K::EmptyCone, 0, 0, "fan has no cones");
  std::vector<bool> used(f.rays.size(), false);
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& s = f.max_cones[c];
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] >= f.rays.size() || (k > 0 && s[k] <= s[k - 1]))
        return violation(K::BadIndex, c, 0, "cone " + std::to_string(c) + " has an invalid or unsorted ray index");
      used[s[k]] = true;
    }
    if (s.empty() && f.max_cones.size() > 1)
      return violation(K::EmptyCone, c, 0, "the zero cone is listed next to other maximal cones");
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) return violation(K::UnusedRay, i, 0, "ray " + std::to_string(i) + " lies in no maximal cone");
  for (std::size_t a = 0; a < f.max_cones.size(); ++a)
    for (std::size_t b = 0; b < f.max_cones.size(); ++b)
      if (a != b && subset_of(f.max_cones[a], f.max_cones[b]))
        return violation(K::NestedCones, a, b,
                         "cone " + std::to_string(a) + " is contained in cone " + std::to_string(b));

  std::vector<RationalCone> cones;
  std::vector<std::vector<RationalCone>> cone_faces;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    RationalCone cone = f.cone_of(f.max_cones[c]);
    if (!cone_props(cone).strongly_convex)
      return violation(K::NotStronglyConvex, c, 0, "cone " + std::to_string(c) + " is not strongly convex");
    std::vector<IntVector> listed;
    for (auto i : f.max_cones[c]) listed.push_back(f.rays[i]);
    std::sort(listed.begin(), listed.end());
    if (listed != cone.generators())
      return violation(K::RayNotExtreme, c, 0,
                       "cone " + std::to_string(c) + " lists a ray that is not one of its extreme rays");
    cone_faces.push_back(faces(cone));
    cones.push_back(std::move(cone));
  }
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      const RationalCone meet = intersect(cones[a], cones[b]);
      const bool face_a = std::find(cone_faces[a].begin(), cone_faces[a].end(), meet) != cone_faces[a].end();
      const bool face_b = std::find(cone_faces[b].begin(), cone_faces[b].end(), meet) != cone_faces[b].end();
      if (!face_a || !face_b)
        return violation(K::BadIntersection, a, b,
                         "cones " + std::to_string(a) + " and " + std::to_string(b) + " meet in " + meet.describe() +
                             ", which is not a face of " + (face_a ? "the second" : "the first"));
    }
  return std::nullopt;
}

std::vector<std::pair<RaySet, std::vector<std::size_t>>> walls(const Fan& f) {
  std::map<RaySet, std::vector<std::size_t>> incidence;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const RationalCone cone = f.cone_of(f.max_cones[c]);
    for (const auto& face : faces(cone)) {
      if (cone_props(face).dim + 1 != f.rank) continue;
      incidence[to_ray_set(f, face)].push_back(c);
    }
  }
  return {incidence.begin(), incidence.end()};
}

GlobalProps global_props(const Fan& f) {
  GlobalProps g;
  g.smooth = true;
  g.simplicial = true;
  bool pure = true;
  for (const auto& s : f.max_cones) {
    const ConeProps p = cone_props(f.cone_of(s));
    g.smooth = g.smooth && p.smooth;
    g.simplicial = g.simplicial && p.simplicial;
    pure = pure && p.dim == f.rank;
  }
  if (!pure) return g;
  // Every wall in exactly two maximal cones and a connected adjacency graph.
  const auto ws = walls(f);
  std::vector<std::size_t> parent(f.max_cones.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [wall, owners] : ws) {
    if (owners.size() != 2) return g;
    parent[find(owners[0])] = find(owners[1]);
  }
  for (std::size_t c = 0; c < parent.size(); ++c)
    if (find(c) != find(0)) return g;
  g.complete = true;
  return g;
}

std::optional<std::size_t> OrbitPoset::index_of(const RaySet& rays) const {
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cones[i].rays == rays) return i;
  return std::nullopt;
}

bool OrbitPoset::is_face(std::size_t face, std::size_t cone) const {
  return subset_of(cones[face].rays, cones[cone].rays);
}

std::vector<std::size_t> OrbitPoset::closure(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cones.size(); ++j)
    if (is_face(i, j)) out.push_back(j);
  return out;
}

OrbitPoset orbit_poset(const Fan& f) {
  std::map<RaySet, std::size_t> dims;
  for (const auto& s : f.max_cones)
    for (const auto& face : faces(f.cone_of(s))) dims.emplace(to_ray_set(f, face), cone_props(face).dim);
  OrbitPoset p;
  for (const auto& [rays, dim] : dims) p.cones.push_back({rays, dim});
  std::stable_sort(p.cones.begin(), p.cones.end(), [](const OrbitCone& a, const OrbitCone& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.rays < b.rays;
  });
  p.covers.resize(p.cones.size());
  for (std::size_t i = 0; i < p.cones.size(); ++i)
    for (std::size_t j = 0; j < p.cones.size(); ++j)
      if (p.cones[j].dim == p.cones[i].dim + 1 && p.is_face(i, j)) p.covers[i].push_back(j);
  return p;
}

std::vector<Chart> invariant_charts(const Fan& f) {
  std::vector<Chart> out;
  for (const auto& c : orbit_poset(f).cones) out.push_back({c.rays, dual_semigroup_generators(f.cone_of(c.rays))});
  return out;
}

}  // namespace toric
