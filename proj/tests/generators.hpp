// Seeded random fans for the property suites.

#pragma once

#include <algorithm>
#include <random>

#include "toric/fan.hpp"

namespace gen {

using toric::Fan;
using toric::IntVector;
using toric::RaySet;

inline Fan projective_space(std::size_t n) {
  Fan f;
  f.rank = n;
  IntVector minus(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    f.rays.push_back(e);
  }
  f.rays.push_back(minus);
  for (std::size_t skip = 0; skip <= n; ++skip) {
    RaySet s;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) s.push_back(i);
    f.max_cones.push_back(s);
  }
  return f;
}

inline Fan product_of_lines(std::size_t n) {
  Fan f;
  f.rank = n;
  for (std::size_t i = 0; i < n; ++i)
    for (int sign : {1, -1}) {
      IntVector e(n, 0);
      e[i] = sign;
      f.rays.push_back(e);
    }
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    RaySet s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(2 * i + ((mask >> i) & 1));
    f.max_cones.push_back(s);
  }
  return f;
}

/// Ray indices of the smallest cone of a simplicial fan containing v in its
/// relative interior, or empty when v lies in no cone.
inline RaySet carrier(const Fan& f, const IntVector& v) {
  for (const auto& s : f.max_cones) {
    std::vector<IntVector> cols;
    for (auto i : s) cols.push_back(f.rays[i]);
    const auto x = toric::solve_rational(toric::IntMatrix::from_columns(cols, f.rank), v);
    if (!x) continue;
    if (std::any_of(x->begin(), x->end(), [](const toric::Rational& q) { return q < 0; })) continue;
    RaySet out;
    for (std::size_t k = 0; k < s.size(); ++k)
      if ((*x)[k] > 0) out.push_back(s[k]);
    return out;
  }
  return {};
}

/// Star subdivision of a simplicial fan at the primitive vector v.
inline bool star_subdivide(Fan& f, const IntVector& v) {
  const RaySet tau = carrier(f, v);
  if (tau.size() < 2) return false;
  const std::size_t fresh = f.rays.size();
  f.rays.push_back(v);
  std::vector<RaySet> cones;
  for (const auto& s : f.max_cones) {
    if (!std::includes(s.begin(), s.end(), tau.begin(), tau.end())) {
      cones.push_back(s);
      continue;
    }
    for (auto r : tau) {
      RaySet t;
      for (auto x : s)
        if (x != r) t.push_back(x);
      t.push_back(fresh);
      cones.push_back(t);
    }
  }
  f.max_cones = cones;
  return true;
}

/// A complete simplicial fan of rank <= max_rank with at most max_rays rays,
/// obtained by star subdivisions of projective space or a product of lines.
/// Smooth mode subdivides at sums of cone generators (blow-ups).
inline Fan random_complete_fan(std::mt19937& rng, std::size_t max_rank, std::size_t max_rays, bool smooth) {
  const std::size_t n = 2 + rng() % (max_rank - 1);
  Fan f = (rng() % 2 == 0 || 2 * n > max_rays) ? projective_space(n) : product_of_lines(n);
  const std::size_t steps = rng() % (max_rays - f.rays.size() + 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t step = 0, tries = 0; step < steps && tries < 50; ++tries) {
    IntVector v(n, 0);
    if (smooth) {
      const auto& s = f.max_cones[rng() % f.max_cones.size()];
      const std::size_t take = 2 + rng() % (s.size() - 1);
      std::vector<std::size_t> idx(s.begin(), s.end());
      std::shuffle(idx.begin(), idx.end(), rng);
      for (std::size_t k = 0; k < take; ++k) v = toric::add(v, f.rays[idx[k]]);
    } else {
      for (auto& x : v) x = coef(rng);
      if (toric::is_zero(v)) continue;
      v = toric::primitive(v);
    }
    if (f.ray_index(v)) continue;
    if (star_subdivide(f, v)) ++step;
  }
  for (auto& s : f.max_cones) std::sort(s.begin(), s.end());
  std::sort(f.max_cones.begin(), f.max_cones.end());
  return f;
}

/// A random simplicial cone: n linearly independent vectors with small entries.
inline std::vector<IntVector> random_simplicial_cone(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  while (true) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v(n);
      for (auto& x : v) x = coef(rng);
      if (toric::is_zero(v)) break;
      gens.push_back(toric::primitive(v));
    }
    if (gens.size() == n && toric::rank(toric::IntMatrix::from_rows(gens, n)) == n) return gens;
  }
}

/// A small rank-2 fan (not necessarily complete) with at most max_orbits cones.
inline Fan random_plane_fan(std::mt19937& rng, std::size_t max_orbits) {
  // Primitive directions in angular order.
  static const std::vector<IntVector> dirs = {{1, 0},  {2, 1},  {1, 1},   {1, 2},  {0, 1},   {-1, 2},
                                              {-1, 1}, {-2, 1}, {-1, 0},  {-2, -1}, {-1, -1}, {-1, -2},
                                              {0, -1}, {1, -2}, {1, -1},  {2, -1}};
  while (true) {
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < dirs.size(); ++i)
      if (rng() % 4 == 0) picked.push_back(i);
    if (picked.empty() || picked.size() > 5) continue;
    Fan f;
    f.rank = 2;
    for (auto i : picked) f.rays.push_back(dirs[i]);
    std::vector<bool> used(picked.size(), false);
    const std::size_t m = picked.size();
    for (std::size_t i = 0; i < m && m > 1; ++i) {
      const std::size_t j = (i + 1) % m;
      if (m == 2 && i == 1) break;
      const std::size_t gap = (picked[j] + dirs.size() - picked[i]) % dirs.size();
      if (gap == 0 || gap >= dirs.size() / 2 || rng() % 3 == 0) continue;
      f.max_cones.push_back(i < j ? RaySet{i, j} : RaySet{j, i});
      used[i] = used[j] = true;
    }
    for (std::size_t i = 0; i < m; ++i)
      if (!used[i]) f.max_cones.push_back({i});
    std::sort(f.max_cones.begin(), f.max_cones.end());
    std::size_t two = 0;
    for (const auto& s : f.max_cones) two += s.size() == 2;
    if (1 + m + two <= max_orbits) return f;
  }
}

}  // namespace gen
