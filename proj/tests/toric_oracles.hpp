// Brute-force oracles over fans, presentations and finite spaces.

#pragma once

#include <functional>
#include <map>
#include <set>

#include "oracles.hpp"
#include "toric/akset.hpp"
#include "toric/embed.hpp"

namespace oracle {

using namespace toric;

/// Dimension of the rational solution space of m_sigma(v_rho) + a_rho = 0,
/// which for a complete fan is the rank of the Cartier lattice.
inline std::size_t cartier_space_dim(const Fan& f) {
  const std::size_t n_rays = f.rays.size();
  const std::size_t vars = n_rays + f.max_cones.size() * f.rank;
  std::vector<RatVector> rows;
  for (std::size_t t = 0; t < f.max_cones.size(); ++t)
    for (auto r : f.max_cones[t]) {
      RatVector row(vars, 0);
      row[r] = 1;
      for (std::size_t j = 0; j < f.rank; ++j) row[n_rays + t * f.rank + j] = f.rays[r][j];
      rows.push_back(row);
    }
  return vars - oracle::rational_rank(rows);
}

/// Effective divisors linearly equivalent to D, counted by enumeration.
inline std::size_t linear_system_size(const Fan& f, const IntVector& d, int box) {
  std::size_t count = 0;
  const IntMatrix rm = f.ray_matrix();
  IntVector e(f.rays.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == e.size()) {
      if (solve_integral(rm, subtract(e, d))) ++count;
      return;
    }
    for (int x = 0; x <= box; ++x) {
      e[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

/// One-parameter subgroups Q y with y >= 0 supported on a listed face have
/// their limit in the orbit of supp(y); separated iff that orbit is unique.
inline bool limits_unique(const QuotientPresentation& qp, int box) {
  const auto fam = qp.family();
  const std::set<RaySet> listed(fam.begin(), fam.end());
  std::map<IntVector, std::set<RaySet>> limits;
  IntVector y(qp.n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == qp.n) {
      RaySet support;
      for (std::size_t j = 0; j < qp.n; ++j)
        if (y[j] != 0) support.push_back(j);
      if (listed.count(support)) limits[qp.q * y].insert(support);
      return;
    }
    for (int x = 0; x <= box; ++x) {
      y[i] = x;
      rec(i + 1);
    }
    y[i] = 0;
  };
  rec(0);
  for (const auto& [lambda, orbits] : limits)
    if (orbits.size() > 1) return false;
  return true;
}

// Oracle: k-tuples drawn from s, each checked against the family directly.
inline bool uk_by_tuples(const FiniteSpace& sp, const std::vector<PointSet>& fam, PointSet s, std::size_t k) {
  std::vector<std::size_t> t(k, 0);
  const std::size_t n = sp.size();
  while (true) {
    bool inside = true;
    PointSet c = 0;
    for (auto x : t) {
      inside = inside && (s >> x & 1);
      c |= PointSet(1) << x;
    }
    if (inside) {
      bool found = false;
      for (auto u : fam) found = found || (c & ~u) == 0;
      if (!found) return false;
    }
    std::size_t i = k;
    while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
    if (i == 0) return true;
  }
}

inline std::vector<PointSet> open_sets(const FiniteSpace& sp) {
  std::vector<PointSet> out;
  for (PointSet s = 0; s <= sp.all(); ++s)
    if (sp.is_open(s)) out.push_back(s);
  return out;
}

inline std::vector<PointSet> brute_force_maximal(const FiniteSpace& sp, const std::vector<PointSet>& fam, std::size_t k) {
  std::vector<PointSet> good;
  for (auto s : open_sets(sp))
    if (uk_by_tuples(sp, fam, s, k)) good.push_back(s);
  std::vector<PointSet> out;
  for (auto s : good) {
    bool dominated = false;
    for (auto t : good) dominated = dominated || (t != s && (s & ~t) == 0);
    if (!dominated) out.push_back(s);
  }
  return out;
}

}  // namespace oracle
