#include "toric/akset.hpp"

#include "toric/parallel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace toric {

namespace {

constexpr std::size_t kMaxPoints = 64;
constexpr std::size_t kMaxPatternBits = 24;

PointSet bit(std::size_t i) { return PointSet(1) << i; }

void check_size(std::size_t n) {
  if (n > kMaxPoints) throw std::invalid_argument("finite space has more than 64 points");
}

/// Calls visit on every subset of s with exactly m elements.
template <typename Visit>
bool all_combinations(const std::vector<std::size_t>& pts, std::size_t m, std::size_t start, PointSet acc,
                      const Visit& visit) {
  if (m == 0) return visit(acc);
  for (std::size_t i = start; i + m <= pts.size(); ++i)
    if (!all_combinations(pts, m - 1, i + 1, acc | bit(pts[i]), visit)) return false;
  return true;
}

std::vector<std::size_t> members(PointSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s; ++i, s >>= 1)
    if (s & 1) out.push_back(i);
  return out;
}

}  // namespace

PointSet FiniteSpace::all() const { return size() == kMaxPoints ? ~PointSet(0) : bit(size()) - 1; }

PointSet FiniteSpace::closure_of(PointSet s) const {
  PointSet out = 0;
  for (auto i : members(s)) out |= closure[i];
  return out;
}

bool FiniteSpace::is_open(PointSet s) const { return (closure_of(all() & ~s) & s) == 0; }

PointSet FiniteSpace::open_hull(PointSet s) const {
  PointSet out = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if (closure[i] & s) out |= bit(i);
  return out;
}

std::string FiniteSpace::describe(PointSet s) const {
  std::string out = "{";
  bool first = true;
  for (auto i : members(s)) {
    if (!first) out += ", ";
    out += names.empty() ? std::to_string(i) : names[i];
    first = false;
  }
  return out + "}";
}

FiniteSpace orbit_space(const Fan& f) {
  const OrbitPoset poset = orbit_poset(f);
  check_size(poset.size());
  FiniteSpace space;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    space.names.push_back("O" + toric::describe(poset.cones[i].rays));
    PointSet c = 0;
    for (auto j : poset.closure(i)) c |= bit(j);
    space.closure.push_back(c);
  }
  return space;
}

FiniteSpace orbit_space(const QuotientPresentation& qp) {
  const auto fam = qp.family();
  check_size(fam.size());
  FiniteSpace space;
  for (const auto& a : fam) {
    space.names.push_back("O" + toric::describe(a));
    PointSet c = 0;
    for (std::size_t j = 0; j < fam.size(); ++j)
      if (std::includes(fam[j].begin(), fam[j].end(), a.begin(), a.end())) c |= bit(j);
    space.closure.push_back(c);
  }
  return space;
}

std::vector<PointSet> invariant_chart_family(const FiniteSpace& space) {
  std::vector<PointSet> out;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space.closure[i] == bit(i)) out.push_back(space.open_hull(bit(i)));
  return out;
}

std::vector<std::vector<std::size_t>> complement_components(const FiniteSpace& space,
                                                            const std::vector<PointSet>& family, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const std::size_t n = space.size();
  auto in_a = [&](const std::vector<std::size_t>& t) {
    PointSet s = 0;
    for (auto x : t) s |= bit(x);
    return std::none_of(family.begin(), family.end(), [&](PointSet u) { return (s & ~u) == 0; });
  };
  // generizations[x]: points y != x with x in the closure of y.
  std::vector<std::vector<std::size_t>> generizations(n);
  for (std::size_t y = 0; y < n; ++y)
    for (auto x : members(space.closure[y]))
      if (x != y) generizations[x].push_back(y);

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(k, 0);
  while (true) {
    if (in_a(t)) {
      bool generic = true;
      for (std::size_t i = 0; i < k && generic; ++i) {
        const std::size_t keep = t[i];
        for (auto y : generizations[keep]) {
          t[i] = y;
          if (in_a(t)) generic = false;
          t[i] = keep;
          if (!generic) break;
        }
      }
      if (generic) out.push_back(t);
    }
    std::size_t i = k;
    while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

PointSet xy_operator(const FiniteSpace& space, const std::vector<std::vector<std::size_t>>& components, PointSet y) {
  PointSet removed = 0;
  for (const auto& t : components)
    for (auto x : t)
      if ((space.closure[x] & y) == 0) removed |= space.closure[x];
  return space.all() & ~removed;
}

bool is_uk_subset(const std::vector<PointSet>& family, PointSet s, std::size_t k) {
  if (s == 0) return true;
  const auto pts = members(s);
  return all_combinations(pts, std::min(k, pts.size()), 0, 0, [&](PointSet c) {
    return std::any_of(family.begin(), family.end(), [&](PointSet u) { return (c & ~u) == 0; });
  });
}

AkAnalysis analyze_uk(const FiniteSpace& space, const std::vector<PointSet>& family, std::size_t k) {
  AkAnalysis out;
  out.k = k;
  out.components = complement_components(space, family, k);
  std::set<std::size_t> proj;
  for (const auto& t : out.components) proj.insert(t.begin(), t.end());
  out.projections.assign(proj.begin(), proj.end());
  const std::size_t m = out.projections.size();
  if (m > kMaxPatternBits) throw std::invalid_argument("too many distinct projections for pattern enumeration");

  const std::size_t patterns = std::size_t(1) << m;
  out.xy_table.resize(patterns);
  std::vector<char> good(patterns, 0);
  parallel_for(patterns, [&](std::size_t pattern) {
    PointSet removed = 0;
    for (std::size_t d = 0; d < m; ++d)
      if (!(pattern >> d & 1)) removed |= space.closure[out.projections[d]];
    const PointSet xs = space.all() & ~removed;
    out.xy_table[pattern] = {pattern, xs};
    good[pattern] = is_uk_subset(family, xs, k);
  });
  std::set<PointSet> candidates;
  for (std::size_t p = 0; p < patterns; ++p)
    if (good[p]) candidates.insert(out.xy_table[p].second);
  for (PointSet c : candidates) {
    const bool dominated =
        std::any_of(candidates.begin(), candidates.end(), [&](PointSet d) { return d != c && (c & ~d) == 0; });
    if (!dominated) out.maximal.push_back(c);
  }
  return out;
}

}  // namespace toric
