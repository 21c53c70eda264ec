#include "toric/polyhedral.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace toric {

namespace {

std::size_t rank_of_rows(const std::vector<IntVector>& rows, std::size_t dim) {
  if (rows.empty()) return 0;
  return rank(IntMatrix::from_rows(rows, dim));
}

IntVector negated(const IntVector& v) { return scale(v, -1); }

// Orthogonal projection of v onto the complement of span(basis), scaled to a
// primitive integer vector.
IntVector project_off(const IntVector& v, const std::vector<IntVector>& basis) {
  if (basis.empty()) return primitive(v);
  const std::size_t k = basis.size();
  IntMatrix gram(k, k);
  IntVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  const auto c = solve_rational(gram, rhs);
  RatVector out(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) {
    out[t] = v[t];
    for (std::size_t i = 0; i < k; ++i) out[t] -= (*c)[i] * basis[i][t];
  }
  const Integer den = common_denominator(out);
  IntVector w(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) w[t] = Integer(out[t] * den);
  return primitive(w);
}

}  // namespace

// ---------------------------------------------------------------------------
// Double description

ConeDescription double_description(const std::vector<IntVector>& inequalities, std::size_t dim) {
  ConeDescription cur;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, 0);
    e[i] = 1;
    cur.lineality.push_back(std::move(e));
  }
  std::vector<IntVector> processed;

  for (const auto& a : inequalities) {
    if (a.size() != dim) throw std::invalid_argument("double_description: inequality has wrong length");
    if (is_zero(a)) continue;
    processed.push_back(a);

    auto lin_it = std::find_if(cur.lineality.begin(), cur.lineality.end(),
                               [&](const IntVector& l) { return dot(a, l) != 0; });
    if (lin_it != cur.lineality.end()) {
      IntVector l = *lin_it;
      if (dot(a, l) < 0) l = negated(l);
      const Integer al = dot(a, l);
      std::vector<IntVector> lineality;
      for (auto it = cur.lineality.begin(); it != cur.lineality.end(); ++it) {
        if (it == lin_it) continue;
        lineality.push_back(primitive(subtract(scale(*it, al), scale(l, dot(a, *it)))));
      }
      std::vector<IntVector> rays;
      for (const auto& r : cur.rays) rays.push_back(primitive(subtract(scale(r, al), scale(l, dot(a, r)))));
      rays.push_back(primitive(l));
      cur.lineality = std::move(lineality);
      cur.rays = std::move(rays);
      continue;
    }

    std::vector<IntVector> pos, zero, neg;
    for (const auto& r : cur.rays) {
      const Integer s = dot(a, r);
      if (s > 0) pos.push_back(r);
      else if (s == 0) zero.push_back(r);
      else neg.push_back(r);
    }
    const std::size_t target = rank_of_rows(processed, dim);
    std::vector<IntVector> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        std::vector<IntVector> tight;
        for (const auto& b : processed)
          if (dot(b, p) == 0 && dot(b, n) == 0) tight.push_back(b);
        if (target < 2 || rank_of_rows(tight, dim) != target - 2) continue;
        next.push_back(primitive(add(scale(n, dot(a, p)), scale(p, -dot(a, n)))));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur.rays = std::move(next);
  }
  return cur;
}

namespace {

std::vector<IntVector> as_inequalities(const ConeDescription& desc) {
  std::vector<IntVector> ineqs = desc.rays;
  for (const auto& l : desc.lineality) {
    ineqs.push_back(l);
    ineqs.push_back(negated(l));
  }
  return ineqs;
}

std::vector<IntVector> canonical_generators(const ConeDescription& desc, std::size_t dim) {
  std::vector<IntVector> gens;
  std::vector<IntVector> basis;
  if (!desc.lineality.empty()) {
    basis = hermite_rows(IntMatrix::from_rows(desc.lineality, dim)).row_list();
    for (const auto& b : basis) {
      gens.push_back(primitive(b));
      gens.push_back(primitive(negated(b)));
    }
  }
  for (const auto& r : desc.rays) {
    IntVector p = project_off(r, basis);
    if (!is_zero(p)) gens.push_back(std::move(p));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

}  // namespace

RationalCone RationalCone::generated_by(std::size_t ambient_rank, std::vector<IntVector> generators) {
  for (const auto& g : generators)
    if (g.size() != ambient_rank) throw std::invalid_argument("RationalCone: generator has wrong length");
  std::erase_if(generators, [](const IntVector& g) { return toric::is_zero(g); });
  RationalCone c;
  c.ambient_rank_ = ambient_rank;
  c.inequalities_ = as_inequalities(double_description(generators, ambient_rank));
  if (!generators.empty())
    c.generators_ = canonical_generators(double_description(c.inequalities_, ambient_rank), ambient_rank);
  return c;
}

RationalCone RationalCone::from_description(std::size_t ambient_rank, const ConeDescription& desc) {
  RationalCone c;
  c.ambient_rank_ = ambient_rank;
  c.generators_ = canonical_generators(desc, ambient_rank);
  c.inequalities_ = as_inequalities(double_description(c.generators_, ambient_rank));
  return c;
}

bool RationalCone::contains(const IntVector& v) const {
  if (v.size() != ambient_rank_) throw std::invalid_argument("RationalCone::contains: wrong length");
  return std::all_of(inequalities_.begin(), inequalities_.end(),
                     [&](const IntVector& a) { return dot(a, v) >= 0; });
}

std::string RationalCone::describe() const {
  std::ostringstream os;
  os << "cone(";
  for (std::size_t i = 0; i < generators_.size(); ++i) os << (i ? "," : "") << to_string(generators_[i]);
  os << ')';
  return os.str();
}

RationalCone dual_cone(const RationalCone& c) {
  return RationalCone::from_description(c.ambient_rank(),
                                        double_description(c.generators(), c.ambient_rank()));
}

RationalCone cone_from_inequalities(const std::vector<IntVector>& inequalities, std::size_t dim) {
  return RationalCone::from_description(dim, double_description(inequalities, dim));
}

std::vector<RationalCone> faces(const RationalCone& c) {
  const std::size_t n = c.ambient_rank();
  const auto& gens = c.generators();
  if (!cone_props(c).strongly_convex) throw std::invalid_argument("faces: cone is not strongly convex");
  const ConeDescription dual = double_description(gens, n);
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> queue;
  std::vector<bool> all(gens.size(), true);
  seen.insert(all);
  queue.push_back(all);
  std::vector<std::vector<bool>> facets;
  for (const auto& u : dual.rays) {
    std::vector<bool> f(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) f[j] = dot(u, gens[j]) == 0;
    facets.push_back(std::move(f));
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& f : facets) {
      std::vector<bool> next(gens.size());
      for (std::size_t j = 0; j < gens.size(); ++j) next[j] = queue[q][j] && f[j];
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<RationalCone> out;
  for (const auto& mask : queue) {
    std::vector<IntVector> sub;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (mask[j]) sub.push_back(gens[j]);
    out.push_back(RationalCone::generated_by(n, std::move(sub)));
  }
  std::sort(out.begin(), out.end(), [](const RationalCone& a, const RationalCone& b) {
    if (a.generators().size() != b.generators().size()) return a.generators().size() < b.generators().size();
    return a < b;
  });
  return out;
}

bool is_face(const RationalCone& face, const RationalCone& c) {
  const auto all = faces(c);
  return std::find(all.begin(), all.end(), face) != all.end();
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("intersect: rank mismatch");
  std::vector<IntVector> ineqs = a.inequalities();
  ineqs.insert(ineqs.end(), b.inequalities().begin(), b.inequalities().end());
  return cone_from_inequalities(ineqs, a.ambient_rank());
}

ConeProps cone_props(const RationalCone& c) {
  ConeProps p;
  const std::size_t n = c.ambient_rank();
  const auto& gens = c.generators();
  p.dim = rank_of_rows(gens, n);
  p.strongly_convex = rank_of_rows(c.inequalities(), n) == n;
  p.simplicial = p.strongly_convex && gens.size() == p.dim;
  if (p.simplicial) {
    Integer m = 1;
    if (!gens.empty()) {
      const SmithDecomposition snf = smith_normal_form(IntMatrix::from_rows(gens, n));
      for (std::size_t i = 0; i < p.dim; ++i) m *= snf.diag[i];
    }
    p.multiplicity = m;
    p.smooth = m == 1;
  }
  return p;
}

namespace {

// Calls visit for every integer point of the box [lo, hi].
void for_each_box_point(const IntVector& lo, const IntVector& hi,
                        const std::function<void(const IntVector&)>& visit) {
  const std::size_t n = lo.size();
  IntVector p = lo;
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return;
  for (;;) {
    visit(p);
    std::size_t i = 0;
    while (i < n) {
      if (p[i] < hi[i]) {
        ++p[i];
        break;
      }
      p[i] = lo[i];
      ++i;
    }
    if (i == n) return;
  }
}

}  // namespace

std::vector<IntVector> hilbert_basis(const RationalCone& c) {
  const std::size_t n = c.ambient_rank();
  if (c.is_zero()) return {};
  if (!cone_props(c).strongly_convex) throw std::invalid_argument("hilbert_basis: cone is not pointed");
  const auto& rays = c.generators();
  // Every lattice point is a nonnegative integral combination of the rays plus
  // a lattice point of the zonotope sum_i [0,1] r_i.
  IntVector lo(n, 0), hi(n, 0);
  for (const auto& r : rays)
    for (std::size_t k = 0; k < n; ++k) {
      if (r[k] < 0) lo[k] += r[k];
      else hi[k] += r[k];
    }
  std::vector<IntVector> candidates;
  for_each_box_point(lo, hi, [&](const IntVector& p) {
    if (!is_zero(p) && c.contains(p)) candidates.push_back(p);
  });
  std::vector<IntVector> basis;
  for (const auto& x : candidates) {
    bool reducible = false;
    for (const auto& y : candidates) {
      if (y == x) continue;
      IntVector d = subtract(x, y);
      if (!is_zero(d) && c.contains(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

std::vector<IntVector> dual_semigroup_generators(const RationalCone& c) {
  const std::size_t n = c.ambient_rank();
  const auto& gens = c.generators();
  const std::size_t d = rank_of_rows(gens, n);
  if (d == n) return hilbert_basis(dual_cone(c));

  // Columns of `right` give a basis of M adapted to the saturated span of c:
  // the first d coordinates of right^T v describe v in N_c.
  IntMatrix right = IntMatrix::identity(n);
  if (!gens.empty()) right = smith_normal_form(IntMatrix::from_rows(gens, n)).right;
  const IntMatrix rt = right.transpose();
  std::vector<IntVector> reduced;
  for (const auto& g : gens) {
    IntVector y = rt * g;
    y.resize(d);
    reduced.push_back(std::move(y));
  }
  std::vector<IntVector> out;
  if (d > 0) {
    const RationalCone sub = RationalCone::generated_by(d, reduced);
    for (const auto& w : hilbert_basis(dual_cone(sub))) {
      IntVector u(n, 0);
      for (std::size_t j = 0; j < d; ++j) u = add(u, scale(right.column(j), w[j]));
      out.push_back(std::move(u));
    }
  }
  for (std::size_t j = d; j < n; ++j) {
    out.push_back(right.column(j));
    out.push_back(negated(right.column(j)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Linear systems

std::size_t LinearSystem::add_variable(std::string name) {
  variables.push_back(std::move(name));
  for (auto& c : constraints) c.coeffs.push_back(0);
  return variables.size() - 1;
}

void LinearSystem::add(IntVector coeffs, Integer constant, Relation relation) {
  if (coeffs.size() != variables.size())
    throw std::invalid_argument("LinearSystem::add: coefficient count does not match variables");
  constraints.push_back({std::move(coeffs), std::move(constant), relation});
}

bool LinearSystem::satisfied_by(const RatVector& x) const {
  if (x.size() != variables.size()) return false;
  for (const auto& c : constraints) {
    Rational v = c.constant;
    for (std::size_t j = 0; j < x.size(); ++j) v += c.coeffs[j] * x[j];
    switch (c.relation) {
      case Relation::Equal:
        if (v != 0) return false;
        break;
      case Relation::GreaterEqual:
        if (v < 0) return false;
        break;
      case Relation::LessEqual:
        if (v > 0) return false;
        break;
    }
  }
  return true;
}

std::string LinearSystem::describe() const {
  std::ostringstream os;
  for (const auto& c : constraints) {
    bool first = true;
    for (std::size_t j = 0; j < variables.size(); ++j) {
      if (c.coeffs[j] == 0) continue;
      os << (first ? "" : " + ") << c.coeffs[j].get_str() << "*" << variables[j];
      first = false;
    }
    if (c.constant != 0 || first) os << (first ? "" : " + ") << c.constant.get_str();
    os << (c.relation == Relation::Equal ? " = 0" : c.relation == Relation::GreaterEqual ? " >= 0" : " <= 0")
       << '\n';
  }
  return os.str();
}

namespace {

enum class SimplexStatus { Optimal, Unbounded };

// Tableau simplex with Bland's rule: minimizes cost . y over T y = rhs, y >= 0,
// starting from the given feasible basis. Only columns flagged in `allowed`
// may enter.
SimplexStatus run_simplex(std::vector<RatVector>& t, std::vector<std::size_t>& basis, const RatVector& cost,
                          const std::vector<bool>& allowed) {
  const std::size_t m = t.size();
  const std::size_t cols = cost.size();
  for (;;) {
    std::size_t entering = cols;
    for (std::size_t j = 0; j < cols && entering == cols; ++j) {
      if (!allowed[j]) continue;
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      Rational r = cost[j];
      for (std::size_t i = 0; i < m; ++i) r -= cost[basis[i]] * t[i][j];
      if (r < 0) entering = j;
    }
    if (entering == cols) return SimplexStatus::Optimal;
    std::size_t leaving = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][entering] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][entering];
      if (leaving == m || ratio < best || (ratio == best && basis[i] < basis[leaving])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving == m) return SimplexStatus::Unbounded;
    const Rational inv = 1 / t[leaving][entering];
    for (auto& x : t[leaving]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving || t[i][entering] == 0) continue;
      const Rational f = t[i][entering];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leaving][j];
    }
    basis[leaving] = entering;
  }
}

// Equalities are eliminated first (x = x0 + N z); the remaining inequalities
// a.z >= beta over free z are solved by a two-phase simplex on z = z+ - z-.
LpOutcome solve(const LinearSystem& sys, const IntVector* objective) {
  const std::size_t n = sys.variables.size();
  LpOutcome out;

  std::vector<IntVector> eq_rows;
  IntVector eq_rhs;
  std::vector<std::pair<IntVector, Integer>> ineqs;  // coeffs . x >= bound
  for (const auto& c : sys.constraints) {
    if (c.coeffs.size() != n) throw std::invalid_argument("LinearSystem: malformed constraint");
    switch (c.relation) {
      case Relation::Equal:
        eq_rows.push_back(c.coeffs);
        eq_rhs.push_back(-c.constant);
        break;
      case Relation::GreaterEqual:
        ineqs.emplace_back(c.coeffs, -c.constant);
        break;
      case Relation::LessEqual:
        ineqs.emplace_back(negated(c.coeffs), c.constant);
        break;
    }
  }

  RatVector x0(n, 0);
  IntMatrix null_basis = IntMatrix::identity(n);
  if (!eq_rows.empty()) {
    const IntMatrix e = IntMatrix::from_rows(eq_rows, n);
    auto sol = solve_rational(e, eq_rhs);
    if (!sol) return out;
    x0 = *sol;
    null_basis = kernel_basis(e);
  }
  const std::size_t k = null_basis.cols();

  // Row i: (a N) z >= bound - a.x0
  std::vector<RatVector> rows;
  RatVector rhs;
  for (const auto& [a, bound] : ineqs) {
    RatVector r(k, 0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t v = 0; v < n; ++v) r[j] += a[v] * null_basis(v, j);
    Rational b = bound;
    for (std::size_t v = 0; v < n; ++v) b -= a[v] * x0[v];
    rows.push_back(std::move(r));
    rhs.push_back(b);
  }

  // Standard form columns: z+ (k), z- (k), surplus (m), artificial (m).
  const std::size_t m = rows.size();
  const std::size_t real_cols = 2 * k + m;
  const std::size_t cols = real_cols + m;
  std::vector<RatVector> t(m, RatVector(cols + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    const int sign = rhs[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < k; ++j) {
      t[i][j] = sign * rows[i][j];
      t[i][k + j] = -sign * rows[i][j];
    }
    t[i][2 * k + i] = -sign;
    t[i][real_cols + i] = 1;
    t[i][cols] = sign * rhs[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = real_cols + i;

  RatVector phase1(cols, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[real_cols + i] = 1;
  run_simplex(t, basis, phase1, std::vector<bool>(cols, true));
  Rational infeasibility = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= real_cols) infeasibility += t[i][cols];
  if (infeasibility > 0) return out;

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.size();) {
    if (basis[i] < real_cols) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < real_cols && t[i][j] == 0) ++j;
    if (j == real_cols) {
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    const Rational inv = 1 / t[i][j];
    for (auto& x : t[i]) x *= inv;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (r == i || t[r][j] == 0) continue;
      const Rational f = t[r][j];
      for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= f * t[i][c];
    }
    basis[i] = j;
    ++i;
  }

  out.status = LpOutcome::Status::Optimal;
  if (objective) {
    RatVector cost(cols, 0);
    for (std::size_t j = 0; j < k; ++j) {
      Rational cj = 0;
      for (std::size_t v = 0; v < n; ++v) cj += (*objective)[v] * null_basis(v, j);
      cost[j] = cj;
      cost[k + j] = -cj;
    }
    std::vector<bool> allowed(cols, false);
    for (std::size_t j = 0; j < real_cols; ++j) allowed[j] = true;
    if (run_simplex(t, basis, cost, allowed) == SimplexStatus::Unbounded) {
      out.status = LpOutcome::Status::Unbounded;
      return out;
    }
  }

  RatVector y(cols, 0);
  for (std::size_t i = 0; i < t.size(); ++i) y[basis[i]] = t[i][cols];
  out.point = x0;
  for (std::size_t j = 0; j < k; ++j) {
    const Rational z = y[j] - y[k + j];
    if (z == 0) continue;
    for (std::size_t v = 0; v < n; ++v) out.point[v] += z * null_basis(v, j);
  }
  if (!sys.satisfied_by(out.point)) throw std::logic_error("lp: witness failed re-verification");
  return out;
}

}  // namespace

std::optional<RatVector> lp_feasible(const LinearSystem& system) {
  LpOutcome r = solve(system, nullptr);
  if (r.status == LpOutcome::Status::Infeasible) return std::nullopt;
  return r.point;
}

LpOutcome lp_minimize(const LinearSystem& system, const IntVector& objective) {
  if (objective.size() != system.variables.size())
    throw std::invalid_argument("lp_minimize: objective has wrong length");
  return solve(system, &objective);
}

namespace {

std::optional<IntVector> branch(LinearSystem& sys) {
  const auto x = lp_feasible(sys);
  if (!x) return std::nullopt;
  for (std::size_t j = 0; j < x->size(); ++j) {
    const Rational& v = (*x)[j];
    if (v.get_den() == 1) continue;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    IntVector e(sys.variables.size(), 0);
    e[j] = 1;
    sys.add(e, -fl, Relation::LessEqual);
    auto down = branch(sys);
    sys.constraints.pop_back();
    if (down) return down;
    sys.add(e, -(fl + 1), Relation::GreaterEqual);
    auto up = branch(sys);
    sys.constraints.pop_back();
    return up;
  }
  IntVector out;
  for (const auto& v : *x) out.push_back(Integer(v));
  return out;
}

}  // namespace

std::optional<IntVector> integer_feasible(const LinearSystem& system, const Integer& box) {
  LinearSystem sys = system;
  for (std::size_t j = 0; j < sys.variables.size(); ++j) {
    IntVector e(sys.variables.size(), 0);
    e[j] = 1;
    sys.add(e, -box, Relation::LessEqual);
    sys.add(e, box, Relation::GreaterEqual);
  }
  return branch(sys);
}

}  // namespace toric
