#include "toric/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace toric {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("IntMatrix: entry count does not match shape");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  return from_rows(columns, rows).transpose();
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::vector<IntVector> IntMatrix::column_list() const {
  std::vector<IntVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("IntMatrix * vector: shape mismatch");
  IntVector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

IntVector subtract(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

IntVector scale(const IntVector& v, const Integer& factor) {
  IntVector out(v);
  for (auto& x : out) x *= factor;
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(IntVector v) {
  const Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::size_t SmithDecomposition::rank() const {
  return static_cast<std::size_t>(
      std::count_if(diag.begin(), diag.end(), [](const Integer& d) { return d != 0; }));
}

namespace {

// Locates the pivot of the trailing submatrix starting at (t, t).
bool find_pivot(const IntMatrix& w, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < w.rows(); ++i)
    for (std::size_t j = t; j < w.cols(); ++j) {
      if (w(i, j) == 0) continue;
      Integer a = abs(w(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pr = i;
        pc = j;
      }
    }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix work = a;
  IntMatrix left = IntMatrix::identity(m);
  IntMatrix right = IntMatrix::identity(n);

  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(work, t, pr, pc)) break;
    for (;;) {
      work.swap_rows(t, pr);
      left.swap_rows(t, pr);
      work.swap_cols(t, pc);
      right.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (work(i, t) == 0) continue;
        Integer q = work(i, t) / work(t, t);
        work.add_row_multiple(i, t, -q);
        left.add_row_multiple(i, t, -q);
        if (work(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (work(t, j) == 0) continue;
        Integer q = work(t, j) / work(t, t);
        work.add_col_multiple(j, t, -q);
        right.add_col_multiple(j, t, -q);
        if (work(t, j) != 0) clean = false;
      }
      if (clean) break;
      find_pivot(work, t, pr, pc);
    }
    if (work(t, t) < 0) {
      work.negate_row(t);
      left.negate_row(t);
    }
  }
  const std::size_t r = t;

  // Enforce the divisibility chain: diag(a, b) ~ diag(gcd, lcm).
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const Integer a_i = work(i, i);
      const Integer b_j = work(j, j);
      if (b_j % a_i == 0) continue;
      Integer g, s, u;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a_i.get_mpz_t(), b_j.get_mpz_t());
      const Integer a_g = a_i / g;
      const Integer b_g = b_j / g;
      // Row transform [[s, u], [-b/g, a/g]] on rows i, j of left.
      for (std::size_t c = 0; c < m; ++c) {
        Integer x = left(i, c), y = left(j, c);
        left(i, c) = s * x + u * y;
        left(j, c) = -b_g * x + a_g * y;
      }
      // Column transform [[1, -u b/g], [1, s a/g]] on columns i, j of right.
      for (std::size_t rr = 0; rr < n; ++rr) {
        Integer x = right(rr, i), y = right(rr, j);
        right(rr, i) = x + y;
        right(rr, j) = -u * b_g * x + s * a_g * y;
      }
      work(i, i) = g;
      work(j, j) = a_g * b_j;
    }
  }

  SmithDecomposition out;
  out.diag.assign(steps, 0);
  for (std::size_t i = 0; i < r; ++i) out.diag[i] = work(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

std::size_t rank(const IntMatrix& a) {
  // Fraction-free elimination over Q.
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RatVector r(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = a(i, j);
    rows.push_back(std::move(r));
  }
  std::size_t rk = 0;
  for (std::size_t col = 0; col < a.cols() && rk < rows.size(); ++col) {
    std::size_t p = rk;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rk], rows[p]);
    for (std::size_t i = rk + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rational f = rows[i][col] / rows[rk][col];
      for (std::size_t j = col; j < a.cols(); ++j) rows[i][j] -= f * rows[rk][j];
    }
    ++rk;
  }
  return rk;
}

IntMatrix hermite_rows(const IntMatrix& a) {
  IntMatrix w = a;
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    // Euclid on the column below row r.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (w(i, col) == 0) continue;
        if (best == m || abs(w(i, col)) < abs(w(best, col))) best = i;
      }
      if (best == m) break;
      w.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (w(i, col) == 0) continue;
        Integer q = w(i, col) / w(r, col);
        w.add_row_multiple(i, r, -q);
        if (w(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w(r, col) == 0) continue;
    if (w(r, col) < 0) w.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), w(i, col).get_mpz_t(), w(r, col).get_mpz_t());
      w.add_row_multiple(i, r, -q);
    }
    pivot_cols.push_back(col);
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, j);
  return out;
}

Integer FinAbGroup::order() const {
  if (free_rank > 0) return 0;
  Integer o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

IntVector FinAbGroup::reduce(IntVector element) const {
  if (element.size() != coordinate_count())
    throw std::invalid_argument("FinAbGroup::reduce: wrong coordinate count");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    Integer& x = element[free_rank + i];
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), torsion[i].get_mpz_t());
  }
  return element;
}

std::string FinAbGroup::describe() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

IntVector Cokernel::project(const IntVector& v) const { return group.reduce(projection * v); }

Cokernel cokernel(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();

  std::vector<IntVector> torsion_rows;
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < r; ++i) {
    if (snf.diag[i] == 1) continue;
    torsion.push_back(snf.diag[i]);
    torsion_rows.push_back(snf.left.row(i));
  }
  std::vector<IntVector> free_rows;
  for (std::size_t i = r; i < m; ++i) free_rows.push_back(snf.left.row(i));
  // Any unimodular change among the free coordinates is a group automorphism.
  IntMatrix free_block = hermite_rows(IntMatrix::from_rows(free_rows, m));

  Cokernel out;
  out.group.free_rank = free_block.rows();
  out.group.torsion = torsion;
  out.projection = IntMatrix(out.group.coordinate_count(), m);
  for (std::size_t i = 0; i < free_block.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) out.projection(i, j) = free_block(i, j);
  for (std::size_t t = 0; t < torsion.size(); ++t)
    for (std::size_t j = 0; j < m; ++j) {
      Integer x = torsion_rows[t][j];
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), torsion[t].get_mpz_t());
      out.projection(out.group.free_rank + t, j) = x;
    }
  return out;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  const SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  std::vector<IntVector> basis;
  for (std::size_t j = r; j < n; ++j) basis.push_back(snf.right.column(j));
  return hermite_rows(IntMatrix::from_rows(basis, n)).transpose();
}

namespace {

IntMatrix relation_matrix(const FinAbGroup& group, const std::vector<IntVector>& elements) {
  const std::size_t c = group.coordinate_count();
  std::vector<IntVector> cols;
  for (const auto& e : elements) {
    if (e.size() != c) throw std::invalid_argument("group element has wrong coordinate count");
    cols.push_back(e);
  }
  for (std::size_t t = 0; t < group.torsion.size(); ++t) {
    IntVector rel(c, 0);
    rel[group.free_rank + t] = group.torsion[t];
    cols.push_back(std::move(rel));
  }
  return IntMatrix::from_columns(cols, c);
}

}  // namespace

Integer quotient_order(const FinAbGroup& group, const std::vector<IntVector>& elements) {
  const std::size_t c = group.coordinate_count();
  if (c == 0) return 1;
  const SmithDecomposition snf = smith_normal_form(relation_matrix(group, elements));
  if (snf.rank() < c) return 0;
  Integer o = 1;
  for (std::size_t i = 0; i < c; ++i) o *= snf.diag[i];
  return o;
}

bool generates(const FinAbGroup& group, const std::vector<IntVector>& elements) {
  return quotient_order(group, elements) == 1;
}

std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integral: shape mismatch");
  const SmithDecomposition snf = smith_normal_form(a);
  const IntVector lb = snf.left * b;
  const std::size_t r = snf.rank();
  IntVector y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < r) {
      if (lb[i] % snf.diag[i] != 0) return std::nullopt;
      y[i] = lb[i] / snf.diag[i];
    } else if (lb[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.right * y;
}

std::optional<RatVector> solve_rational(const IntMatrix& a, const IntVector& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<RatVector> rows(m, RatVector(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    rows[i][n] = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t p = r;
    while (p < m && rows[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (rows[i][n] != 0) return std::nullopt;
  RatVector x(n, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = rows[i][n];
  return x;
}

IntMatrix column_lattice(const IntMatrix& a) { return hermite_rows(a.transpose()).transpose(); }

bool same_column_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  return column_lattice(a) == column_lattice(b);
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t m = a.rows();
  const std::size_t p = a.cols();
  const std::size_t q = b.cols();
  IntMatrix joint(m, p + q);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) joint(i, j) = a(i, j);
    for (std::size_t j = 0; j < q; ++j) joint(i, p + j) = -b(i, j);
  }
  const IntMatrix ker = kernel_basis(joint);
  std::vector<IntVector> cols;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    IntVector x(p);
    for (std::size_t j = 0; j < p; ++j) x[j] = ker(j, k);
    cols.push_back(a * x);
  }
  return column_lattice(IntMatrix::from_columns(cols, m));
}

Integer common_denominator(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  return l;
}

}  // namespace toric
