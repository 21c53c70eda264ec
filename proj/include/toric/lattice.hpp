// Exact integer linear algebra: matrices over Z, Smith and Hermite normal
// forms, kernels, cokernels and finitely generated abelian groups.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  /// `cols` is only consulted when `rows` is empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> row_list() const;
  std::vector<IntVector> column_list() const;
  IntMatrix transpose() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t i);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);

Integer dot(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& v, const Integer& factor);
bool is_zero(const IntVector& v);
/// gcd of the entries; zero for the zero vector.
Integer content(const IntVector& v);
/// Divides by the content; the zero vector is returned unchanged.
IntVector primitive(IntVector v);
std::string to_string(const IntVector& v);

/// left * A * right = diag(diag) (padded with zeros), left and right unimodular.
struct SmithDecomposition {
  IntMatrix left;
  std::vector<Integer> diag;
  IntMatrix right;

  std::size_t rank() const;
};

/// Pivot rule: smallest absolute value, ties by lowest row then column.
SmithDecomposition smith_normal_form(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
/// Pivots are positive, entries above a pivot are reduced into [0, pivot).
/// Zero rows are dropped.
IntMatrix hermite_rows(const IntMatrix& a);

/// Z^free_rank + Z/torsion[0] + ... with torsion[i] | torsion[i+1], each >= 2.
/// Elements are coordinate tuples, free coordinates first.
struct FinAbGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  std::size_t coordinate_count() const { return free_rank + torsion.size(); }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Group order, or zero when infinite.
  Integer order() const;
  IntVector reduce(IntVector element) const;
  IntVector zero() const { return IntVector(coordinate_count(), 0); }
  std::string describe() const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) = default;
};

/// Z^rows / column-span(A) together with the quotient map.
struct Cokernel {
  FinAbGroup group;
  IntMatrix projection;  // coordinate_count x rows

  IntVector project(const IntVector& v) const;
};

Cokernel cokernel(const IntMatrix& a);

/// Columns form a basis of the (saturated) integer kernel, in Hermite form.
IntMatrix kernel_basis(const IntMatrix& a);

bool generates(const FinAbGroup& group, const std::vector<IntVector>& elements);

/// Order of the quotient group / <elements>, zero when infinite.
Integer quotient_order(const FinAbGroup& group, const std::vector<IntVector>& elements);

/// Integer solution of A x = b, if any.
std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b);
/// Rational solution of A x = b, if any (free variables set to zero).
std::optional<RatVector> solve_rational(const IntMatrix& a, const IntVector& b);

/// Lattice spanned by the columns of `a`, as Hermite-normalized columns.
IntMatrix column_lattice(const IntMatrix& a);
bool same_column_lattice(const IntMatrix& a, const IntMatrix& b);
/// Columns spanning the intersection of two column lattices in Z^rows.
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

/// Smallest positive integer clearing all denominators.
Integer common_denominator(const RatVector& v);

}  // namespace toric
