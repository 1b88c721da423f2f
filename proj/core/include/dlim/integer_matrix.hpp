#pragma once

// Dense integer matrices over arbitrary-precision integers, with the normal
// forms everything else in dlim is computed from.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dlim {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

/// Row-major dense matrix of Integers. Value type; all operations allocate.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows);
  static IntMatrix diagonal(std::span<const Integer> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  IntMatrix transpose() const;

  /// Stacks `below` under this matrix; column counts must agree.
  IntMatrix stacked(const IntMatrix& below) const;
  /// Places `right` next to this matrix; row counts must agree.
  IntMatrix joined(const IntMatrix& right) const;
  IntMatrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                      std::size_t ncols) const;

  Vector apply(std::span<const Integer> x) const;

  bool is_zero() const;
  bool is_diagonal() const;

  /// Exact determinant (fraction-free Bareiss elimination).
  Integer determinant() const;

  // Elementary operations, used by the normal-form algorithms.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::vector<std::vector<Integer>> to_rows() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// U * M * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
/// `V_inverse` is carried along because change-of-basis for presentations
/// needs it and recomputing it is expensive.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix V_inverse;

  std::size_t rank() const;
  /// D(i, i), or 0 past the end of the diagonal.
  Integer diagonal(std::size_t i) const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
/// Zero rows are dropped; pivots are positive, entries above a pivot lie in
/// [0, pivot). Two row sets span the same lattice iff their HNFs are equal.
IntMatrix hermite_row_basis(const IntMatrix& m);

/// Reduces `x` against an HNF row basis; the result is zero iff x lies in
/// the lattice. Entries past the pivot columns are left as is.
Vector hermite_reduce(const IntMatrix& hnf, Vector x);

/// Rows form a basis (in HNF) of { x : m * x = 0 }.
IntMatrix integer_kernel(const IntMatrix& m);

/// Some integer solution of a * x = b, if one exists.
std::optional<Vector> solve_integer(const IntMatrix& a, std::span<const Integer> b);

/// Same as solve_integer, reusing a precomputed Smith form of `a`.
std::optional<Vector> solve_integer(const SmithForm& snf, std::span<const Integer> b);

/// Floor-style remainder in [0, |modulus|); modulus must be nonzero.
Integer mod_floor(const Integer& value, const Integer& modulus);

}  // namespace dlim
