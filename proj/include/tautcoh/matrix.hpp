#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tautcoh/scalar.hpp"

namespace tautcoh {

/// Dense row-major matrix over an exact field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  /// Builds from integer rows; all rows must have `cols` entries.
  static Matrix from_ints(Field f, const std::vector<std::vector<long>>& rows, std::size_t cols);
  static Matrix from_ints(Field f, const std::vector<std::vector<long>>& rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Scalar> values);
  void swap_rows(std::size_t a, std::size_t b);
  void truncate_rows(std::size_t n);

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix matrix;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Zero rows are dropped only by `row_space`.
RrefResult rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Canonical basis of the row space: the nonzero rows of the rref.
Matrix row_space(const Matrix& m);

/// Reduced-echelon basis of {x : m x = 0}; one row per basis vector.
Matrix kernel_basis(const Matrix& m);

/// Reduced-echelon basis of {y : y m = 0}.
Matrix left_kernel_basis(const Matrix& m);

/// Canonical basis of rowspace(a) ∩ rowspace(b). Throws InputError when the
/// ambient dimensions differ.
Matrix subspace_intersect(const Matrix& a, const Matrix& b);

/// Canonical basis of rowspace(a) + rowspace(b).
Matrix subspace_sum(const Matrix& a, const Matrix& b);

/// Canonical basis of the orthogonal complement under the standard dot product.
Matrix orthogonal_complement(const Matrix& a);

bool in_row_space(const Matrix& rref_basis, std::span<const Scalar> v);

/// Reduces v modulo the row space of an rref basis (kills pivot coordinates).
std::vector<Scalar> reduce_modulo(const Matrix& rref_basis, std::span<const Scalar> v);

/// Solves coefficients c with c * basis = v for v in the row space of an rref basis.
std::vector<Scalar> coordinates_in(const Matrix& rref_basis, std::span<const Scalar> v);

/// Extends a basis of `sub` to a basis of `sub + super`; rows of `sub` come
/// first. Returns (basis, dim sub).
std::pair<Matrix, std::size_t> extend_basis(const Matrix& sub, const Matrix& super);

enum class PowerKind { wedge, sym };

/// Subsets (wedge) or multisets (sym) of size p drawn from {0..n-1}, in colex order.
std::vector<std::vector<std::size_t>> power_basis(std::size_t n, std::size_t p, PowerKind kind);

/// Matrix of the induced map on the p-th exterior or symmetric power, with
/// row-vector convention (v -> v m). Rows and columns are indexed by
/// power_basis(rows) and power_basis(cols).
Matrix induced_power_matrix(const Matrix& m, std::size_t p, PowerKind kind);

/// Kronecker product, row index (i, j) -> i * b.rows() + j.
Matrix kronecker(const Matrix& a, const Matrix& b);

}  // namespace tautcoh
