#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsum/scalar.hpp"

namespace dsum {

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows,
                          std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const Scalar> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<Scalar> row_vector(std::size_t i) const;
  std::vector<Scalar> column_vector(std::size_t j) const;

  void append_row(std::span<const Scalar> values);
  bool is_zero() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  std::vector<Scalar> operator*(std::span<const Scalar> v) const;
  /// Promote every entry into F_p (p = 0 leaves the matrix unchanged).
  Matrix in_field(std::uint64_t p) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  /// Rows as lists of rational strings, e.g. [["1","0"],["1/2","3"]].
  std::vector<std::vector<std::string>> to_strings() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;  ///< same shape as the input; zero rows at the bottom
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  ///< pivot column of reduced row k
};

/// Canonical reduced row-echelon form by exact Gauss-Jordan elimination.
/// Column order is fixed; the pivot row for each column is the candidate with
/// the fewest nonzeros, which affects speed only.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Rows form the RREF basis of the right nullspace.
Matrix kernel_basis(const Matrix& m);

Scalar determinant(const Matrix& m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Some x with m * x = b, or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve(const Matrix& m,
                                         std::span<const Scalar> b);

/// Rank of a rational matrix reduced modulo the prime p, after clearing
/// denominators row by row. A lower bound for the rank over Q.
std::size_t rank_mod_p(const Matrix& m, std::uint64_t p);

}  // namespace dsum
