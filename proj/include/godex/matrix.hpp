#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "godex/field.hpp"

namespace godex {

/// Dense matrix over an exact field, row-major. Vectors are columns.
///
/// Entries are always canonical: residues in [0, p) over GF(p), lowest terms
/// over Q. Arithmetic skips zero entries, so products and eliminations of
/// the sparse block matrices built by the sheaf code cost roughly
/// nnz * width rather than rows * cols * width.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  /// Row-major integer entries, reduced into the field.
  static Matrix from_ints(const Field& field, std::size_t rows, std::size_t cols,
                          std::initializer_list<long long> entries);
  static Matrix from_ints(const Field& field, std::size_t rows, std::size_t cols,
                          std::span<const long long> entries);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& value);
  void set(std::size_t i, std::size_t j, long long value);
  bool entry_is_zero(std::size_t i, std::size_t j) const;
  bool is_zero() const;
  bool is_identity() const;
  std::size_t nonzeros() const;

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix negated() const;
  Matrix scaled(long long c) const;
  Matrix transposed() const;

  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix select_cols(std::span<const std::size_t> cols) const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const Matrix& m);
  void add_block(std::size_t row0, std::size_t col0, const Matrix& m, long long sign = 1);

  static Matrix hstack(const Field& field, std::size_t rows, std::span<const Matrix> parts);
  static Matrix vstack(const Field& field, std::size_t cols, std::span<const Matrix> parts);
  static Matrix block_diagonal(const Field& field, std::span<const Matrix> parts);
  /// Kronecker product a (x) b.
  static Matrix kronecker(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

  // Raw storage; only one of the two is populated, depending on the field.
  std::span<std::uint32_t> residues() { return residues_; }
  std::span<const std::uint32_t> residues() const { return residues_; }
  std::span<mpq_class> rationals() { return rationals_; }
  std::span<const mpq_class> rationals() const { return rationals_; }

 private:
  void check_same_shape(const Matrix& rhs, const char* op) const;

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> residues_;
  std::vector<mpq_class> rationals_;
};

}  // namespace godex
