#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "godex/matrix.hpp"

namespace godex {

struct AmbientMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotContained : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Inverse of a square matrix; throws std::domain_error if singular.
Matrix inverse(const Matrix& m);

/// A linear subspace of field^n, stored as a basis in columns.
///
/// The basis is kept in a normal form where the rows listed in coord_rows
/// form an identity block, so the coordinates of a member v are simply
/// v restricted to those rows.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of field^ambient.
  Subspace(const Field& field, std::size_t ambient);

  static Subspace full(const Field& field, std::size_t ambient);
  /// Column space of m.
  static Subspace span(const Matrix& m);
  /// {v : m v = 0}.
  static Subspace kernel(const Matrix& m);
  /// {v : m v in target}.
  static Subspace preimage(const Matrix& m, const Subspace& target);
  /// m applied to a subspace of its source.
  static Subspace image(const Matrix& m, const Subspace& source);
  /// Wraps a basis whose rows at coord_rows form the identity. Throws
  /// std::invalid_argument otherwise.
  static Subspace from_normal_form(Matrix basis, std::vector<std::size_t> coord_rows);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& coord_rows() const { return coord_rows_; }

  /// Coordinates of the columns of v (assumed members) in this basis.
  Matrix coordinates(const Matrix& v) const;
  /// True when every column of v lies in the subspace.
  bool contains(const Matrix& v) const;
  bool contains(const Subspace& other) const;

  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(Matrix basis, std::vector<std::size_t> coord_rows)
      : basis_(std::move(basis)), coord_rows_(std::move(coord_rows)) {}

  Matrix basis_;
  std::vector<std::size_t> coord_rows_;
};

/// Quotient Z/B with explicit coordinates.
///
/// projection is dim x dim(Z) and sends Z-coordinates to quotient
/// coordinates; section is dim(Z) x dim and picks representatives, with
/// projection * section = I.
struct Subquotient {
  std::size_t dim = 0;
  Matrix projection;
  Matrix section;
};

Subquotient subquotient(const Subspace& z, const Subspace& b);

}  // namespace godex
