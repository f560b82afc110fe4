#include "godex/exactlin.hpp"

#include <utility>

#include "godex/simd/row_kernels.hpp"

namespace godex {
namespace {

// Gauss-Jordan over GF(p) on raw rows. Rows whose entry in the pivot column
// is already zero are skipped, which keeps elimination of sparse block
// matrices cheap. With reduce == false only rows below the pivot are
// cleared (enough for rank).
std::vector<std::size_t> eliminate_modp(std::uint32_t* a, std::size_t rows, std::size_t cols,
                                        std::uint32_t p, bool reduce) {
  const auto& kern = simd::kernels_for(p);
  std::vector<std::size_t> pivots;
  std::vector<std::uint32_t> tmp(cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::copy(a + piv * cols + c, a + piv * cols + cols, tmp.begin());
      std::copy(a + r * cols + c, a + r * cols + cols, a + piv * cols + c);
      std::copy(tmp.begin(), tmp.begin() + (cols - c), a + r * cols + c);
    }
    std::uint32_t* prow = a + r * cols;
    if (prow[c] != 1) kern.scale(prow + c, modp::inv(prow[c], p), cols - c, p);
    for (std::size_t i = reduce ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t v = a[i * cols + c];
      if (v != 0) kern.axpy(a + i * cols + c, prow + c, p - v, cols - c, p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::size_t> eliminate_rational(mpq_class* a, std::size_t rows, std::size_t cols,
                                            bool reduce) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  mpq_class factor;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    mpq_class* prow = a + r * cols;
    if (prow[c] != 1) {
      mpq_class inv = 1 / prow[c];
      for (std::size_t j = c; j < cols; ++j)
        if (prow[j] != 0) prow[j] *= inv;
    }
    for (std::size_t i = reduce ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      mpq_class* row = a + i * cols;
      if (row[c] == 0) continue;
      factor = row[c];
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) row[j] -= factor * prow[j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::size_t> eliminate(Matrix& m, bool reduce) {
  if (m.field().is_prime()) {
    return eliminate_modp(m.residues().data(), m.rows(), m.cols(), m.field().characteristic(), reduce);
  }
  return eliminate_rational(m.rationals().data(), m.rows(), m.cols(), reduce);
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& sorted, std::size_t n) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < sorted.size() && sorted[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

Echelon rref(const Matrix& m) {
  Echelon e{m, {}};
  e.pivots = eliminate(e.reduced, true);
  return e;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  Matrix work = m;
  return eliminate(work, false).size();
}

Subspace::Subspace(const Field& field, std::size_t ambient) : basis_(field, ambient, 0) {}

Subspace Subspace::full(const Field& field, std::size_t ambient) {
  std::vector<std::size_t> rows(ambient);
  for (std::size_t i = 0; i < ambient; ++i) rows[i] = i;
  return Subspace(Matrix::identity(field, ambient), std::move(rows));
}

Subspace Subspace::span(const Matrix& m) {
  if (m.cols() == 0) return Subspace(m.field(), m.rows());
  Echelon e = rref(m.transposed());
  Matrix top = e.reduced.block(0, 0, e.pivots.size(), m.rows());
  return Subspace(top.transposed(), std::move(e.pivots));
}

Subspace Subspace::kernel(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.cols();
  if (m.rows() == 0) return full(f, n);
  Echelon e = rref(m);
  std::vector<std::size_t> free = complement(e.pivots, n);
  Matrix basis(f, n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis.set(free[k], k, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (e.reduced.entry_is_zero(r, free[k])) continue;
      if (f.is_prime()) {
        basis.residues()[e.pivots[r] * free.size() + k] =
            modp::neg(e.reduced.residues()[r * n + free[k]], f.characteristic());
      } else {
        basis.rationals()[e.pivots[r] * free.size() + k] = -e.reduced.rationals()[r * n + free[k]];
      }
    }
  }
  return Subspace(std::move(basis), std::move(free));
}

Subspace Subspace::preimage(const Matrix& m, const Subspace& target) {
  if (m.rows() != target.ambient()) throw AmbientMismatch("preimage: target ambient mismatch");
  // y lies in V iff y = B * y[coord_rows], so Mx in V iff (I - B E) M x = 0.
  Matrix q = m - target.basis_ * m.select_rows(target.coord_rows_);
  return kernel(q);
}

Subspace Subspace::image(const Matrix& m, const Subspace& source) {
  if (m.cols() != source.ambient()) throw AmbientMismatch("image: source ambient mismatch");
  return span(m * source.basis_);
}

Subspace Subspace::from_normal_form(Matrix basis, std::vector<std::size_t> coord_rows) {
  if (coord_rows.size() != basis.cols() || !basis.select_rows(coord_rows).is_identity()) {
    throw std::invalid_argument("from_normal_form: basis is not the identity on the coordinate rows");
  }
  return Subspace(std::move(basis), std::move(coord_rows));
}

Matrix Subspace::coordinates(const Matrix& v) const {
  if (v.rows() != ambient()) throw AmbientMismatch("coordinates: ambient mismatch");
  return v.select_rows(coord_rows_);
}

bool Subspace::contains(const Matrix& v) const {
  if (v.rows() != ambient()) throw AmbientMismatch("contains: ambient mismatch");
  return basis_ * coordinates(v) == v;
}

bool Subspace::contains(const Subspace& other) const { return contains(other.basis_); }

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient() != other.ambient()) throw AmbientMismatch("intersect: ambient mismatch");
  if (dim() == 0 || other.dim() == 0) return Subspace(field(), ambient());
  std::vector<Matrix> parts{basis_, other.basis_.negated()};
  Subspace k = kernel(Matrix::hstack(field(), ambient(), parts));
  Matrix coeffs = k.basis_.block(0, 0, dim(), k.dim());
  return span(basis_ * coeffs);
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient() != other.ambient()) throw AmbientMismatch("sum: ambient mismatch");
  std::vector<Matrix> parts{basis_, other.basis_};
  return span(Matrix::hstack(field(), ambient(), parts));
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient() == b.ambient() && a.dim() == b.dim() && a.contains(b);
}

Subquotient subquotient(const Subspace& z, const Subspace& b) {
  if (z.ambient() != b.ambient()) throw AmbientMismatch("subquotient: ambient mismatch");
  if (!z.contains(b)) throw NotContained("subquotient: B is not contained in Z");
  const Field& f = z.field();
  const std::size_t nz = z.dim();
  Subquotient out;
  if (b.dim() == 0) {
    out.dim = nz;
    out.projection = Matrix::identity(f, nz);
    out.section = Matrix::identity(f, nz);
    return out;
  }
  // Rows of r span the Z-coordinates of B, with identity at columns piv.
  Echelon e = rref(z.coordinates(b.basis()).transposed());
  Matrix r = e.reduced.block(0, 0, e.pivots.size(), nz);
  std::vector<std::size_t> rest = complement(e.pivots, nz);
  out.dim = rest.size();
  out.section = Matrix(f, nz, out.dim);
  for (std::size_t k = 0; k < rest.size(); ++k) out.section.set(rest[k], k, 1);
  // Subtract the B-part read off at the pivots, then keep the free coordinates.
  Matrix ep(f, e.pivots.size(), nz);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) ep.set(k, e.pivots[k], 1);
  Matrix reducer = Matrix::identity(f, nz) - r.transposed() * ep;
  out.projection = reducer.select_rows(rest);
  return out;
}

}  // namespace godex

namespace godex {

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<Matrix> parts{m, Matrix::identity(m.field(), n)};
  Echelon e = rref(Matrix::hstack(m.field(), n, parts));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw std::domain_error("inverse: singular matrix");
  return e.reduced.block(0, n, n, n);
}

}  // namespace godex
