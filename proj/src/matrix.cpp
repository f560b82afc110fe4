#include "godex/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "godex/simd/row_kernels.hpp"

namespace godex {

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (field.is_prime()) {
    residues_.assign(rows * cols, 0);
  } else {
    rationals_.assign(rows * cols, mpq_class(0));
  }
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_ints(const Field& field, std::size_t rows, std::size_t cols,
                         std::initializer_list<long long> entries) {
  return from_ints(field, rows, cols, std::span<const long long>(entries.begin(), entries.size()));
}

Matrix Matrix::from_ints(const Field& field, std::size_t rows, std::size_t cols,
                         std::span<const long long> entries) {
  if (entries.size() != rows * cols) throw std::invalid_argument("from_ints: entry count mismatch");
  Matrix m(field, rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) m.set(k / cols, k % cols, entries[k]);
  return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  if (field_.is_prime()) return Scalar(field_, static_cast<long long>(residues_[i * cols_ + j]));
  return Scalar(field_, rationals_[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  if (!(value.field() == field_)) throw std::invalid_argument("Matrix::set: field mismatch");
  if (field_.is_prime()) {
    residues_[i * cols_ + j] = value.residue();
  } else {
    rationals_[i * cols_ + j] = value.rational();
  }
}

void Matrix::set(std::size_t i, std::size_t j, long long value) {
  if (field_.is_prime()) {
    residues_[i * cols_ + j] = modp::reduce(value, field_.characteristic());
  } else {
    rationals_[i * cols_ + j] = mpq_class(static_cast<long>(value));
  }
}

bool Matrix::entry_is_zero(std::size_t i, std::size_t j) const {
  return field_.is_prime() ? residues_[i * cols_ + j] == 0 : rationals_[i * cols_ + j] == 0;
}

bool Matrix::is_zero() const {
  if (field_.is_prime()) {
    for (auto v : residues_)
      if (v != 0) return false;
  } else {
    for (const auto& v : rationals_)
      if (v != 0) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      bool one = field_.is_prime() ? residues_[i * cols_ + j] == 1 : rationals_[i * cols_ + j] == 1;
      if (i == j ? !one : !entry_is_zero(i, j)) return false;
    }
  }
  return true;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  if (field_.is_prime()) {
    for (auto v : residues_) n += v != 0;
  } else {
    for (const auto& v : rationals_) n += v != 0;
  }
  return n;
}

void Matrix::check_same_shape(const Matrix& rhs, const char* op) const {
  if (!(field_ == rhs.field_) || rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument(std::string("Matrix ") + op + ": shape or field mismatch (" +
                                std::to_string(rows_) + "x" + std::to_string(cols_) + " vs " +
                                std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_) + ")");
  }
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (!(field_ == rhs.field_) || cols_ != rhs.rows_) {
    throw std::invalid_argument("Matrix product: shape mismatch (" + std::to_string(rows_) + "x" +
                                std::to_string(cols_) + " times " + std::to_string(rhs.rows_) + "x" +
                                std::to_string(rhs.cols_) + ")");
  }
  Matrix out(field_, rows_, rhs.cols_);
  if (out.empty() || cols_ == 0) return out;
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    const auto& kern = simd::kernels_for(p);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint32_t* dst = out.residues_.data() + i * out.cols_;
      const std::uint32_t* arow = residues_.data() + i * cols_;
      for (std::size_t k = 0; k < cols_; ++k) {
        if (arow[k] != 0) kern.axpy(dst, rhs.residues_.data() + k * rhs.cols_, arow[k], rhs.cols_, p);
      }
    }
  } else {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const mpq_class& a = rationals_[i * cols_ + k];
        if (a == 0) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) {
          const mpq_class& b = rhs.rationals_[k * rhs.cols_ + j];
          if (b != 0) out.rationals_[i * out.cols_ + j] += a * b;
        }
      }
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  check_same_shape(rhs, "+");
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    for (std::size_t k = 0; k < residues_.size(); ++k) residues_[k] = modp::add(residues_[k], rhs.residues_[k], p);
  } else {
    for (std::size_t k = 0; k < rationals_.size(); ++k) rationals_[k] += rhs.rationals_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  check_same_shape(rhs, "-");
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    for (std::size_t k = 0; k < residues_.size(); ++k) residues_[k] = modp::sub(residues_[k], rhs.residues_[k], p);
  } else {
    for (std::size_t k = 0; k < rationals_.size(); ++k) rationals_[k] -= rhs.rationals_[k];
  }
  return *this;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  out += rhs;
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  Matrix out = *this;
  out -= rhs;
  return out;
}

Matrix Matrix::negated() const { return scaled(-1); }

Matrix Matrix::scaled(long long c) const {
  Matrix out = *this;
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    simd::kernels_for(p).scale(out.residues_.data(), modp::reduce(c, p), out.residues_.size(), p);
  } else {
    mpq_class cc(static_cast<long>(c));
    for (auto& v : out.rationals_) v *= cc;
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_prime()) {
        out.residues_[j * rows_ + i] = residues_[i * cols_ + j];
      } else {
        out.rationals_[j * rows_ + i] = rationals_[i * cols_ + j];
      }
    }
  }
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= rows_) throw std::out_of_range("select_rows: index out of range");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_prime()) {
        out.residues_[r * cols_ + j] = residues_[rows[r] * cols_ + j];
      } else {
        out.rationals_[r * cols_ + j] = rationals_[rows[r] * cols_ + j];
      }
    }
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] >= cols_) throw std::out_of_range("select_cols: index out of range");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (field_.is_prime()) {
        out.residues_[i * cols.size() + c] = residues_[i * cols_ + cols[c]];
      } else {
        out.rationals_[i * cols.size() + c] = rationals_[i * cols_ + cols[c]];
      }
    }
  }
  return out;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw std::out_of_range("Matrix::block out of range");
  Matrix out(field_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) {
      if (field_.is_prime()) {
        out.residues_[i * ncols + j] = residues_[(row0 + i) * cols_ + col0 + j];
      } else {
        out.rationals_[i * ncols + j] = rationals_[(row0 + i) * cols_ + col0 + j];
      }
    }
  }
  return out;
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& m) {
  if (!(m.field_ == field_)) throw std::invalid_argument("set_block: field mismatch");
  if (row0 + m.rows_ > rows_ || col0 + m.cols_ > cols_) throw std::out_of_range("set_block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (field_.is_prime()) {
        residues_[(row0 + i) * cols_ + col0 + j] = m.residues_[i * m.cols_ + j];
      } else {
        rationals_[(row0 + i) * cols_ + col0 + j] = m.rationals_[i * m.cols_ + j];
      }
    }
  }
}

void Matrix::add_block(std::size_t row0, std::size_t col0, const Matrix& m, long long sign) {
  if (!(m.field_ == field_)) throw std::invalid_argument("add_block: field mismatch");
  if (row0 + m.rows_ > rows_ || col0 + m.cols_ > cols_) throw std::out_of_range("add_block out of range");
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    const std::uint32_t c = modp::reduce(sign, p);
    const auto& kern = simd::kernels_for(p);
    if (m.cols_ == 0) return;
    for (std::size_t i = 0; i < m.rows_; ++i) {
      kern.axpy(residues_.data() + (row0 + i) * cols_ + col0, m.residues_.data() + i * m.cols_, c, m.cols_, p);
    }
  } else {
    mpq_class c(static_cast<long>(sign));
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) {
        const mpq_class& v = m.rationals_[i * m.cols_ + j];
        if (v != 0) rationals_[(row0 + i) * cols_ + col0 + j] += c * v;
      }
    }
  }
}

Matrix Matrix::hstack(const Field& field, std::size_t rows, std::span<const Matrix> parts) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows_ != rows) throw std::invalid_argument("hstack: row count mismatch");
    cols += p.cols_;
  }
  Matrix out(field, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(0, c, p);
    c += p.cols_;
  }
  return out;
}

Matrix Matrix::vstack(const Field& field, std::size_t cols, std::span<const Matrix> parts) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols_ != cols) throw std::invalid_argument("vstack: column count mismatch");
    rows += p.rows_;
  }
  Matrix out(field, rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.set_block(r, 0, p);
    r += p.rows_;
  }
  return out;
}

Matrix Matrix::block_diagonal(const Field& field, std::span<const Matrix> parts) {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows_;
    cols += p.cols_;
  }
  Matrix out(field, rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    out.set_block(r, c, p);
    r += p.rows_;
    c += p.cols_;
  }
  return out;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  if (!(a.field_ == b.field_)) throw std::invalid_argument("kronecker: field mismatch");
  Matrix out(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (a.entry_is_zero(i, j)) continue;
      if (a.field_.is_prime()) {
        out.add_block(i * b.rows_, j * b.cols_, b, a.residues_[i * a.cols_ + j]);
      } else {
        const mpq_class& s = a.rationals_[i * a.cols_ + j];
        for (std::size_t k = 0; k < b.rows_; ++k) {
          for (std::size_t l = 0; l < b.cols_; ++l) {
            out.rationals_[(i * b.rows_ + k) * out.cols_ + j * b.cols_ + l] = s * b.rationals_[k * b.cols_ + l];
          }
        }
      }
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.residues_ == b.residues_ &&
         a.rationals_ == b.rationals_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).to_string();
  }
  os << "]";
  return os.str();
}

}  // namespace godex
