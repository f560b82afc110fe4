#include <cstdlib>
#include <vector>

#include "doctest.h"

#include "godex/exactlin.hpp"
#include "godex/random.hpp"
#include "godex/simd/row_kernels.hpp"

using namespace godex;

namespace {

// Textbook elimination on plain integers mod p, independent of Matrix.
std::size_t naive_rank_mod(std::vector<std::vector<long long>> a, long long p) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    long long inv = 1;
    for (long long t = 1; t < p; ++t) {
      if ((a[r][c] % p) * t % p == 1) inv = t;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const long long f = a[i][c] % p * inv % p;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<long long>> to_ints(const Matrix& m) {
  std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).residue();
  }
  return out;
}

Matrix low_rank(Rng& rng, const Field& f, std::size_t rows, std::size_t cols) {
  const std::size_t k = static_cast<std::size_t>(rng.between(0, static_cast<int>(std::min(rows, cols))));
  return random_matrix(rng, f, rows, k) * random_matrix(rng, f, k, cols);
}

}  // namespace

TEST_CASE("field and scalar parsing") {
  CHECK(Field::parse("Q").is_rational());
  CHECK(Field::parse("GF(7)").characteristic() == 7);
  CHECK(Field::prime(5).to_string() == "GF(5)");
  CHECK_THROWS(Field::parse("GF(6)"));
  CHECK(Scalar::parse(Field::rationals(), "3/6").to_string() == "1/2");
  CHECK(Scalar::parse(Field::prime(5), "-1").residue() == 4);
  CHECK(Scalar::parse(Field::prime(5), "1/2").residue() == 3);
}

TEST_CASE("simd row kernels agree with the scalar reference") {
  const auto& ref = simd::scalar_kernels();
  std::vector<const simd::RowKernels*> variants{&simd::kernels_for(5), &simd::kernels_for(65521)};
  if (simd::avx2_kernels()) variants.push_back(simd::avx2_kernels());
  if (simd::neon_kernels()) variants.push_back(simd::neon_kernels());
  Rng rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 251u, 32749u}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 16u, 31u, 64u, 100u}) {
      std::vector<std::uint32_t> x(n), y(n);
      for (auto& v : x) v = static_cast<std::uint32_t>(rng.below(p));
      for (auto& v : y) v = static_cast<std::uint32_t>(rng.below(p));
      const auto c = static_cast<std::uint32_t>(rng.below(p));
      auto want_axpy = y, want_scale = y;
      ref.axpy(want_axpy.data(), x.data(), c, n, p);
      ref.scale(want_scale.data(), c, n, p);
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(want_axpy[i] == (y[i] + static_cast<std::uint64_t>(c) * x[i]) % p);
        REQUIRE(want_scale[i] == static_cast<std::uint64_t>(c) * y[i] % p);
      }
      for (const auto* k : variants) {
        if (p >= simd::kVectorPrimeLimit && k != &ref) continue;
        auto got_axpy = y, got_scale = y;
        k->axpy(got_axpy.data(), x.data(), c, n, p);
        k->scale(got_scale.data(), c, n, p);
        CHECK_MESSAGE(got_axpy == want_axpy, k->name << " axpy p=" << p << " n=" << n);
        CHECK_MESSAGE(got_scale == want_scale, k->name << " scale p=" << p << " n=" << n);
      }
    }
  }
}

TEST_CASE("rank matches naive elimination over GF(p)") {
  Rng rng(3);
  for (std::uint32_t p : {2u, 5u, 7u}) {
    const Field f = Field::prime(p);
    for (int t = 0; t < 30; ++t) {
      const auto rows = static_cast<std::size_t>(rng.between(0, 9));
      const auto cols = static_cast<std::size_t>(rng.between(0, 9));
      Matrix m = low_rank(rng, f, rows, cols);
      CHECK(rank(m) == naive_rank_mod(to_ints(m), p));
    }
  }
}

TEST_CASE("rank and nullity over Q") {
  Rng rng(4);
  const Field q = Field::rationals();
  for (int t = 0; t < 20; ++t) {
    Matrix m = low_rank(rng, q, 5, 6);
    Subspace k = Subspace::kernel(m);
    CHECK(rank(m) + k.dim() == 6);
    CHECK((m * k.basis()).is_zero());
  }
}

TEST_CASE("inverse and subquotient") {
  Rng rng(5);
  for (const Field& f : {Field::prime(5), Field::rationals()}) {
    Matrix a = random_invertible(rng, f, 4);
    CHECK((a * inverse(a)).is_identity());
    CHECK_THROWS_AS(inverse(Matrix(f, 2, 2)), std::domain_error);

    Matrix gen = random_matrix(rng, f, 6, 4);
    Subspace z = Subspace::span(gen);
    Subspace b = Subspace::span(gen * Matrix::from_ints(f, 4, 1, {1, 0, 1, 0}));
    Subquotient sq = subquotient(z, b);
    CHECK(sq.dim == z.dim() - b.dim());
    CHECK((sq.projection * sq.section).is_identity());
  }
}

TEST_CASE("subspace dimension formula and containment") {
  Rng rng(6);
  const Field f = Field::prime(3);
  for (int t = 0; t < 20; ++t) {
    Subspace a = Subspace::span(random_matrix(rng, f, 6, static_cast<std::size_t>(rng.between(0, 4))));
    Subspace b = Subspace::span(random_matrix(rng, f, 6, static_cast<std::size_t>(rng.between(0, 4))));
    Subspace s = a.sum(b), i = a.intersect(b);
    CHECK(s.dim() + i.dim() == a.dim() + b.dim());
    CHECK(s.contains(a));
    CHECK(a.contains(i));
    CHECK(b.contains(i));
    CHECK(Subspace::span(a.basis()) == a);
  }
  CHECK_THROWS_AS(Subspace(f, 2).sum(Subspace(f, 3)), AmbientMismatch);
}
