#pragma once

// Row operations over GF(p) used by elimination and matrix products.
//
// Every kernel has a portable scalar reference. Vector variants are compiled
// in their own translation units and picked at runtime from the CPU feature
// set; the environment variable GODEX_SIMD=scalar forces the reference path.

#include <cstddef>
#include <cstdint>

namespace godex::simd {

/// Largest characteristic the vector kernels accept. Above this the scalar
/// reference is always used.
inline constexpr std::uint32_t kVectorPrimeLimit = 1u << 15;

struct RowKernels {
  const char* name;
  /// y[i] = (y[i] + c * x[i]) mod p, with all inputs already reduced.
  void (*axpy)(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n,
               std::uint32_t p);
  /// y[i] = (c * y[i]) mod p.
  void (*scale)(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p);
};

const RowKernels& scalar_kernels();
/// nullptr when the binary or the CPU lacks AVX2.
const RowKernels* avx2_kernels();
/// nullptr unless built for an ARM target with NEON.
const RowKernels* neon_kernels();

/// Kernels chosen once per process for characteristic p.
const RowKernels& kernels_for(std::uint32_t p);

}  // namespace godex::simd
