#include "godex/simd/row_kernels.hpp"

namespace godex::simd {
namespace {

void axpy_scalar(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n,
                 std::uint32_t p) {
  const std::uint64_t cc = c;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<std::uint32_t>((y[i] + cc * x[i]) % p);
  }
}

void scale_scalar(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p) {
  const std::uint64_t cc = c;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<std::uint32_t>((cc * y[i]) % p);
  }
}

const RowKernels kScalar{"scalar", axpy_scalar, scale_scalar};

}  // namespace

const RowKernels& scalar_kernels() { return kScalar; }

}  // namespace godex::simd
