#include <cstdlib>
#include <string_view>

#include "godex/simd/row_kernels.hpp"

namespace godex::simd {
namespace {

const RowKernels& pick_vector() {
  const char* env = std::getenv("GODEX_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
  if (const RowKernels* k = avx2_kernels()) return *k;
  if (const RowKernels* k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const RowKernels& kernels_for(std::uint32_t p) {
  static const RowKernels& vector = pick_vector();
  return p < kVectorPrimeLimit ? vector : scalar_kernels();
}

}  // namespace godex::simd
