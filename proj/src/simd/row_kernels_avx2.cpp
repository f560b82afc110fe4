// Compiled with -mavx2; only reached after a runtime CPU check.
#include "godex/simd/row_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace godex::simd {
namespace {

// For p < 2^15 the sum t = y + c*x stays below 2^30. The quotient t/p is
// estimated in single precision; its error is far below one, so the
// remainder lands in [-p, 2p) and two conditional corrections finish it.
inline __m256i reduce_lanes(__m256i t, __m256 inv_p, __m256i vp) {
  __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(t), inv_p));
  __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, vp));
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, vp));
  __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
  return _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
}

void axpy_avx2(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n,
               std::uint32_t p) {
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i t = _mm256_add_epi32(vy, _mm256_mullo_epi32(vc, vx));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce_lanes(t, inv_p, vp));
  }
  const std::uint64_t cc = c;
  for (; i < n; ++i) y[i] = static_cast<std::uint32_t>((y[i] + cc * x[i]) % p);
}

void scale_avx2(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p) {
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i t = _mm256_mullo_epi32(vc, vy);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce_lanes(t, inv_p, vp));
  }
  const std::uint64_t cc = c;
  for (; i < n; ++i) y[i] = static_cast<std::uint32_t>((cc * y[i]) % p);
}

const RowKernels kAvx2{"avx2", axpy_avx2, scale_avx2};

}  // namespace

const RowKernels* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
}

}  // namespace godex::simd

#else

namespace godex::simd {
const RowKernels* avx2_kernels() { return nullptr; }
}  // namespace godex::simd

#endif
