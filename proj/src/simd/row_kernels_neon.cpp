#include "godex/simd/row_kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace godex::simd {
namespace {

// Same reduction scheme as the AVX2 variant: float quotient estimate, then
// corrections into [0, p).
inline uint32x4_t reduce_lanes(uint32x4_t t, float32x4_t inv_p, int32x4_t vp) {
  int32x4_t st = vreinterpretq_s32_u32(t);
  int32x4_t q = vcvtq_s32_f32(vmulq_f32(vcvtq_f32_s32(st), inv_p));
  int32x4_t r = vsubq_s32(st, vmulq_s32(q, vp));
  uint32x4_t neg = vcltq_s32(r, vdupq_n_s32(0));
  r = vaddq_s32(r, vandq_s32(vreinterpretq_s32_u32(neg), vp));
  uint32x4_t ge = vcgeq_s32(r, vp);
  r = vsubq_s32(r, vandq_s32(vreinterpretq_s32_u32(ge), vp));
  return vreinterpretq_u32_s32(r);
}

void axpy_neon(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n,
               std::uint32_t p) {
  const uint32x4_t vc = vdupq_n_u32(c);
  const int32x4_t vp = vdupq_n_s32(static_cast<int>(p));
  const float32x4_t inv_p = vdupq_n_f32(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t t = vmlaq_u32(vld1q_u32(y + i), vc, vld1q_u32(x + i));
    vst1q_u32(y + i, reduce_lanes(t, inv_p, vp));
  }
  const std::uint64_t cc = c;
  for (; i < n; ++i) y[i] = static_cast<std::uint32_t>((y[i] + cc * x[i]) % p);
}

void scale_neon(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p) {
  const uint32x4_t vc = vdupq_n_u32(c);
  const int32x4_t vp = vdupq_n_s32(static_cast<int>(p));
  const float32x4_t inv_p = vdupq_n_f32(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vst1q_u32(y + i, reduce_lanes(vmulq_u32(vc, vld1q_u32(y + i)), inv_p, vp));
  }
  const std::uint64_t cc = c;
  for (; i < n; ++i) y[i] = static_cast<std::uint32_t>((cc * y[i]) % p);
}

const RowKernels kNeon{"neon", axpy_neon, scale_neon};

}  // namespace

const RowKernels* neon_kernels() { return &kNeon; }

}  // namespace godex::simd

#else

namespace godex::simd {
const RowKernels* neon_kernels() { return nullptr; }
}  // namespace godex::simd

#endif
