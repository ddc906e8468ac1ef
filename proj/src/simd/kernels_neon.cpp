#include <arm_neon.h>

#include "qrx/simd/kernels.hpp"

namespace qrx::simd::neon {

std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    acc = veorq_u64(acc, vandq_u64(vld1q_u64(a + k), vld1q_u64(b + k)));
  }
  std::uint64_t out = vgetq_lane_u64(acc, 0) ^ vgetq_lane_u64(acc, 1);
  for (; k < n; ++k) out ^= a[k] & b[k];
  return out;
}

}  // namespace qrx::simd::neon
