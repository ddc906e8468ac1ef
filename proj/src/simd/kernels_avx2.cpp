#include <immintrin.h>

#include "qrx/simd/kernels.hpp"

namespace qrx::simd::avx2 {

std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m256i acc0 = _mm256_setzero_si256();
  __m256i acc1 = _mm256_setzero_si256();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k + 4));
    const __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k + 4));
    acc0 = _mm256_xor_si256(acc0, _mm256_and_si256(a0, b0));
    acc1 = _mm256_xor_si256(acc1, _mm256_and_si256(a1, b1));
  }
  for (; k + 4 <= n; k += 4) {
    const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    acc0 = _mm256_xor_si256(acc0, _mm256_and_si256(a0, b0));
  }
  acc0 = _mm256_xor_si256(acc0, acc1);
  const __m128i half = _mm_xor_si128(_mm256_castsi256_si128(acc0),
                                     _mm256_extracti128_si256(acc0, 1));
  std::uint64_t acc = static_cast<std::uint64_t>(_mm_cvtsi128_si64(half)) ^
                      static_cast<std::uint64_t>(_mm_extract_epi64(half, 1));
  for (; k < n; ++k) acc ^= a[k] & b[k];
  return acc;
}

}  // namespace qrx::simd::avx2
