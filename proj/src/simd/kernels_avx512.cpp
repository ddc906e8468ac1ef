#include <immintrin.h>

#include "qrx/simd/kernels.hpp"

namespace qrx::simd::avx512 {

// 0x78 is the ternary-logic truth table for acc ^ (a & b).
std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m512i acc = _mm512_setzero_si512();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m512i va = _mm512_loadu_si512(a + k);
    const __m512i vb = _mm512_loadu_si512(b + k);
    acc = _mm512_ternarylogic_epi64(acc, va, vb, 0x78);
  }
  if (k < n) {
    const __mmask8 tail = static_cast<__mmask8>((1U << (n - k)) - 1U);
    const __m512i va = _mm512_maskz_loadu_epi64(tail, a + k);
    const __m512i vb = _mm512_maskz_loadu_epi64(tail, b + k);
    acc = _mm512_ternarylogic_epi64(acc, va, vb, 0x78);
  }
  alignas(64) std::uint64_t lanes[8];
  _mm512_store_si512(lanes, acc);
  std::uint64_t out = 0;
  for (std::uint64_t lane : lanes) out ^= lane;
  return out;
}

}  // namespace qrx::simd::avx512
