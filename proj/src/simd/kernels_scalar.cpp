#include "qrx/simd/kernels.hpp"

namespace qrx::simd::scalar {

std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < n; ++k) acc ^= a[k] & b[k];
  return acc;
}

}  // namespace qrx::simd::scalar
