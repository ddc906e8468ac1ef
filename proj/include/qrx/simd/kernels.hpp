#pragma once

#include <cstddef>
#include <bit>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// GF(2) word kernels with one scalar reference and per-ISA variants.
// Every variant must return the same word for the same input; the dispatch
// layer only chooses which one runs.

namespace qrx::simd {

enum class Isa { kScalar, kAvx2, kAvx512, kNeon };

/// Returns XOR over k of (a[k] & b[k]). The parity of the result is the
/// GF(2) inner product of the two packed vectors.
using AndXorFoldFn = std::uint64_t (*)(const std::uint64_t* a,
                                       const std::uint64_t* b,
                                       std::size_t n);

struct KernelTable {
  Isa isa;
  AndXorFoldFn and_xor_fold;
};

namespace scalar {
std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}
#if defined(QRX_HAVE_AVX2)
namespace avx2 {
std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}
#endif
#if defined(QRX_HAVE_AVX512)
namespace avx512 {
std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}
#endif
#if defined(QRX_HAVE_NEON)
namespace neon {
std::uint64_t and_xor_fold(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}
#endif

std::string_view isa_name(Isa isa) noexcept;
/// Parses "scalar", "avx2", "avx512", "neon"; throws std::invalid_argument.
Isa parse_isa(std::string_view name);

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa) noexcept;
std::vector<Isa> available_isas();

/// Table for a specific ISA; throws std::invalid_argument if unavailable.
const KernelTable& kernels_for(Isa isa);

/// Widest available table, chosen once per process. The QRX_ISA environment
/// variable pins a specific ISA.
const KernelTable& active_kernels();

inline bool and_parity_words(std::span<const std::uint64_t> a,
                             std::span<const std::uint64_t> b) {
  return (std::popcount(active_kernels().and_xor_fold(a.data(), b.data(), a.size())) & 1) != 0;
}

}  // namespace qrx::simd
