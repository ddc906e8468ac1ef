#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrx/bitstring.hpp"
#include "qrx/entropy.hpp"
#include "qrx/simd/kernels.hpp"

namespace qrx {

/// Toeplitz string plus geometry. The implied m x bs matrix is
/// T[i][j] = ts[i - j + bs - 1], so row i is ts[i .. i+bs-1] read backwards.
struct ToeplitzSpec {
  BitString ts;
  std::size_t bs = 0;
  std::size_t m = 0;

  /// Throws std::invalid_argument unless ts.size() == bs + m - 1 and bs, m >= 1.
  ToeplitzSpec(BitString ts, std::size_t bs, std::size_t m);
};

/// K blocks of bs bits per batch, processed batch after batch.
struct BatchPlan {
  std::size_t blocks = 40;
  std::size_t bs = 1000;
  std::size_t batches = 20;

  std::size_t sample_bits() const noexcept { return blocks * bs * batches; }
  static BatchPlan from_params(const ExtractionParams& p);
};

/// Row i of T as a bs-bit string; throws std::out_of_range for i >= m.
BitString toeplitz_row(const ToeplitzSpec& spec, std::size_t i);

/// Reference product: materializes each row and takes and_parity with x.
BitString extract_block_oracle(const ToeplitzSpec& spec, const BitString& x);

/// Packed Toeplitz hashing against a fixed spec.
///
/// Row i of T dotted with x equals the window rev(ts)[m-1-i .. m-1-i+bs)
/// dotted with x. The constructor stores rev(ts) pre-shifted by every bit
/// offset 0..63, so each output bit is one word-aligned AND/XOR fold over
/// ceil(bs/64) words followed by a parity.
class ToeplitzHasher {
 public:
  explicit ToeplitzHasher(const ToeplitzSpec& spec,
                          const simd::KernelTable& kernels = simd::active_kernels());

  std::size_t bs() const noexcept { return bs_; }
  std::size_t m() const noexcept { return m_; }
  simd::Isa isa() const noexcept { return kernels_->isa; }

  /// x.size() must equal bs.
  BitString hash(const BitString& x) const;

 private:
  std::size_t bs_;
  std::size_t m_;
  std::size_t x_words_;
  std::size_t stride_;
  std::vector<std::uint64_t> shifted_;  // 64 rows of stride_ words
  const simd::KernelTable* kernels_;
};

/// Same output as extract_block_oracle, via ToeplitzHasher.
BitString extract_block_fast(const ToeplitzSpec& spec, const BitString& x);

/// Splits raw into batches x K blocks (block-major) and concatenates the
/// per-block outputs in the same order. Blocks are hashed by `workers`
/// threads (0 = hardware concurrency); the result does not depend on it.
BitString extract_sample(const BatchPlan& plan, const ToeplitzSpec& spec, const BitString& raw,
                         unsigned workers = 0,
                         const simd::KernelTable& kernels = simd::active_kernels());

/// GF(2) rank of the m x bs matrix T.
std::size_t toeplitz_rank(const ToeplitzSpec& spec);

}  // namespace qrx
