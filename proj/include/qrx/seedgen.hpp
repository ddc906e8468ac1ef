#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qrx/bitstring.hpp"

namespace qrx {

inline constexpr unsigned kLfsrWidth = 25;
inline constexpr std::size_t kSeedRawBits = 23;

/// Feedback taps for x^25 + x^22 + 1 with the register shifting toward cell 0:
/// the new top cell is cell0 ^ cell22.
inline const std::vector<unsigned> kDefaultTaps{0, 22};
inline const std::vector<unsigned> kDefaultFixedOnes{0, 24};

/// Fibonacci LFSR. Cell 0 is the least significant cell and the output; each
/// step shifts toward cell 0 and writes the XOR of the tapped cells into the
/// top cell.
class LfsrState {
 public:
  /// Throws std::invalid_argument for an all-zero register, a width outside
  /// [2, 32], taps outside the register, or taps that omit cell 0 (which
  /// would make the feedback map singular and let the register reach zero).
  LfsrState(std::uint32_t reg, std::vector<unsigned> taps, unsigned width = kLfsrWidth);

  std::uint32_t reg() const noexcept { return reg_; }
  unsigned width() const noexcept { return width_; }
  const std::vector<unsigned>& taps() const noexcept { return taps_; }
  bool cell(unsigned i) const noexcept { return (reg_ >> i) & 1U; }

  /// Emits cell 0, then advances one step.
  bool step() noexcept {
    const bool out = reg_ & 1U;
    const std::uint32_t fb = static_cast<std::uint32_t>(std::popcount(reg_ & tap_mask_) & 1);
    reg_ = (reg_ >> 1) | (fb << (width_ - 1));
    return out;
  }

  friend bool operator==(const LfsrState& a, const LfsrState& b) noexcept {
    return a.reg_ == b.reg_ && a.width_ == b.width_ && a.tap_mask_ == b.tap_mask_;
  }

 private:
  std::uint32_t reg_;
  std::uint32_t tap_mask_ = 0;
  unsigned width_;
  std::vector<unsigned> taps_;
};

/// Which raw bits seed the register and which cells are pinned to 1.
struct SeedRecipe {
  std::vector<std::size_t> raw_bit_offsets;  // 23 entries
  std::vector<unsigned> fixed_one_positions = kDefaultFixedOnes;

  /// Throws std::invalid_argument on wrong counts, duplicate or out-of-range
  /// fixed positions.
  void validate() const;
};

/// 23 distinct offsets in [0, raw_len), drawn from an mt19937_64 keyed by
/// nonce and sorted ascending.
SeedRecipe default_recipe(std::size_t raw_len, std::uint64_t nonce);

/// Fixed cells are 1; the free cells, in ascending cell order, take
/// raw[raw_bit_offsets[0]], raw[raw_bit_offsets[1]], ...
LfsrState build_seed(const BitString& raw, const SeedRecipe& recipe,
                     const std::vector<unsigned>& taps = kDefaultTaps);

/// Returns (output bit, next state).
std::pair<bool, LfsrState> lfsr_step(LfsrState state);

/// First `length` output bits; advances state.
BitString generate_toeplitz_string(LfsrState& state, std::size_t length);

/// Steps until the register returns to its starting value. Stops and
/// returns 0 after `limit` steps.
std::uint64_t lfsr_period(LfsrState state, std::uint64_t limit);

}  // namespace qrx
