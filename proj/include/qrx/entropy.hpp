#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "qrx/bitstring.hpp"

namespace qrx {

/// Occurrence counts of 8-bit ADC codes.
struct SymbolHistogram {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;

  void add(std::uint8_t symbol, std::uint64_t n = 1) noexcept {
    counts[symbol] += n;
    total += n;
  }
  SymbolHistogram& operator+=(const SymbolHistogram& other) noexcept;

  static SymbolHistogram from_bytes(std::span<const std::uint8_t> samples);
  /// Groups bits MSB-first into bytes; length must be a multiple of 8.
  static SymbolHistogram from_bits(const BitString& bits);
};

/// -log2(max_i counts[i] / total) in bits per 8-bit symbol. Throws
/// std::invalid_argument on an empty histogram.
double min_entropy(const SymbolHistogram& h);

/// Leftover hash lemma sizing: floor(bs * hmin/8 - 2 * eps_exponent).
/// Throws std::invalid_argument when the result is not positive, or for bs
/// not a multiple of 8, hmin outside (0, 8], or eps_exponent <= 0.
std::size_t output_length(std::size_t bs, double hmin_per_symbol, double eps_exponent);

struct ExtractionParams {
  std::size_t bs = 1000;
  std::size_t m = 300;
  double eps_exponent = 12.5;
  double hmin_per_symbol = 2.6;
  std::size_t blocks = 40;  // K
  std::size_t sample_bits = 800'000;

  std::size_t batch_bits() const noexcept { return blocks * bs; }
  std::size_t batches() const noexcept { return sample_bits / batch_bits(); }
  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

double extraction_ratio(const ExtractionParams& p);

}  // namespace qrx
