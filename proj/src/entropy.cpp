#include "qrx/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qrx {

SymbolHistogram& SymbolHistogram::operator+=(const SymbolHistogram& other) noexcept {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  total += other.total;
  return *this;
}

SymbolHistogram SymbolHistogram::from_bytes(std::span<const std::uint8_t> samples) {
  SymbolHistogram h;
  for (std::uint8_t s : samples) h.add(s);
  return h;
}

SymbolHistogram SymbolHistogram::from_bits(const BitString& bits) {
  if (bits.size() % 8 != 0) {
    throw std::invalid_argument("bit length " + std::to_string(bits.size()) +
                                " is not a whole number of 8-bit symbols");
  }
  const auto bytes = bits.to_bytes_msb();
  return from_bytes(bytes);
}

double min_entropy(const SymbolHistogram& h) {
  if (h.total == 0) throw std::invalid_argument("min-entropy of an empty histogram");
  const std::uint64_t peak = *std::max_element(h.counts.begin(), h.counts.end());
  const double p_max = static_cast<double>(peak) / static_cast<double>(h.total);
  // -log2(1) is -0.0; report a clean zero.
  return peak == h.total ? 0.0 : -std::log2(p_max);
}

std::size_t output_length(std::size_t bs, double hmin_per_symbol, double eps_exponent) {
  if (bs == 0 || bs % 8 != 0) {
    throw std::invalid_argument("block size " + std::to_string(bs) +
                                " must be a positive multiple of 8");
  }
  if (!(hmin_per_symbol > 0.0 && hmin_per_symbol <= 8.0)) {
    throw std::invalid_argument("min-entropy per symbol must lie in (0, 8]");
  }
  if (!(eps_exponent > 0.0)) throw std::invalid_argument("security exponent must be positive");
  const double raw = static_cast<double>(bs) * hmin_per_symbol / 8.0 - 2.0 * eps_exponent;
  // Absorb binary rounding of decimal inputs such as 2.6 before flooring.
  const double m = std::floor(raw + 1e-9);
  if (m <= 0.0) throw std::invalid_argument("insufficient entropy for requested security");
  return static_cast<std::size_t>(m);
}

void ExtractionParams::validate() const {
  if (bs == 0 || bs % 8 != 0) {
    throw std::invalid_argument("bs=" + std::to_string(bs) + " must be a positive multiple of 8");
  }
  if (m == 0 || m > bs) {
    throw std::invalid_argument("m=" + std::to_string(m) + " must lie in [1, bs=" +
                                std::to_string(bs) + "]");
  }
  if (blocks == 0) throw std::invalid_argument("block count K must be >= 1");
  if (sample_bits == 0 || sample_bits % batch_bits() != 0) {
    throw std::invalid_argument("sample of " + std::to_string(sample_bits) +
                                " bits is not a whole number of " + std::to_string(batch_bits()) +
                                "-bit batches");
  }
  if (!(hmin_per_symbol > 0.0 && hmin_per_symbol <= 8.0)) {
    throw std::invalid_argument("min-entropy per symbol must lie in (0, 8]");
  }
  if (!(eps_exponent > 0.0)) throw std::invalid_argument("security exponent must be positive");
}

double extraction_ratio(const ExtractionParams& p) {
  return static_cast<double>(p.m) / static_cast<double>(p.bs);
}

}  // namespace qrx
