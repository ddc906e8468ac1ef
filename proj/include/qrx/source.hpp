#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "qrx/bitstring.hpp"

namespace qrx {

/// Stand-in for the phase-noise ADC: i.i.d. normal samples, clamped to
/// [0, 255] and rounded to the nearest code.
struct SimSourceConfig {
  std::size_t n_samples = 100'000;
  double noise_sigma = 2.4;
  double dc_offset = 128.0;
  std::uint64_t rng_nonce = 0;

  void validate() const;
};

std::vector<std::uint8_t> simulate_samples(const SimSourceConfig& cfg);
/// simulate_samples serialized MSB-first, 8 bits per sample.
BitString simulate_raw(const SimSourceConfig& cfg);

/// Probability of each ADC code under the clamped, rounded normal.
std::vector<double> code_probabilities(double sigma, double dc_offset);

/// Sigma whose most probable code has probability 2^-target_hmin. Bisects on
/// the branch where the peak probability falls as sigma grows; throws
/// std::invalid_argument when the target lies below the smallest peak
/// probability clamping allows.
double calibrate_sigma(double target_hmin, double dc_offset);

/// Headerless byte file, one sample per byte, MSB-first bits.
BitString load_raw(const std::filesystem::path& path);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace qrx
