#include "qrx/source.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string>

namespace qrx {
namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double peak_probability(double sigma, double dc_offset) {
  const auto p = code_probabilities(sigma, dc_offset);
  return *std::max_element(p.begin(), p.end());
}

}  // namespace

void SimSourceConfig::validate() const {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  if (!(noise_sigma > 0.0)) throw std::invalid_argument("noise_sigma must be positive");
  if (!(dc_offset >= 0.0 && dc_offset <= 255.0)) {
    throw std::invalid_argument("dc_offset must lie in [0, 255]");
  }
}

std::vector<std::uint8_t> simulate_samples(const SimSourceConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.rng_nonce);
  std::normal_distribution<double> noise(cfg.dc_offset, cfg.noise_sigma);
  std::vector<std::uint8_t> out(cfg.n_samples);
  for (auto& s : out) {
    const double v = std::clamp(std::round(noise(rng)), 0.0, 255.0);
    s = static_cast<std::uint8_t>(v);
  }
  return out;
}

BitString simulate_raw(const SimSourceConfig& cfg) {
  return BitString::from_bytes_msb(simulate_samples(cfg));
}

std::vector<double> code_probabilities(double sigma, double dc_offset) {
  std::vector<double> p(256);
  for (int c = 0; c < 256; ++c) {
    const double lo = c == 0 ? 0.0 : normal_cdf((c - 0.5 - dc_offset) / sigma);
    const double hi = c == 255 ? 1.0 : normal_cdf((c + 0.5 - dc_offset) / sigma);
    p[static_cast<std::size_t>(c)] = hi - lo;
  }
  return p;
}

double calibrate_sigma(double target_hmin, double dc_offset) {
  if (!(target_hmin > 0.0 && target_hmin < 8.0)) {
    throw std::invalid_argument("target min-entropy must lie in (0, 8)");
  }
  if (!(dc_offset >= 0.0 && dc_offset <= 255.0)) {
    throw std::invalid_argument("dc_offset must lie in [0, 255]");
  }
  const double target_p = std::exp2(-target_hmin);

  // The peak probability falls with sigma until the clamped edge codes start
  // to dominate; locate that minimum on a log grid and bisect below it.
  double best_sigma = 1e-3;
  double best_p = 1.0;
  for (double s = 1e-3; s < 1e4; s *= 1.02) {
    const double p = peak_probability(s, dc_offset);
    if (p < best_p) {
      best_p = p;
      best_sigma = s;
    }
  }
  if (target_p < best_p) {
    throw std::invalid_argument("min-entropy " + std::to_string(target_hmin) +
                                " bits is unattainable: clamping keeps the peak code probability >= " +
                                std::to_string(best_p));
  }
  double lo = 1e-3;
  double hi = best_sigma;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (peak_probability(mid, dc_offset) > target_p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

BitString load_raw(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.empty()) throw std::runtime_error("raw file '" + path.string() + "' is empty");
  return BitString::from_bytes_msb(bytes);
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace qrx
