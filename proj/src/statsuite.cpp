#include "qrx/statsuite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace qrx::sts {
namespace {

void require_length(const BitString& seq, const char* test) {
  if (seq.size() < kMinBits) {
    throw std::invalid_argument(std::string(test) + " needs at least " + std::to_string(kMinBits) +
                                " bits, got " + std::to_string(seq.size()));
  }
}

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double igamc(double a, double x) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(a, x);
}

}  // namespace

double monobit_frequency(const BitString& seq) {
  require_length(seq, "frequency test");
  const double n = static_cast<double>(seq.size());
  const double s = 2.0 * static_cast<double>(seq.popcount()) - n;
  return clamp_p(std::erfc(std::abs(s) / std::sqrt(2.0 * n)));
}

double block_frequency_test(const BitString& seq, std::size_t block_len) {
  require_length(seq, "block frequency test");
  if (block_len < 2 || block_len > seq.size()) {
    throw std::invalid_argument("block length " + std::to_string(block_len) +
                                " must lie in [2, " + std::to_string(seq.size()) + "]");
  }
  const std::size_t blocks = seq.size() / block_len;
  double chi2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const double pi = static_cast<double>(seq.window(b * block_len, block_len).popcount()) /
                      static_cast<double>(block_len);
    chi2 += (pi - 0.5) * (pi - 0.5);
  }
  chi2 *= 4.0 * static_cast<double>(block_len);
  return clamp_p(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0));
}

double runs_test(const BitString& seq) {
  require_length(seq, "runs test");
  const std::size_t n = seq.size();
  const double nd = static_cast<double>(n);
  const double pi = static_cast<double>(seq.popcount()) / nd;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(nd)) return 0.0;
  std::size_t runs = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) runs += seq[k] != seq[k + 1] ? 1 : 0;
  const double v = static_cast<double>(runs);
  const double num = std::abs(v - 2.0 * nd * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * nd) * pi * (1.0 - pi);
  return clamp_p(std::erfc(num / den));
}

double cumulative_sums_test(const BitString& seq, CusumMode mode) {
  require_length(seq, "cumulative sums test");
  const long n = static_cast<long>(seq.size());
  long sum = 0;
  long z = 0;
  for (long k = 0; k < n; ++k) {
    const std::size_t idx = static_cast<std::size_t>(mode == CusumMode::kForward ? k : n - 1 - k);
    sum += seq[idx] ? 1 : -1;
    z = std::max(z, std::abs(sum));
  }
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double zd = static_cast<double>(z);
  // Summation limits use truncating integer division, as in the reference
  // implementation.
  double sum1 = 0.0;
  for (long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
    sum1 += normal_cdf((4.0 * k + 1.0) * zd / sqrt_n) - normal_cdf((4.0 * k - 1.0) * zd / sqrt_n);
  }
  double sum2 = 0.0;
  for (long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
    sum2 += normal_cdf((4.0 * k + 3.0) * zd / sqrt_n) - normal_cdf((4.0 * k + 1.0) * zd / sqrt_n);
  }
  return clamp_p(1.0 - sum1 + sum2);
}

void TestRunConfig::validate() const {
  if (bits_per_sequence < kMinBits) {
    throw std::invalid_argument("bits_per_sequence must be >= " + std::to_string(kMinBits));
  }
  if (n_sequences == 0) throw std::invalid_argument("n_sequences must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (block_len < 2 || block_len > bits_per_sequence) {
    throw std::invalid_argument("block_len must lie in [2, bits_per_sequence]");
  }
}

bool TestReport::all_passed() const noexcept {
  return std::all_of(tests.begin(), tests.end(), [](const TestResult& t) { return t.passed(); });
}

const TestResult& TestReport::find(const std::string& name) const {
  for (const auto& t : tests) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no test named '" + name + "' in report");
}

double proportion_bound(double alpha, std::size_t n_sequences) {
  const double p = 1.0 - alpha;
  return p - 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n_sequences));
}

double uniformity_p_value(const std::vector<double>& p_values) {
  if (p_values.empty()) return 0.0;
  std::array<double, 10> bins{};
  for (double p : p_values) bins[std::min<std::size_t>(9, static_cast<std::size_t>(p * 10.0))] += 1.0;
  const double expected = static_cast<double>(p_values.size()) / 10.0;
  double chi2 = 0.0;
  for (double b : bins) chi2 += (b - expected) * (b - expected) / expected;
  return clamp_p(igamc(4.5, chi2 / 2.0));
}

TestReport run_battery(const BitString& data, const TestRunConfig& cfg) {
  cfg.validate();
  const std::size_t needed = cfg.bits_per_sequence * cfg.n_sequences;
  if (data.size() < needed) {
    throw std::invalid_argument("battery needs " + std::to_string(needed) + " bits (" +
                                std::to_string(cfg.n_sequences) + " x " +
                                std::to_string(cfg.bits_per_sequence) + "), only " +
                                std::to_string(data.size()) + " available");
  }
  struct Entry {
    const char* name;
    double (*fn)(const BitString&, const TestRunConfig&);
  };
  static constexpr Entry kTests[] = {
      {"frequency", [](const BitString& s, const TestRunConfig&) { return monobit_frequency(s); }},
      {"block_frequency",
       [](const BitString& s, const TestRunConfig& c) { return block_frequency_test(s, c.block_len); }},
      {"runs", [](const BitString& s, const TestRunConfig&) { return runs_test(s); }},
      {"cumulative_sums_forward",
       [](const BitString& s, const TestRunConfig&) {
         return cumulative_sums_test(s, CusumMode::kForward);
       }},
      {"cumulative_sums_reverse",
       [](const BitString& s, const TestRunConfig&) {
         return cumulative_sums_test(s, CusumMode::kReverse);
       }},
  };

  std::vector<BitString> sequences;
  sequences.reserve(cfg.n_sequences);
  for (std::size_t i = 0; i < cfg.n_sequences; ++i) {
    sequences.push_back(data.window(i * cfg.bits_per_sequence, cfg.bits_per_sequence));
  }

  TestReport report;
  report.config = cfg;
  const double bound = proportion_bound(cfg.alpha, cfg.n_sequences);
  for (const auto& t : kTests) {
    TestResult r;
    r.name = t.name;
    r.p_values.reserve(sequences.size());
    for (const auto& s : sequences) r.p_values.push_back(t.fn(s, cfg));
    const auto passes = std::count_if(r.p_values.begin(), r.p_values.end(),
                                      [&](double p) { return p >= cfg.alpha; });
    r.pass_proportion = static_cast<double>(passes) / static_cast<double>(sequences.size());
    r.proportion_bound = bound;
    r.uniformity_p = uniformity_p_value(r.p_values);
    report.tests.push_back(std::move(r));
  }
  return report;
}

void export_sts_ascii(const BitString& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  const std::string text = data.to_string();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

BitString read_sts_ascii(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return BitString::from_string(text);
}

}  // namespace qrx::sts
