#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qrx/bitstring.hpp"

namespace qrx::sts {

// Subset of the NIST SP 800-22 battery. Every test needs at least 100 bits
// and throws std::invalid_argument otherwise.

inline constexpr std::size_t kMinBits = 100;

double monobit_frequency(const BitString& seq);
/// Chi-square over per-block one-proportions; block_len must lie in [2, n].
double block_frequency_test(const BitString& seq, std::size_t block_len);
/// Returns 0 when the monobit prerequisite |pi - 1/2| < 2/sqrt(n) fails.
double runs_test(const BitString& seq);

enum class CusumMode { kForward, kReverse };
double cumulative_sums_test(const BitString& seq, CusumMode mode = CusumMode::kForward);

struct TestRunConfig {
  std::size_t bits_per_sequence = 8000;
  std::size_t n_sequences = 100;
  double alpha = 0.01;
  std::size_t block_len = 128;

  void validate() const;
};

struct TestResult {
  std::string name;
  std::vector<double> p_values;  // indexed by sequence
  double pass_proportion = 0.0;
  double proportion_bound = 0.0;
  double uniformity_p = 0.0;

  bool passed() const noexcept { return pass_proportion >= proportion_bound; }
};

struct TestReport {
  TestRunConfig config;
  std::vector<TestResult> tests;

  bool all_passed() const noexcept;
  const TestResult& find(const std::string& name) const;
};

/// Minimum acceptable pass proportion for s sequences: p - 3 sqrt(p(1-p)/s),
/// p = 1 - alpha.
double proportion_bound(double alpha, std::size_t n_sequences);

/// Chi-square over ten equal-width p-value bins, p = igamc(9/2, chi2/2).
double uniformity_p_value(const std::vector<double>& p_values);

/// Splits data into consecutive sequences and runs every test on each.
/// Throws std::invalid_argument when data is shorter than the configured split.
TestReport run_battery(const BitString& data, const TestRunConfig& cfg);

/// One '0'/'1' character per bit, no separators or newline.
void export_sts_ascii(const BitString& data, const std::filesystem::path& path);
BitString read_sts_ascii(const std::filesystem::path& path);

}  // namespace qrx::sts
