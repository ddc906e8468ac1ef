#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qrx::hw {

/// Datapath parameters of the FPGA extractor. Defaults are the VC709 build:
/// 200 MHz, 40 parallel 1000-bit blocks, 8e5-bit sample.
struct HwConfig {
  double f_clk = 200e6;
  std::size_t blocks = 40;
  std::size_t bs = 1000;
  std::size_t sample_bits = 800'000;
  std::uint64_t pipeline_constant = 21;
  std::uint64_t overhead_cycles = 100'274;

  std::size_t batches() const noexcept { return sample_bits / (blocks * bs); }
  /// Throws std::invalid_argument on non-positive fields or partial batches.
  void validate() const;
};

struct HwModelReport {
  std::size_t m = 0;
  double extraction_ratio = 0.0;
  std::uint64_t extraction_cycles = 0;
  double extraction_time_s = 0.0;
  double speed_bps = 0.0;         // input-referred: raw bits consumed per second
  double output_speed_bps = 0.0;  // output-referred: extracted bits per second
  double overhead_time_s = 0.0;
  bool extrapolated = false;      // m is not one of the measured table rows
};

/// One output bit per block per clock, all K blocks in parallel, batches in
/// sequence: batches * m + pipeline_constant.
std::uint64_t extraction_cycles(const HwConfig& cfg, std::size_t m);

/// sample_bits * f_clk / extraction_cycles.
double extraction_speed(const HwConfig& cfg, std::size_t m);

double overhead_time(const HwConfig& cfg);

HwModelReport model_point(const HwConfig& cfg, std::size_t m);

/// m = ER * bs for each ratio; throws std::invalid_argument unless each ER is
/// in (0, 1] and ER * bs is integral.
std::vector<HwModelReport> sweep_report(const HwConfig& cfg, const std::vector<double>& ratios);

/// Output-bit counts with published cycle measurements (ER 0.3/0.5/0.6/0.8
/// at bs = 1000).
bool is_measured_point(const HwConfig& cfg, std::size_t m);

std::string format_table(const std::vector<HwModelReport>& rows);
std::string format_csv(const std::vector<HwModelReport>& rows);

}  // namespace qrx::hw
