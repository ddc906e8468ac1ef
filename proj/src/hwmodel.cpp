#include "qrx/hwmodel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace qrx::hw {

void HwConfig::validate() const {
  if (!(f_clk > 0.0)) throw std::invalid_argument("f_clk must be positive");
  if (blocks == 0 || bs == 0 || sample_bits == 0) {
    throw std::invalid_argument("blocks, bs and sample_bits must be positive");
  }
  if (sample_bits % (blocks * bs) != 0) {
    throw std::invalid_argument(fmt::format("sample of {} bits is not a whole number of {}-bit batches",
                                            sample_bits, blocks * bs));
  }
}

std::uint64_t extraction_cycles(const HwConfig& cfg, std::size_t m) {
  cfg.validate();
  if (m == 0 || m > cfg.bs) {
    throw std::invalid_argument(fmt::format("m={} must lie in [1, bs={}]", m, cfg.bs));
  }
  return static_cast<std::uint64_t>(cfg.batches()) * m + cfg.pipeline_constant;
}

double extraction_speed(const HwConfig& cfg, std::size_t m) {
  return static_cast<double>(cfg.sample_bits) * cfg.f_clk /
         static_cast<double>(extraction_cycles(cfg, m));
}

double overhead_time(const HwConfig& cfg) {
  if (!(cfg.f_clk > 0.0)) throw std::invalid_argument("f_clk must be positive");
  return static_cast<double>(cfg.overhead_cycles) / cfg.f_clk;
}

bool is_measured_point(const HwConfig& cfg, std::size_t m) {
  constexpr std::array<std::size_t, 4> kMeasured{300, 500, 600, 800};
  return cfg.bs == 1000 && std::find(kMeasured.begin(), kMeasured.end(), m) != kMeasured.end();
}

HwModelReport model_point(const HwConfig& cfg, std::size_t m) {
  HwModelReport r;
  r.m = m;
  r.extraction_ratio = static_cast<double>(m) / static_cast<double>(cfg.bs);
  r.extraction_cycles = extraction_cycles(cfg, m);
  r.extraction_time_s = static_cast<double>(r.extraction_cycles) / cfg.f_clk;
  r.speed_bps = extraction_speed(cfg, m);
  r.output_speed_bps =
      static_cast<double>(cfg.batches() * cfg.blocks * m) / r.extraction_time_s;
  r.overhead_time_s = overhead_time(cfg);
  r.extrapolated = !is_measured_point(cfg, m);
  return r;
}

std::vector<HwModelReport> sweep_report(const HwConfig& cfg, const std::vector<double>& ratios) {
  std::vector<HwModelReport> out;
  out.reserve(ratios.size());
  for (double er : ratios) {
    if (!(er > 0.0 && er <= 1.0)) {
      throw std::invalid_argument(fmt::format("extraction ratio {} outside (0, 1]", er));
    }
    const double exact = er * static_cast<double>(cfg.bs);
    const double rounded = std::round(exact);
    if (std::abs(exact - rounded) > 1e-6) {
      throw std::invalid_argument(
          fmt::format("extraction ratio {} gives non-integral m = {}", er, exact));
    }
    out.push_back(model_point(cfg, static_cast<std::size_t>(rounded)));
  }
  return out;
}

std::string format_table(const std::vector<HwModelReport>& rows) {
  std::string s = fmt::format("{:>6}  {:>6}  {:>12}  {:>12}  {:>14}  {:>15}  {}\n", "ER", "m",
                              "Clock Cycles", "Time (us)", "Input Gbps", "Output Gbps", "");
  for (const auto& r : rows) {
    s += fmt::format("{:>6.3f}  {:>6}  {:>12}  {:>12.3f}  {:>14.2f}  {:>15.2f}  {}\n",
                     r.extraction_ratio, r.m, r.extraction_cycles, r.extraction_time_s * 1e6,
                     r.speed_bps / 1e9, r.output_speed_bps / 1e9,
                     r.extrapolated ? "(model extrapolation)" : "");
  }
  if (!rows.empty()) {
    s += fmt::format("one-time overhead: {:.2f} us\n", rows.front().overhead_time_s * 1e6);
  }
  return s;
}

std::string format_csv(const std::vector<HwModelReport>& rows) {
  std::string s = "er,m,cycles,time_s,input_bps,output_bps,extrapolated\n";
  for (const auto& r : rows) {
    s += fmt::format("{},{},{},{:.9g},{:.6e},{:.6e},{}\n", r.extraction_ratio, r.m,
                     r.extraction_cycles, r.extraction_time_s, r.speed_bps, r.output_speed_bps,
                     r.extrapolated ? 1 : 0);
  }
  return s;
}

}  // namespace qrx::hw
