#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qrx/bitstring.hpp"
#include "qrx/hwmodel.hpp"
#include "qrx/seedgen.hpp"
#include "qrx/simd/kernels.hpp"
#include "qrx/statsuite.hpp"

namespace qrx {

inline constexpr int kSchemaVersion = 1;

std::string sha256_hex(std::span<const std::uint8_t> bytes);

struct ExtractOptions {
  std::size_t bs = 1000;
  double eps_exponent = 12.5;
  std::size_t blocks = 40;
  std::optional<double> pin_hmin;
  std::optional<std::size_t> m_override;
  std::vector<unsigned> taps = kDefaultTaps;
  std::uint64_t nonce = 0;
  /// Replaces the nonce-derived recipe when set.
  std::optional<SeedRecipe> recipe;
  unsigned workers = 0;
  hw::HwConfig hw{};
  bool attach_hwmodel = true;
};

struct ExtractionRun {
  BitString output;
  /// RunReport. Artifact paths are left for the caller to fill in.
  nlohmann::json report;
};

/// Min-entropy (measured or pinned) -> m -> seed -> Toeplitz string ->
/// blockwise extraction. Throws std::invalid_argument for a sample that is
/// not a whole number of batches or when entropy cannot support any output.
ExtractionRun run_extraction(const BitString& raw, const ExtractOptions& opts);

/// Rebuilds the options that produced a RunReport.
ExtractOptions options_from_report(const nlohmann::json& report);

struct BenchOptions {
  std::size_t bs = 1000;
  std::size_t m = 300;
  std::size_t blocks = 40;
  std::size_t batches = 20;
  unsigned threads = 0;  // 0 = hardware concurrency
  unsigned repeat = 5;
  std::uint64_t nonce = 1;
  std::optional<simd::Isa> isa;
};

struct BenchResult {
  std::vector<double> seconds;
  double median_seconds = 0.0;
  double input_gbps = 0.0;
  double output_gbps = 0.0;
  std::string digest_single_thread;
  std::string digest_threaded;
  unsigned threads = 0;
  simd::Isa isa = simd::Isa::kScalar;

  bool digests_match() const noexcept { return digest_single_thread == digest_threaded; }
};

BenchResult run_bench(const BenchOptions& opts);

nlohmann::json to_json(const hw::HwModelReport& r);
nlohmann::json to_json(const sts::TestReport& r);
nlohmann::json to_json(const BenchResult& r);

}  // namespace qrx
