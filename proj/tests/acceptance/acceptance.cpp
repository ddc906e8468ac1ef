// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "../oracles.hpp"
#include "qrx/entropy.hpp"
#include "qrx/extractor.hpp"
#include "qrx/hwmodel.hpp"
#include "qrx/pipeline.hpp"
#include "qrx/seedgen.hpp"
#include "qrx/source.hpp"
#include "qrx/statsuite.hpp"

namespace {

using namespace qrx;

// Fixed nonces make the statistical criterion deterministic.
constexpr std::uint64_t kSourceNonce = 20240601;
constexpr std::uint64_t kSeedNonce = 1;

struct Outcome {
  bool ok = true;
  std::string detail;
};

ToeplitzSpec random_spec(std::mt19937_64& rng, std::size_t bs, std::size_t m) {
  return ToeplitzSpec(oracle::random_bits(rng, bs + m - 1), bs, m);
}

Outcome output_length_golden() {
  const std::size_t m = output_length(1000, 2.6, 12.5);
  ExtractionParams p;
  p.m = m;
  const double er = extraction_ratio(p);
  return {m == 300 && er == 0.3, fmt::format("m={} ER={}", m, er)};
}

Outcome table_cycles() {
  const hw::HwConfig cfg;
  const std::size_t ms[] = {300, 500, 600, 800};
  const std::uint64_t expected[] = {6021, 10021, 12021, 16021};
  Outcome o;
  for (int i = 0; i < 4; ++i) {
    const auto c = hw::extraction_cycles(cfg, ms[i]);
    o.ok &= c == expected[i];
    o.detail += fmt::format("m={}:{} ", ms[i], c);
  }
  return o;
}

Outcome throughput() {
  const hw::HwConfig cfg;
  Outcome o;
  const std::pair<std::size_t, double> points[] = {{300, 26.57}, {600, 13.31}, {800, 9.99}};
  for (auto [m, gbps] : points) {
    const double rounded = std::round(hw::extraction_speed(cfg, m) / 1e7) / 100.0;
    o.ok &= std::abs(rounded - gbps) <= 0.01 + 1e-12;
    o.detail += fmt::format("ER {:.1f}: {:.2f} Gbps; ", static_cast<double>(m) / 1000.0, rounded);
  }
  const double us = hw::overhead_time(cfg) * 1e6;
  o.ok &= std::abs(us - 501.37) < 1e-9 && std::ceil(us) == 502.0;
  o.detail += fmt::format("overhead {:.2f} us", us);
  return o;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(404);
  std::size_t checked = 0;
  for (int t = 0; t < 20; ++t) {
    const auto spec = random_spec(rng, 8, 1 + rng() % 8);
    const ToeplitzHasher hasher(spec);
    for (std::uint64_t v = 0; v < 256; ++v) {
      const auto x = BitString::from_words({v}, 8);
      if (hasher.hash(x) != extract_block_oracle(spec, x)) return {false, "exhaustive bs=8 mismatch"};
      ++checked;
    }
  }
  for (int t = 0; t < 1000; ++t) {
    const std::size_t bs = 8 + rng() % 121;
    const auto spec = random_spec(rng, bs, 1 + rng() % bs);
    const auto x = oracle::random_bits(rng, bs);
    if (extract_block_fast(spec, x) != extract_block_oracle(spec, x)) {
      return {false, fmt::format("random case bs={} mismatch", bs)};
    }
    ++checked;
  }
  for (int t = 0; t < 50; ++t) {
    const auto spec = random_spec(rng, 1000, 300);
    const auto x = oracle::random_bits(rng, 1000);
    if (extract_block_fast(spec, x) != extract_block_oracle(spec, x)) {
      return {false, "default geometry mismatch"};
    }
    ++checked;
  }
  return {true, fmt::format("{} cases bit-exact, kernels: {}", checked,
                            simd::isa_name(simd::active_kernels().isa))};
}

Outcome linearity() {
  std::mt19937_64 rng(505);
  for (int t = 0; t < 200; ++t) {
    const std::size_t bs = 8 + rng() % 1000;
    const auto spec = random_spec(rng, bs, 1 + rng() % bs);
    const auto x = oracle::random_bits(rng, bs);
    const auto y = oracle::random_bits(rng, bs);
    if (extract_block_fast(spec, x ^ y) != (extract_block_fast(spec, x) ^ extract_block_fast(spec, y))) {
      return {false, fmt::format("triple {} violates linearity", t)};
    }
  }
  return {true, "200 triples"};
}

Outcome lfsr_period_check() {
  const auto p25 = lfsr_period(LfsrState(1U, kDefaultTaps), 1ULL << 26);
  const auto p7 = lfsr_period(LfsrState(1U, {0, 6}, 7), 1000);
  return {p25 == (1ULL << 25) - 1 && p7 == 127, fmt::format("period25={} period7={}", p25, p7)};
}

Outcome end_to_end() {
  SimSourceConfig src;
  src.n_samples = 100'000;
  src.noise_sigma = calibrate_sigma(2.6, src.dc_offset);
  src.rng_nonce = kSourceNonce;
  const auto raw = simulate_raw(src);
  const double hmin = min_entropy(SymbolHistogram::from_bits(raw));

  ExtractOptions opts;
  opts.pin_hmin = 2.6;
  opts.nonce = kSeedNonce;
  const auto run = run_extraction(raw, opts);

  const auto raw_report = sts::run_battery(raw, sts::TestRunConfig{8000, 100});
  const auto out_report = sts::run_battery(run.output, sts::TestRunConfig{8000, 30});
  const auto& raw_mono = raw_report.find("frequency");

  Outcome o;
  o.ok = std::abs(hmin - 2.6) <= 0.1 && run.output.size() == 240'000 && !raw_mono.passed() &&
         out_report.all_passed();
  o.detail = fmt::format("H_min={:.3f}, out={} bits, raw monobit {:.2f} < {:.4f}; extracted:", hmin,
                         run.output.size(), raw_mono.pass_proportion, raw_mono.proportion_bound);
  for (const auto& t : out_report.tests) {
    o.detail += fmt::format(" {}={:.3f}", t.name, t.pass_proportion);
  }
  o.detail += fmt::format(" (bound {:.4f})", out_report.tests.front().proportion_bound);
  return o;
}

Outcome known_answers() {
  const auto e = BitString::from_string(
      "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000");
  const double got[] = {sts::monobit_frequency(e), sts::block_frequency_test(e, 10), sts::runs_test(e),
                        sts::cumulative_sums_test(e, sts::CusumMode::kForward),
                        sts::cumulative_sums_test(e, sts::CusumMode::kReverse)};
  const double want[] = {0.109599, 0.706438, 0.500798, 0.219194, 0.114866};
  Outcome o;
  for (int i = 0; i < 5; ++i) {
    o.ok &= std::abs(got[i] - want[i]) <= 1e-5;
    o.detail += fmt::format("{:.6f} ", got[i]);
  }
  return o;
}

Outcome parallel_determinism() {
  std::mt19937_64 rng(909);
  const BatchPlan plan{40, 1000, 20};
  const auto raw = oracle::random_bits(rng, plan.sample_bits());
  LfsrState lfsr = build_seed(raw, default_recipe(raw.size(), 3));
  const ToeplitzSpec spec(generate_toeplitz_string(lfsr, 1299), 1000, 300);
  const unsigned max_workers = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::string> digests;
  for (unsigned w : {1U, 2U, max_workers}) {
    digests.push_back(sha256_hex(extract_sample(plan, spec, raw, w).to_bytes_msb()));
  }
  const bool same = digests[0] == digests[1] && digests[1] == digests[2];
  return {same, fmt::format("workers 1/2/{} digest {}", max_workers, digests[0].substr(0, 16))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 output-length golden point", output_length_golden},
      {"2 hardware-model cycle table", table_cycles},
      {"3 throughput and overhead", throughput},
      {"4 fast/oracle equivalence", oracle_equivalence},
      {"5 GF(2) linearity", linearity},
      {"6 LFSR maximal period", lfsr_period_check},
      {"7 end-to-end pipeline", end_to_end},
      {"8 NIST worked examples", known_answers},
      {"9 determinism under parallelism", parallel_determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("[{}] {:<34} {:6.2f}s  {}\n", o.ok ? "PASS" : "FAIL", name, secs, o.detail);
    failures += o.ok ? 0 : 1;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
