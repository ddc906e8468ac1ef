#include "qrx/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "qrx/entropy.hpp"
#include "qrx/extractor.hpp"

namespace qrx {

using nlohmann::json;

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

ExtractionRun run_extraction(const BitString& raw, const ExtractOptions& opts) {
  json warnings = json::array();

  ExtractionParams params;
  params.bs = opts.bs;
  params.blocks = opts.blocks;
  params.eps_exponent = opts.eps_exponent;
  params.sample_bits = raw.size();
  if (opts.bs == 0 || opts.blocks == 0 || raw.empty() || raw.size() % (opts.bs * opts.blocks) != 0) {
    throw std::invalid_argument(fmt::format(
        "geometry mismatch: {} raw bits is not a whole number of {} x {}-bit batches", raw.size(),
        opts.blocks, opts.bs));
  }

  std::optional<double> measured;
  if (raw.size() % 8 == 0) measured = min_entropy(SymbolHistogram::from_bits(raw));
  if (!opts.pin_hmin && !measured) {
    throw std::invalid_argument("raw length is not a whole number of 8-bit samples");
  }
  params.hmin_per_symbol = opts.pin_hmin.value_or(measured.value_or(0.0));
  if (params.hmin_per_symbol == 0.0) {
    warnings.push_back("measured min-entropy is zero: source emits a single symbol");
  }

  std::optional<std::size_t> lhl_m;
  try {
    lhl_m = output_length(params.bs, params.hmin_per_symbol, params.eps_exponent);
  } catch (const std::invalid_argument&) {
    if (!opts.m_override) throw;
  }
  if (opts.m_override) {
    params.m = *opts.m_override;
    warnings.push_back(fmt::format(
        "m override ({}) bypasses the leftover hash bound ({}); the security parameter no longer "
        "applies",
        params.m, lhl_m ? std::to_string(*lhl_m) : std::string("none")));
  } else {
    params.m = *lhl_m;
  }
  params.validate();

  const SeedRecipe recipe = opts.recipe.value_or(default_recipe(raw.size(), opts.nonce));
  LfsrState lfsr = build_seed(raw, recipe, opts.taps);
  const std::uint32_t initial_register = lfsr.reg();
  const ToeplitzSpec spec(generate_toeplitz_string(lfsr, params.bs + params.m - 1), params.bs,
                          params.m);
  const std::size_t rank = toeplitz_rank(spec);
  if (rank < params.m) {
    warnings.push_back(fmt::format(
        "Toeplitz matrix rank {} is below m = {}: outputs within a block are linearly dependent",
        rank, params.m));
  }

  const BatchPlan plan = BatchPlan::from_params(params);
  const auto& kernels = simd::active_kernels();
  const auto t0 = std::chrono::steady_clock::now();
  BitString output = extract_sample(plan, spec, raw, opts.workers, kernels);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json report;
  report["schema_version"] = kSchemaVersion;
  report["parameters"] = {
      {"bs", params.bs},
      {"m", params.m},
      {"eps_exponent", params.eps_exponent},
      {"blocks", params.blocks},
      {"batches", params.batches()},
      {"sample_bits", params.sample_bits},
      {"extraction_ratio", extraction_ratio(params)},
      {"m_override", opts.m_override.has_value()},
  };
  report["seed"] = {
      {"taps", opts.taps},
      {"fixed_one_positions", recipe.fixed_one_positions},
      {"raw_bit_offsets", recipe.raw_bit_offsets},
      {"nonce", opts.nonce},
      {"initial_register", initial_register},
      {"toeplitz_length", spec.ts.size()},
      {"toeplitz_sha256", sha256_hex(spec.ts.to_bytes_msb())},
  };
  report["entropy"] = {
      {"measured_hmin", measured ? json(*measured) : json(nullptr)},
      {"pinned_hmin", opts.pin_hmin ? json(*opts.pin_hmin) : json(nullptr)},
      {"hmin_per_symbol", params.hmin_per_symbol},
      {"leftover_hash_m", lhl_m ? json(*lhl_m) : json(nullptr)},
  };
  const double nonzero = std::max(secs, 1e-12);
  report["timing"] = {
      {"extraction_seconds", secs},
      {"software_input_gbps", static_cast<double>(raw.size()) / nonzero / 1e9},
      {"software_output_gbps", static_cast<double>(output.size()) / nonzero / 1e9},
      {"workers", opts.workers},
      {"isa", simd::isa_name(kernels.isa)},
  };
  if (opts.attach_hwmodel) {
    hw::HwConfig hwcfg = opts.hw;
    hwcfg.bs = params.bs;
    hwcfg.blocks = params.blocks;
    hwcfg.sample_bits = params.sample_bits;
    report["hwmodel"] = to_json(hw::model_point(hwcfg, params.m));
  }
  report["diagnostics"] = {{"toeplitz_rank", rank}, {"warnings", warnings}};
  const auto out_bytes = output.to_bytes_msb();
  report["artifacts"] = {
      {"input", {{"bits", raw.size()}, {"sha256", sha256_hex(raw.to_bytes_msb())}}},
      {"output", {{"bits", output.size()}, {"bytes", out_bytes.size()}, {"sha256", sha256_hex(out_bytes)}}},
  };
  return {std::move(output), std::move(report)};
}

ExtractOptions options_from_report(const json& report) {
  if (report.value("schema_version", 0) != kSchemaVersion) {
    throw std::invalid_argument("unsupported run report schema_version");
  }
  const json& p = report.at("parameters");
  const json& s = report.at("seed");
  const json& e = report.at("entropy");
  ExtractOptions o;
  o.bs = p.at("bs").get<std::size_t>();
  o.blocks = p.at("blocks").get<std::size_t>();
  o.eps_exponent = p.at("eps_exponent").get<double>();
  if (p.at("m_override").get<bool>()) o.m_override = p.at("m").get<std::size_t>();
  if (!e.at("pinned_hmin").is_null()) o.pin_hmin = e.at("pinned_hmin").get<double>();
  o.taps = s.at("taps").get<std::vector<unsigned>>();
  o.nonce = s.at("nonce").get<std::uint64_t>();
  SeedRecipe recipe;
  recipe.raw_bit_offsets = s.at("raw_bit_offsets").get<std::vector<std::size_t>>();
  recipe.fixed_one_positions = s.at("fixed_one_positions").get<std::vector<unsigned>>();
  o.recipe = std::move(recipe);
  return o;
}

BenchResult run_bench(const BenchOptions& opts) {
  const BatchPlan plan{opts.blocks, opts.bs, opts.batches};
  if (plan.sample_bits() == 0) throw std::invalid_argument("bench geometry must be non-empty");
  if (opts.m == 0 || opts.m > opts.bs) throw std::invalid_argument("bench m must lie in [1, bs]");

  std::mt19937_64 rng(opts.nonce);
  std::vector<std::uint64_t> words((plan.sample_bits() + 63) / 64);
  for (auto& w : words) w = rng();
  const BitString raw = BitString::from_words(std::move(words), plan.sample_bits());
  LfsrState lfsr = build_seed(raw, default_recipe(raw.size(), opts.nonce));
  const ToeplitzSpec spec(generate_toeplitz_string(lfsr, opts.bs + opts.m - 1), opts.bs, opts.m);

  const auto& kernels = opts.isa ? simd::kernels_for(*opts.isa) : simd::active_kernels();
  BenchResult r;
  r.isa = kernels.isa;
  r.threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;

  const BitString reference = extract_sample(plan, spec, raw, 1, kernels);
  r.digest_single_thread = sha256_hex(reference.to_bytes_msb());

  BitString last;
  for (unsigned i = 0; i < std::max(1U, opts.repeat); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    last = extract_sample(plan, spec, raw, r.threads, kernels);
    r.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  r.digest_threaded = sha256_hex(last.to_bytes_msb());

  std::vector<double> sorted = r.seconds;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  r.median_seconds = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const double t = std::max(r.median_seconds, 1e-12);
  r.input_gbps = static_cast<double>(plan.sample_bits()) / t / 1e9;
  r.output_gbps = static_cast<double>(last.size()) / t / 1e9;
  return r;
}

json to_json(const hw::HwModelReport& r) {
  return {
      {"m", r.m},
      {"extraction_ratio", r.extraction_ratio},
      {"extraction_cycles", r.extraction_cycles},
      {"extraction_time_s", r.extraction_time_s},
      {"input_referred_bps", r.speed_bps},
      {"output_referred_bps", r.output_speed_bps},
      {"overhead_time_s", r.overhead_time_s},
      {"extrapolated", r.extrapolated},
  };
}

json to_json(const sts::TestReport& r) {
  json tests = json::array();
  for (const auto& t : r.tests) {
    tests.push_back({
        {"name", t.name},
        {"p_values", t.p_values},
        {"pass_proportion", t.pass_proportion},
        {"proportion_bound", t.proportion_bound},
        {"uniformity_p", t.uniformity_p},
        {"passed", t.passed()},
    });
  }
  return {
      {"schema_version", kSchemaVersion},
      {"bits_per_sequence", r.config.bits_per_sequence},
      {"n_sequences", r.config.n_sequences},
      {"alpha", r.config.alpha},
      {"block_len", r.config.block_len},
      {"all_passed", r.all_passed()},
      {"tests", tests},
  };
}

json to_json(const BenchResult& r) {
  return {
      {"schema_version", kSchemaVersion},
      {"isa", simd::isa_name(r.isa)},
      {"threads", r.threads},
      {"seconds", r.seconds},
      {"median_seconds", r.median_seconds},
      {"software_input_gbps", r.input_gbps},
      {"software_output_gbps", r.output_gbps},
      {"digest_single_thread", r.digest_single_thread},
      {"digest_threaded", r.digest_threaded},
      {"digests_match", r.digests_match()},
  };
}

}  // namespace qrx
