// qrx: command-line front end for the extraction toolkit.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrx/entropy.hpp"
#include "qrx/hwmodel.hpp"
#include "qrx/pipeline.hpp"
#include "qrx/source.hpp"
#include "qrx/statsuite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream in(item);
    T v{};
    if (!(in >> v) || !in.eof()) throw std::invalid_argument("cannot parse list item '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

/// Loads bytes (MSB-first) or an ASCII '0'/'1' file, truncated to `bits`
/// when given.
qrx::BitString load_bits(const fs::path& path, const std::string& format,
                         std::optional<std::size_t> bits) {
  qrx::BitString data = format == "ascii" ? qrx::sts::read_sts_ascii(path)
                                          : qrx::BitString::from_bytes_msb(qrx::read_bytes(path));
  if (bits) {
    if (*bits > data.size()) {
      throw std::invalid_argument(fmt::format("--bits {} exceeds the {} bits in '{}'", *bits,
                                              data.size(), path.string()));
    }
    data = data.window(0, *bits);
  }
  return data;
}

struct SimulateArgs {
  std::size_t samples = 100'000;
  std::optional<double> target_hmin;
  std::optional<double> sigma;
  double dc_offset = 128.0;
  std::uint64_t nonce = 0;
  fs::path out;
};

int cmd_simulate(const SimulateArgs& a) {
  if (a.target_hmin && (*a.target_hmin <= 0.0 || *a.target_hmin >= 8.0)) {
    throw std::invalid_argument("--target-hmin must lie in (0, 8)");
  }
  qrx::SimSourceConfig cfg;
  cfg.n_samples = a.samples;
  cfg.dc_offset = a.dc_offset;
  cfg.rng_nonce = a.nonce;
  cfg.noise_sigma = a.sigma ? *a.sigma : qrx::calibrate_sigma(a.target_hmin.value_or(2.6), a.dc_offset);
  const auto samples = qrx::simulate_samples(cfg);
  qrx::write_bytes(a.out, samples);
  const double hmin = qrx::min_entropy(qrx::SymbolHistogram::from_bytes(samples));
  fmt::print("wrote {} samples to {}\nsigma: {:.6f}\nmeasured min-entropy: {:.4f} bits/sample\n",
             samples.size(), a.out.string(), cfg.noise_sigma, hmin);
  return 0;
}

struct AnalyzeArgs {
  fs::path raw;
  std::size_t bs = 1000;
  double eps_exp = 12.5;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const auto bytes = qrx::read_bytes(a.raw);
  const auto hist = qrx::SymbolHistogram::from_bytes(bytes);
  const double hmin = qrx::min_entropy(hist);
  json r{{"schema_version", qrx::kSchemaVersion},
         {"samples", hist.total},
         {"bits", hist.total * 8},
         {"min_entropy_per_symbol", hmin},
         {"bs", a.bs},
         {"eps_exponent", a.eps_exp}};
  try {
    const std::size_t m = qrx::output_length(a.bs, hmin, a.eps_exp);
    r["m"] = m;
    r["extraction_ratio"] = static_cast<double>(m) / static_cast<double>(a.bs);
  } catch (const std::invalid_argument& e) {
    r["m"] = nullptr;
    r["error"] = e.what();
  }
  std::cout << r.dump(2) << '\n';
  return 0;
}

struct ExtractArgs {
  fs::path raw;
  fs::path out;
  std::optional<fs::path> report;
  std::optional<fs::path> replay;
  std::size_t bs = 1000;
  double eps_exp = 12.5;
  std::size_t blocks = 40;
  std::optional<double> pin_hmin;
  std::optional<std::size_t> m_override;
  std::string taps = "0,22";
  std::uint64_t nonce = 0;
  unsigned threads = 0;
  bool no_hwmodel = false;
};

int cmd_extract(const ExtractArgs& a) {
  const auto raw_bytes = qrx::read_bytes(a.raw);
  if (raw_bytes.empty()) throw std::runtime_error("raw file '" + a.raw.string() + "' is empty");
  const auto raw = qrx::BitString::from_bytes_msb(raw_bytes);

  qrx::ExtractOptions opts;
  if (a.replay) {
    std::ifstream in(*a.replay);
    if (!in) throw std::runtime_error("cannot open report '" + a.replay->string() + "'");
    opts = qrx::options_from_report(json::parse(in));
  } else {
    opts.bs = a.bs;
    opts.eps_exponent = a.eps_exp;
    opts.blocks = a.blocks;
    opts.pin_hmin = a.pin_hmin;
    opts.m_override = a.m_override;
    opts.taps = parse_list<unsigned>(a.taps);
    opts.nonce = a.nonce;
  }
  opts.workers = a.threads;
  opts.attach_hwmodel = !a.no_hwmodel;

  auto run = qrx::run_extraction(raw, opts);
  qrx::write_bytes(a.out, run.output.to_bytes_msb());
  run.report["artifacts"]["input"]["path"] = a.raw.string();
  run.report["artifacts"]["output"]["path"] = a.out.string();
  const fs::path report_path = a.report.value_or(fs::path(a.out.string() + ".json"));
  write_text(report_path, run.report.dump(2) + "\n");

  const auto& p = run.report["parameters"];
  fmt::print("m = {}, ER = {:.3f}, output {} bits -> {}\nreport -> {}\n", p["m"].get<std::size_t>(),
             p["extraction_ratio"].get<double>(), run.output.size(), a.out.string(),
             report_path.string());
  for (const auto& w : run.report["diagnostics"]["warnings"]) {
    fmt::print(stderr, "warning: {}\n", w.get<std::string>());
  }
  return 0;
}

struct HwArgs {
  std::string er;
  std::string m;
  qrx::hw::HwConfig cfg;
  std::string format = "table";
};

int cmd_hwmodel(const HwArgs& a) {
  std::vector<qrx::hw::HwModelReport> rows;
  if (!a.m.empty()) {
    for (std::size_t m : parse_list<std::size_t>(a.m)) rows.push_back(qrx::hw::model_point(a.cfg, m));
  } else {
    const std::string ers = a.er.empty() ? "0.3,0.5,0.6,0.8" : a.er;
    rows = qrx::hw::sweep_report(a.cfg, parse_list<double>(ers));
  }
  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(qrx::to_json(r));
    std::cout << json{{"schema_version", qrx::kSchemaVersion},
                      {"f_clk", a.cfg.f_clk},
                      {"points", arr}}.dump(2)
              << '\n';
  } else if (a.format == "csv") {
    std::cout << qrx::hw::format_csv(rows);
  } else {
    std::cout << qrx::hw::format_table(rows);
  }
  return 0;
}

struct BenchArgs {
  qrx::BenchOptions opts;
  std::string isa;
};

int cmd_bench(BenchArgs a) {
  if (!a.isa.empty()) a.opts.isa = qrx::simd::parse_isa(a.isa);
  const auto r = qrx::run_bench(a.opts);
  std::cout << qrx::to_json(r).dump(2) << '\n';
  if (!r.digests_match()) {
    fmt::print(stderr, "error: threaded output differs from single-threaded output\n");
    return 1;
  }
  return 0;
}

struct TestArgs {
  fs::path data;
  qrx::sts::TestRunConfig cfg;
  std::optional<std::size_t> bits;
  std::string input_format = "bytes";
  std::optional<fs::path> json_out;
};

int cmd_test(const TestArgs& a) {
  const auto data = load_bits(a.data, a.input_format, a.bits);
  const auto report = qrx::sts::run_battery(data, a.cfg);
  fmt::print("{} sequences x {} bits, alpha {}, proportion bound {:.4f}\n", a.cfg.n_sequences,
             a.cfg.bits_per_sequence, a.cfg.alpha,
             qrx::sts::proportion_bound(a.cfg.alpha, a.cfg.n_sequences));
  fmt::print("{:<26} {:>10} {:>12}  {}\n", "test", "proportion", "uniformity", "result");
  for (const auto& t : report.tests) {
    fmt::print("{:<26} {:>10.4f} {:>12.6f}  {}\n", t.name, t.pass_proportion, t.uniformity_p,
               t.passed() ? "PASS" : "FAIL");
  }
  if (a.json_out) write_text(*a.json_out, qrx::to_json(report).dump(2) + "\n");
  return report.all_passed() ? 0 : 1;
}

struct ExportArgs {
  fs::path data;
  fs::path out;
  std::optional<std::size_t> bits;
};

int cmd_export(const ExportArgs& a) {
  const auto data = load_bits(a.data, "bytes", a.bits);
  qrx::sts::export_sts_ascii(data, a.out);
  fmt::print("wrote {} ASCII bits to {}\n", data.size(), a.out.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QRNG post-processing: min-entropy, Toeplitz extraction, FPGA cycle model, NIST subset"};
  app.require_subcommand(1);
  int status = 0;

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Synthesize 8-bit ADC samples");
  s->add_option("--samples", sim.samples, "Number of 8-bit samples")->check(CLI::PositiveNumber);
  auto* th = s->add_option("--target-hmin", sim.target_hmin, "Calibrate sigma to this min-entropy");
  s->add_option("--sigma", sim.sigma, "Noise sigma in ADC codes")->excludes(th);
  s->add_option("--dc-offset", sim.dc_offset, "Mean ADC code")->check(CLI::Range(0.0, 255.0));
  s->add_option("--nonce", sim.nonce, "RNG nonce");
  s->add_option("--out", sim.out, "Output raw file")->required();
  s->callback([&] { status = cmd_simulate(sim); });

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "Estimate min-entropy and output length");
  a->add_option("raw", an.raw, "Raw byte file")->required()->check(CLI::ExistingFile);
  a->add_option("--bs", an.bs, "Block size in bits");
  a->add_option("--eps-exp", an.eps_exp, "Security exponent (eps = 2^-x)");
  a->callback([&] { status = cmd_analyze(an); });

  ExtractArgs ex;
  auto* e = app.add_subcommand("extract", "Run the Toeplitz extraction chain");
  e->add_option("raw", ex.raw, "Raw byte file")->required()->check(CLI::ExistingFile);
  e->add_option("--out", ex.out, "Packed output file")->required();
  e->add_option("--report", ex.report, "JSON run report (default: <out>.json)");
  e->add_option("--replay", ex.replay, "Reuse every parameter from a previous run report")
      ->check(CLI::ExistingFile);
  e->add_option("--bs", ex.bs, "Block size in bits");
  e->add_option("--eps-exp", ex.eps_exp, "Security exponent (eps = 2^-x)");
  e->add_option("--blocks", ex.blocks, "Parallel blocks per batch (K)");
  e->add_option("--pin-hmin", ex.pin_hmin, "Use this min-entropy instead of measuring it");
  e->add_option("--m-override", ex.m_override, "Force m (bypasses the leftover hash bound)");
  e->add_option("--taps", ex.taps, "LFSR taps, comma separated cell indices");
  e->add_option("--nonce", ex.nonce, "Seed-offset nonce");
  e->add_option("--threads", ex.threads, "Worker threads (0 = all cores)");
  e->add_flag("--no-hwmodel", ex.no_hwmodel, "Omit the hardware model section");
  e->callback([&] { status = cmd_extract(ex); });

  HwArgs hw;
  auto* h = app.add_subcommand("hwmodel", "FPGA cycle and throughput model");
  auto* er_opt = h->add_option("--er", hw.er, "Extraction ratios, comma separated");
  h->add_option("--m", hw.m, "Output bit counts, comma separated")->excludes(er_opt);
  h->add_option("--f-clk", hw.cfg.f_clk, "Clock frequency in Hz");
  h->add_option("--blocks", hw.cfg.blocks, "Parallel blocks");
  h->add_option("--bs", hw.cfg.bs, "Block size in bits");
  h->add_option("--sample-bits", hw.cfg.sample_bits, "Sample length in bits");
  h->add_option("--pipeline-constant", hw.cfg.pipeline_constant, "Fixed cycles per run");
  h->add_option("--overhead-cycles", hw.cfg.overhead_cycles, "One-time setup cycles");
  h->add_option("--format", hw.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  h->callback([&] { status = cmd_hwmodel(hw); });

  BenchArgs bn;
  auto* b = app.add_subcommand("bench", "Time software extraction");
  b->add_option("--bs", bn.opts.bs, "Block size in bits");
  b->add_option("--m", bn.opts.m, "Output bits per block");
  b->add_option("--blocks", bn.opts.blocks, "Blocks per batch");
  b->add_option("--batches", bn.opts.batches, "Number of batches");
  b->add_option("--threads", bn.opts.threads, "Worker threads (0 = all cores)");
  b->add_option("--repeat", bn.opts.repeat, "Timed repetitions")->check(CLI::PositiveNumber);
  b->add_option("--nonce", bn.opts.nonce, "Synthetic data nonce");
  b->add_option("--isa", bn.isa, "Force kernel ISA (scalar, avx2, avx512, neon)");
  b->callback([&] { status = cmd_bench(bn); });

  TestArgs ts;
  auto* t = app.add_subcommand("test", "Run the NIST SP 800-22 subset");
  t->add_option("data", ts.data, "Data file")->required()->check(CLI::ExistingFile);
  t->add_option("--bits-per-seq", ts.cfg.bits_per_sequence, "Bits per sequence");
  t->add_option("--seqs", ts.cfg.n_sequences, "Number of sequences");
  t->add_option("--alpha", ts.cfg.alpha, "Significance level");
  t->add_option("--block-len", ts.cfg.block_len, "Block frequency block length");
  t->add_option("--bits", ts.bits, "True bit length of a packed file");
  t->add_option("--input-format", ts.input_format, "bytes or ascii")
      ->check(CLI::IsMember({"bytes", "ascii"}));
  t->add_option("--json", ts.json_out, "Write the JSON report here");
  t->callback([&] { status = cmd_test(ts); });

  ExportArgs xp;
  auto* x = app.add_subcommand("export-sts", "Write ASCII input for the external NIST STS");
  x->add_option("data", xp.data, "Packed data file")->required()->check(CLI::ExistingFile);
  x->add_option("--out", xp.out, "ASCII output file")->required();
  x->add_option("--bits", xp.bits, "True bit length of the packed file");
  x->callback([&] { status = cmd_export(xp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return 2;
  }
  return status;
}
