#include "qrx/extractor.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <thread>

namespace qrx {

ToeplitzSpec::ToeplitzSpec(BitString ts_in, std::size_t bs_in, std::size_t m_in)
    : ts(std::move(ts_in)), bs(bs_in), m(m_in) {
  if (bs == 0 || m == 0) throw std::invalid_argument("Toeplitz geometry needs bs >= 1 and m >= 1");
  if (ts.size() != bs + m - 1) {
    throw std::invalid_argument("Toeplitz string has " + std::to_string(ts.size()) +
                                " bits, expected bs + m - 1 = " + std::to_string(bs + m - 1));
  }
}

BatchPlan BatchPlan::from_params(const ExtractionParams& p) {
  p.validate();
  return BatchPlan{p.blocks, p.bs, p.batches()};
}

BitString toeplitz_row(const ToeplitzSpec& spec, std::size_t i) {
  if (i >= spec.m) {
    throw std::out_of_range("row " + std::to_string(i) + " out of range for m=" +
                            std::to_string(spec.m));
  }
  BitString row(spec.bs);
  for (std::size_t j = 0; j < spec.bs; ++j) row.set(j, spec.ts[i + spec.bs - 1 - j]);
  return row;
}

BitString extract_block_oracle(const ToeplitzSpec& spec, const BitString& x) {
  if (x.size() != spec.bs) {
    throw std::invalid_argument("input block has " + std::to_string(x.size()) +
                                " bits, expected " + std::to_string(spec.bs));
  }
  // Bit-serial reference; shares no code with ToeplitzHasher.
  BitString out(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    const BitString row = toeplitz_row(spec, i);
    bool acc = false;
    for (std::size_t j = 0; j < spec.bs; ++j) acc ^= row[j] && x[j];
    out.set(i, acc);
  }
  return out;
}

ToeplitzHasher::ToeplitzHasher(const ToeplitzSpec& spec, const simd::KernelTable& kernels)
    : bs_(spec.bs),
      m_(spec.m),
      x_words_((spec.bs + 63) / 64),
      stride_((spec.m - 1) / 64 + x_words_),
      shifted_(64 * stride_, 0),
      kernels_(&kernels) {
  const BitString rev = spec.ts.reversed();
  const auto w = rev.words();
  auto word_at = [&](std::size_t k) -> std::uint64_t { return k < w.size() ? w[k] : 0; };
  for (unsigned r = 0; r < 64; ++r) {
    std::uint64_t* row = shifted_.data() + r * stride_;
    for (std::size_t q = 0; q < stride_; ++q) {
      std::uint64_t v = word_at(q) >> r;
      if (r != 0) v |= word_at(q + 1) << (64 - r);
      row[q] = v;
    }
  }
}

BitString ToeplitzHasher::hash(const BitString& x) const {
  if (x.size() != bs_) {
    throw std::invalid_argument("input block has " + std::to_string(x.size()) +
                                " bits, expected " + std::to_string(bs_));
  }
  const std::uint64_t* xw = x.words().data();
  const auto fold = kernels_->and_xor_fold;
  std::vector<std::uint64_t> out((m_ + 63) / 64, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t start = m_ - 1 - i;
    const std::uint64_t* win = shifted_.data() + (start % 64) * stride_ + start / 64;
    const auto bit = static_cast<std::uint64_t>(std::popcount(fold(win, xw, x_words_)) & 1);
    out[i / 64] |= bit << (i % 64);
  }
  return BitString::from_words(std::move(out), m_);
}

BitString extract_block_fast(const ToeplitzSpec& spec, const BitString& x) {
  return ToeplitzHasher(spec).hash(x);
}

BitString extract_sample(const BatchPlan& plan, const ToeplitzSpec& spec, const BitString& raw,
                         unsigned workers, const simd::KernelTable& kernels) {
  if (plan.blocks == 0 || plan.batches == 0) {
    throw std::invalid_argument("batch plan needs at least one block and one batch");
  }
  if (spec.bs != plan.bs) {
    throw std::invalid_argument("Toeplitz block size " + std::to_string(spec.bs) +
                                " does not match plan block size " + std::to_string(plan.bs));
  }
  if (raw.size() != plan.sample_bits()) {
    throw std::invalid_argument("raw sample has " + std::to_string(raw.size()) +
                                " bits, plan expects " + std::to_string(plan.sample_bits()));
  }
  const ToeplitzHasher hasher(spec, kernels);
  // Batches are consecutive runs of K blocks, so block-major order over the
  // whole sample is exactly batch 0 block 0..K-1, batch 1 block 0..K-1, ...
  const std::size_t n_blocks = plan.blocks * plan.batches;
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t n_workers = std::min<std::size_t>(workers, n_blocks);

  std::vector<BitString> partial(n_workers);
  auto run = [&](std::size_t w) {
    const std::size_t lo = n_blocks * w / n_workers;
    const std::size_t hi = n_blocks * (w + 1) / n_workers;
    BitString acc;
    for (std::size_t b = lo; b < hi; ++b) acc.append(hasher.hash(raw.window(b * plan.bs, plan.bs)));
    partial[w] = std::move(acc);
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers - 1);
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(run, w);
    run(0);
  }
  return concat(partial);
}

std::size_t toeplitz_rank(const ToeplitzSpec& spec) {
  std::vector<BitString> rows;
  rows.reserve(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) rows.push_back(toeplitz_row(spec, i));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < spec.bs && rank < rows.size(); ++col) {
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                              [col](const BitString& r) { return r[col]; });
    if (pivot == rows.end()) continue;
    std::swap(*pivot, rows[rank]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k != rank && rows[k][col]) rows[k] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

}  // namespace qrx
