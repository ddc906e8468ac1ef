#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qrx/entropy.hpp"

namespace qrx {
namespace {

TEST(MinEntropy, Uniform) {
  SymbolHistogram h;
  for (int s = 0; s < 256; ++s) h.add(static_cast<std::uint8_t>(s), 7);
  EXPECT_DOUBLE_EQ(min_entropy(h), 8.0);
}

TEST(MinEntropy, SingleSymbol) {
  SymbolHistogram h;
  h.add(42, 1000);
  EXPECT_EQ(min_entropy(h), 0.0);
}

TEST(MinEntropy, OperatingPoint) {
  // p_max = 16494 / 100000 ~= 2^-2.6; the rest is spread thinner.
  SymbolHistogram h;
  h.add(128, 16'494);
  std::uint64_t left = 100'000 - 16'494;
  for (int s = 100; left > 0; ++s) {
    const std::uint64_t c = std::min<std::uint64_t>(left, 9'000);
    h.add(static_cast<std::uint8_t>(s), c);
    left -= c;
  }
  EXPECT_EQ(h.total, 100'000U);
  EXPECT_NEAR(min_entropy(h), 2.6, 1e-4);
}

TEST(MinEntropy, EmptyThrows) { EXPECT_THROW(min_entropy(SymbolHistogram{}), std::invalid_argument); }

TEST(MinEntropy, FromBitsGroupsMsbFirst) {
  const auto h = SymbolHistogram::from_bits(BitString::from_string("1000000010000000"));
  EXPECT_EQ(h.counts[0x80], 2U);
  EXPECT_THROW(SymbolHistogram::from_bits(BitString::from_string("101")), std::invalid_argument);
}

TEST(OutputLength, Examples) {
  EXPECT_EQ(output_length(1000, 2.6, 12.5), 300U);
  EXPECT_EQ(output_length(1000, 8.0, 12.5), 975U);
  EXPECT_THROW(output_length(1000, 0.1, 12.5), std::invalid_argument);
}

TEST(OutputLength, InvalidInputs) {
  EXPECT_THROW(output_length(1001, 2.6, 12.5), std::invalid_argument);
  EXPECT_THROW(output_length(1000, 0.0, 12.5), std::invalid_argument);
  EXPECT_THROW(output_length(1000, 8.5, 12.5), std::invalid_argument);
  EXPECT_THROW(output_length(1000, 2.6, 0.0), std::invalid_argument);
}

TEST(ExtractionRatio, Examples) {
  ExtractionParams p;
  p.m = 300;
  EXPECT_DOUBLE_EQ(extraction_ratio(p), 0.3);
  p.m = 800;
  EXPECT_DOUBLE_EQ(extraction_ratio(p), 0.8);
  p.m = p.bs;
  EXPECT_DOUBLE_EQ(extraction_ratio(p), 1.0);
}

TEST(ExtractionParams, Validation) {
  ExtractionParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.batches(), 20U);
  auto bad = p;
  bad.sample_bits = 800'001;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.m = 1001;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.blocks = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(EntropyChain, DefaultParametersGiveRatioPointThree) {
  ExtractionParams p;
  p.m = output_length(p.bs, 2.6, p.eps_exponent);
  EXPECT_EQ(extraction_ratio(p), 0.3);
}

TEST(EntropyProperty, ScaleInvariantAndMonotone) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    SymbolHistogram h;
    for (int s = 0; s < 256; ++s) h.add(static_cast<std::uint8_t>(s), rng() % 50);
    h.add(static_cast<std::uint8_t>(rng() % 256), 1);
    SymbolHistogram scaled;
    for (int s = 0; s < 256; ++s) scaled.add(static_cast<std::uint8_t>(s), h.counts[s] * 3);
    EXPECT_NEAR(min_entropy(scaled), min_entropy(h), 1e-12);

    const auto peak = std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin();
    SymbolHistogram more = h;
    more.add(static_cast<std::uint8_t>(peak), 1 + rng() % 20);
    EXPECT_LE(min_entropy(more), min_entropy(h));
  }
}

TEST(EntropyProperty, OutputLengthMonotone) {
  for (double eps = 1.0; eps <= 40.0; eps += 1.5) {
    std::size_t prev = 0;
    for (double hmin = 1.0; hmin <= 8.0; hmin += 0.1) {
      const std::size_t m = output_length(1000, hmin, eps);
      EXPECT_GE(m, prev);
      prev = m;
      EXPECT_LE(output_length(1000, hmin, eps + 0.5), m);
    }
  }
}

}  // namespace
}  // namespace qrx
