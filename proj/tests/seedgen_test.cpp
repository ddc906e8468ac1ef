#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrx/seedgen.hpp"

namespace qrx {
namespace {

SeedRecipe ascending_recipe() {
  SeedRecipe r;
  for (std::size_t i = 0; i < kSeedRawBits; ++i) r.raw_bit_offsets.push_back(i);
  return r;
}

oracle::ReferenceLfsr reference_from(const LfsrState& s) {
  oracle::ReferenceLfsr ref;
  for (unsigned i = 0; i < s.width(); ++i) ref.cells.push_back(s.cell(i) ? 1 : 0);
  ref.taps = s.taps();
  return ref;
}

TEST(BuildSeed, AllZeroRawKeepsOnlyFixedOnes) {
  const BitString raw(64);
  const auto s = build_seed(raw, ascending_recipe());
  EXPECT_EQ(std::popcount(s.reg()), 2);
  EXPECT_TRUE(s.cell(0));
  EXPECT_TRUE(s.cell(24));
}

TEST(BuildSeed, AllOnesRawFillsRegister) {
  const auto raw = BitString::from_string(std::string(64, '1'));
  EXPECT_EQ(build_seed(raw, ascending_recipe()).reg(), (1U << 25) - 1);
}

TEST(BuildSeed, AlternatingRawPlacement) {
  // Free cells 1..23 take raw[0..22] = 1,0,1,0,...: odd cells set, plus the
  // fixed cells 0 and 24.
  std::string text;
  for (int i = 0; i < 40; ++i) text += (i % 2 == 0) ? '1' : '0';
  std::uint32_t expected = 1U | (1U << 24);
  for (unsigned k = 1; k <= 23; k += 2) expected |= 1U << k;
  EXPECT_EQ(build_seed(BitString::from_string(text), ascending_recipe()).reg(), expected);
}

TEST(BuildSeed, Errors) {
  const BitString raw(20);
  EXPECT_THROW(build_seed(raw, ascending_recipe()), std::out_of_range);

  SeedRecipe short_recipe = ascending_recipe();
  short_recipe.raw_bit_offsets.pop_back();
  EXPECT_THROW(build_seed(BitString(64), short_recipe), std::invalid_argument);

  SeedRecipe dup = ascending_recipe();
  dup.fixed_one_positions = {3, 3};
  EXPECT_THROW(build_seed(BitString(64), dup), std::invalid_argument);

  SeedRecipe outside = ascending_recipe();
  outside.fixed_one_positions = {0, 25};
  EXPECT_THROW(build_seed(BitString(64), outside), std::invalid_argument);
}

TEST(LfsrState, RejectsDegenerateConfigurations) {
  EXPECT_THROW(LfsrState(0, kDefaultTaps), std::invalid_argument);
  EXPECT_THROW(LfsrState(1, {24, 21}), std::invalid_argument);  // cell 0 not tapped
  EXPECT_THROW(LfsrState(1, {0, 25}), std::invalid_argument);
  EXPECT_THROW(LfsrState(1U << 25, kDefaultTaps), std::invalid_argument);
}

TEST(LfsrStep, SingleLowCell) {
  const LfsrState start(1U, kDefaultTaps);
  const auto [bit, next] = lfsr_step(start);
  EXPECT_TRUE(bit);
  EXPECT_EQ(next.reg(), 1U << 24);

  auto ref = reference_from(start);
  EXPECT_EQ(ref.step(), 1);
  for (unsigned i = 0; i < 25; ++i) EXPECT_EQ(ref.cells[i], next.cell(i) ? 1 : 0) << i;
}

TEST(LfsrStep, AllOnesOutputsOne) {
  EXPECT_TRUE(lfsr_step(LfsrState((1U << 25) - 1, kDefaultTaps)).first);
}

TEST(ToeplitzString, LengthOneIsInitialCellZero) {
  LfsrState s(0b10U, kDefaultTaps);
  EXPECT_EQ(generate_toeplitz_string(s, 1).to_string(), "0");
  LfsrState t(0b11U, kDefaultTaps);
  EXPECT_EQ(generate_toeplitz_string(t, 1).to_string(), "1");
  EXPECT_THROW(generate_toeplitz_string(t, 0), std::invalid_argument);
}

TEST(ToeplitzString, DefaultGeometryLength) {
  LfsrState s(0x1ABCDEFU, kDefaultTaps);
  EXPECT_EQ(generate_toeplitz_string(s, 1000 + 300 - 1).size(), 1299U);
}

TEST(ToeplitzString, MatchesReferenceSimulator) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t reg = static_cast<std::uint32_t>(rng() % ((1U << 25) - 1)) + 1;
    LfsrState s(reg, kDefaultTaps);
    auto ref = reference_from(s);
    const auto ts = generate_toeplitz_string(s, 30);
    for (std::size_t i = 0; i < 30; ++i) ASSERT_EQ(ts[i] ? 1 : 0, ref.step()) << i;
    for (unsigned i = 0; i < 25; ++i) ASSERT_EQ(s.cell(i) ? 1 : 0, ref.cells[i]);
  }
}

TEST(ToeplitzString, FirstBitsDetermineSeedAndRecurrence) {
  const std::uint32_t reg = 0x0F0F0F1U & ((1U << 25) - 1);
  LfsrState s(reg, kDefaultTaps);
  const auto ts = generate_toeplitz_string(s, 50);
  std::uint32_t recovered = 0;
  for (unsigned i = 0; i < 25; ++i) recovered |= static_cast<std::uint32_t>(ts[i]) << i;
  EXPECT_EQ(recovered, reg);
  for (std::size_t n = 0; n + 25 < 50; ++n) EXPECT_EQ(ts[n + 25], ts[n] != ts[n + 22]) << n;
}

TEST(ToeplitzString, Deterministic) {
  LfsrState a(12345U, kDefaultTaps);
  LfsrState b(12345U, kDefaultTaps);
  EXPECT_EQ(generate_toeplitz_string(a, 500), generate_toeplitz_string(b, 500));
}

TEST(LfsrPeriod, DegreeSevenAnalog) {
  EXPECT_EQ(lfsr_period(LfsrState(1U, {0, 6}, 7), 1000), 127U);
}

TEST(LfsrPeriod, DefaultTapsAreMaximal) {
  EXPECT_EQ(lfsr_period(LfsrState(1U, kDefaultTaps), 1ULL << 26), (1ULL << 25) - 1);
}

TEST(DefaultRecipe, DistinctSortedInRangeAndDeterministic) {
  const auto r = default_recipe(800'000, 42);
  r.validate();
  EXPECT_TRUE(std::is_sorted(r.raw_bit_offsets.begin(), r.raw_bit_offsets.end()));
  EXPECT_EQ(std::adjacent_find(r.raw_bit_offsets.begin(), r.raw_bit_offsets.end()),
            r.raw_bit_offsets.end());
  EXPECT_LT(r.raw_bit_offsets.back(), 800'000U);
  EXPECT_EQ(default_recipe(800'000, 42).raw_bit_offsets, r.raw_bit_offsets);
  EXPECT_NE(default_recipe(800'000, 43).raw_bit_offsets, r.raw_bit_offsets);
  EXPECT_THROW(default_recipe(22, 0), std::invalid_argument);
}

TEST(BuildSeedProperty, NeverAllZero) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 1000; ++t) {
    const auto raw = oracle::random_bits(rng, 64);
    SeedRecipe r = ascending_recipe();
    const unsigned a = static_cast<unsigned>(rng() % 25);
    r.fixed_one_positions = {a, (a + 1 + static_cast<unsigned>(rng() % 24)) % 25};
    EXPECT_NE(build_seed(raw, r).reg(), 0U);
  }
}

}  // namespace
}  // namespace qrx
