#include "qrx/seedgen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace qrx {

LfsrState::LfsrState(std::uint32_t reg, std::vector<unsigned> taps, unsigned width)
    : reg_(reg), width_(width), taps_(std::move(taps)) {
  if (width_ < 2 || width_ > 32) {
    throw std::invalid_argument("LFSR width " + std::to_string(width_) + " outside [2, 32]");
  }
  if (width_ < 32 && (reg_ >> width_) != 0) {
    throw std::invalid_argument("LFSR register has bits above width " + std::to_string(width_));
  }
  if (reg_ == 0) throw std::invalid_argument("LFSR register must not be all-zero");
  if (taps_.empty()) throw std::invalid_argument("LFSR needs at least one tap");
  for (unsigned t : taps_) {
    if (t >= width_) {
      throw std::invalid_argument("tap " + std::to_string(t) + " outside register of width " +
                                  std::to_string(width_));
    }
    tap_mask_ |= std::uint32_t{1} << t;
  }
  if ((tap_mask_ & 1U) == 0) {
    throw std::invalid_argument("taps must include cell 0; otherwise the feedback map is singular");
  }
}

void SeedRecipe::validate() const {
  if (raw_bit_offsets.size() != kSeedRawBits) {
    throw std::invalid_argument("seed recipe needs " + std::to_string(kSeedRawBits) +
                                " raw offsets, got " + std::to_string(raw_bit_offsets.size()));
  }
  if (fixed_one_positions.size() != kLfsrWidth - kSeedRawBits) {
    throw std::invalid_argument("seed recipe needs 2 fixed positions, got " +
                                std::to_string(fixed_one_positions.size()));
  }
  if (fixed_one_positions[0] == fixed_one_positions[1]) {
    throw std::invalid_argument("seed recipe fixed positions must be distinct");
  }
  for (unsigned p : fixed_one_positions) {
    if (p >= kLfsrWidth) {
      throw std::invalid_argument("fixed position " + std::to_string(p) + " outside [0, 25)");
    }
  }
}

SeedRecipe default_recipe(std::size_t raw_len, std::uint64_t nonce) {
  if (raw_len < kSeedRawBits) {
    throw std::invalid_argument("raw sample of " + std::to_string(raw_len) +
                                " bits is too short to seed the LFSR");
  }
  std::mt19937_64 rng(nonce);
  std::uniform_int_distribution<std::size_t> pick(0, raw_len - 1);
  std::unordered_set<std::size_t> seen;
  SeedRecipe recipe;
  while (recipe.raw_bit_offsets.size() < kSeedRawBits) {
    const std::size_t off = pick(rng);
    if (seen.insert(off).second) recipe.raw_bit_offsets.push_back(off);
  }
  std::sort(recipe.raw_bit_offsets.begin(), recipe.raw_bit_offsets.end());
  return recipe;
}

LfsrState build_seed(const BitString& raw, const SeedRecipe& recipe,
                     const std::vector<unsigned>& taps) {
  recipe.validate();
  std::uint32_t reg = 0;
  for (unsigned p : recipe.fixed_one_positions) reg |= std::uint32_t{1} << p;
  std::size_t next = 0;
  for (unsigned cell = 0; cell < kLfsrWidth; ++cell) {
    if ((reg >> cell) & 1U) continue;
    const std::size_t off = recipe.raw_bit_offsets[next++];
    if (off >= raw.size()) {
      throw std::out_of_range("seed offset " + std::to_string(off) +
                              " out of range for raw length " + std::to_string(raw.size()));
    }
    if (raw[off]) reg |= std::uint32_t{1} << cell;
  }
  return LfsrState(reg, taps, kLfsrWidth);
}

std::pair<bool, LfsrState> lfsr_step(LfsrState state) {
  const bool out = state.step();
  return {out, std::move(state)};
}

BitString generate_toeplitz_string(LfsrState& state, std::size_t length) {
  if (length == 0) throw std::invalid_argument("Toeplitz string length must be >= 1");
  BitString ts(length);
  for (std::size_t i = 0; i < length; ++i) ts.set(i, state.step());
  return ts;
}

std::uint64_t lfsr_period(LfsrState state, std::uint64_t limit) {
  const std::uint32_t start = state.reg();
  for (std::uint64_t n = 1; n <= limit; ++n) {
    state.step();
    if (state.reg() == start) return n;
  }
  return 0;
}

}  // namespace qrx
