#pragma once

// Independent reference implementations used only by tests. None of these
// touch the packed-word paths they check.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qrx/bitstring.hpp"

namespace qrx::oracle {

inline std::vector<int> to_vec(const BitString& s) {
  std::vector<int> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.get(i) ? 1 : 0;
  return v;
}

inline BitString from_vec(const std::vector<int>& v) {
  std::string s;
  for (int b : v) s += b ? '1' : '0';
  return BitString::from_string(s);
}

inline int bitwise_and_parity(const BitString& a, const BitString& b) {
  int acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= (a.get(i) && b.get(i)) ? 1 : 0;
  return acc;
}

/// Materializes T[i][j] = ts[i - j + bs - 1] and multiplies over GF(2).
inline std::vector<int> toeplitz_product(const std::vector<int>& ts, std::size_t bs,
                                         std::size_t m, const std::vector<int>& x) {
  std::vector<std::vector<int>> t(m, std::vector<int>(bs));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < bs; ++j) t[i][j] = ts[i + bs - 1 - j];
  std::vector<int> y(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < bs; ++j) y[i] = (y[i] + t[i][j] * x[j]) % 2;
  return y;
}

/// Cell-list LFSR: output cell 0, shift toward 0, feedback into the top cell.
struct ReferenceLfsr {
  std::vector<int> cells;
  std::vector<unsigned> taps;

  int step() {
    int fb = 0;
    for (unsigned t : taps) fb ^= cells[t];
    const int out = cells[0];
    cells.erase(cells.begin());
    cells.push_back(fb);
    return out;
  }
};

inline BitString random_bits(std::mt19937_64& rng, std::size_t n) {
  BitString s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, (rng() & 1U) != 0);
  return s;
}

}  // namespace qrx::oracle
