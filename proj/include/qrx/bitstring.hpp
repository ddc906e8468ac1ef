#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qrx {

/// Packed, length-tagged bit sequence.
///
/// Logical bit i lives in bit (i % 64) of word (i / 64), least-significant
/// bit first. Bits past size() inside the last word are always zero; every
/// mutating member restores that.
class BitString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitString() = default;
  /// n zero bits.
  explicit BitString(std::size_t n);

  /// Parses a string of '0'/'1' characters; anything else throws.
  static BitString from_string(std::string_view bits);
  /// Each byte contributes 8 bits, most significant bit first.
  static BitString from_bytes_msb(std::span<const std::uint8_t> bytes);
  /// Wraps already-packed words. Padding beyond n is cleared.
  static BitString from_words(std::vector<Word> words, std::size_t n);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }

  /// Bounds-checked read; throws std::out_of_range naming the index and length.
  bool get(std::size_t i) const;
  bool operator[](std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void set(std::size_t i, bool v);
  void push_back(bool v);
  /// Appends all bits of other.
  void append(const BitString& other);

  std::size_t popcount() const noexcept;

  /// Contiguous sub-string [start, start + width).
  BitString window(std::size_t start, std::size_t width) const;
  /// Same bits in reverse order.
  BitString reversed() const;

  std::string to_string() const;
  /// MSB-first packing; a final partial byte is zero-padded at the low end.
  std::vector<std::uint8_t> to_bytes_msb() const;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.len_ == b.len_ && a.words_ == b.words_;
  }

 private:
  void clear_padding() noexcept;

  std::vector<Word> words_;
  std::size_t len_ = 0;
};

/// Bit i of the logical string; throws std::out_of_range when i >= s.size().
bool get_bit(const BitString& s, std::size_t i);

/// GF(2) inner product: XOR-reduction of a AND b. Lengths must match.
bool and_parity(const BitString& a, const BitString& b);

/// Concatenation in list order.
BitString concat(std::span<const BitString> parts);

/// s[start .. start + width - 1]; throws std::out_of_range past the end.
BitString window(const BitString& s, std::size_t start, std::size_t width);

}  // namespace qrx
