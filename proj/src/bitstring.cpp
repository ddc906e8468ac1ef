#include "qrx/bitstring.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "qrx/simd/kernels.hpp"

namespace qrx {
namespace {

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + BitString::kWordBits - 1) / BitString::kWordBits;
}

std::uint64_t reverse_word(std::uint64_t v) {
  v = ((v >> 1) & 0x5555555555555555ULL) | ((v & 0x5555555555555555ULL) << 1);
  v = ((v >> 2) & 0x3333333333333333ULL) | ((v & 0x3333333333333333ULL) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((v & 0x0F0F0F0F0F0F0F0FULL) << 4);
  return __builtin_bswap64(v);
}

}  // namespace

BitString::BitString(std::size_t n) : words_(words_for(n), 0), len_(n) {}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char c = bits[i];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string contains '" + std::string(1, c) +
                                  "' at position " + std::to_string(i));
    }
    if (c == '1') out.words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  return out;
}

BitString BitString::from_bytes_msb(std::span<const std::uint8_t> bytes) {
  BitString out(bytes.size() * 8);
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    // MSB-first means the logical order is the byte's bit-reversal.
    std::uint8_t v = bytes[b];
    v = static_cast<std::uint8_t>((v & 0xF0) >> 4 | (v & 0x0F) << 4);
    v = static_cast<std::uint8_t>((v & 0xCC) >> 2 | (v & 0x33) << 2);
    v = static_cast<std::uint8_t>((v & 0xAA) >> 1 | (v & 0x55) << 1);
    const std::size_t bit = b * 8;
    out.words_[bit / kWordBits] |= Word{v} << (bit % kWordBits);
  }
  return out;
}

BitString BitString::from_words(std::vector<Word> words, std::size_t n) {
  if (words.size() < words_for(n)) {
    throw std::invalid_argument("from_words: " + std::to_string(words.size()) +
                                " words cannot hold " + std::to_string(n) + " bits");
  }
  BitString out;
  out.words_ = std::move(words);
  out.words_.resize(words_for(n));
  out.len_ = n;
  out.clear_padding();
  return out;
}

bool BitString::get(std::size_t i) const {
  if (i >= len_) {
    throw std::out_of_range("bit index " + std::to_string(i) + " out of range for length " +
                            std::to_string(len_));
  }
  return (*this)[i];
}

void BitString::set(std::size_t i, bool v) {
  if (i >= len_) {
    throw std::out_of_range("bit index " + std::to_string(i) + " out of range for length " +
                            std::to_string(len_));
  }
  const Word mask = Word{1} << (i % kWordBits);
  if (v) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitString::push_back(bool v) {
  if (len_ % kWordBits == 0) words_.push_back(0);
  if (v) words_[len_ / kWordBits] |= Word{1} << (len_ % kWordBits);
  ++len_;
}

void BitString::append(const BitString& other) {
  if (other.len_ == 0) return;
  const std::size_t shift = len_ % kWordBits;
  const std::size_t new_len = len_ + other.len_;
  if (shift == 0) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
  } else {
    words_.resize(words_for(new_len), 0);
    std::size_t dst = len_ / kWordBits;
    for (Word w : other.words_) {
      words_[dst] |= w << shift;
      if (dst + 1 < words_.size()) words_[dst + 1] |= w >> (kWordBits - shift);
      ++dst;
    }
  }
  len_ = new_len;
}

std::size_t BitString::popcount() const noexcept {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitString BitString::window(std::size_t start, std::size_t width) const {
  if (start > len_ || width > len_ - start) {
    throw std::out_of_range("window [" + std::to_string(start) + ", " +
                            std::to_string(start + width) + ") exceeds length " +
                            std::to_string(len_));
  }
  BitString out(width);
  const std::size_t first = start / kWordBits;
  const std::size_t shift = start % kWordBits;
  for (std::size_t k = 0; k < out.words_.size(); ++k) {
    Word w = words_[first + k] >> shift;
    if (shift != 0 && first + k + 1 < words_.size()) {
      w |= words_[first + k + 1] << (kWordBits - shift);
    }
    out.words_[k] = w;
  }
  out.clear_padding();
  return out;
}

BitString BitString::reversed() const {
  BitString out(len_);
  if (len_ == 0) return out;
  // Reverse whole words, then shift the result down by the padding width.
  const std::size_t nw = words_.size();
  const std::size_t pad = nw * kWordBits - len_;
  std::vector<Word> rev(nw);
  for (std::size_t k = 0; k < nw; ++k) rev[k] = reverse_word(words_[nw - 1 - k]);
  for (std::size_t k = 0; k < nw; ++k) {
    Word w = rev[k] >> pad;
    if (pad != 0 && k + 1 < nw) w |= rev[k + 1] << (kWordBits - pad);
    out.words_[k] = w;
  }
  out.clear_padding();
  return out;
}

std::string BitString::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::vector<std::uint8_t> BitString::to_bytes_msb() const {
  std::vector<std::uint8_t> out((len_ + 7) / 8, 0);
  for (std::size_t i = 0; i < len_; ++i) {
    if ((*this)[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.len_ != len_) {
    throw std::invalid_argument("xor length mismatch: " + std::to_string(len_) + " vs " +
                                std::to_string(other.len_));
  }
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

void BitString::clear_padding() noexcept {
  const std::size_t tail = len_ % kWordBits;
  if (tail != 0 && !words_.empty()) words_.back() &= (Word{1} << tail) - 1;
}

bool get_bit(const BitString& s, std::size_t i) { return s.get(i); }

bool and_parity(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("and_parity length mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
  return simd::and_parity_words(a.words(), b.words());
}

BitString concat(std::span<const BitString> parts) {
  BitString out;
  for (const BitString& p : parts) out.append(p);
  return out;
}

BitString window(const BitString& s, std::size_t start, std::size_t width) {
  return s.window(start, width);
}

}  // namespace qrx
