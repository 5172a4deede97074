#include "rxe/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rxe {

namespace words {

void shift_right(std::span<const Word> in, std::size_t k, std::span<Word> out) noexcept {
  const std::size_t n = out.size();
  const std::size_t q = k / kWordBits;
  const std::size_t r = k % kWordBits;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = i + q;
    const Word lo = src < n ? in[src] : 0;
    if (r == 0) {
      out[i] = lo;
    } else {
      const Word hi = src + 1 < n ? in[src + 1] : 0;
      out[i] = (lo >> r) | (hi << (kWordBits - r));
    }
  }
}

void shift_left(std::span<const Word> in, std::size_t k, std::size_t len,
                std::span<Word> out) noexcept {
  const std::size_t n = out.size();
  const std::size_t q = k / kWordBits;
  const std::size_t r = k % kWordBits;
  for (std::size_t i = n; i-- > 0;) {
    const Word lo = i >= q ? in[i - q] : 0;
    if (r == 0) {
      out[i] = lo;
    } else {
      const Word below = i >= q + 1 ? in[i - q - 1] : 0;
      out[i] = (lo << r) | (below >> (kWordBits - r));
    }
  }
  if (n > 0) out[n - 1] &= top_mask(len);
}

Word subtract(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) noexcept {
  Word borrow = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Word x = a[i];
    const Word y = b[i];
    const Word d = x - y;
    const Word b1 = x < y ? 1 : 0;
    out[i] = d - borrow;
    borrow = b1 | (d < borrow ? 1 : 0);
  }
  return borrow;
}

bool any(std::span<const Word> a) noexcept {
  for (Word w : a) {
    if (w != 0) return true;
  }
  return false;
}

bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

}  // namespace words

BitString::BitString(std::size_t len) : len_(len), words_(words::count_for(len), 0) {}

BitString BitString::from_string(std::string_view bits) {
  BitString s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      s.set(i + 1);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return s;
}

BitString BitString::from_value(std::size_t len, Word value) {
  if (len > kWordBits) throw std::length_error("from_value: length exceeds 64 bits");
  BitString s(len);
  if (len > 0) s.words_[0] = value & words::top_mask(len);
  return s;
}

bool BitString::test(std::size_t pos) const {
  if (pos == 0 || pos > len_) throw std::out_of_range("bit position out of range");
  const std::size_t sig = len_ - pos;
  return (words_[sig / kWordBits] >> (sig % kWordBits)) & 1U;
}

void BitString::set(std::size_t pos, bool value) {
  if (pos == 0 || pos > len_) throw std::out_of_range("bit position out of range");
  const std::size_t sig = len_ - pos;
  const Word bit = Word{1} << (sig % kWordBits);
  if (value) {
    words_[sig / kWordBits] |= bit;
  } else {
    words_[sig / kWordBits] &= ~bit;
  }
}

void BitString::reset() noexcept {
  for (Word& w : words_) w = 0;
}

std::size_t BitString::count() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Word BitString::value() const {
  if (len_ > kWordBits) throw std::length_error("value: bit string longer than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitString::to_string() const {
  std::string out(len_, '0');
  for (std::size_t p = 1; p <= len_; ++p) {
    if (test(p)) out[p - 1] = '1';
  }
  return out;
}

BitString BitString::resized(std::size_t len) const {
  BitString out(len);
  const std::size_t n = std::min(out.words_.size(), words_.size());
  for (std::size_t i = 0; i < n; ++i) out.words_[i] = words_[i];
  out.clear_unused();
  return out;
}

BitString BitString::shifted(std::ptrdiff_t k) const {
  const std::size_t mag = k < 0 ? static_cast<std::size_t>(-k) : static_cast<std::size_t>(k);
  if (mag > len_) throw std::out_of_range("shift count exceeds bit string length");
  BitString out(len_);
  if (k >= 0) {
    words::shift_right(words_, mag, out.words_);
  } else {
    words::shift_left(words_, mag, len_, out.words_);
  }
  return out;
}

BitString BitString::operator>>(std::size_t k) const {
  return shifted(static_cast<std::ptrdiff_t>(k));
}

BitString BitString::operator<<(std::size_t k) const {
  return shifted(-static_cast<std::ptrdiff_t>(k));
}

BitString BitString::operator~() const {
  BitString out(len_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  out.clear_unused();
  return out;
}

BitString& BitString::operator&=(const BitString& other) {
  check_same_length(other, "&");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitString& BitString::operator|=(const BitString& other) {
  check_same_length(other, "|");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitString& BitString::operator^=(const BitString& other) {
  check_same_length(other, "^");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitString operator-(const BitString& a, const BitString& b) {
  a.check_same_length(b, "-");
  BitString out(a.len_);
  words::subtract(a.words_, b.words_, out.words_);
  out.clear_unused();
  return out;
}

BitString operator*(const BitString& a, const BitString& b) {
  a.check_same_length(b, "*");
  return multiply(a, b, a.len_);
}

BitString multiply(const BitString& a, const BitString& b, std::size_t result_len) {
  if (a.size() > kWordBits || b.size() > kWordBits || result_len > kWordBits) {
    throw std::domain_error("multiplication is limited to strings of at most 64 bits");
  }
  return BitString::from_value(result_len, a.value() * b.value());
}

void BitString::check_same_length(const BitString& other, const char* op) const {
  if (len_ != other.len_) {
    throw std::invalid_argument(std::string("bit string length mismatch in operator ") + op);
  }
}

void BitString::clear_unused() noexcept {
  if (!words_.empty()) words_.back() &= words::top_mask(len_);
}

}  // namespace rxe
