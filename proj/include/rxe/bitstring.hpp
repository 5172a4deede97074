#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rxe {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

// Kernels over little-endian word arrays: word 0 holds the least significant
// bits of the integer. Output spans may alias inputs unless noted.
namespace words {

constexpr std::size_t count_for(std::size_t len) noexcept {
  return (len + kWordBits - 1) / kWordBits;
}

// Mask of the valid bits in the highest word of a `len`-bit integer.
constexpr Word top_mask(std::size_t len) noexcept {
  const std::size_t rem = len % kWordBits;
  return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
}

// out = in >> k (toward lower significance).
void shift_right(std::span<const Word> in, std::size_t k, std::span<Word> out) noexcept;

// out = (in << k) mod 2^len.
void shift_left(std::span<const Word> in, std::size_t k, std::size_t len,
                std::span<Word> out) noexcept;

// out = (a - b) mod 2^(64 * size); returns the final borrow. The caller masks
// the top word when the logical length is not a multiple of 64.
Word subtract(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) noexcept;

bool any(std::span<const Word> a) noexcept;
bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept;

}  // namespace words

// Fixed-length bit sequence. Positions 1..size() are read left to right and
// position 1 is the most significant bit of the integer interpretation, so
// `s >> 1` moves the bit at position p to position p + 1. Arithmetic wraps
// modulo 2^size().
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t len);

  // Parses a string of '0' and '1'; the first character is position 1.
  static BitString from_string(std::string_view bits);
  // Integer interpretation of `value` truncated to `len` bits (len <= 64).
  static BitString from_value(std::size_t len, Word value);

  std::size_t size() const noexcept { return len_; }

  bool test(std::size_t pos) const;
  void set(std::size_t pos, bool value = true);
  void reset() noexcept;

  bool any() const noexcept { return words::any(words_); }
  std::size_t count() const noexcept;

  // Integer value; requires size() <= 64.
  Word value() const;
  std::string to_string() const;

  // Same integer modulo 2^len, at a new length.
  BitString resized(std::size_t len) const;

  // k > 0 shifts right by k, k < 0 shifts left by -k. |k| must not exceed size().
  BitString shifted(std::ptrdiff_t k) const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  BitString operator>>(std::size_t k) const;
  BitString operator<<(std::size_t k) const;
  BitString operator~() const;

  BitString& operator&=(const BitString& other);
  BitString& operator|=(const BitString& other);
  BitString& operator^=(const BitString& other);

  friend BitString operator&(BitString a, const BitString& b) { return a &= b; }
  friend BitString operator|(BitString a, const BitString& b) { return a |= b; }
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }

  // Subtraction modulo 2^size(); lengths must match.
  friend BitString operator-(const BitString& a, const BitString& b);
  // Product modulo 2^size(); lengths must match and be at most 64.
  friend BitString operator*(const BitString& a, const BitString& b);

  friend bool operator==(const BitString& a, const BitString& b) = default;

 private:
  void check_same_length(const BitString& other, const char* op) const;
  void clear_unused() noexcept;

  std::size_t len_ = 0;
  std::vector<Word> words_;
};

// (a * b) mod 2^result_len for operands and result of at most 64 bits.
BitString multiply(const BitString& a, const BitString& b, std::size_t result_len);

}  // namespace rxe
