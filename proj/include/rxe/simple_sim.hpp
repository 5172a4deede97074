#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rxe/bitstring.hpp"
#include "rxe/simulation.hpp"
#include "rxe/tnfa.hpp"

namespace rxe {

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Constant-time simulation for automata whose m(m+1) closure matrix fits in
// one simulated word of w bits. A state-set is an m-bit string in topological
// order held in the low bits of a word.
//
//   Move:  S' = (S >> 1) & D[a]
//   Close: Y  = (S * X) & E
//          Z  = ((Y | I) - (I >> m)) & I
//          S' = ((Z * C) << (w - m(m+1))) >> (w - m)
//
// E holds m blocks, one per target state i, each a zero test bit followed by
// e[i][1..m] with e[i][j] = 1 iff i is epsilon-reachable from j.
// I = (10^m)^m marks the test bits, X = 1(0^m 1)^(m-1) spreads m copies of S,
// and C = 1(0^(m-1) 1)^(m-1) gathers the test bits back into m adjacent bits.
class SimpleSim final : public SimulationStructure {
 public:
  SimpleSim(const Tnfa& tnfa, unsigned word_size);

  static bool fits(std::size_t state_count, unsigned word_size) noexcept {
    return state_count * (state_count + 1) <= word_size;
  }

  std::string_view name() const noexcept override { return "simple"; }
  std::size_t state_count() const noexcept override { return m_; }
  std::size_t set_words() const noexcept override { return 1; }
  std::size_t scratch_words() const noexcept override { return 0; }
  unsigned word_size() const noexcept { return w_; }

  void move(std::span<Word> set, Symbol a, std::span<Word> scratch) const override;
  void close(std::span<Word> set, std::span<Word> scratch) const override;
  bool member(std::span<const Word> set, StateId s) const override;
  void insert(std::span<Word> set, StateId s) const override;
  void encode(const StateSet& states, std::span<Word> out) const override;
  StateSet decode(std::span<const Word> set) const override;

  Word move_word(Word s, Symbol a) const noexcept { return (s >> 1) & d_[slot_[a]]; }
  Word close_word(Word s) const noexcept;

  // Value-level operations on m-bit state-sets.
  StateSet move(const StateSet& s, Symbol a) const;
  StateSet close(const StateSet& s) const;
  bool member(const StateSet& s, StateId state) const;
  StateSet insert(const StateSet& s, StateId state) const;

  BitString d(Symbol a) const { return BitString::from_value(m_, d_[slot_.at(a)]); }
  const BitString& e() const noexcept { return e_; }
  const BitString& i() const noexcept { return i_; }
  const BitString& x() const noexcept { return x_; }
  const BitString& c() const noexcept { return c_; }

  // Intermediate strings of one Close, all of length m(m+1) except result.
  struct CloseTrace {
    BitString y;
    BitString minuend;     // Y | I
    BitString subtrahend;  // I >> m
    BitString difference;  // (Y | I) - (I >> m)
    BitString z;
    BitString product;     // Z * C modulo 2^(m(m+1))
    BitString result;      // length m
  };
  CloseTrace trace_close(const StateSet& s) const;

 private:
  void check_state(StateId s) const;

  std::size_t m_ = 0;
  unsigned w_ = 0;
  Word mask_ = 0;
  // D lookup: symbol -> slot in d_; slot 0 is the empty string.
  std::array<std::uint16_t, kSymbolCount> slot_{};
  std::vector<Word> d_;
  BitString e_, i_, x_, c_;
  Word e_word_ = 0, i_word_ = 0, i_shifted_ = 0, x_word_ = 0, c_word_ = 0;
  unsigned up_shift_ = 0, down_shift_ = 0;
};

}  // namespace rxe
