#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>

#include "rxe/bitstring.hpp"
#include "rxe/tnfa.hpp"

namespace rxe {

// Move/Close/Member/Insert over one automaton. A state-set is a caller-owned
// array of set_words() words in the structure's own layout; encode/decode
// translate to StateSet over the automaton's state numbering. Implementations
// are immutable after construction and may be shared between threads; all
// temporaries live in the caller's scratch array of scratch_words() words.
class SimulationStructure {
 public:
  virtual ~SimulationStructure() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual std::size_t state_count() const noexcept = 0;
  virtual std::size_t set_words() const noexcept = 0;
  virtual std::size_t scratch_words() const noexcept = 0;

  virtual void move(std::span<Word> set, Symbol a, std::span<Word> scratch) const = 0;
  virtual void close(std::span<Word> set, std::span<Word> scratch) const = 0;
  virtual bool member(std::span<const Word> set, StateId s) const = 0;
  virtual void insert(std::span<Word> set, StateId s) const = 0;

  virtual void encode(const StateSet& states, std::span<Word> out) const = 0;
  virtual StateSet decode(std::span<const Word> set) const = 0;
};

// Naive structure over the automaton itself: transition scan for Move and a
// graph search for Close.
class NaiveSim final : public SimulationStructure {
 public:
  explicit NaiveSim(Tnfa tnfa);

  std::string_view name() const noexcept override { return "naive"; }
  std::size_t state_count() const noexcept override { return tnfa_.state_count(); }
  std::size_t set_words() const noexcept override { return words::count_for(tnfa_.state_count()); }
  std::size_t scratch_words() const noexcept override { return set_words() + tnfa_.state_count(); }

  void move(std::span<Word> set, Symbol a, std::span<Word> scratch) const override;
  void close(std::span<Word> set, std::span<Word> scratch) const override;
  bool member(std::span<const Word> set, StateId s) const override;
  void insert(std::span<Word> set, StateId s) const override;
  void encode(const StateSet& states, std::span<Word> out) const override;
  StateSet decode(std::span<const Word> set) const override;

  const Tnfa& tnfa() const noexcept { return tnfa_; }

 private:
  Tnfa tnfa_;
};

// Full-string membership with S0 = Close({start}), Si = Close(Move(Si-1, q[i])).
bool simulate_match(const SimulationStructure& sim, StateId start, StateId accept, std::string_view q);

}  // namespace rxe
