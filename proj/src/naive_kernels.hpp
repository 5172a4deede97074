#pragma once

#include <bit>
#include <span>
#include <string_view>
#include <vector>

#include "rxe/tnfa.hpp"

namespace rxe::detail {

// Bit of state s in an n-state set stored as a BitString (position s + 1).
inline std::size_t sig_of(std::size_t n, StateId s) noexcept { return n - 1 - s; }

inline bool test_state(std::span<const Word> w, std::size_t n, StateId s) noexcept {
  const std::size_t b = sig_of(n, s);
  return (w[b / kWordBits] >> (b % kWordBits)) & 1U;
}

inline void set_state(std::span<Word> w, std::size_t n, StateId s) noexcept {
  const std::size_t b = sig_of(n, s);
  w[b / kWordBits] |= Word{1} << (b % kWordBits);
}

// Scans every transition once.
inline void naive_move_words(const Tnfa& tnfa, std::span<const Word> in, Symbol a, std::span<Word> out) {
  const std::size_t n = tnfa.state_count();
  for (Word& w : out) w = 0;
  for (const Transition& t : tnfa.transitions()) {
    if (t.label == a && test_state(in, n, t.from)) set_state(out, n, t.to);
  }
}

// Depth-first search over epsilon transitions from every member of the set.
inline void naive_close_words(const Tnfa& tnfa, std::span<Word> set, std::vector<StateId>& stack) {
  const std::size_t n = tnfa.state_count();
  stack.clear();
  for (std::size_t i = 0; i < set.size(); ++i) {
    Word w = set[i];
    while (w != 0) {
      const std::size_t b = i * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      w &= w - 1;
      stack.push_back(static_cast<StateId>(n - 1 - b));
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId t : tnfa.epsilon_successors(s)) {
      if (!test_state(set, n, t)) {
        set_state(set, n, t);
        stack.push_back(t);
      }
    }
  }
}

class NaiveRun {
 public:
  explicit NaiveRun(const Tnfa& tnfa)
      : tnfa_(tnfa), cur_(words::count_for(tnfa.state_count())), next_(cur_.size()) {}

  bool match(std::string_view q) {
    const std::size_t n = tnfa_.state_count();
    for (Word& w : cur_) w = 0;
    set_state(cur_, n, tnfa_.start());
    naive_close_words(tnfa_, cur_, stack_);
    for (unsigned char c : q) {
      naive_move_words(tnfa_, cur_, c, next_);
      naive_close_words(tnfa_, next_, stack_);
      cur_.swap(next_);
    }
    return test_state(cur_, n, tnfa_.accept());
  }

 private:
  const Tnfa& tnfa_;
  std::vector<Word> cur_, next_;
  std::vector<StateId> stack_;
};

}  // namespace rxe::detail
