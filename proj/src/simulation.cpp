#include "rxe/simulation.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "naive_kernels.hpp"

namespace rxe {

NaiveSim::NaiveSim(Tnfa tnfa) : tnfa_(std::move(tnfa)) {}

void NaiveSim::move(std::span<Word> set, Symbol a, std::span<Word> scratch) const {
  const auto tmp = scratch.first(set.size());
  detail::naive_move_words(tnfa_, set, a, tmp);
  std::copy(tmp.begin(), tmp.end(), set.begin());
}

void NaiveSim::close(std::span<Word> set, std::span<Word> scratch) const {
  // Scratch words double as the search stack; each state is pushed at most once.
  const std::size_t n = tnfa_.state_count();
  auto stack = scratch.subspan(set_words(), n);
  std::size_t top = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    Word w = set[i];
    while (w != 0) {
      const std::size_t b = i * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      w &= w - 1;
      stack[top++] = n - 1 - b;
    }
  }
  while (top > 0) {
    const auto s = static_cast<StateId>(stack[--top]);
    for (StateId t : tnfa_.epsilon_successors(s)) {
      if (!detail::test_state(set, n, t)) {
        detail::set_state(set, n, t);
        stack[top++] = t;
      }
    }
  }
}

bool NaiveSim::member(std::span<const Word> set, StateId s) const {
  return detail::test_state(set, tnfa_.state_count(), s);
}

void NaiveSim::insert(std::span<Word> set, StateId s) const {
  detail::set_state(set, tnfa_.state_count(), s);
}

void NaiveSim::encode(const StateSet& states, std::span<Word> out) const {
  const auto w = states.bits().words();
  std::copy(w.begin(), w.end(), out.begin());
}

StateSet NaiveSim::decode(std::span<const Word> set) const {
  StateSet out(tnfa_.state_count());
  std::copy(set.begin(), set.end(), out.bits().words().begin());
  return out;
}

bool simulate_match(const SimulationStructure& sim, StateId start, StateId accept, std::string_view q) {
  std::vector<Word> set(sim.set_words(), 0);
  std::vector<Word> scratch(sim.scratch_words(), 0);
  sim.insert(set, start);
  sim.close(set, scratch);
  for (unsigned char c : q) {
    sim.move(set, c, scratch);
    sim.close(set, scratch);
  }
  return sim.member(set, accept);
}

}  // namespace rxe
