#include "rxe/simple_sim.hpp"

#include <string>

namespace rxe {

namespace {

// States epsilon-reachable from `source`, including itself.
std::vector<bool> reachable_from(const Tnfa& tnfa, StateId source) {
  std::vector<bool> seen(tnfa.state_count(), false);
  std::vector<StateId> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId t : tnfa.epsilon_successors(s)) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

SimpleSim::SimpleSim(const Tnfa& tnfa, unsigned word_size) : m_(tnfa.state_count()), w_(word_size) {
  if (word_size == 0 || word_size > kWordBits) {
    throw std::invalid_argument("word size must be between 1 and 64");
  }
  if (!fits(m_, word_size)) {
    throw CapacityError("automaton with " + std::to_string(m_) + " states needs " +
                        std::to_string(m_ * (m_ + 1)) + " bits; the simple backend has " +
                        std::to_string(word_size));
  }
  mask_ = w_ == kWordBits ? ~Word{0} : (Word{1} << w_) - 1;
  const std::size_t block = m_ + 1;
  const std::size_t len = m_ * block;

  d_.assign(1, 0);
  for (StateId s = 0; s < m_; ++s) {
    const Symbol label = tnfa.incoming_label(s);
    if (label == kEpsilon) continue;
    if (slot_[label] == 0) {
      slot_[label] = static_cast<std::uint16_t>(d_.size());
      d_.push_back(0);
    }
    d_[slot_[label]] |= Word{1} << (m_ - 1 - s);
  }

  e_ = BitString(len);
  for (StateId j = 0; j < m_; ++j) {
    const std::vector<bool> reach = reachable_from(tnfa, j);
    for (StateId i = 0; i < m_; ++i) {
      if (reach[i]) e_.set(i * block + 1 + (j + 1));
    }
  }
  i_ = BitString(len);
  for (std::size_t b = 0; b < m_; ++b) i_.set(b * block + 1);
  x_ = BitString(m_ * m_);
  for (std::size_t b = 0; b < m_; ++b) x_.set(b * block + 1);
  c_ = BitString(m_ * (m_ - 1) + 1);
  for (std::size_t b = 0; b < m_; ++b) c_.set(b * m_ + 1);

  e_word_ = e_.value();
  i_word_ = i_.value();
  i_shifted_ = i_word_ >> m_;
  x_word_ = x_.value();
  c_word_ = c_.value();
  up_shift_ = static_cast<unsigned>(w_ - len);
  down_shift_ = static_cast<unsigned>(w_ - m_);
}

Word SimpleSim::close_word(Word s) const noexcept {
  const Word y = (s * x_word_) & e_word_;
  const Word z = (((y | i_word_) - i_shifted_) & i_word_) & mask_;
  const Word p = (z * c_word_) & mask_;
  return ((p << up_shift_) & mask_) >> down_shift_;
}

void SimpleSim::move(std::span<Word> set, Symbol a, std::span<Word>) const {
  set[0] = move_word(set[0], a);
}

void SimpleSim::close(std::span<Word> set, std::span<Word>) const {
  set[0] = close_word(set[0]);
}

bool SimpleSim::member(std::span<const Word> set, StateId s) const {
  return (set[0] >> (m_ - 1 - s)) & 1U;
}

void SimpleSim::insert(std::span<Word> set, StateId s) const {
  set[0] |= Word{1} << (m_ - 1 - s);
}

void SimpleSim::encode(const StateSet& states, std::span<Word> out) const {
  if (states.universe() != m_) throw std::invalid_argument("state-set over a different automaton");
  out[0] = states.bits().value();
}

StateSet SimpleSim::decode(std::span<const Word> set) const {
  return StateSet(BitString::from_value(m_, set[0]));
}

StateSet SimpleSim::move(const StateSet& s, Symbol a) const {
  Word w = 0;
  encode(s, {&w, 1});
  if (a >= kSymbolCount) return StateSet(m_);
  return StateSet(BitString::from_value(m_, move_word(w, a)));
}

StateSet SimpleSim::close(const StateSet& s) const {
  Word w = 0;
  encode(s, {&w, 1});
  return StateSet(BitString::from_value(m_, close_word(w)));
}

bool SimpleSim::member(const StateSet& s, StateId state) const {
  check_state(state);
  Word w = 0;
  encode(s, {&w, 1});
  return member(std::span<const Word>(&w, 1), state);
}

StateSet SimpleSim::insert(const StateSet& s, StateId state) const {
  check_state(state);
  Word w = 0;
  encode(s, {&w, 1});
  insert(std::span<Word>(&w, 1), state);
  return decode({&w, 1});
}

SimpleSim::CloseTrace SimpleSim::trace_close(const StateSet& s) const {
  const std::size_t len = m_ * (m_ + 1);
  const BitString wide = s.bits().resized(len);
  CloseTrace t;
  t.y = multiply(wide, x_, len) & e_;
  t.minuend = t.y | i_;
  t.subtrahend = i_ >> m_;
  t.difference = t.minuend - t.subtrahend;
  t.z = t.difference & i_;
  t.product = multiply(t.z, c_, len);
  // The final shifts keep the m most significant of the m(m+1) bits.
  t.result = (t.product >> (len - m_)).resized(m_);
  return t;
}

void SimpleSim::check_state(StateId s) const {
  if (s >= m_) throw std::out_of_range("state rank out of range");
}

}  // namespace rxe
