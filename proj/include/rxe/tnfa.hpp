#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rxe/bitstring.hpp"
#include "rxe/syntax.hpp"

namespace rxe {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = static_cast<StateId>(-1);

// Transition label for epsilon moves; lies outside Σ ∪ {β}.
inline constexpr Symbol kEpsilon = 0xFFFF;

enum class TransitionKind : std::uint8_t { Forward, Back };

struct Transition {
  StateId from = 0;
  StateId to = 0;
  Symbol label = kEpsilon;
  TransitionKind kind = TransitionKind::Forward;

  bool is_epsilon() const noexcept { return label == kEpsilon; }
  friend bool operator==(const Transition&, const Transition&) = default;
};

// Start and accept state of the sub-automaton built for one parse node.
struct StatePair {
  StateId start = kNoState;
  StateId accept = kNoState;
};

class CycleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Set of states of one automaton; state s occupies bit position s + 1.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t state_count) : bits_(state_count) {}
  explicit StateSet(BitString bits) : bits_(std::move(bits)) {}

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(StateId s) const { return bits_.test(s + 1); }
  void insert(StateId s) { bits_.set(s + 1); }
  void erase(StateId s) { bits_.set(s + 1, false); }
  bool empty() const noexcept { return !bits_.any(); }
  std::size_t count() const noexcept { return bits_.count(); }
  std::vector<StateId> members() const;
  bool is_subset_of(const StateSet& other) const;

  const BitString& bits() const noexcept { return bits_; }
  BitString& bits() noexcept { return bits_; }

  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  BitString bits_;
};

// Thompson automaton. States are numbered in topological order of the
// forward transitions: the start state is 0, the accept state is the last
// one, and the two endpoints of every symbol transition are consecutive.
class Tnfa {
 public:
  Tnfa(ParseTree tree, std::size_t state_count, std::vector<Transition> transitions,
       std::vector<StatePair> assoc);

  const ParseTree& tree() const noexcept { return tree_; }
  std::size_t state_count() const noexcept { return state_count_; }
  std::span<const Transition> transitions() const noexcept { return transitions_; }
  StateId start() const noexcept { return 0; }
  StateId accept() const noexcept { return static_cast<StateId>(state_count_ - 1); }

  // States associated with a parse node.
  StatePair assoc(NodeId v) const { return assoc_.at(v); }
  std::span<const StatePair> assoc() const noexcept { return assoc_; }

  // Label shared by all incoming transitions, or kEpsilon (also for the start).
  Symbol incoming_label(StateId s) const { return incoming_label_.at(s); }

  // Outgoing epsilon transitions (forward and back) and their reverse.
  std::span<const StateId> epsilon_successors(StateId s) const;
  std::span<const StateId> epsilon_predecessors(StateId s) const;
  std::span<const std::uint32_t> outgoing(StateId s) const;  // indices into transitions()

  std::size_t back_transition_count() const noexcept;

  // Symbols that label at least one transition, in increasing order.
  std::vector<Symbol> alphabet() const;

  // Applies a state renumbering: state s becomes rank[s].
  Tnfa renumbered(std::span<const StateId> rank) const;

 private:
  void index();

  ParseTree tree_;
  std::size_t state_count_ = 0;
  std::vector<Transition> transitions_;
  std::vector<StatePair> assoc_;
  std::vector<Symbol> incoming_label_;
  std::vector<std::uint32_t> eps_out_begin_, eps_in_begin_, out_begin_;
  std::vector<StateId> eps_out_, eps_in_;
  std::vector<std::uint32_t> out_;
};

// Builds N(R) bottom-up from the parse tree, then numbers the states with
// topo_order. Concatenation adds its own start and accept state, so every
// parse node owns exactly two states.
Tnfa thompson(const ParseTree& tree);

// Depth-first topological order of the forward transitions, visiting
// successors in construction order. Returns rank[s]. The target of a symbol
// transition always follows its source directly because it has no other
// incoming transition. Throws CycleError if forward transitions form a cycle.
std::vector<StateId> topo_order(std::size_t state_count, std::span<const Transition> transitions,
                                StateId start);
std::vector<StateId> topo_order(const Tnfa& tnfa);

// Reference state-set simulation.
StateSet naive_move(const Tnfa& tnfa, const StateSet& s, Symbol a);
StateSet naive_close(const Tnfa& tnfa, const StateSet& s);
bool naive_match(const Tnfa& tnfa, std::string_view q);

}  // namespace rxe
