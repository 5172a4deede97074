#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rxe/bitstring.hpp"
#include "rxe/simulation.hpp"
#include "rxe/tnfa.hpp"

namespace rxe {

// Partial automaton: the subgraph of a TNFA induced by the states of a
// connected cluster of its parse tree. Start and accept are the states of the
// cluster root.
struct Ptnfa {
  NodeId root = kNoNode;
  std::vector<NodeId> nodes;  // ascending

  std::size_t state_count() const noexcept { return 2 * nodes.size(); }
};

Ptnfa whole_automaton(const Tnfa& tnfa);
std::vector<StateId> states_of(const Tnfa& tnfa, const Ptnfa& part);

struct PtnfaSplit {
  Ptnfa outer;  // keeps the start and accept state of the input
  Ptnfa inner;  // entered only through its start, left only through its accept
};

// Cuts the cluster at the tree edge whose removal leaves the most balanced
// pair of sides (ties go to the smallest child id). Throws
// std::invalid_argument for a two-state part, which cannot be split.
PtnfaSplit split_ptnfa(const Tnfa& tnfa, const Ptnfa& part);

inline constexpr std::uint32_t kNoChild = static_cast<std::uint32_t>(-1);

struct SeparatorNode {
  Ptnfa part;              // P(v)
  StatePair separator;     // X(v): the inner part's pair, or the leaf's own pair
  std::uint32_t outer = kNoChild;
  std::uint32_t inner = kNoChild;
  std::uint32_t depth = 0;

  bool is_leaf() const noexcept { return outer == kNoChild; }
};

class SeparatorTree {
 public:
  SeparatorTree() = default;
  explicit SeparatorTree(std::vector<SeparatorNode> nodes);

  std::span<const SeparatorNode> nodes() const noexcept { return nodes_; }
  const SeparatorNode& node(std::uint32_t v) const { return nodes_.at(v); }
  const SeparatorNode& root() const { return nodes_.at(0); }
  std::uint32_t depth() const noexcept { return depth_; }

 private:
  std::vector<SeparatorNode> nodes_;
  std::uint32_t depth_ = 0;
};

SeparatorTree build_separator_tree(const Tnfa& tnfa);

// Places every separator-tree node on an aligned interval of [1, l] with
// l = 3 * 2^d: the outer child takes the left half and the inner child the
// right half; a leaf puts its start and accept state at the second and third
// position of its interval and leaves the first one free as a test bit.
struct SeparatorMapping {
  std::size_t length = 0;
  std::vector<std::size_t> position;          // per state, 1-based
  std::vector<std::size_t> interval_begin;    // per separator node, 1-based
  std::vector<std::size_t> mapped_intervals;  // per level
};

SeparatorMapping build_mapping(const SeparatorTree& tree, std::size_t state_count);

// Per-level strings over [1, l]. For the node v whose interval contains
// position j at this level:
//   x_start[j]  = 1 iff start(X(v)) is epsilon-reachable in P(v) from j
//   e_start[j]  = 1 iff j is epsilon-reachable in P(v) from start(X(v))
//   x_accept[j], e_accept[j] likewise for accept(X(v))
// tests has a 1 at the first position of every interval of the level.
struct LevelStrings {
  std::size_t interval = 0;  // l / 2^k
  BitString x_start, e_start, x_accept, e_accept, tests;
};

std::vector<LevelStrings> build_level_strings(const Tnfa& tnfa, const SeparatorTree& tree,
                                              const SeparatorMapping& mapping);

// O(depth) closure: one word-parallel round per separator-tree level.
// State-sets are l-bit strings over mapped positions.
class SeparatorSim final : public SimulationStructure {
 public:
  explicit SeparatorSim(const Tnfa& tnfa);

  std::string_view name() const noexcept override { return "separator"; }
  std::size_t state_count() const noexcept override { return m_; }
  std::size_t set_words() const noexcept override { return nw_; }
  std::size_t scratch_words() const noexcept override { return 3 * nw_; }

  void move(std::span<Word> set, Symbol a, std::span<Word> scratch) const override;
  void close(std::span<Word> set, std::span<Word> scratch) const override;
  bool member(std::span<const Word> set, StateId s) const override;
  void insert(std::span<Word> set, StateId s) const override;
  void encode(const StateSet& states, std::span<Word> out) const override;
  StateSet decode(std::span<const Word> set) const override;

  // Value-level operations.
  BitString encode(const StateSet& states) const;
  StateSet decode(const BitString& mapped) const;
  BitString move(const BitString& mapped, Symbol a) const;
  BitString close(const BitString& mapped) const;
  StateSet move(const StateSet& s, Symbol a) const { return decode(move(encode(s), a)); }
  StateSet close(const StateSet& s) const { return decode(close(encode(s))); }

  const SeparatorTree& tree() const noexcept { return tree_; }
  const SeparatorMapping& mapping() const noexcept { return mapping_; }
  std::span<const LevelStrings> levels() const noexcept { return levels_; }
  std::size_t length() const noexcept { return mapping_.length; }
  BitString d(Symbol a) const;

 private:
  struct LevelWords {
    std::size_t shift = 0;  // t = interval - 1
    std::size_t offset = 0; // into level_words_: x_start, e_start, x_accept, e_accept, tests, tests >> t, active
  };
  static constexpr std::size_t kLevelArrays = 7;

  using Kernel = void (*)(Word* set, std::size_t nw, const Word* level_words, const LevelWords* levels,
                         std::size_t level_count, Word* scratch);
  // Closure kernel; N > 0 fixes the word count at compile time.
  template <typename Lane>
  static void close_lane(Word* set, std::size_t nw, const Word* level_words, const LevelWords* levels,
                         std::size_t level_count, Word* scratch);
  template <std::size_t N>
  static void close_kernel(Word* set, std::size_t nw, const Word* level_words, const LevelWords* levels,
                           std::size_t level_count, Word* scratch);
  std::size_t sig_of(StateId s) const noexcept { return mapping_.length - mapping_.position[s]; }

  std::size_t m_ = 0;
  std::size_t nw_ = 0;
  SeparatorTree tree_;
  SeparatorMapping mapping_;
  std::vector<LevelStrings> levels_;
  std::vector<LevelWords> level_index_;
  std::vector<Word> level_words_;
  std::array<std::uint16_t, kSymbolCount> slot_{};
  std::vector<Word> d_words_;  // slot 0 is all zero
  Kernel kernel_ = nullptr;
};

}  // namespace rxe
