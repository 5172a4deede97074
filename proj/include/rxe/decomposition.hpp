#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "rxe/simulation.hpp"
#include "rxe/syntax.hpp"
#include "rxe/tnfa.hpp"

namespace rxe {

using ClusterId = std::uint32_t;
inline constexpr ClusterId kNoCluster = static_cast<ClusterId>(-1);

// Node-disjoint connected clusters of a parse tree, each with at most
// `limit` nodes. Cluster ids follow the id of their root node, so a child
// cluster always has a smaller id than its parent.
struct ClusterPartition {
  std::size_t limit = 0;
  std::vector<ClusterId> cluster_of;           // per parse node
  std::vector<NodeId> root;                    // per cluster
  std::vector<std::vector<NodeId>> members;    // per cluster, ascending
  std::vector<ClusterId> parent;               // per cluster; kNoCluster for the top
  std::vector<std::vector<ClusterId>> children;

  std::size_t size() const noexcept { return root.size(); }
};

// Bottom-up greedy clustering: a node absorbs the open clusters of its
// children, sealing the largest open child cluster while the total exceeds
// the limit. Every sealed cluster has at least limit/2 nodes. Throws
// std::invalid_argument for limit < 2.
ClusterPartition cluster_partition(const ParseTree& tree, std::size_t limit);

// Same procedure without the lower bound on the limit; used with the
// nested-decomposition cap, which may be 1.
ClusterPartition cluster_partition_unchecked(const ParseTree& tree, std::size_t limit);

// One automaton of a nested decomposition.
struct NestedAutomaton {
  explicit NestedAutomaton(Tnfa t) : tnfa(std::move(t)) {}

  Tnfa tnfa;                        // N(R_C) over Σ ∪ {β}
  ClusterId cluster = kNoCluster;
  std::uint32_t parent = kNoChildAutomaton;
  std::vector<std::uint32_t> children;   // automaton indices, by rank of their start state here
  std::vector<StatePair> child_pairs;    // pseudo-transition endpoints here, parallel to children
  std::vector<StateId> global_state;     // local state -> state of the full automaton
  std::uint32_t depth = 0;               // in the macro tree

  static constexpr std::uint32_t kNoChildAutomaton = static_cast<std::uint32_t>(-1);
};

struct NestedDecomposition {
  std::size_t x = 0;
  std::size_t cluster_limit = 0;  // floor(x/4 - 1/2)
  std::size_t global_state_count = 0;
  std::vector<NestedAutomaton> automata;  // preorder of the macro tree; 0 is the root

  std::size_t max_state_count() const noexcept;
  std::uint32_t macro_depth() const noexcept;
};

// Clusters the tree with limit floor(x/4 - 1/2), hangs a β pseudo leaf on
// every external edge and Thompson-constructs each cluster tree. Throws
// std::invalid_argument for x < 6.
NestedDecomposition nested_decomposition(const ParseTree& tree, std::size_t x);

// The cluster tree T_C of one cluster, with β leaves in place of child
// clusters. `pseudo_child` receives, per β leaf in node-id order, the child
// cluster it stands for.
ParseTree cluster_tree(const ParseTree& tree, const ClusterPartition& clusters, ClusterId c,
                       std::vector<ClusterId>* pseudo_child = nullptr,
                       std::vector<NodeId>* original = nullptr);

using StructureFactory = std::function<std::unique_ptr<SimulationStructure>(const Tnfa&)>;

// Per-automaton state-sets in the layout of each automaton's simulation
// structure, plus the scratch space the structures need. Each entry carries a
// flag recording that it is known to be closed; code that writes an entry
// through operator[] must clear it with mark_changed.
class StateSetArray {
 public:
  StateSetArray() = default;
  StateSetArray(std::vector<std::size_t> offsets, std::size_t scratch_words);

  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::span<Word> operator[](std::size_t a) noexcept {
    return {words_.data() + offsets_[a], offsets_[a + 1] - offsets_[a]};
  }
  std::span<const Word> operator[](std::size_t a) const noexcept {
    return {words_.data() + offsets_[a], offsets_[a + 1] - offsets_[a]};
  }
  std::span<Word> scratch() noexcept { return scratch_; }
  Word* data(std::size_t a) noexcept { return words_.data() + offsets_[a]; }
  const Word* data(std::size_t a) const noexcept { return words_.data() + offsets_[a]; }
  void clear() noexcept;

  bool known_closed(std::size_t a) const noexcept { return closed_[a] != 0; }
  void mark_closed(std::size_t a) noexcept { closed_[a] = 1; }
  void mark_changed(std::size_t a) noexcept { closed_[a] = 0; }

  friend bool operator==(const StateSetArray& a, const StateSetArray& b) { return a.words_ == b.words_; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Word> words_;
  std::vector<Word> scratch_;
  std::vector<std::uint8_t> closed_;
};

// Simulates the full automaton through the nested decomposition. Every
// public operation leaves the state-set array consistent: a state shared by
// a parent and a child is present in both entries or in neither.
class DecomposedSim {
 public:
  DecomposedSim(NestedDecomposition nd, const StructureFactory& factory);

  const NestedDecomposition& decomposition() const noexcept { return nd_; }
  const SimulationStructure& structure(std::size_t a) const { return *sims_.at(a); }
  std::string_view inner_name() const noexcept { return sims_.front()->name(); }

  StateSetArray make_array() const;

  void move_as(std::size_t a, StateSetArray& x, Symbol symbol) const;
  // One application; the closure of the modeled set needs two (see match).
  void close_as(std::size_t a, StateSetArray& x) const;

  bool consistent(const StateSetArray& x) const;
  // The modeled state-set over the full automaton, and its inverse.
  StateSet models(const StateSetArray& x) const;
  StateSetArray from_global(const StateSet& s) const;

  bool match(std::string_view q) const;
  bool match(std::string_view q, StateSetArray& x) const;

 private:
  // Close_A, skipped when the entry is known to be closed already.
  void close_local(std::size_t a, StateSetArray& x) const;
  void insert(std::size_t a, StateSetArray& x, StateId s) const;
  void write_through(std::size_t a, std::size_t processed, StateSetArray& x) const;

  // Where a state lives inside its structure's word array. Every structure
  // stores a state as a single bit, found once by inserting into a zero set.
  struct Bit {
    std::size_t word = 0;
    Word mask = 0;
  };
  struct Node {
    const SimulationStructure* sim = nullptr;
    std::uint32_t first_link = 0;
    std::uint32_t link_count = 0;
    std::size_t words = 0;
    Bit start, accept;  // this automaton's own start and accept state
  };
  // One child, seen from its parent.
  struct Link {
    std::uint32_t child = 0;
    Bit start, accept;        // the pseudo-transition's endpoints in the parent
    std::size_t closure = 0;  // offset of Close_A({accept}) in closures_
  };
  static bool test(const StateSetArray& x, std::size_t a, Bit b) noexcept { return (x.data(a)[b.word] & b.mask) != 0; }
  // Sets a shared state; returns whether it was new.
  static bool put(StateSetArray& x, std::size_t a, Bit b) noexcept {
    Word& w = x.data(a)[b.word];
    if (w & b.mask) return false;
    w |= b.mask;
    x.mark_changed(a);
    return true;
  }

  NestedDecomposition nd_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<Word> closures_;
  std::vector<std::unique_ptr<SimulationStructure>> sims_;
  std::vector<std::size_t> offsets_;
  std::size_t scratch_words_ = 0;
};

}  // namespace rxe
