#include "rxe/separator.hpp"

#include <algorithm>
#include <stdexcept>

namespace rxe {

namespace {

// Reusable marks for repeated splits of clusters of one parse tree.
class Splitter {
 public:
  explicit Splitter(const Tnfa& tnfa)
      : tree_(tnfa.tree()),
        parent_(tree_.parents()),
        stamp_(tree_.node_count(), 0),
        size_(tree_.node_count(), 0) {}

  PtnfaSplit split(const Ptnfa& part) {
    if (part.nodes.size() < 2) throw std::invalid_argument("a two-state pTNFA cannot be split");
    ++epoch_;
    for (NodeId v : part.nodes) stamp_.at(v) = epoch_;
    if (stamp_.at(part.root) != epoch_) throw std::invalid_argument("pTNFA root is not in its cluster");

    // Children precede parents in id order, so one ascending pass sizes every
    // subtree within the cluster.
    for (NodeId v : part.nodes) size_[v] = 1;
    for (NodeId v : part.nodes) {
      if (v == part.root) continue;
      const NodeId p = parent_[v];
      if (p == kNoNode || stamp_[p] != epoch_) throw std::invalid_argument("pTNFA cluster is not connected");
      size_[p] += size_[v];
    }
    const std::size_t t = part.nodes.size();
    if (size_[part.root] != t) throw std::invalid_argument("pTNFA cluster is not connected");

    NodeId cut = kNoNode;
    std::size_t best = 0;
    for (NodeId v : part.nodes) {
      if (v == part.root) continue;
      const std::size_t score = std::min<std::size_t>(size_[v], t - size_[v]);
      if (score > best) {
        best = score;
        cut = v;
      }
    }

    PtnfaSplit out;
    out.inner.root = cut;
    out.outer.root = part.root;
    ++epoch_;
    std::vector<NodeId> stack{cut};
    const std::uint32_t cluster_epoch = epoch_ - 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      stamp_[v] = epoch_;
      out.inner.nodes.push_back(v);
      const ParseNode& n = tree_.node(v);
      for (NodeId c : {n.left, n.right}) {
        if (c != kNoNode && stamp_[c] == cluster_epoch) stack.push_back(c);
      }
    }
    std::sort(out.inner.nodes.begin(), out.inner.nodes.end());
    for (NodeId v : part.nodes) {
      if (stamp_[v] != epoch_) out.outer.nodes.push_back(v);
    }
    return out;
  }

 private:
  const ParseTree& tree_;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::size_t> size_;
  std::uint32_t epoch_ = 0;
};

std::uint32_t build_node(const Tnfa& tnfa, Splitter& splitter, Ptnfa part, std::uint32_t depth,
                         std::vector<SeparatorNode>& nodes) {
  const auto index = static_cast<std::uint32_t>(nodes.size());
  nodes.emplace_back();
  nodes[index].depth = depth;
  if (part.nodes.size() == 1) {
    nodes[index].separator = tnfa.assoc(part.root);
    nodes[index].part = std::move(part);
    return index;
  }
  PtnfaSplit split = splitter.split(part);
  nodes[index].separator = tnfa.assoc(split.inner.root);
  nodes[index].part = std::move(part);
  const std::uint32_t outer = build_node(tnfa, splitter, std::move(split.outer), depth + 1, nodes);
  const std::uint32_t inner = build_node(tnfa, splitter, std::move(split.inner), depth + 1, nodes);
  nodes[index].outer = outer;
  nodes[index].inner = inner;
  return index;
}

void set_sig(std::span<Word> w, std::size_t sig) {
  w[sig / kWordBits] |= Word{1} << (sig % kWordBits);
}

}  // namespace

Ptnfa whole_automaton(const Tnfa& tnfa) {
  Ptnfa p;
  p.root = tnfa.tree().root();
  p.nodes.resize(tnfa.tree().node_count());
  for (NodeId v = 0; v < p.nodes.size(); ++v) p.nodes[v] = v;
  return p;
}

std::vector<StateId> states_of(const Tnfa& tnfa, const Ptnfa& part) {
  std::vector<StateId> out;
  out.reserve(part.state_count());
  for (NodeId v : part.nodes) {
    const StatePair p = tnfa.assoc(v);
    out.push_back(p.start);
    out.push_back(p.accept);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PtnfaSplit split_ptnfa(const Tnfa& tnfa, const Ptnfa& part) {
  Splitter splitter(tnfa);
  return splitter.split(part);
}

SeparatorTree::SeparatorTree(std::vector<SeparatorNode> nodes) : nodes_(std::move(nodes)) {
  for (const SeparatorNode& n : nodes_) depth_ = std::max(depth_, n.depth);
}

SeparatorTree build_separator_tree(const Tnfa& tnfa) {
  Splitter splitter(tnfa);
  std::vector<SeparatorNode> nodes;
  nodes.reserve(2 * tnfa.tree().node_count());
  build_node(tnfa, splitter, whole_automaton(tnfa), 0, nodes);
  return SeparatorTree(std::move(nodes));
}

SeparatorMapping build_mapping(const SeparatorTree& tree, std::size_t state_count) {
  SeparatorMapping map;
  const std::uint32_t d = tree.depth();
  if (d >= 8 * sizeof(std::size_t) - 3) throw std::length_error("separator tree too deep to map");
  map.length = std::size_t{3} << d;
  map.position.assign(state_count, 0);
  map.interval_begin.assign(tree.nodes().size(), 0);
  map.mapped_intervals.assign(d + 1, 0);

  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 1}};
  while (!stack.empty()) {
    const auto [v, begin] = stack.back();
    stack.pop_back();
    const SeparatorNode& n = tree.node(v);
    map.interval_begin[v] = begin;
    ++map.mapped_intervals[n.depth];
    if (n.is_leaf()) {
      map.position.at(n.separator.start) = begin + 1;
      map.position.at(n.separator.accept) = begin + 2;
      continue;
    }
    const std::size_t half = map.length >> (n.depth + 1);
    stack.emplace_back(n.outer, begin);
    stack.emplace_back(n.inner, begin + half);
  }
  return map;
}

std::vector<LevelStrings> build_level_strings(const Tnfa& tnfa, const SeparatorTree& tree,
                                              const SeparatorMapping& mapping) {
  const std::size_t l = mapping.length;
  std::vector<LevelStrings> levels(tree.depth() + 1);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    LevelStrings& lv = levels[k];
    lv.interval = l >> k;
    lv.x_start = lv.e_start = lv.x_accept = lv.e_accept = lv.tests = BitString(l);
    for (std::size_t begin = 1; begin <= l; begin += lv.interval) lv.tests.set(begin);
  }

  std::vector<std::uint32_t> stamp(tnfa.state_count(), 0);
  std::uint32_t epoch = 0;
  std::vector<std::uint8_t> seen(tnfa.state_count(), 0);
  std::vector<StateId> stack;
  std::vector<StateId> touched;

  // Marks every state of the current part reachable from (or, backwards, to)
  // `source`, restricted to the part.
  auto search = [&](StateId source, bool forward, BitString& out) {
    touched.clear();
    stack.assign(1, source);
    seen[source] = 1;
    touched.push_back(source);
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      out.set(mapping.position[s]);
      const auto next = forward ? tnfa.epsilon_successors(s) : tnfa.epsilon_predecessors(s);
      for (StateId t : next) {
        if (stamp[t] == epoch && !seen[t]) {
          seen[t] = 1;
          touched.push_back(t);
          stack.push_back(t);
        }
      }
    }
    for (StateId s : touched) seen[s] = 0;
  };

  for (const SeparatorNode& n : tree.nodes()) {
    ++epoch;
    for (NodeId v : n.part.nodes) {
      const StatePair p = tnfa.assoc(v);
      stamp[p.start] = epoch;
      stamp[p.accept] = epoch;
    }
    LevelStrings& lv = levels[n.depth];
    search(n.separator.start, false, lv.x_start);
    search(n.separator.start, true, lv.e_start);
    search(n.separator.accept, false, lv.x_accept);
    search(n.separator.accept, true, lv.e_accept);
  }
  return levels;
}

SeparatorSim::SeparatorSim(const Tnfa& tnfa)
    : m_(tnfa.state_count()),
      tree_(build_separator_tree(tnfa)),
      mapping_(build_mapping(tree_, tnfa.state_count())),
      levels_(build_level_strings(tnfa, tree_, mapping_)) {
  nw_ = words::count_for(mapping_.length);

  level_index_.resize(levels_.size());
  level_words_.assign(levels_.size() * kLevelArrays * nw_, 0);
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const LevelStrings& lv = levels_[k];
    LevelWords& idx = level_index_[k];
    idx.shift = lv.interval - 1;
    idx.offset = k * kLevelArrays * nw_;
    Word* base = level_words_.data() + idx.offset;
    const BitString* sources[] = {&lv.x_start, &lv.e_start, &lv.x_accept, &lv.e_accept, &lv.tests};
    for (std::size_t a = 0; a < 5; ++a) {
      std::copy(sources[a]->words().begin(), sources[a]->words().end(), base + a * nw_);
    }
    words::shift_right({base + 4 * nw_, nw_}, idx.shift, {base + 5 * nw_, nw_});
    for (std::size_t i = 0; i < nw_; ++i) base[6 * nw_ + i] = base[i] | base[2 * nw_ + i];
  }

  d_words_.assign(nw_, 0);
  for (StateId s = 0; s < m_; ++s) {
    const Symbol label = tnfa.incoming_label(s);
    if (label == kEpsilon) continue;
    if (slot_[label] == 0) {
      slot_[label] = static_cast<std::uint16_t>(d_words_.size() / nw_);
      d_words_.resize(d_words_.size() + nw_, 0);
    }
    set_sig({d_words_.data() + slot_[label] * nw_, nw_}, sig_of(s));
  }

  switch (nw_) {
    case 1: kernel_ = &close_lane<Word>; break;
    case 2: kernel_ = &close_lane<unsigned __int128>; break;
    case 3: kernel_ = &close_kernel<3>; break;
    case 6: kernel_ = &close_kernel<6>; break;
    case 12: kernel_ = &close_kernel<12>; break;
    default: kernel_ = &close_kernel<0>; break;
  }
}

namespace {

template <typename Lane>
Lane load_lane(const Word* p) noexcept {
  if constexpr (sizeof(Lane) == sizeof(Word)) {
    return *p;
  } else {
    return static_cast<Lane>(p[0]) | (static_cast<Lane>(p[1]) << kWordBits);
  }
}

template <typename Lane>
void store_lane(Word* p, Lane v) noexcept {
  if constexpr (sizeof(Lane) == sizeof(Word)) {
    *p = v;
  } else {
    p[0] = static_cast<Word>(v);
    p[1] = static_cast<Word>(v >> kWordBits);
  }
}

}  // namespace

// The same update with the whole string in one integer of one or two words.
template <typename Lane>
void SeparatorSim::close_lane(Word* set, std::size_t, const Word* level_words, const LevelWords* levels,
                              std::size_t level_count, Word*) {
  constexpr std::size_t n = sizeof(Lane) / sizeof(Word);
  Lane s = load_lane<Lane>(set);
  for (std::size_t k = 0; k < level_count; ++k) {
    const Word* base = level_words + levels[k].offset;
    if ((s & load_lane<Lane>(base + 6 * n)) == 0) continue;
    const std::size_t t = levels[k].shift;
    const Lane tests = load_lane<Lane>(base + 4 * n);
    const Lane tests_shifted = load_lane<Lane>(base + 5 * n);
    const Lane z_start = (((s & load_lane<Lane>(base)) | tests) - tests_shifted) & tests;
    const Lane z_accept = (((s & load_lane<Lane>(base + 2 * n)) | tests) - tests_shifted) & tests;
    s |= ((z_start - (z_start >> t)) & load_lane<Lane>(base + n)) |
         ((z_accept - (z_accept >> t)) & load_lane<Lane>(base + 3 * n));
  }
  store_lane<Lane>(set, s);
}

template <std::size_t N>
void SeparatorSim::close_kernel(Word* set, std::size_t nw, const Word* level_words, const LevelWords* levels,
                                std::size_t level_count, Word* scratch) {
  const std::size_t n = N > 0 ? N : nw;
  Word local[N > 0 ? 3 * N : 1];
  Word* z = N > 0 ? local : scratch;
  Word* shifted = z + n;
  Word* g = shifted + n;

  for (std::size_t k = 0; k < level_count; ++k) {
    const LevelWords& lv = levels[k];
    const Word* base = level_words + lv.offset;
    const Word* active = base + 6 * n;
    // A level whose separator states are unreachable from the set adds nothing.
    Word hit = 0;
    for (std::size_t i = 0; i < n; ++i) hit |= set[i] & active[i];
    if (hit == 0) continue;

    const Word* tests = base + 4 * n;
    const Word* tests_shifted = base + 5 * n;
    const std::size_t q = lv.shift / kWordBits;
    const std::size_t r = lv.shift % kWordBits;
    for (std::size_t part = 0; part < 2; ++part) {
      const Word* reach_to = base + (2 * part) * n;        // X: states reaching the separator state
      const Word* reach_from = base + (2 * part + 1) * n;  // E: states reached from it
      // Z = ((S & X | I) - (I >> t)) & I
      Word borrow = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Word a = (set[i] & reach_to[i]) | tests[i];
        const Word b = tests_shifted[i];
        const Word d = a - b;
        const Word r2 = d - borrow;
        borrow = static_cast<Word>(a < b) | static_cast<Word>(d < borrow);
        z[i] = r2 & tests[i];
      }
      // Z >> t
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = i + q;
        const Word lo = src < n ? z[src] : 0;
        const Word hi = src + 1 < n ? z[src + 1] : 0;
        shifted[i] = r == 0 ? lo : (lo >> r) | (hi << (kWordBits - r));
      }
      // F = Z - (Z >> t);  G |= F & E
      borrow = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Word d = z[i] - shifted[i];
        const Word r2 = d - borrow;
        borrow = static_cast<Word>(z[i] < shifted[i]) | static_cast<Word>(d < borrow);
        g[i] = part == 0 ? (r2 & reach_from[i]) : (g[i] | (r2 & reach_from[i]));
      }
    }
    for (std::size_t i = 0; i < n; ++i) set[i] |= g[i];
  }
}

void SeparatorSim::close(std::span<Word> set, std::span<Word> scratch) const {
  kernel_(set.data(), nw_, level_words_.data(), level_index_.data(), level_index_.size(), scratch.data());
}

void SeparatorSim::move(std::span<Word> set, Symbol a, std::span<Word>) const {
  const std::size_t slot = a < kSymbolCount ? slot_[a] : 0;
  const Word* d = d_words_.data() + slot * nw_;
  if (nw_ == 1) {
    set[0] = (set[0] >> 1) & d[0];
    return;
  }
  words::shift_right(set, 1, set);
  for (std::size_t i = 0; i < nw_; ++i) set[i] &= d[i];
}

bool SeparatorSim::member(std::span<const Word> set, StateId s) const {
  const std::size_t sig = sig_of(s);
  return (set[sig / kWordBits] >> (sig % kWordBits)) & 1U;
}

void SeparatorSim::insert(std::span<Word> set, StateId s) const {
  set_sig(set, sig_of(s));
}

void SeparatorSim::encode(const StateSet& states, std::span<Word> out) const {
  if (states.universe() != m_) throw std::invalid_argument("state-set over a different automaton");
  std::fill(out.begin(), out.end(), Word{0});
  for (StateId s = 0; s < m_; ++s) {
    if (states.contains(s)) insert(out, s);
  }
}

StateSet SeparatorSim::decode(std::span<const Word> set) const {
  StateSet out(m_);
  for (StateId s = 0; s < m_; ++s) {
    if (member(set, s)) out.insert(s);
  }
  return out;
}

BitString SeparatorSim::encode(const StateSet& states) const {
  BitString out(mapping_.length);
  encode(states, out.words());
  return out;
}

StateSet SeparatorSim::decode(const BitString& mapped) const {
  if (mapped.size() != mapping_.length) throw std::invalid_argument("mapped set has the wrong length");
  return decode(mapped.words());
}

BitString SeparatorSim::move(const BitString& mapped, Symbol a) const {
  if (mapped.size() != mapping_.length) throw std::invalid_argument("mapped set has the wrong length");
  BitString out = mapped;
  move(out.words(), a, {});
  return out;
}

BitString SeparatorSim::close(const BitString& mapped) const {
  if (mapped.size() != mapping_.length) throw std::invalid_argument("mapped set has the wrong length");
  BitString out = mapped;
  std::vector<Word> scratch(scratch_words(), 0);
  close(out.words(), scratch);
  return out;
}

BitString SeparatorSim::d(Symbol a) const {
  BitString out(mapping_.length);
  const std::size_t slot = a < kSymbolCount ? slot_[a] : 0;
  std::copy(d_words_.begin() + static_cast<std::ptrdiff_t>(slot * nw_),
            d_words_.begin() + static_cast<std::ptrdiff_t>((slot + 1) * nw_), out.words().begin());
  return out;
}

}  // namespace rxe
