#include "rxe/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace rxe {

ClusterPartition cluster_partition_unchecked(const ParseTree& tree, std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("cluster limit must be positive");
  const std::size_t n = tree.node_count();
  std::vector<std::size_t> open(n, 0);
  std::vector<bool> sealed(n, false);

  for (NodeId v = 0; v < n; ++v) {
    const ParseNode& node = tree.node(v);
    NodeId kids[2] = {node.left, node.right};
    std::size_t size = 1;
    for (NodeId c : kids) {
      if (c != kNoNode) size += open[c];
    }
    while (size > limit) {
      NodeId largest = kNoNode;
      for (NodeId c : kids) {
        if (c != kNoNode && !sealed[c] && (largest == kNoNode || open[c] > open[largest])) largest = c;
      }
      sealed[largest] = true;
      size -= open[largest];
    }
    open[v] = size;
  }

  ClusterPartition p;
  p.limit = limit;
  p.cluster_of.assign(n, kNoCluster);
  if (n == 0) return p;
  sealed[tree.root()] = true;

  std::vector<ClusterId> id_of_root(n, kNoCluster);
  for (NodeId v = 0; v < n; ++v) {
    if (sealed[v]) {
      id_of_root[v] = static_cast<ClusterId>(p.root.size());
      p.root.push_back(v);
    }
  }
  const std::vector<NodeId> parent = tree.parents();
  for (NodeId v = static_cast<NodeId>(n); v-- > 0;) {
    p.cluster_of[v] = sealed[v] ? id_of_root[v] : p.cluster_of[parent[v]];
  }
  p.members.resize(p.root.size());
  for (NodeId v = 0; v < n; ++v) p.members[p.cluster_of[v]].push_back(v);
  p.parent.assign(p.root.size(), kNoCluster);
  p.children.resize(p.root.size());
  for (ClusterId c = 0; c < p.root.size(); ++c) {
    const NodeId up = parent[p.root[c]];
    if (up == kNoNode) continue;
    p.parent[c] = p.cluster_of[up];
    p.children[p.parent[c]].push_back(c);
  }
  return p;
}

ClusterPartition cluster_partition(const ParseTree& tree, std::size_t limit) {
  if (limit < 2) throw std::invalid_argument("cluster size must be at least 2");
  return cluster_partition_unchecked(tree, limit);
}

ParseTree cluster_tree(const ParseTree& tree, const ClusterPartition& clusters, ClusterId c,
                       std::vector<ClusterId>* pseudo_child, std::vector<NodeId>* original) {
  const std::vector<NodeId>& members = clusters.members.at(c);
  std::vector<NodeId> local(members.size(), kNoNode);
  ParseTree out;
  if (original) original->clear();
  if (pseudo_child) pseudo_child->clear();

  auto local_of = [&](NodeId child) -> NodeId {
    if (clusters.cluster_of[child] == c) {
      const auto it = std::lower_bound(members.begin(), members.end(), child);
      return local[static_cast<std::size_t>(it - members.begin())];
    }
    const NodeId id = out.add_char(kBeta);
    if (pseudo_child) pseudo_child->push_back(clusters.cluster_of[child]);
    if (original) original->push_back(child);
    return id;
  };

  for (std::size_t i = 0; i < members.size(); ++i) {
    const ParseNode& node = tree.node(members[i]);
    NodeId id = kNoNode;
    switch (node.kind) {
      case NodeKind::Char:
        id = out.add_char(node.symbol);
        break;
      case NodeKind::Star:
        id = out.add_star(local_of(node.left));
        break;
      case NodeKind::Concat: {
        const NodeId l = local_of(node.left);
        id = out.add_concat(l, local_of(node.right));
        break;
      }
      case NodeKind::Union: {
        const NodeId l = local_of(node.left);
        id = out.add_union(l, local_of(node.right));
        break;
      }
    }
    local[i] = id;
    if (original) original->push_back(members[i]);
  }
  return out;
}

std::size_t NestedDecomposition::max_state_count() const noexcept {
  std::size_t best = 0;
  for (const NestedAutomaton& a : automata) best = std::max(best, a.tnfa.state_count());
  return best;
}

std::uint32_t NestedDecomposition::macro_depth() const noexcept {
  std::uint32_t best = 0;
  for (const NestedAutomaton& a : automata) best = std::max(best, a.depth);
  return best;
}

NestedDecomposition nested_decomposition(const ParseTree& tree, std::size_t x) {
  if (x < 6) throw std::invalid_argument("decomposition parameter must be at least 6");
  NestedDecomposition nd;
  nd.x = x;
  nd.cluster_limit = (x - 2) / 4;
  const Tnfa global = thompson(tree);
  nd.global_state_count = global.state_count();
  const ClusterPartition clusters = cluster_partition_unchecked(tree, nd.cluster_limit);

  // Build every cluster automaton, indexed by cluster id.
  std::vector<NestedAutomaton> by_cluster;
  by_cluster.reserve(clusters.size());
  std::vector<std::vector<ClusterId>> child_clusters(clusters.size());
  for (ClusterId c = 0; c < clusters.size(); ++c) {
    std::vector<ClusterId> pseudo_child;
    std::vector<NodeId> original;
    ParseTree local = cluster_tree(tree, clusters, c, &pseudo_child, &original);
    Tnfa tnfa = thompson(local);

    std::vector<StateId> global_state(tnfa.state_count(), kNoState);
    std::vector<std::pair<StatePair, ClusterId>> pseudo;
    std::size_t next_pseudo = 0;
    for (NodeId u = 0; u < local.node_count(); ++u) {
      const StatePair here = tnfa.assoc(u);
      const StatePair there = global.assoc(original[u]);
      global_state[here.start] = there.start;
      global_state[here.accept] = there.accept;
      if (local.node(u).kind == NodeKind::Char && local.node(u).symbol == kBeta) {
        pseudo.emplace_back(here, pseudo_child[next_pseudo++]);
      }
    }
    std::sort(pseudo.begin(), pseudo.end(),
              [](const auto& a, const auto& b) { return a.first.start < b.first.start; });

    NestedAutomaton a(std::move(tnfa));
    a.cluster = c;
    a.global_state = std::move(global_state);
    for (const auto& [pair, child] : pseudo) {
      a.child_pairs.push_back(pair);
      child_clusters[c].push_back(child);
    }
    by_cluster.push_back(std::move(a));
  }

  // Preorder of the macro tree, children in the order just fixed.
  std::vector<std::uint32_t> index_of(clusters.size(), 0);
  std::vector<ClusterId> order;
  order.reserve(clusters.size());
  std::vector<ClusterId> stack{clusters.cluster_of[tree.root()]};
  while (!stack.empty()) {
    const ClusterId c = stack.back();
    stack.pop_back();
    index_of[c] = static_cast<std::uint32_t>(order.size());
    order.push_back(c);
    for (auto it = child_clusters[c].rbegin(); it != child_clusters[c].rend(); ++it) stack.push_back(*it);
  }
  nd.automata.reserve(order.size());
  for (ClusterId c : order) nd.automata.push_back(std::move(by_cluster[c]));
  for (std::uint32_t i = 0; i < nd.automata.size(); ++i) {
    NestedAutomaton& a = nd.automata[i];
    for (ClusterId child : child_clusters[a.cluster]) {
      const std::uint32_t j = index_of[child];
      a.children.push_back(j);
      nd.automata[j].parent = i;
      nd.automata[j].depth = a.depth + 1;
    }
  }
  return nd;
}

StateSetArray::StateSetArray(std::vector<std::size_t> offsets, std::size_t scratch_words)
    : offsets_(std::move(offsets)),
      words_(offsets_.back(), 0),
      scratch_(scratch_words, 0),
      closed_(offsets_.size() - 1, 1) {}

void StateSetArray::clear() noexcept {
  std::fill(words_.begin(), words_.end(), Word{0});
  std::fill(closed_.begin(), closed_.end(), std::uint8_t{1});
}

DecomposedSim::DecomposedSim(NestedDecomposition nd, const StructureFactory& factory) : nd_(std::move(nd)) {
  offsets_.push_back(0);
  for (const NestedAutomaton& a : nd_.automata) {
    sims_.push_back(factory(a.tnfa));
    offsets_.push_back(offsets_.back() + sims_.back()->set_words());
    scratch_words_ = std::max(scratch_words_, sims_.back()->scratch_words());
  }

  auto locate = [](const SimulationStructure& sim, StateId s) {
    std::vector<Word> probe(sim.set_words(), 0);
    sim.insert(probe, s);
    Bit b;
    std::size_t bits = 0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      if (probe[i] != 0) {
        b = {i, probe[i]};
        bits += static_cast<std::size_t>(std::popcount(probe[i]));
      }
    }
    if (bits != 1) throw std::logic_error("simulation structure does not store a state as one bit");
    return b;
  };
  nodes_.resize(nd_.automata.size());
  for (std::size_t a = 0; a < nd_.automata.size(); ++a) {
    const NestedAutomaton& automaton = nd_.automata[a];
    const SimulationStructure& sim = *sims_[a];
    Node& node = nodes_[a];
    node.sim = &sim;
    node.first_link = static_cast<std::uint32_t>(links_.size());
    node.link_count = static_cast<std::uint32_t>(automaton.children.size());
    node.words = sim.set_words();
    node.start = locate(sim, automaton.tnfa.start());
    node.accept = locate(sim, automaton.tnfa.accept());
    std::vector<Word> scratch(sim.scratch_words(), 0);
    for (std::size_t i = 0; i < automaton.children.size(); ++i) {
      const StatePair& p = automaton.child_pairs[i];
      Link link;
      link.child = automaton.children[i];
      link.start = locate(sim, p.start);
      link.accept = locate(sim, p.accept);
      link.closure = closures_.size();
      closures_.resize(closures_.size() + node.words, 0);
      const std::span<Word> closure(closures_.data() + link.closure, node.words);
      sim.insert(closure, p.accept);
      sim.close(closure, scratch);
      links_.push_back(link);
    }
  }
}

StateSetArray DecomposedSim::make_array() const { return StateSetArray(offsets_, scratch_words_); }

void DecomposedSim::insert(std::size_t a, StateSetArray& x, StateId s) const {
  const std::span<Word> set = x[a];
  if (sims_[a]->member(set, s)) return;
  sims_[a]->insert(set, s);
  x.mark_changed(a);
}

void DecomposedSim::move_as(std::size_t a, StateSetArray& x, Symbol symbol) const {
  const Node& node = nodes_[a];
  const std::span<Word> set(x.data(a), node.words);
  if (words::any(set)) {
    node.sim->move(set, symbol, x.scratch());
    x.mark_changed(a);
  }
  const Link* link = links_.data() + node.first_link;
  for (std::uint32_t i = 0; i < node.link_count; ++i, ++link) {
    move_as(link->child, x, symbol);
    if (test(x, link->child, nodes_[link->child].accept)) put(x, a, link->accept);
  }
}

void DecomposedSim::close_local(std::size_t a, StateSetArray& x) const {
  // Close_A is idempotent, so an entry untouched since its last closure is
  // left alone; the empty set is closed too.
  if (x.known_closed(a)) return;
  const Node& node = nodes_[a];
  const std::span<Word> set(x.data(a), node.words);
  if (words::any(set)) node.sim->close(set, x.scratch());
  x.mark_closed(a);
}

void DecomposedSim::write_through(std::size_t a, std::size_t processed, StateSetArray& x) const {
  const Link* link = links_.data() + nodes_[a].first_link;
  for (std::size_t i = 0; i < processed; ++i, ++link) {
    if (test(x, a, link->start)) put(x, link->child, nodes_[link->child].start);
  }
}

void DecomposedSim::close_as(std::size_t a, StateSetArray& x) const {
  const Node& node = nodes_[a];
  close_local(a, x);
  const Link* link = links_.data() + node.first_link;
  for (std::uint32_t i = 0; i < node.link_count; ++i, ++link) {
    const std::uint32_t c = link->child;
    if (test(x, a, link->start)) put(x, c, nodes_[c].start);
    close_as(c, x);
    // Re-closing is only needed when the child hands back a new state. For a
    // closed X[A], Close_A(X[A] ∪ {φ}) = X[A] ∪ Close_A({φ}), which is stored.
    if (test(x, c, nodes_[c].accept) && !test(x, a, link->accept)) {
      const bool was_closed = x.known_closed(a);
      put(x, a, link->accept);
      if (was_closed) {
        const Word* add = closures_.data() + link->closure;
        Word* dst = x.data(a);
        for (std::size_t k = 0; k < node.words; ++k) dst[k] |= add[k];
        x.mark_closed(a);
      } else {
        close_local(a, x);
      }
      // A back transition may have re-entered a child that was already
      // processed; its shared start state is copied down to stay consistent.
      write_through(a, i + 1, x);
    }
  }
}

bool DecomposedSim::consistent(const StateSetArray& x) const {
  for (std::size_t a = 0; a < nd_.automata.size(); ++a) {
    const NestedAutomaton& node = nd_.automata[a];
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const std::uint32_t c = node.children[i];
      const StatePair pair = node.child_pairs[i];
      if (sims_[a]->member(x[a], pair.start) != sims_[c]->member(x[c], 0)) return false;
      if (sims_[a]->member(x[a], pair.accept) != sims_[c]->member(x[c], nd_.automata[c].tnfa.accept())) {
        return false;
      }
    }
  }
  return true;
}

StateSet DecomposedSim::models(const StateSetArray& x) const {
  StateSet out(nd_.global_state_count);
  for (std::size_t a = 0; a < nd_.automata.size(); ++a) {
    const StateSet local = sims_[a]->decode(x[a]);
    for (StateId s : local.members()) out.insert(nd_.automata[a].global_state[s]);
  }
  return out;
}

StateSetArray DecomposedSim::from_global(const StateSet& s) const {
  if (s.universe() != nd_.global_state_count) throw std::invalid_argument("state-set over a different automaton");
  StateSetArray x = make_array();
  for (std::size_t a = 0; a < nd_.automata.size(); ++a) {
    const std::vector<StateId>& global = nd_.automata[a].global_state;
    for (StateId l = 0; l < global.size(); ++l) {
      if (s.contains(global[l])) sims_[a]->insert(x[a], l);
    }
    x.mark_changed(a);
  }
  return x;
}

bool DecomposedSim::match(std::string_view q) const {
  StateSetArray x = make_array();
  return match(q, x);
}

bool DecomposedSim::match(std::string_view q, StateSetArray& x) const {
  x.clear();
  insert(0, x, 0);
  close_as(0, x);
  close_as(0, x);
  for (unsigned char ch : q) {
    move_as(0, x, ch);
    close_as(0, x);
    close_as(0, x);
  }
  return sims_[0]->member(x[0], nd_.automata[0].tnfa.accept());
}

}  // namespace rxe
