#include "rxe/tnfa.hpp"

#include <algorithm>
#include <bit>

#include "naive_kernels.hpp"

namespace rxe {

std::vector<StateId> StateSet::members() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < universe(); ++s) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

bool StateSet::is_subset_of(const StateSet& other) const {
  if (universe() != other.universe()) throw std::invalid_argument("state sets over different automata");
  const auto a = bits_.words();
  const auto b = other.bits_.words();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

Tnfa::Tnfa(ParseTree tree, std::size_t state_count, std::vector<Transition> transitions,
           std::vector<StatePair> assoc)
    : tree_(std::move(tree)),
      state_count_(state_count),
      transitions_(std::move(transitions)),
      assoc_(std::move(assoc)) {
  index();
}

void Tnfa::index() {
  const std::size_t n = state_count_;
  incoming_label_.assign(n, kEpsilon);
  eps_out_begin_.assign(n + 1, 0);
  eps_in_begin_.assign(n + 1, 0);
  out_begin_.assign(n + 1, 0);
  for (const Transition& t : transitions_) {
    if (t.from >= n || t.to >= n) throw std::invalid_argument("transition endpoint out of range");
    incoming_label_[t.to] = t.label;
    ++out_begin_[t.from + 1];
    if (t.is_epsilon()) {
      ++eps_out_begin_[t.from + 1];
      ++eps_in_begin_[t.to + 1];
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    eps_out_begin_[s + 1] += eps_out_begin_[s];
    eps_in_begin_[s + 1] += eps_in_begin_[s];
    out_begin_[s + 1] += out_begin_[s];
  }
  eps_out_.assign(eps_out_begin_[n], 0);
  eps_in_.assign(eps_in_begin_[n], 0);
  out_.assign(out_begin_[n], 0);
  std::vector<std::uint32_t> eo(eps_out_begin_.begin(), eps_out_begin_.end() - 1);
  std::vector<std::uint32_t> ei(eps_in_begin_.begin(), eps_in_begin_.end() - 1);
  std::vector<std::uint32_t> oo(out_begin_.begin(), out_begin_.end() - 1);
  for (std::uint32_t i = 0; i < transitions_.size(); ++i) {
    const Transition& t = transitions_[i];
    out_[oo[t.from]++] = i;
    if (t.is_epsilon()) {
      eps_out_[eo[t.from]++] = t.to;
      eps_in_[ei[t.to]++] = t.from;
    }
  }
}

std::span<const StateId> Tnfa::epsilon_successors(StateId s) const {
  return std::span<const StateId>(eps_out_).subspan(eps_out_begin_[s], eps_out_begin_[s + 1] - eps_out_begin_[s]);
}

std::span<const StateId> Tnfa::epsilon_predecessors(StateId s) const {
  return std::span<const StateId>(eps_in_).subspan(eps_in_begin_[s], eps_in_begin_[s + 1] - eps_in_begin_[s]);
}

std::span<const std::uint32_t> Tnfa::outgoing(StateId s) const {
  return std::span<const std::uint32_t>(out_).subspan(out_begin_[s], out_begin_[s + 1] - out_begin_[s]);
}

std::size_t Tnfa::back_transition_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(transitions_.begin(), transitions_.end(), [](const Transition& t) {
    return t.kind == TransitionKind::Back;
  }));
}

std::vector<Symbol> Tnfa::alphabet() const {
  std::vector<Symbol> out;
  for (const Transition& t : transitions_) {
    if (!t.is_epsilon()) out.push_back(t.label);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Tnfa Tnfa::renumbered(std::span<const StateId> rank) const {
  if (rank.size() != state_count_) throw std::invalid_argument("renumbering has the wrong size");
  std::vector<Transition> transitions = transitions_;
  for (Transition& t : transitions) {
    t.from = rank[t.from];
    t.to = rank[t.to];
  }
  std::vector<StatePair> assoc = assoc_;
  for (StatePair& p : assoc) {
    p.start = rank[p.start];
    p.accept = rank[p.accept];
  }
  return Tnfa(tree_, state_count_, std::move(transitions), std::move(assoc));
}

std::vector<StateId> topo_order(std::size_t state_count, std::span<const Transition> transitions,
                                StateId start) {
  std::vector<std::vector<StateId>> successors(state_count);
  for (const Transition& t : transitions) {
    if (t.kind == TransitionKind::Forward) successors.at(t.from).push_back(t.to);
  }
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(state_count, kWhite);
  std::vector<StateId> postorder;
  postorder.reserve(state_count);
  std::vector<std::pair<StateId, std::size_t>> stack;

  auto visit = [&](StateId root) {
    color[root] = kGray;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < successors[v].size()) {
        const StateId w = successors[v][next++];
        if (color[w] == kGray) throw CycleError("forward transitions contain a cycle");
        if (color[w] == kWhite) {
          color[w] = kGray;
          stack.emplace_back(w, 0);
        }
      } else {
        color[v] = kBlack;
        postorder.push_back(v);
        stack.pop_back();
      }
    }
  };

  if (state_count == 0) return {};
  visit(start);
  for (StateId s = 0; s < state_count; ++s) {
    if (color[s] == kWhite) visit(s);
  }
  std::vector<StateId> rank(state_count);
  for (std::size_t i = 0; i < postorder.size(); ++i) {
    rank[postorder[i]] = static_cast<StateId>(state_count - 1 - i);
  }
  return rank;
}

std::vector<StateId> topo_order(const Tnfa& tnfa) {
  return topo_order(tnfa.state_count(), tnfa.transitions(), tnfa.start());
}

Tnfa thompson(const ParseTree& tree) {
  tree.validate();
  const std::size_t k = tree.node_count();
  std::vector<StatePair> assoc(k);
  std::vector<Transition> transitions;
  transitions.reserve(4 * k);
  auto eps = [&](StateId from, StateId to, TransitionKind kind = TransitionKind::Forward) {
    transitions.push_back({from, to, kEpsilon, kind});
  };
  for (NodeId v = 0; v < k; ++v) {
    const ParseNode& n = tree.node(v);
    const StatePair self{2 * v, 2 * v + 1};
    assoc[v] = self;
    switch (n.kind) {
      case NodeKind::Char:
        transitions.push_back({self.start, self.accept, n.symbol, TransitionKind::Forward});
        break;
      case NodeKind::Concat: {
        const StatePair s = assoc[n.left];
        const StatePair t = assoc[n.right];
        eps(self.start, s.start);
        eps(s.accept, t.start);
        eps(t.accept, self.accept);
        break;
      }
      case NodeKind::Union: {
        const StatePair s = assoc[n.left];
        const StatePair t = assoc[n.right];
        eps(self.start, s.start);
        eps(self.start, t.start);
        eps(s.accept, self.accept);
        eps(t.accept, self.accept);
        break;
      }
      case NodeKind::Star: {
        const StatePair s = assoc[n.left];
        eps(self.start, s.start);
        eps(self.start, self.accept);
        eps(s.accept, self.accept);
        eps(s.accept, s.start, TransitionKind::Back);
        break;
      }
    }
  }
  const StateId start = assoc[tree.root()].start;
  Tnfa raw(tree, 2 * k, std::move(transitions), std::move(assoc));
  const std::vector<StateId> rank = topo_order(raw.state_count(), raw.transitions(), start);
  return raw.renumbered(rank);
}

StateSet naive_move(const Tnfa& tnfa, const StateSet& s, Symbol a) {
  StateSet out(tnfa.state_count());
  detail::naive_move_words(tnfa, s.bits().words(), a, out.bits().words());
  return out;
}

StateSet naive_close(const Tnfa& tnfa, const StateSet& s) {
  StateSet out = s;
  std::vector<StateId> stack;
  detail::naive_close_words(tnfa, out.bits().words(), stack);
  return out;
}

bool naive_match(const Tnfa& tnfa, std::string_view q) {
  detail::NaiveRun run(tnfa);
  return run.match(q);
}

}  // namespace rxe
