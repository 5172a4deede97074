#include "support/oracles.hpp"

#include <functional>
#include <map>

namespace rxe::oracle {

bool dp_member(const ParseTree& tree, std::string_view q) {
  const std::size_t n = q.size();
  const std::size_t span = n + 1;
  // in[v][i * span + j]: q[i, j) ∈ L(v)
  std::vector<std::vector<char>> in(tree.node_count(), std::vector<char>(span * span, 0));
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    const ParseNode& node = tree.node(v);
    std::vector<char>& t = in[v];
    switch (node.kind) {
      case NodeKind::Char:
        for (std::size_t i = 0; i < n; ++i) {
          t[i * span + i + 1] = static_cast<unsigned char>(q[i]) == node.symbol;
        }
        break;
      case NodeKind::Union:
        for (std::size_t k = 0; k < t.size(); ++k) t[k] = in[node.left][k] || in[node.right][k];
        break;
      case NodeKind::Concat:
        for (std::size_t i = 0; i <= n; ++i) {
          for (std::size_t j = i; j <= n; ++j) {
            for (std::size_t k = i; k <= j && !t[i * span + j]; ++k) {
              t[i * span + j] = in[node.left][i * span + k] && in[node.right][k * span + j];
            }
          }
        }
        break;
      case NodeKind::Star:
        for (std::size_t j = 0; j <= n; ++j) {
          t[j * span + j] = 1;
          for (std::size_t i = j; i-- > 0;) {
            for (std::size_t k = i + 1; k <= j && !t[i * span + j]; ++k) {
              t[i * span + j] = in[node.left][i * span + k] && t[k * span + j];
            }
          }
        }
        break;
    }
  }
  return in[tree.root()][n];
}

namespace {

// Copies `src` into `dst` and returns the id of the copied root.
NodeId graft(ParseTree& dst, const ParseTree& src) {
  std::vector<NodeId> id(src.node_count());
  for (NodeId v = 0; v < src.node_count(); ++v) {
    const ParseNode& n = src.node(v);
    switch (n.kind) {
      case NodeKind::Char: id[v] = dst.add_char(n.symbol); break;
      case NodeKind::Star: id[v] = dst.add_star(id[n.left]); break;
      case NodeKind::Concat: id[v] = dst.add_concat(id[n.left], id[n.right]); break;
      case NodeKind::Union: id[v] = dst.add_union(id[n.left], id[n.right]); break;
    }
  }
  return id[src.root()];
}

}  // namespace

std::vector<ParseTree> trees_with(std::size_t nodes, std::string_view alphabet) {
  static std::map<std::pair<std::size_t, std::string>, std::vector<ParseTree>> memo;
  const auto key = std::make_pair(nodes, std::string(alphabet));
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::vector<ParseTree> out;
  if (nodes == 1) {
    for (unsigned char c : alphabet) {
      ParseTree t;
      t.add_char(c);
      out.push_back(std::move(t));
    }
  } else if (nodes >= 2) {
    for (const ParseTree& child : trees_with(nodes - 1, alphabet)) {
      ParseTree t;
      t.add_star(graft(t, child));
      out.push_back(std::move(t));
    }
    for (std::size_t left = 1; left + 2 <= nodes; ++left) {
      const auto ls = trees_with(left, alphabet);
      const auto rs = trees_with(nodes - 1 - left, alphabet);
      for (NodeKind kind : {NodeKind::Concat, NodeKind::Union}) {
        for (const ParseTree& l : ls) {
          for (const ParseTree& r : rs) {
            ParseTree t;
            const NodeId a = graft(t, l);
            const NodeId b = graft(t, r);
            if (kind == NodeKind::Concat) {
              t.add_concat(a, b);
            } else {
              t.add_union(a, b);
            }
            out.push_back(std::move(t));
          }
        }
      }
    }
  }
  memo.emplace(key, out);
  return out;
}

std::vector<ParseTree> trees_up_to(std::size_t max_nodes, std::string_view alphabet) {
  std::vector<ParseTree> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    auto part = trees_with(n, alphabet);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

namespace {

StateSet fixpoint(const Tnfa& tnfa, const StateSet& s, bool include_back) {
  StateSet out = s;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Transition& t : tnfa.transitions()) {
      if (!t.is_epsilon()) continue;
      if (!include_back && t.kind == TransitionKind::Back) continue;
      if (out.contains(t.from) && !out.contains(t.to)) {
        out.insert(t.to);
        changed = true;
      }
    }
  }
  return out;
}

}  // namespace

StateSet fixpoint_close(const Tnfa& tnfa, const StateSet& s) { return fixpoint(tnfa, s, true); }

StateSet forward_close(const Tnfa& tnfa, const StateSet& s) { return fixpoint(tnfa, s, false); }

StateSet scan_move(const Tnfa& tnfa, const StateSet& s, Symbol a) {
  StateSet out(tnfa.state_count());
  for (const Transition& t : tnfa.transitions()) {
    if (t.label == a && s.contains(t.from)) out.insert(t.to);
  }
  return out;
}

std::size_t max_back_on_simple_paths(const Tnfa& tnfa) {
  const std::size_t n = tnfa.state_count();
  std::vector<std::vector<const Transition*>> out(n);
  for (const Transition& t : tnfa.transitions()) out[t.from].push_back(&t);
  std::vector<bool> on_path(n, false);
  std::size_t best = 0;
  std::function<void(StateId, std::size_t)> walk = [&](StateId s, std::size_t backs) {
    best = std::max(best, backs);
    on_path[s] = true;
    for (const Transition* t : out[s]) {
      if (!on_path[t->to]) walk(t->to, backs + (t->kind == TransitionKind::Back ? 1 : 0));
    }
    on_path[s] = false;
  };
  for (StateId s = 0; s < n; ++s) walk(s, 0);
  return best;
}

StateSet from_mask(std::size_t universe, std::uint64_t mask) {
  StateSet s(universe);
  for (StateId i = 0; i < universe && i < 64; ++i) {
    if ((mask >> i) & 1U) s.insert(i);
  }
  return s;
}

bool scan_match(const Tnfa& tnfa, std::string_view q) {
  StateSet s(tnfa.state_count());
  s.insert(tnfa.start());
  s = fixpoint_close(tnfa, s);
  for (unsigned char c : q) s = fixpoint_close(tnfa, scan_move(tnfa, s, c));
  return s.contains(tnfa.accept());
}

}  // namespace rxe::oracle
