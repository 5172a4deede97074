#include "rxe/syntax.hpp"

#include <algorithm>
#include <optional>

namespace rxe {

NodeId ParseTree::push(ParseNode node) {
  nodes_.push_back(node);
  return static_cast<NodeId>(nodes_.size() - 1);
}

void ParseTree::check_child(NodeId child) const {
  if (child >= nodes_.size()) throw std::invalid_argument("parse tree child does not exist");
}

NodeId ParseTree::add_char(Symbol symbol) {
  if (symbol >= kSymbolCount) throw std::invalid_argument("symbol out of range");
  return push({NodeKind::Char, symbol, kNoNode, kNoNode});
}

NodeId ParseTree::add_concat(NodeId left, NodeId right) {
  check_child(left);
  check_child(right);
  return push({NodeKind::Concat, 0, left, right});
}

NodeId ParseTree::add_union(NodeId left, NodeId right) {
  check_child(left);
  check_child(right);
  return push({NodeKind::Union, 0, left, right});
}

NodeId ParseTree::add_star(NodeId child) {
  check_child(child);
  return push({NodeKind::Star, 0, child, kNoNode});
}

std::vector<NodeId> ParseTree::parents() const {
  std::vector<NodeId> parent(nodes_.size(), kNoNode);
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    const ParseNode& n = nodes_[v];
    if (n.left != kNoNode) parent[n.left] = v;
    if (n.right != kNoNode) parent[n.right] = v;
  }
  return parent;
}

std::size_t ParseTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const ParseNode& n) {
    return n.kind == NodeKind::Char;
  }));
}

std::size_t ParseTree::height() const {
  std::vector<std::size_t> h(nodes_.size(), 0);
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    const ParseNode& n = nodes_[v];
    if (n.left != kNoNode) h[v] = std::max(h[v], h[n.left] + 1);
    if (n.right != kNoNode) h[v] = std::max(h[v], h[n.right] + 1);
  }
  return nodes_.empty() ? 0 : h.back();
}

void ParseTree::validate() const {
  if (nodes_.empty()) throw std::invalid_argument("parse tree is empty");
  std::vector<int> in_degree(nodes_.size(), 0);
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    const ParseNode& n = nodes_[v];
    const bool has_left = n.left != kNoNode;
    const bool has_right = n.right != kNoNode;
    switch (n.kind) {
      case NodeKind::Char:
        if (has_left || has_right) throw std::invalid_argument("character node with children");
        break;
      case NodeKind::Star:
        if (!has_left || has_right) throw std::invalid_argument("star node must have one child");
        break;
      case NodeKind::Concat:
      case NodeKind::Union:
        if (!has_left || !has_right) throw std::invalid_argument("binary node must have two children");
        break;
    }
    if (has_left) {
      if (n.left >= v) throw std::invalid_argument("child created after parent");
      ++in_degree[n.left];
    }
    if (has_right) {
      if (n.right >= v) throw std::invalid_argument("child created after parent");
      ++in_degree[n.right];
    }
  }
  for (NodeId v = 0; v + 1 < nodes_.size(); ++v) {
    if (in_degree[v] != 1) throw std::invalid_argument("node is not reachable exactly once");
  }
  if (in_degree.back() != 0) throw std::invalid_argument("root has a parent");
}

bool isomorphic(const ParseTree& a, const ParseTree& b) {
  if (a.node_count() != b.node_count()) return false;
  if (a.node_count() == 0) return true;
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    const ParseNode& x = a.node(u);
    const ParseNode& y = b.node(v);
    if (x.kind != y.kind) return false;
    if (x.kind == NodeKind::Char) {
      if (x.symbol != y.symbol) return false;
      continue;
    }
    stack.emplace_back(x.left, y.left);
    if (x.right != kNoNode) stack.emplace_back(x.right, y.right);
  }
  return true;
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + what),
      position_(position) {}

namespace {

// One nesting level of the pattern: the union built so far, the concatenation
// being built, and the last atom (kept apart so '*' binds to it alone).
struct Frame {
  std::size_t open_position = 0;
  std::optional<NodeId> alternatives;
  std::optional<NodeId> sequence;
  std::optional<NodeId> atom;
  std::optional<std::size_t> last_bar;
};

class Parser {
 public:
  explicit Parser(std::string_view pattern) : pattern_(pattern) {}

  ParseTree run() {
    if (pattern_.empty()) throw ParseError("empty pattern", 0);
    frames_.push_back(Frame{});
    for (std::size_t i = 0; i < pattern_.size(); ++i) {
      const char c = pattern_[i];
      switch (c) {
        case '(':
          frames_.push_back(Frame{i, {}, {}, {}, {}});
          break;
        case ')': {
          if (frames_.size() == 1) throw ParseError("unbalanced ')'", i);
          const NodeId group = finish(frames_.back(), i, false);
          frames_.pop_back();
          push_atom(group);
          break;
        }
        case '|': {
          Frame& f = frames_.back();
          flush(f);
          if (!f.sequence) throw ParseError("'|' is missing its left operand", i);
          f.alternatives = f.alternatives ? tree_.add_union(*f.alternatives, *f.sequence) : *f.sequence;
          f.sequence.reset();
          f.last_bar = i;
          break;
        }
        case '*': {
          Frame& f = frames_.back();
          if (!f.atom) throw ParseError("'*' has no operand", i);
          f.atom = tree_.add_star(*f.atom);
          break;
        }
        case '\\':
          if (i + 1 == pattern_.size()) throw ParseError("trailing escape", i);
          ++i;
          push_atom(tree_.add_char(static_cast<unsigned char>(pattern_[i])));
          break;
        default:
          push_atom(tree_.add_char(static_cast<unsigned char>(c)));
          break;
      }
    }
    if (frames_.size() > 1) throw ParseError("unbalanced '('", frames_.back().open_position);
    finish(frames_.back(), pattern_.size(), true);
    return std::move(tree_);
  }

 private:
  void flush(Frame& f) {
    if (!f.atom) return;
    f.sequence = f.sequence ? tree_.add_concat(*f.sequence, *f.atom) : *f.atom;
    f.atom.reset();
  }

  void push_atom(NodeId atom) {
    Frame& f = frames_.back();
    flush(f);
    f.atom = atom;
  }

  NodeId finish(Frame& f, std::size_t position, bool top_level) {
    flush(f);
    if (!f.sequence) {
      if (f.last_bar) throw ParseError("'|' is missing its right operand", *f.last_bar);
      if (top_level) throw ParseError("empty pattern", position);
      throw ParseError("empty group", position);
    }
    return f.alternatives ? tree_.add_union(*f.alternatives, *f.sequence) : *f.sequence;
  }

  std::string_view pattern_;
  ParseTree tree_;
  std::vector<Frame> frames_;
};

bool is_meta(Symbol s) {
  return s == '(' || s == ')' || s == '|' || s == '*' || s == '\\';
}

// Binding strength: Union 0, Concat 1, Star 2, Char 3.
int strength(NodeKind k) {
  switch (k) {
    case NodeKind::Union: return 0;
    case NodeKind::Concat: return 1;
    case NodeKind::Star: return 2;
    case NodeKind::Char: return 3;
  }
  return 3;
}

}  // namespace

ParseTree parse(std::string_view pattern) {
  return Parser(pattern).run();
}

std::string unparse(const ParseTree& tree) {
  tree.validate();
  // Bottom-up rendering; ids are already in child-before-parent order.
  std::vector<std::string> text(tree.node_count());
  auto wrap = [&](NodeId child, bool parens) {
    return parens ? "(" + text[child] + ")" : text[child];
  };
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    const ParseNode& n = tree.node(v);
    switch (n.kind) {
      case NodeKind::Char:
        if (n.symbol == kBeta) throw std::invalid_argument("pseudo leaf has no pattern syntax");
        if (is_meta(n.symbol)) text[v] = "\\";
        text[v] += static_cast<char>(n.symbol);
        break;
      case NodeKind::Star:
        text[v] = wrap(n.left, strength(tree.node(n.left).kind) < 2) + "*";
        break;
      case NodeKind::Concat:
      case NodeKind::Union: {
        const int s = strength(n.kind);
        // Left-associative: the left operand may share the operator, the
        // right one may not.
        text[v] = wrap(n.left, strength(tree.node(n.left).kind) < s) +
                  (n.kind == NodeKind::Union ? "|" : "") +
                  wrap(n.right, strength(tree.node(n.right).kind) <= s);
        break;
      }
    }
    if (n.left != kNoNode) std::string().swap(text[n.left]);
    if (n.right != kNoNode) std::string().swap(text[n.right]);
  }
  return text.back();
}

}  // namespace rxe
