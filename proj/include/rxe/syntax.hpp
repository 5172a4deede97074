#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rxe {

// Input symbols are bytes. The pseudo-label used for nested automata sits just
// past the byte range so it can never occur in a pattern or an input string.
using Symbol = std::uint16_t;
inline constexpr Symbol kBeta = 256;
inline constexpr std::size_t kSymbolCount = 257;

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

enum class NodeKind : std::uint8_t { Char, Concat, Union, Star };

struct ParseNode {
  NodeKind kind = NodeKind::Char;
  Symbol symbol = 0;      // Char only
  NodeId left = kNoNode;  // first child (Concat, Union, Star)
  NodeId right = kNoNode; // second child (Concat, Union)
};

// Binary parse tree of a regular expression. Nodes are created bottom-up, so
// every child id is smaller than its parent's id and the root is the last node.
class ParseTree {
 public:
  NodeId add_char(Symbol symbol);
  NodeId add_concat(NodeId left, NodeId right);
  NodeId add_union(NodeId left, NodeId right);
  NodeId add_star(NodeId child);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return nodes_.empty() ? kNoNode : static_cast<NodeId>(nodes_.size() - 1); }
  const ParseNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const ParseNode> nodes() const noexcept { return nodes_; }

  // Parent of every node; kNoNode for the root.
  std::vector<NodeId> parents() const;
  std::size_t leaf_count() const noexcept;
  std::size_t height() const;

  // Throws std::invalid_argument unless every node is reachable from the root
  // exactly once.
  void validate() const;

 private:
  NodeId push(ParseNode node);
  void check_child(NodeId child) const;

  std::vector<ParseNode> nodes_;
};

// Structural equality (labels and shape), independent of node ids.
bool isomorphic(const ParseTree& a, const ParseTree& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Grammar, lowest precedence first:
//   union  := concat ('|' concat)*
//   concat := star star*
//   star   := atom '*'*
//   atom   := byte | '\' byte | '(' union ')'
// Metacharacters ( ) | * \ must be escaped to be used as literals.
ParseTree parse(std::string_view pattern);

// Renders a tree back to pattern text using the minimum parentheses that
// reparse to an isomorphic tree. Throws std::invalid_argument on pseudo leaves.
std::string unparse(const ParseTree& tree);

}  // namespace rxe
