#include "rxe/random.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace rxe {

ParseTree random_tree(Random& rng, std::size_t nodes, std::string_view alphabet, unsigned star_percent) {
  if (nodes == 0) throw std::invalid_argument("a parse tree needs at least one node");
  if (alphabet.empty()) throw std::invalid_argument("empty alphabet");

  // Shape first, top-down with explicit sizes; ids are assigned afterwards in
  // postorder so children precede parents.
  struct Shape {
    NodeKind kind;
    std::size_t size;
    std::size_t left = 0, right = 0;  // indices into shapes
  };
  std::vector<Shape> shapes;
  shapes.push_back({NodeKind::Char, nodes});
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const std::size_t size = shapes[i].size;
    if (size == 1) continue;
    if (size == 2 || rng.chance(star_percent)) {
      shapes[i].kind = NodeKind::Star;
      shapes[i].left = shapes.size();
      shapes.push_back({NodeKind::Char, size - 1});
      continue;
    }
    shapes[i].kind = rng.chance(50) ? NodeKind::Concat : NodeKind::Union;
    const std::size_t left = 1 + rng.below(size - 2);
    shapes[i].left = shapes.size();
    shapes.push_back({NodeKind::Char, left});
    shapes[i].right = shapes.size();
    shapes.push_back({NodeKind::Char, size - 1 - left});
  }

  ParseTree tree;
  std::vector<NodeId> id(shapes.size(), kNoNode);
  std::vector<std::pair<std::size_t, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    const Shape& s = shapes[i];
    if (!expanded && s.size > 1) {
      stack.emplace_back(i, true);
      if (s.kind != NodeKind::Star) stack.emplace_back(s.right, false);
      stack.emplace_back(s.left, false);
      continue;
    }
    switch (s.kind) {
      case NodeKind::Char: id[i] = tree.add_char(static_cast<unsigned char>(alphabet[rng.below(alphabet.size())])); break;
      case NodeKind::Star: id[i] = tree.add_star(id[s.left]); break;
      case NodeKind::Concat: id[i] = tree.add_concat(id[s.left], id[s.right]); break;
      case NodeKind::Union: id[i] = tree.add_union(id[s.left], id[s.right]); break;
    }
  }
  return tree;
}

std::string random_text(Random& rng, std::size_t length, std::string_view alphabet) {
  std::string out(length, '\0');
  for (char& c : out) c = alphabet[rng.below(alphabet.size())];
  return out;
}

std::string sample_member(Random& rng, const ParseTree& tree, std::size_t max_repeat, std::size_t limit) {
  std::string out;
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty() && out.size() < limit) {
    const NodeId v = stack.back();
    stack.pop_back();
    const ParseNode& n = tree.node(v);
    switch (n.kind) {
      case NodeKind::Char:
        out.push_back(static_cast<char>(n.symbol));
        break;
      case NodeKind::Concat:
        stack.push_back(n.right);
        stack.push_back(n.left);
        break;
      case NodeKind::Union:
        stack.push_back(rng.chance(50) ? n.left : n.right);
        break;
      case NodeKind::Star: {
        std::size_t k = 0;
        while (k < max_repeat && rng.chance(50)) ++k;
        for (std::size_t i = 0; i < k; ++i) stack.push_back(n.left);
        break;
      }
    }
  }
  return out;
}

}  // namespace rxe
