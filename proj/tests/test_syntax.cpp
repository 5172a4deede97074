#include <doctest.h>

#include "rxe/random.hpp"
#include "rxe/syntax.hpp"
#include "support/oracles.hpp"

using namespace rxe;

TEST_CASE("ac|a*b parses to Union(Concat(a,c), Concat(Star(a), b))") {
  const ParseTree t = parse("ac|a*b");
  CHECK(t.node_count() == 8);
  ParseTree e;
  const NodeId ac = e.add_concat(e.add_char('a'), e.add_char('c'));
  const NodeId asb = e.add_concat(e.add_star(e.add_char('a')), e.add_char('b'));
  e.add_union(ac, asb);
  CHECK(isomorphic(t, e));
  CHECK(t.node(t.root()).kind == NodeKind::Union);
  CHECK(t.leaf_count() == 4);
}

TEST_CASE("single characters and redundant parentheses") {
  const ParseTree a = parse("a");
  CHECK(a.node_count() == 1);
  CHECK(a.node(0).kind == NodeKind::Char);
  CHECK(a.node(0).symbol == 'a');
  CHECK(isomorphic(parse("((a))"), a));
  CHECK(isomorphic(parse("a**"), parse("(a*)*")));
}

TEST_CASE("precedence and associativity") {
  CHECK(isomorphic(parse("ab|c"), parse("(ab)|c")));
  CHECK(isomorphic(parse("ab*"), parse("a(b*)")));
  CHECK(isomorphic(parse("abc"), parse("(ab)c")));
  CHECK(isomorphic(parse("a|b|c"), parse("(a|b)|c")));
  CHECK_FALSE(isomorphic(parse("a(bc)"), parse("(ab)c")));
}

TEST_CASE("escapes make metacharacters literal") {
  const ParseTree t = parse("\\*\\(");
  REQUIRE(t.node_count() == 3);
  CHECK(t.node(0).symbol == '*');
  CHECK(t.node(1).symbol == '(');
}

TEST_CASE("malformed patterns report an offset") {
  for (const char* bad : {"*a", "", "(", ")", "a|", "|a", "()", "a\\", "(a", "a)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse(bad), ParseError);
  }
  try {
    parse("ab)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("children precede parents") {
  const ParseTree t = parse("(a|b)*c(d*|e)");
  for (NodeId v = 0; v < t.node_count(); ++v) {
    const ParseNode& n = t.node(v);
    if (n.left != kNoNode) CHECK(n.left < v);
    if (n.right != kNoNode) CHECK(n.right < v);
  }
  const auto parent = t.parents();
  CHECK(parent[t.root()] == kNoNode);
  t.validate();
}

TEST_CASE("unparse round-trips every small tree") {
  for (const ParseTree& t : oracle::trees_up_to(5, "ab")) {
    const std::string text = unparse(t);
    CAPTURE(text);
    CHECK(isomorphic(parse(text), t));
  }
}

TEST_CASE("unparse round-trips random trees") {
  Random rng(3);
  for (int i = 0; i < 300; ++i) {
    const ParseTree t = random_tree(rng, 1 + rng.below(60), "a(|*\\");
    CHECK(t.node_count() >= 1);
    CHECK(isomorphic(parse(unparse(t)), t));
  }
}

TEST_CASE("pseudo leaves cannot be printed") {
  ParseTree t;
  t.add_char(kBeta);
  CHECK_THROWS(unparse(t));
}
