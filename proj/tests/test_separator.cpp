#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "rxe/random.hpp"
#include "rxe/separator.hpp"
#include "rxe/syntax.hpp"
#include "rxe/tnfa.hpp"
#include "support/oracles.hpp"

using namespace rxe;

namespace {

StateSet random_set(Random& rng, std::size_t m, unsigned percent) {
  StateSet s(m);
  for (StateId q = 0; q < m; ++q) {
    if (rng.chance(percent)) s.insert(q);
  }
  return s;
}

// States reachable from `from` over epsilon transitions with both ends in `part`;
// with `reverse`, the states from which `from` is reachable.
std::set<StateId> restricted_reach(const Tnfa& n, const std::set<StateId>& part, StateId from, bool reverse) {
  std::set<StateId> seen{from};
  std::deque<StateId> todo{from};
  while (!todo.empty()) {
    const StateId s = todo.front();
    todo.pop_front();
    for (const Transition& t : n.transitions()) {
      if (!t.is_epsilon() || !part.count(t.from) || !part.count(t.to)) continue;
      const StateId a = reverse ? t.to : t.from;
      const StateId b = reverse ? t.from : t.to;
      if (a == s && seen.insert(b).second) todo.push_back(b);
    }
  }
  return seen;
}

void check_split(const Tnfa& n, const Ptnfa& part) {
  const PtnfaSplit split = split_ptnfa(n, part);
  const std::size_t t = part.nodes.size();
  CHECK(split.outer.nodes.size() + split.inner.nodes.size() == t);
  CHECK(3 * split.outer.nodes.size() <= 2 * t + 3);
  CHECK(3 * split.inner.nodes.size() <= 2 * t + 3);
  CHECK(split.outer.root == part.root);

  const auto outer = states_of(n, split.outer);
  const auto inner = states_of(n, split.inner);
  const std::set<StateId> in(inner.begin(), inner.end());
  const std::set<StateId> out(outer.begin(), outer.end());
  const StatePair sep = n.assoc(split.inner.root);
  for (const Transition& tr : n.transitions()) {
    if (out.count(tr.from) && in.count(tr.to)) CHECK(tr.to == sep.start);
    if (in.count(tr.from) && out.count(tr.to)) CHECK(tr.from == sep.accept);
  }
}

}  // namespace

TEST_CASE("splitting a three-node cluster") {
  const Tnfa n = thompson(parse("ab"));
  const Ptnfa whole = whole_automaton(n);
  REQUIRE(whole.nodes.size() == 3);
  const PtnfaSplit s = split_ptnfa(n, whole);
  CHECK(s.outer.nodes.size() <= 3);
  CHECK(s.inner.nodes.size() <= 3);
  check_split(n, whole);
}

TEST_CASE("splitting a star") {
  const Tnfa n = thompson(parse("a*"));
  const PtnfaSplit s = split_ptnfa(n, whole_automaton(n));
  CHECK(s.outer.state_count() == 2);
  CHECK(s.inner.state_count() == 2);
  check_split(n, whole_automaton(n));
}

TEST_CASE("a two-state part cannot be split") {
  const Tnfa n = thompson(parse("a"));
  CHECK_THROWS_AS(split_ptnfa(n, whole_automaton(n)), std::invalid_argument);
}

TEST_CASE("splits are balanced and separated on random patterns") {
  Random rng(51);
  for (int i = 0; i < 200; ++i) {
    const Tnfa n = thompson(random_tree(rng, 2 + rng.below(150)));
    check_split(n, whole_automaton(n));
  }
}

TEST_CASE("separator trees") {
  const SeparatorTree a = build_separator_tree(thompson(parse("a")));
  CHECK(a.nodes().size() == 1);
  CHECK(a.depth() == 0);
  CHECK(a.root().is_leaf());

  const SeparatorTree star = build_separator_tree(thompson(parse("a*")));
  CHECK(star.nodes().size() == 3);
  CHECK(star.depth() == 1);
  CHECK(star.node(star.root().outer).is_leaf());
  CHECK(star.node(star.root().inner).is_leaf());
}

TEST_CASE("separator tree depth and part sizes") {
  Random rng(53);
  for (int i = 0; i < 300; ++i) {
    const Tnfa n = thompson(random_tree(rng, 32));
    const double m = static_cast<double>(n.state_count());
    const SeparatorTree tree = build_separator_tree(n);
    CHECK(tree.depth() <= std::log(m) / std::log(1.5) + 4);
    for (const SeparatorNode& v : tree.nodes()) {
      CHECK(static_cast<double>(v.part.state_count()) <= std::pow(2.0 / 3.0, v.depth) * m + 6);
      if (v.is_leaf()) CHECK(v.part.state_count() == 2);
    }
  }
}

TEST_CASE("mapping positions") {
  const Tnfa a = thompson(parse("a"));
  const SeparatorMapping ma = build_mapping(build_separator_tree(a), a.state_count());
  CHECK(ma.length == 3);
  CHECK(ma.position[a.start()] == 2);
  CHECK(ma.position[a.accept()] == 3);

  const Tnfa star = thompson(parse("a*"));
  const SeparatorMapping ms = build_mapping(build_separator_tree(star), star.state_count());
  CHECK(ms.length == 6);
  const std::set<std::size_t> outer{ms.position[star.assoc(1).start], ms.position[star.assoc(1).accept]};
  const std::set<std::size_t> inner{ms.position[star.assoc(0).start], ms.position[star.assoc(0).accept]};
  CHECK(outer == std::set<std::size_t>{2, 3});
  CHECK(inner == std::set<std::size_t>{5, 6});
}

TEST_CASE("mapping is injective and leaves the test bits free") {
  Random rng(57);
  for (int i = 0; i < 100; ++i) {
    const Tnfa n = thompson(random_tree(rng, 1 + rng.below(100)));
    const SeparatorTree tree = build_separator_tree(n);
    const SeparatorMapping map = build_mapping(tree, n.state_count());
    CHECK(map.length == 3 * (std::size_t{1} << tree.depth()));
    std::set<std::size_t> used(map.position.begin(), map.position.end());
    CHECK(used.size() == n.state_count());
    for (std::size_t p : used) {
      CHECK(p >= 1);
      CHECK(p <= map.length);
      CHECK(p % 3 != 1);
    }
  }
}

TEST_CASE("level strings of a single character are reflexive") {
  const Tnfa n = thompson(parse("a"));
  const SeparatorSim sim(n);
  REQUIRE(sim.levels().size() == 1);
  const LevelStrings& l = sim.levels()[0];
  CHECK(l.x_start.to_string() == "010");
  CHECK(l.e_start.to_string() == "010");
  CHECK(l.x_accept.to_string() == "001");
  CHECK(l.e_accept.to_string() == "001");
  CHECK(l.tests.to_string() == "100");
}

TEST_CASE("level strings match restricted reachability") {
  Random rng(59);
  std::vector<Tnfa> cases{thompson(parse("a*")), thompson(parse("(ab)*")), thompson(parse("ac|a*b"))};
  for (int i = 0; i < 60; ++i) cases.push_back(thompson(random_tree(rng, 1 + rng.below(60))));
  for (const Tnfa& n : cases) {
    const SeparatorSim sim(n);
    const SeparatorMapping& map = sim.mapping();
    const auto levels = sim.levels();
    REQUIRE(levels.size() == sim.tree().depth() + 1);
    std::vector<BitString> xs(levels.size(), BitString(map.length)), es = xs, xa = xs, ea = xs;
    for (std::uint32_t v = 0; v < sim.tree().nodes().size(); ++v) {
      const SeparatorNode& node = sim.tree().node(v);
      const auto states = states_of(n, node.part);
      const std::set<StateId> part(states.begin(), states.end());
      const std::uint32_t k = node.depth;
      for (StateId s : restricted_reach(n, part, node.separator.start, true)) xs[k].set(map.position[s]);
      for (StateId s : restricted_reach(n, part, node.separator.start, false)) es[k].set(map.position[s]);
      for (StateId s : restricted_reach(n, part, node.separator.accept, true)) xa[k].set(map.position[s]);
      for (StateId s : restricted_reach(n, part, node.separator.accept, false)) ea[k].set(map.position[s]);
      CHECK((map.interval_begin[v] - 1) % (map.length >> k) == 0);
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
      CHECK(levels[k].interval == (map.length >> k));
      CHECK(levels[k].x_start == xs[k]);
      CHECK(levels[k].e_start == es[k]);
      CHECK(levels[k].x_accept == xa[k]);
      CHECK(levels[k].e_accept == ea[k]);
      for (std::size_t p = 1; p <= map.length; ++p) CHECK(levels[k].tests.test(p) == ((p - 1) % levels[k].interval == 0));
    }
  }
}

TEST_CASE("close on small examples") {
  const Tnfa star = thompson(parse("a*"));
  const SeparatorSim sim(star);
  CHECK(sim.close(StateSet(4)).empty());
  StateSet s(4);
  s.insert(star.start());
  StateSet expect(4);
  for (StateId q : {star.assoc(1).start, star.assoc(0).start, star.assoc(1).accept}) expect.insert(q);
  CHECK(sim.close(s) == expect);
  CHECK_FALSE(sim.close(BitString(sim.length())).any());
}

TEST_CASE("close equals the fixpoint oracle on every subset of small automata") {
  for (const ParseTree& t : oracle::trees_up_to(4, "ab")) {
    const Tnfa n = thompson(t);
    const SeparatorSim sim(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n.state_count()); ++mask) {
      const StateSet s = oracle::from_mask(n.state_count(), mask);
      CHECK(sim.close(s) == oracle::fixpoint_close(n, s));
    }
  }
}

TEST_CASE("close and move agree with oracles on large automata") {
  Random rng(61);
  for (int i = 0; i < 300; ++i) {
    const Tnfa n = thompson(random_tree(rng, 1 + rng.below(400)));
    const SeparatorSim sim(n);
    const StateSet s = random_set(rng, n.state_count(), 1 + static_cast<unsigned>(rng.below(20)));
    CHECK(sim.close(s) == oracle::fixpoint_close(n, s));
    for (Symbol c : {'a', 'b', 'c', 'd'}) CHECK(sim.move(s, c) == oracle::scan_move(n, s, c));
  }
}

TEST_CASE("move on ac|a*b") {
  const Tnfa n = thompson(parse("ac|a*b"));
  const SeparatorSim sim(n);
  CHECK(sim.move(StateSet(n.state_count()), 'a').empty());
  Random rng(67);
  for (int i = 0; i < 10000; ++i) {
    const StateSet s = random_set(rng, n.state_count(), 30);
    const Symbol c = static_cast<Symbol>("abcz"[rng.below(4)]);
    REQUIRE(sim.move(s, c) == oracle::scan_move(n, s, c));
  }
}

TEST_CASE("word-level interface matches the value-level one") {
  Random rng(71);
  for (int i = 0; i < 200; ++i) {
    const Tnfa n = thompson(random_tree(rng, 1 + rng.below(300)));
    const SeparatorSim sim(n);
    const StateSet s = random_set(rng, n.state_count(), 10);
    std::vector<Word> set(sim.set_words()), scratch(sim.scratch_words());
    sim.encode(s, set);
    CHECK(sim.decode(std::span<const Word>(set)) == s);
    for (StateId q = 0; q < n.state_count(); ++q) CHECK(sim.member(set, q) == s.contains(q));
    sim.close(set, scratch);
    CHECK(sim.decode(std::span<const Word>(set)) == sim.close(s));
    sim.move(set, 'b', scratch);
    CHECK(sim.decode(std::span<const Word>(set)) == sim.move(sim.close(s), 'b'));
    std::vector<Word> one(sim.set_words());
    sim.insert(one, n.accept());
    CHECK(sim.member(one, n.accept()));
  }
}

TEST_CASE("matching agrees with naive matching") {
  Random rng(73);
  for (int i = 0; i < 300; ++i) {
    const ParseTree t = random_tree(rng, 1 + rng.below(100));
    const Tnfa n = thompson(t);
    const SeparatorSim sim(n);
    const std::string q = rng.chance(50) ? sample_member(rng, t, 3, 100) : random_text(rng, rng.below(30));
    CHECK(simulate_match(sim, n.start(), n.accept(), q) == naive_match(n, q));
  }
}
