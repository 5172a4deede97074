#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "rxe/syntax.hpp"

namespace rxe {

// Generators shared by the bench harness and the tests. They draw from
// mt19937_64 with plain modulo reduction so a seed gives the same output on
// every standard library.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

// Random parse tree with exactly `nodes` nodes over the given byte alphabet.
ParseTree random_tree(Random& rng, std::size_t nodes, std::string_view alphabet = "abc",
                      unsigned star_percent = 20);

// Random string of `length` symbols from the alphabet.
std::string random_text(Random& rng, std::size_t length, std::string_view alphabet = "abc");

// One random member of L(tree). Each star repeats with probability 1/2, at
// most `max_repeat` times. Generation stops early once `limit` symbols exist.
std::string sample_member(Random& rng, const ParseTree& tree, std::size_t max_repeat = 4,
                          std::size_t limit = std::string::npos);

}  // namespace rxe
