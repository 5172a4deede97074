#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rxe/engine.hpp"
#include "rxe/syntax.hpp"

namespace rxe {

struct BenchOptions {
  std::uint64_t seed = 1;
  std::vector<std::size_t> sizes{64};  // target state counts
  std::size_t text_length = 100000;
  std::size_t repeat = 3;
  std::vector<BackendKind> backends{BackendKind::Naive, BackendKind::Auto};
  unsigned word_size = 64;
  std::optional<std::size_t> cluster_size;
};

// Deterministic input for one size: the pattern (P)* where P is a random
// tree over {a,b,c}, so that m is the requested state count (rounded down to
// even), and a text of length n made of concatenated samples of P.
struct BenchCase {
  ParseTree tree;
  std::string text;
};
BenchCase bench_case(std::uint64_t seed, std::size_t states, std::size_t text_length);

struct BenchRow {
  std::string backend;
  std::size_t m = 0;
  std::size_t n = 0;
  unsigned w = 0;
  std::uint64_t build_ns = 0;
  std::uint64_t match_ns = 0;
  double ns_per_char = 0;
  bool verdict = false;
};

class BenchMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs every backend on every size. match_ns is the fastest of `repeat`
// timed runs; a run shorter than a millisecond is repeated with doubling
// counts and averaged. Throws BenchMismatch if backends disagree on a verdict.
// Notes about backend fallbacks go to `notes` when given.
std::vector<BenchRow> run_bench(const BenchOptions& options, std::ostream* notes = nullptr);

std::string bench_csv_header();
std::string to_csv(const BenchRow& row);

}  // namespace rxe
