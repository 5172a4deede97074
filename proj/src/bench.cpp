#include "rxe/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>

#include "rxe/random.hpp"

namespace rxe {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point from) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - from).count());
}

constexpr std::uint64_t kMinTimedNs = 1'000'000;

}  // namespace

BenchCase bench_case(std::uint64_t seed, std::size_t states, std::size_t text_length) {
  Random rng(seed * 0x9E3779B97F4A7C15ULL + states);
  const std::size_t nodes = std::max<std::size_t>(1, states / 2);
  BenchCase c;
  ParseTree body;
  if (nodes == 1) {
    c.tree.add_char('a');
    body = c.tree;
  } else {
    body = random_tree(rng, nodes - 1);
    c.tree = body;
    c.tree.add_star(c.tree.root());
  }
  c.text.reserve(text_length);
  std::size_t empty_samples = 0;
  while (c.text.size() < text_length) {
    const std::string piece = sample_member(rng, body, 4, text_length - c.text.size());
    if (piece.empty() && ++empty_samples > 64) {
      c.text += random_text(rng, text_length - c.text.size());
      break;
    }
    c.text += piece;
  }
  c.text.resize(text_length);
  return c;
}

std::vector<BenchRow> run_bench(const BenchOptions& options, std::ostream* notes) {
  std::vector<BenchRow> rows;
  for (std::size_t size : options.sizes) {
    const BenchCase input = bench_case(options.seed, size, options.text_length);
    std::optional<bool> expected;
    std::string expected_backend;
    for (BackendKind kind : options.backends) {
      EngineConfig cfg;
      cfg.backend = kind;
      cfg.word_size = options.word_size;
      cfg.cluster_size = options.cluster_size;

      const auto build_start = Clock::now();
      Matcher matcher(input.tree, cfg);
      const std::uint64_t build_ns = elapsed_ns(build_start);
      if (notes && !matcher.selection().note.empty()) *notes << "note: " << matcher.selection().note << '\n';

      bool verdict = false;
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
      for (std::size_t r = 0; r < std::max<std::size_t>(1, options.repeat); ++r) {
        std::uint64_t count = 1;
        for (;;) {
          const auto start = Clock::now();
          for (std::uint64_t i = 0; i < count; ++i) verdict = matcher.match(input.text);
          const std::uint64_t ns = elapsed_ns(start);
          if (ns >= kMinTimedNs || count >= (std::uint64_t{1} << 30)) {
            best = std::min(best, ns / count);
            break;
          }
          count *= 2;
        }
      }

      const std::string name(to_string(kind));
      if (!expected) {
        expected = verdict;
        expected_backend = name;
      } else if (*expected != verdict) {
        throw BenchMismatch("backends disagree at m=" + std::to_string(matcher.tnfa().state_count()) + ": " +
                            expected_backend + " says " + (*expected ? "match" : "no match") + ", " + name +
                            " says " + (verdict ? "match" : "no match"));
      }

      BenchRow row;
      row.backend = name;
      row.m = matcher.tnfa().state_count();
      row.n = input.text.size();
      row.w = options.word_size;
      row.build_ns = build_ns;
      row.match_ns = best;
      row.ns_per_char = row.n == 0 ? 0.0 : static_cast<double>(best) / static_cast<double>(row.n);
      row.verdict = verdict;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bench_csv_header() { return "backend,m,n,w,build_ns,match_ns,ns_per_char"; }

std::string to_csv(const BenchRow& row) {
  char per_char[64];
  std::snprintf(per_char, sizeof per_char, "%.3f", row.ns_per_char);
  return row.backend + ',' + std::to_string(row.m) + ',' + std::to_string(row.n) + ',' + std::to_string(row.w) +
         ',' + std::to_string(row.build_ns) + ',' + std::to_string(row.match_ns) + ',' + per_char;
}

}  // namespace rxe
