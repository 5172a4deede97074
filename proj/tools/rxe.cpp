// rxe: full-line regular expression matching with selectable simulation backends.
//
//   rxe match   -e PAT [--backend B] [--word-size W] [--cluster-size X] [--quiet] [FILE|-]
//   rxe explain -e PAT [--backend B] [--word-size W] [--cluster-size X]
//   rxe bench   --seed S --sizes LIST --text-len N --repeat K --backends LIST
//
// Exit status: 0 if some line matched (or the command succeeded), 1 if no line
// matched, 2 on usage, pattern or input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rxe/bench.hpp"
#include "rxe/engine.hpp"
#include "rxe/syntax.hpp"

namespace {

constexpr int kMatched = 0;
constexpr int kNoMatch = 1;
constexpr int kError = 2;

struct CommonOptions {
  std::string pattern;
  std::string backend = "auto";
  unsigned word_size = 64;
  std::optional<std::size_t> cluster_size;
};

rxe::EngineConfig make_config(const CommonOptions& o) {
  rxe::EngineConfig cfg;
  cfg.backend = rxe::parse_backend(o.backend);
  cfg.word_size = o.word_size;
  cfg.cluster_size = o.cluster_size;
  rxe::validate(cfg);
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-e,--regexp", o.pattern, "pattern")->required();
  cmd->add_option("--backend", o.backend, "auto, naive, simple, separator or decomposed");
  cmd->add_option("--word-size", o.word_size, "simulated word size w: 8, 16, 32 or 64");
  cmd->add_option("--cluster-size", o.cluster_size, "decomposition parameter x (default w)");
}

int run_match(const CommonOptions& o, const std::string& input, bool quiet) {
  rxe::Matcher matcher(o.pattern, make_config(o));
  if (!matcher.selection().note.empty()) std::cerr << "rxe: note: " << matcher.selection().note << '\n';

  std::ifstream file;
  std::istream* in = &std::cin;
  if (input != "-") {
    file.open(input, std::ios::binary);
    if (!file) {
      std::cerr << "rxe: cannot read " << input << '\n';
      return kError;
    }
    in = &file;
  }
  bool any = false;
  std::string line;
  while (std::getline(*in, line)) {
    if (matcher.match(line)) {
      any = true;
      if (!quiet) std::cout << line << '\n';
    }
  }
  if (in->bad()) {
    std::cerr << "rxe: error reading " << input << '\n';
    return kError;
  }
  return any ? kMatched : kNoMatch;
}

int run_explain(const CommonOptions& o) {
  for (const auto& [key, value] : rxe::explain(o.pattern, make_config(o))) std::cout << key << ": " << value << '\n';
  return kMatched;
}

int run_bench_command(const rxe::BenchOptions& options) {
  const std::vector<rxe::BenchRow> rows = rxe::run_bench(options, &std::cerr);
  std::cout << rxe::bench_csv_header() << '\n';
  for (const rxe::BenchRow& row : rows) std::cout << rxe::to_csv(row) << '\n';
  return kMatched;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"full-line regular expression matching"};
  app.require_subcommand(1);

  CommonOptions match_opts;
  std::string input = "-";
  bool quiet = false;
  auto* match = app.add_subcommand("match", "print input lines that match the whole pattern");
  add_common(match, match_opts);
  match->add_flag("-q,--quiet", quiet, "print nothing; report through the exit status only");
  match->add_option("file", input, "input file, or - for standard input");

  CommonOptions explain_opts;
  auto* explain = app.add_subcommand("explain", "describe the automaton and the selected backend");
  add_common(explain, explain_opts);

  rxe::BenchOptions bench_opts;
  std::vector<std::string> backend_names{"naive", "auto"};
  auto* bench = app.add_subcommand("bench", "time backends on random patterns and texts, as CSV");
  bench->add_option("--seed", bench_opts.seed, "random seed");
  bench->add_option("--sizes", bench_opts.sizes, "comma-separated target state counts")->delimiter(',');
  bench->add_option("--text-len", bench_opts.text_length, "text length n");
  bench->add_option("--repeat", bench_opts.repeat, "timed runs per backend; the fastest is reported");
  bench->add_option("--backends", backend_names, "comma-separated backends")->delimiter(',');
  bench->add_option("--word-size", bench_opts.word_size, "simulated word size w");
  bench->add_option("--cluster-size", bench_opts.cluster_size, "decomposition parameter x (default w)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*match) return run_match(match_opts, input, quiet);
    if (*explain) return run_explain(explain_opts);
    bench_opts.backends.clear();
    for (const std::string& name : backend_names) bench_opts.backends.push_back(rxe::parse_backend(name));
    rxe::EngineConfig check;
    check.word_size = bench_opts.word_size;
    check.cluster_size = bench_opts.cluster_size;
    rxe::validate(check);
    return run_bench_command(bench_opts);
  } catch (const rxe::ParseError& e) {
    std::cerr << "rxe: " << e.what() << '\n';
  } catch (const rxe::BenchMismatch& e) {
    std::cerr << "rxe: bench aborted: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "rxe: " << e.what() << '\n';
  }
  return kError;
}
