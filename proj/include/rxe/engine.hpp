#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rxe/decomposition.hpp"
#include "rxe/simulation.hpp"
#include "rxe/tnfa.hpp"

namespace rxe {

enum class BackendKind { Auto, Naive, Simple, Separator, Decomposed };

std::string_view to_string(BackendKind kind) noexcept;
// Throws std::invalid_argument for an unknown name.
BackendKind parse_backend(std::string_view name);

struct EngineConfig {
  BackendKind backend = BackendKind::Auto;
  unsigned word_size = 64;                 // simulated w: 8, 16, 32 or 64
  std::optional<std::size_t> cluster_size; // x for the decomposed backend; defaults to w
};

// Throws std::invalid_argument when w is not one of 8/16/32/64 or x < 6.
void validate(const EngineConfig& cfg);

struct Selection {
  BackendKind kind = BackendKind::Naive;
  BackendKind inner = BackendKind::Naive;  // decomposed only
  std::size_t x = 0;                       // decomposed only
  std::string note;                        // set when a request could not be honoured
};

// m is the state count of the automaton. Auto picks simple when m(m+1) <= w,
// separator when m <= w, and the decomposition with x = w over separator
// structures otherwise. An explicit simple request that does not fit falls
// back to naive with a note.
Selection select_backend(std::size_t m, const EngineConfig& cfg);

// Inner structure used for automata of at most x states.
BackendKind inner_backend(std::size_t x, unsigned word_size) noexcept;

std::unique_ptr<SimulationStructure> make_structure(BackendKind kind, const Tnfa& tnfa, unsigned word_size);

// A compiled pattern with reusable buffers. Not safe for concurrent use; build
// one matcher per thread.
class Matcher {
 public:
  Matcher(const ParseTree& tree, const EngineConfig& cfg);
  Matcher(std::string_view pattern, const EngineConfig& cfg);

  bool match(std::string_view q);

  const Tnfa& tnfa() const noexcept { return tnfa_; }
  const Selection& selection() const noexcept { return selection_; }
  const SimulationStructure* structure() const noexcept { return structure_.get(); }
  const DecomposedSim* decomposed() const noexcept { return decomposed_.get(); }

 private:
  Tnfa tnfa_;
  EngineConfig cfg_;
  Selection selection_;
  std::unique_ptr<SimulationStructure> structure_;
  std::unique_ptr<DecomposedSim> decomposed_;
  std::vector<Word> set_, scratch_;
  StateSetArray array_;
};

// Ordered key/value description of a compiled pattern.
using Report = std::vector<std::pair<std::string, std::string>>;
Report explain(std::string_view pattern, const EngineConfig& cfg);

}  // namespace rxe
