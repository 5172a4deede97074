#include "rxe/engine.hpp"

#include <stdexcept>

#include "rxe/separator.hpp"
#include "rxe/simple_sim.hpp"

namespace rxe {

std::string_view to_string(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::Auto: return "auto";
    case BackendKind::Naive: return "naive";
    case BackendKind::Simple: return "simple";
    case BackendKind::Separator: return "separator";
    case BackendKind::Decomposed: return "decomposed";
  }
  return "?";
}

BackendKind parse_backend(std::string_view name) {
  for (BackendKind k : {BackendKind::Auto, BackendKind::Naive, BackendKind::Simple, BackendKind::Separator,
                        BackendKind::Decomposed}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

void validate(const EngineConfig& cfg) {
  const unsigned w = cfg.word_size;
  if (w != 8 && w != 16 && w != 32 && w != 64) {
    throw std::invalid_argument("word size must be 8, 16, 32 or 64");
  }
  if (cfg.cluster_size && *cfg.cluster_size < 6) throw std::invalid_argument("cluster size must be at least 6");
}

BackendKind inner_backend(std::size_t x, unsigned word_size) noexcept {
  return SimpleSim::fits(x, word_size) ? BackendKind::Simple : BackendKind::Separator;
}

Selection select_backend(std::size_t m, const EngineConfig& cfg) {
  validate(cfg);
  const unsigned w = cfg.word_size;
  Selection s;
  switch (cfg.backend) {
    case BackendKind::Auto:
      if (SimpleSim::fits(m, w)) {
        s.kind = BackendKind::Simple;
      } else if (m <= w) {
        s.kind = BackendKind::Separator;
      } else {
        s.kind = BackendKind::Decomposed;
        s.x = cfg.cluster_size.value_or(w);
        s.inner = BackendKind::Separator;
      }
      break;
    case BackendKind::Simple:
      if (SimpleSim::fits(m, w)) {
        s.kind = BackendKind::Simple;
      } else {
        s.kind = BackendKind::Naive;
        s.note = "simple backend needs m(m+1) <= w (m=" + std::to_string(m) + ", w=" + std::to_string(w) +
                 "); using naive";
      }
      break;
    case BackendKind::Decomposed:
      s.kind = BackendKind::Decomposed;
      s.x = cfg.cluster_size.value_or(w);
      s.inner = inner_backend(s.x, w);
      break;
    default:
      s.kind = cfg.backend;
      break;
  }
  return s;
}

std::unique_ptr<SimulationStructure> make_structure(BackendKind kind, const Tnfa& tnfa, unsigned word_size) {
  switch (kind) {
    case BackendKind::Naive: return std::make_unique<NaiveSim>(tnfa);
    case BackendKind::Simple: return std::make_unique<SimpleSim>(tnfa, word_size);
    case BackendKind::Separator: return std::make_unique<SeparatorSim>(tnfa);
    default: throw std::invalid_argument("not a single-automaton backend: " + std::string(to_string(kind)));
  }
}

Matcher::Matcher(const ParseTree& tree, const EngineConfig& cfg)
    : tnfa_(thompson(tree)), cfg_(cfg), selection_(select_backend(tnfa_.state_count(), cfg)) {
  if (selection_.kind == BackendKind::Decomposed) {
    const BackendKind inner = selection_.inner;
    const unsigned w = cfg.word_size;
    decomposed_ = std::make_unique<DecomposedSim>(
        nested_decomposition(tree, selection_.x),
        [inner, w](const Tnfa& a) { return make_structure(inner, a, w); });
    array_ = decomposed_->make_array();
  } else {
    structure_ = make_structure(selection_.kind, tnfa_, cfg.word_size);
    set_.assign(structure_->set_words(), 0);
    scratch_.assign(structure_->scratch_words(), 0);
  }
}

Matcher::Matcher(std::string_view pattern, const EngineConfig& cfg) : Matcher(parse(pattern), cfg) {}

bool Matcher::match(std::string_view q) {
  if (decomposed_) return decomposed_->match(q, array_);
  const SimulationStructure& sim = *structure_;
  std::fill(set_.begin(), set_.end(), Word{0});
  sim.insert(set_, tnfa_.start());
  sim.close(set_, scratch_);
  for (unsigned char c : q) {
    sim.move(set_, c, scratch_);
    sim.close(set_, scratch_);
  }
  return sim.member(set_, tnfa_.accept());
}

Report explain(std::string_view pattern, const EngineConfig& cfg) {
  const ParseTree tree = parse(pattern);
  Matcher matcher(tree, cfg);
  const Tnfa& t = matcher.tnfa();
  const Selection& sel = matcher.selection();
  Report r;
  auto add = [&r](std::string key, auto value) {
    if constexpr (std::is_convertible_v<decltype(value), std::string>) {
      r.emplace_back(std::move(key), std::string(value));
    } else {
      r.emplace_back(std::move(key), std::to_string(value));
    }
  };
  add("pattern", std::string(pattern));
  add("parse_nodes", tree.node_count());
  add("states", t.state_count());
  add("transitions", t.transitions().size());
  add("back_transitions", t.back_transition_count());
  add("word_size", cfg.word_size);
  add("requested_backend", std::string(to_string(cfg.backend)));
  add("backend", std::string(to_string(sel.kind)));
  if (!sel.note.empty()) add("note", sel.note);

  if (sel.kind == BackendKind::Simple) {
    add("simple_bits", t.state_count() * (t.state_count() + 1));
  } else if (sel.kind == BackendKind::Separator) {
    const auto& sep = static_cast<const SeparatorSim&>(*matcher.structure());
    add("separator_depth", sep.tree().depth());
    add("separator_length", sep.length());
    std::string counts;
    for (std::size_t n : sep.mapping().mapped_intervals) {
      if (!counts.empty()) counts += ',';
      counts += std::to_string(n);
    }
    add("mapped_intervals", counts);
  } else if (sel.kind == BackendKind::Decomposed) {
    const NestedDecomposition& nd = matcher.decomposed()->decomposition();
    add("inner_backend", std::string(to_string(sel.inner)));
    add("x", nd.x);
    add("cluster_limit", nd.cluster_limit);
    add("automata", nd.automata.size());
    add("max_automaton_states", nd.max_state_count());
    add("macro_depth", nd.macro_depth());
  }
  return r;
}

}  // namespace rxe
