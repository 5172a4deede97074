// Python bindings: parsing, inspection, backend selection and matching.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rxe/engine.hpp"
#include "rxe/syntax.hpp"
#include "rxe/tnfa.hpp"

namespace py = pybind11;

namespace {

rxe::EngineConfig make_config(const std::string& backend, unsigned word_size, std::optional<std::size_t> cluster_size) {
  rxe::EngineConfig cfg;
  cfg.backend = rxe::parse_backend(backend);
  cfg.word_size = word_size;
  cfg.cluster_size = cluster_size;
  rxe::validate(cfg);
  return cfg;
}

py::dict to_dict(const rxe::Report& report) {
  py::dict d;
  for (const auto& [key, value] : report) d[py::str(key)] = value;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rxe, m) {
  m.doc() = "full-line regular expression matching with bit-parallel backends";

  py::register_exception<rxe::ParseError>(m, "PatternError", PyExc_ValueError);

  m.def(
      "parse",
      [](const std::string& pattern) {
        const rxe::ParseTree tree = rxe::parse(pattern);
        const rxe::Tnfa tnfa = rxe::thompson(tree);
        py::dict d;
        d["nodes"] = tree.node_count();
        d["states"] = tnfa.state_count();
        d["transitions"] = tnfa.transitions().size();
        d["back_transitions"] = tnfa.back_transition_count();
        d["canonical"] = rxe::unparse(tree);
        return d;
      },
      py::arg("pattern"), "Parse a pattern and describe its parse tree and automaton.");

  m.def(
      "explain",
      [](const std::string& pattern, const std::string& backend, unsigned word_size,
         std::optional<std::size_t> cluster_size) {
        return to_dict(rxe::explain(pattern, make_config(backend, word_size, cluster_size)));
      },
      py::arg("pattern"), py::arg("backend") = "auto", py::arg("word_size") = 64,
      py::arg("cluster_size") = py::none(), "Describe the compiled pattern as a dict of strings.");

  m.def(
      "select_backend",
      [](std::size_t states, const std::string& backend, unsigned word_size, std::optional<std::size_t> cluster_size) {
        const rxe::Selection s = rxe::select_backend(states, make_config(backend, word_size, cluster_size));
        py::dict d;
        d["backend"] = std::string(rxe::to_string(s.kind));
        if (s.kind == rxe::BackendKind::Decomposed) {
          d["inner"] = std::string(rxe::to_string(s.inner));
          d["x"] = s.x;
        }
        if (!s.note.empty()) d["note"] = s.note;
        return d;
      },
      py::arg("states"), py::arg("backend") = "auto", py::arg("word_size") = 64, py::arg("cluster_size") = py::none(),
      "Backend chosen for an automaton with the given number of states.");

  py::class_<rxe::Matcher>(m, "Matcher")
      .def(py::init([](const std::string& pattern, const std::string& backend, unsigned word_size,
                       std::optional<std::size_t> cluster_size) {
             return rxe::Matcher(pattern, make_config(backend, word_size, cluster_size));
           }),
           py::arg("pattern"), py::arg("backend") = "auto", py::arg("word_size") = 64,
           py::arg("cluster_size") = py::none())
      .def("match", [](rxe::Matcher& self, py::bytes text) { return self.match(std::string(text)); }, py::arg("text"))
      .def("match", [](rxe::Matcher& self, const std::string& text) { return self.match(text); }, py::arg("text"))
      .def_property_readonly("backend", [](const rxe::Matcher& self) { return std::string(rxe::to_string(self.selection().kind)); })
      .def_property_readonly("states", [](const rxe::Matcher& self) { return self.tnfa().state_count(); });

  m.def(
      "match",
      [](const std::string& pattern, const std::string& text, const std::string& backend, unsigned word_size,
         std::optional<std::size_t> cluster_size) {
        rxe::Matcher matcher(pattern, make_config(backend, word_size, cluster_size));
        return matcher.match(text);
      },
      py::arg("pattern"), py::arg("text"), py::arg("backend") = "auto", py::arg("word_size") = 64,
      py::arg("cluster_size") = py::none(), "Whether the whole text is in the language of the pattern.");
}
