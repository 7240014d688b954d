// Python bindings for the core operations: bit-string algebra, the
// reference machine, complexity queries, Kraft allocation, martingale
// transcripts, pair builders, and the acceptance suite.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "aitk/coding.hpp"
#include "aitk/construct.hpp"
#include "aitk/kolmo.hpp"
#include "aitk/martingale.hpp"
#include "aitk/suite.hpp"

namespace py = pybind11;
using namespace aitk;

namespace {

BitString to_bits(const std::string& text) { return BitString::from_text(text); }

std::optional<ExecBudget> make_budget(const std::optional<std::string>& bound,
                                      uint64_t constant) {
  if (!bound) return std::nullopt;
  return ExecBudget{*bound, constant};
}

MachineConfig machine_for(int max_opcode, uint64_t enum_cap) {
  MachineConfig cfg;
  cfg.max_opcode = max_opcode;
  cfg.enum_cap = enum_cap;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_aitk, m) {
  m.doc() = "Time-bounded algorithmic randomness toolkit (native core)";
  m.attr("__version__") = kToolVersion;

  m.def("interleave", [](const std::string& a, const std::string& b) {
    return interleave(to_bits(a), to_bits(b)).to_text();
  });
  m.def("deinterleave", [](const std::string& x) {
    auto [a, b] = deinterleave(to_bits(x));
    return py::make_tuple(a.to_text(), b.to_text());
  });

  m.def(
      "run_program",
      [](const std::string& code, const std::string& conditional,
         const std::optional<std::string>& bound, uint64_t constant,
         int max_opcode) {
        MachineConfig cfg = machine_for(max_opcode, MachineConfig{}.enum_cap);
        ExecOutcome out = run(parse_program(to_bits(code), cfg),
                              to_bits(conditional),
                              make_budget(bound, constant), cfg);
        py::dict d;
        d["status"] = std::string(to_string(out.status));
        d["output"] = out.output.to_text();
        d["steps"] = out.steps_used;
        return d;
      },
      py::arg("code"), py::arg("conditional") = "",
      py::arg("bound") = py::none(), py::arg("constant") = 1,
      py::arg("max_opcode") = 7);

  m.def(
      "complexity",
      [](const std::string& target, const std::string& conditional,
         const std::optional<std::string>& bound, uint64_t constant,
         size_t cap) {
        ComplexityQuery q;
        q.target = to_bits(target);
        q.conditional = to_bits(conditional);
        q.budget = make_budget(bound, constant);
        q.code_cap = cap;
        ComplexityReport rep = complexity(q, MachineConfig{});
        py::dict d;
        d["value"] = rep.value ? py::cast(*rep.value) : py::none();
        d["witness"] = rep.witness ? py::cast(rep.witness->to_text()) : py::none();
        d["programs_scanned"] = rep.programs_scanned;
        return d;
      },
      py::arg("target"), py::arg("conditional") = "",
      py::arg("bound") = py::none(), py::arg("constant") = 1,
      py::arg("cap") = 18);

  m.def("kraft_sum", [](const std::vector<uint64_t>& lengths) {
    return kraft_sum(lengths).to_pair_text();
  });
  m.def("kc_allocate", [](const std::vector<uint64_t>& lengths) {
    std::vector<std::string> out;
    for (const BitString& c : kc_allocate(lengths)) out.push_back(c.to_text());
    return out;
  });

  m.def(
      "martingale_run",
      [](uint64_t seed, const std::string& play) {
        MartingaleTranscript tr = run_martingale(
            deterministic_fair_strategy(seed, /*strictly_positive=*/false),
            to_bits(play));
        py::dict d;
        d["csv"] = tr.to_csv();
        d["final"] = tr.values.back().to_pair_text();
        d["upper_bound_ok"] = tr.upper_bound_ok;
        return d;
      },
      py::arg("seed"), py::arg("play"));

  m.def(
      "build_pair",
      [](const std::string& kind) {
        MachineConfig cfg = machine_for(5, 34);
        PairArtifact art;
        if (kind == "incompressibility") {
          art = build_pair_incompressibility(
              StageSchedule::default_incompressibility(),
              IncompressibilityParams{}, cfg);
        } else if (kind == "martingale") {
          art = build_pair_martingale(StageSchedule::default_martingale(),
                                      MartingaleParams{}, cfg);
        } else if (kind == "asymmetric") {
          art = build_pair_asymmetric(AsymmetricParams{}, cfg);
        } else {
          throw std::invalid_argument("unknown pair kind: " + kind);
        }
        auto fails = replay_certificates(art, cfg);
        py::dict d;
        d["a"] = art.a.to_text();
        d["b"] = art.b.to_text();
        d["artifact"] = art.serialize();
        d["replay_failures"] = fails;
        return d;
      },
      py::arg("kind"));

  m.def("run_suite", []() {
    SuiteResult res = run_suite(ExperimentConfig{});
    py::dict d;
    d["summary"] = res.summary_json();
    d["all_passed"] = res.all_passed();
    py::list crit;
    for (const CriterionResult& c : res.criteria) {
      py::dict e;
      e["id"] = c.id;
      e["name"] = c.name;
      e["passed"] = c.passed;
      e["detail"] = c.detail;
      crit.append(e);
    }
    d["criteria"] = crit;
    return d;
  });
}
