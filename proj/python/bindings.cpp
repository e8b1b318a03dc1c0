// Copyright 2026 The Limsup Games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings: limsup_games._core. Dyadics cross the boundary as Dyadic
// objects; configs and reports cross as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <functional>
#include <memory>
#include <string>

#include "limsup/automaton.h"
#include "limsup/construct.h"
#include "limsup/runner.h"
#include "limsup/suite.h"

namespace py = pybind11;
using limsup::Dyadic;
using limsup::NodeAutomaton;

namespace {

limsup::EventuallyPeriodicBranch branch_in(const NodeAutomaton& u,
                                           const std::string& text) {
  const auto parsed = limsup::EventuallyPeriodicBranch::parse(text);
  return limsup::EventuallyPeriodicBranch::in_tree(parsed.stem(), parsed.cycle(),
                                                   u.tree());
}

limsup::ExperimentConfig config_in(const std::string& text,
                                   const std::string& base_dir,
                                   limsup::BuildContext& ctx) {
  limsup::ExperimentConfig c = limsup::parse_config(text);
  ctx.base_dir = base_dir;
  ctx.seed = c.seed;
  return c;
}

std::string play_json(const limsup::PlayResult& r) {
  nlohmann::json j;
  j["verdict"] = nlohmann::json::parse(limsup::verdict_json(r.verdict));
  j["sidecar"] = nlohmann::json::parse(
      limsup::trace_sidecar_json(r.trace, r.verdict, r.kind));
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& round : r.trace.rounds) {
    nlohmann::json row{{"x", round.x}, {"v", round.move.v.to_string()}};
    if (round.move.w) row["w"] = round.move.w->to_string();
    rounds.push_back(row);
  }
  j["rounds"] = rounds;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Limsup functions, their constructions and games";

  py::register_exception<limsup::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<limsup::StabilizationError>(m, "StabilizationError",
                                                     PyExc_RuntimeError);

  py::class_<Dyadic>(m, "Dyadic")
      .def(py::init<std::int64_t, std::uint32_t>(), py::arg("numerator"),
           py::arg("exponent") = 0)
      .def(py::init([](const std::string& s) { return Dyadic::parse(s); }))
      .def_property_readonly("numerator", &Dyadic::numerator)
      .def_property_readonly("exponent", &Dyadic::exponent)
      .def("__str__", &Dyadic::to_string)
      .def("__repr__", [](const Dyadic& d) { return "Dyadic('" + d.to_string() + "')"; })
      .def("__float__", &Dyadic::to_double)
      .def("__hash__", [](const Dyadic& d) {
        return std::hash<std::string>()(d.to_string());
      })
      .def("__eq__", [](const Dyadic& a, const Dyadic& b) { return a == b; })
      .def("__lt__", [](const Dyadic& a, const Dyadic& b) { return a < b; })
      .def("__le__", [](const Dyadic& a, const Dyadic& b) { return a <= b; })
      .def("__add__", [](const Dyadic& a, const Dyadic& b) { return a + b; })
      .def("__sub__", [](const Dyadic& a, const Dyadic& b) { return a - b; })
      .def("__neg__", [](const Dyadic& a) { return -a; });
  py::implicitly_convertible<std::string, Dyadic>();

  py::class_<NodeAutomaton>(m, "Automaton")
      .def_static("from_json", &NodeAutomaton::from_json)
      .def_static("letter_value", &NodeAutomaton::letter_value,
                  py::arg("letters") = 2)
      .def_static("constant", &NodeAutomaton::constant, py::arg("c"),
                  py::arg("letters") = 2)
      .def("to_json", &NodeAutomaton::to_json)
      .def_property_readonly("num_states", &NodeAutomaton::num_states)
      .def_property_readonly("num_letters", &NodeAutomaton::num_letters)
      .def("value", [](const NodeAutomaton& u, const limsup::Prefix& s) {
        return u.value(s);
      })
      .def("limsup", [](const NodeAutomaton& u, const std::string& branch) {
        return limsup::eval_limsup(u, branch_in(u, branch));
      });

  py::class_<limsup::ConstructedFunction,
             std::unique_ptr<limsup::ConstructedFunction>>(m, "ConstructedFunction")
      .def("__call__", [](const limsup::ConstructedFunction& u,
                          const limsup::Prefix& s) { return u(s); })
      .def("limsup", [](const limsup::ConstructedFunction& u,
                        const std::string& branch) {
        return limsup::constructed_limsup(
            u, limsup::EventuallyPeriodicBranch::parse(branch));
      });

  m.def("eval_limsup", [](const NodeAutomaton& u, const std::string& branch) {
    return limsup::eval_limsup(u, branch_in(u, branch));
  });
  m.def("construct_u", [](const NodeAutomaton& u) {
    return std::make_unique<limsup::ConstructedFunction>(
        limsup::discretize(limsup::family_from_automaton(u)));
  }, "u whose limsup along every branch equals the automaton's");
  m.def("algebra", [](const NodeAutomaton& a, const NodeAutomaton& b,
                      const std::string& op) {
    limsup::AlgebraOp o;
    if (op == "sum") {
      o = limsup::AlgebraOp::kSum;
    } else if (op == "min") {
      o = limsup::AlgebraOp::kMin;
    } else if (op == "max") {
      o = limsup::AlgebraOp::kMax;
    } else {
      throw limsup::ConfigError("unknown op " + op);
    }
    return std::make_unique<limsup::ConstructedFunction>(
        limsup::algebra_family(a, b, o));
  });

  m.def("construct", [](const std::string& config, const std::string& base_dir) {
    limsup::BuildContext ctx;
    const auto c = config_in(config, base_dir, ctx);
    py::gil_scoped_release release;
    return limsup::run_construct(c, ctx).report_json.dump();
  }, py::arg("config"), py::arg("base_dir") = ".");
  m.def("play", [](const std::string& config, const std::string& base_dir) {
    limsup::BuildContext ctx;
    const auto c = config_in(config, base_dir, ctx);
    py::gil_scoped_release release;
    return play_json(limsup::run_play(c, ctx));
  }, py::arg("config"), py::arg("base_dir") = ".");
  m.def("verify", [](const std::string& config, const std::string& base_dir) {
    limsup::BuildContext ctx;
    const auto c = config_in(config, base_dir, ctx);
    py::gil_scoped_release release;
    return play_json(limsup::run_verify(c, ctx));
  }, py::arg("config"), py::arg("base_dir") = ".");
  m.def("run_suite", [](std::uint64_t seed, std::optional<std::string> filter,
                        std::optional<std::string> tamper, std::size_t jobs) {
    limsup::SuiteOptions o;
    o.seed = seed;
    o.filter = std::move(filter);
    o.tamper = std::move(tamper);
    o.jobs = jobs;
    py::gil_scoped_release release;
    return limsup::run_suite(o).json();
  }, py::arg("seed") = limsup::SuiteOptions{}.seed, py::arg("filter") = py::none(),
     py::arg("tamper") = py::none(), py::arg("jobs") = 1);
  m.def("criterion_names", &limsup::criterion_names);
}
