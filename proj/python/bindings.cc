// Copyright 2026 The noisyadj Authors
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

// Python bindings for the core library. Enumerations cross the boundary as
// their short string names ("rr", "TriMTR", "triangle", ...).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noisyadj/analysis.h"
#include "noisyadj/error.h"
#include "noisyadj/estimators.h"
#include "noisyadj/graph.h"
#include "noisyadj/harness.h"
#include "noisyadj/mechanisms.h"

namespace py = pybind11;

namespace noisyadj {
namespace {

std::optional<BudgetSplit> ToSplit(const std::optional<std::vector<double>>& values) {
  if (!values) return std::nullopt;
  if (values->size() != 3 && values->size() != 4) {
    throw DomainError("split needs 3 or 4 budgets");
  }
  BudgetSplit s;
  s.eps0 = (*values)[0];
  s.eps1 = (*values)[1];
  s.eps2 = (*values)[2];
  s.eps3 = values->size() == 4 ? (*values)[3] : 0.0;
  return s;
}

EstimatorConfig MakeConfig(const std::string& estimator, double epsilon,
                           const std::string& mechanism,
                           const std::optional<std::vector<double>>& split, Count alpha,
                           double beta, int stage, bool clip_nonnegative) {
  EstimatorConfig c;
  c.kind = ParseEstimatorKind(estimator);
  c.epsilon = epsilon;
  c.split = ToSplit(split);
  c.mechanism = ParseMechanismKind(mechanism);
  c.alpha = alpha;
  c.beta = beta;
  c.mask = StageMask::Stage(stage);
  c.clip_nonnegative = clip_nonnegative;
  return c;
}

py::list Charges(const BudgetLedger& ledger) {
  py::list out;
  for (const BudgetCharge& c : ledger.charges()) out.append(py::make_tuple(c.stage, c.epsilon));
  return out;
}

py::dict StatsDict(const TrialStatistics& s) {
  py::dict d;
  d["count"] = s.count;
  d["mean"] = s.mean;
  d["mse"] = s.mse;
  d["std_error"] = s.std_error;
  d["mean_re"] = s.mean_re;
  d["median_re"] = s.median_re;
  return d;
}

}  // namespace

PYBIND11_MODULE(_noisyadj, m) {
  m.doc() = "Subgraph counting under edge local differential privacy";

  static py::exception<Error> base_error(m, "Error", PyExc_ValueError);
  py::register_exception<InvalidBudgetError>(m, "InvalidBudgetError", base_error.ptr());
  py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
  py::register_exception<SizeLimitError>(m, "SizeLimitError", base_error.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) {
             return Graph(n, edges);
           }),
           py::arg("num_nodes"), py::arg("edges"))
      .def_static(
          "from_edge_list", [](const std::string& text) { return ParseEdgeList(text).graph; },
          py::arg("text"))
      .def_static(
          "load", [](const std::string& path) { return LoadEdgeList(path).graph; },
          py::arg("path"))
      .def_static("erdos_renyi", &ErdosRenyi, py::arg("n"), py::arg("p"), py::arg("seed"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("edges", &Graph::edges)
      .def_property_readonly("degrees", &Graph::degrees)
      .def("has_edge", &Graph::has_edge, py::arg("i"), py::arg("j"))
      .def("to_edge_list", &SerializeEdgeList)
      .def("__repr__", [](const Graph& g) {
        return "<Graph nodes=" + std::to_string(g.num_nodes()) +
               " edges=" + std::to_string(g.num_edges()) + ">";
      });

  m.def(
      "exact_count",
      [](const Graph& g, const std::string& kind) {
        return ExactCount(g, ParseSubgraphKind(kind));
      },
      py::arg("graph"), py::arg("kind") = "triangle");

  m.def(
      "entry_variance",
      [](const std::string& mechanism, double epsilon) {
        return GetEntryVariance(Mechanism(ParseMechanismKind(mechanism), epsilon)).sigma2;
      },
      py::arg("mechanism"), py::arg("epsilon"));

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("value", &Estimate::value)
      .def_readonly("download_bytes", &Estimate::download_bytes)
      .def_property_readonly("epsilon_spent", [](const Estimate& e) { return e.ledger.total(); })
      .def_property_readonly("charges", [](const Estimate& e) { return Charges(e.ledger); })
      .def("__repr__", [](const Estimate& e) {
        return "<Estimate value=" + std::to_string(e.value) + ">";
      });

  m.def(
      "estimate",
      [](const Graph& g, const std::string& estimator, double epsilon,
         const std::string& mechanism, std::optional<std::vector<double>> split, Count alpha,
         double beta, int stage, std::uint64_t seed, bool clip_nonnegative) {
        const EstimatorConfig c =
            MakeConfig(estimator, epsilon, mechanism, split, alpha, beta, stage, clip_nonnegative);
        py::gil_scoped_release release;
        return RunEstimator(g, c, seed);
      },
      py::arg("graph"), py::arg("estimator"), py::arg("epsilon"), py::arg("mechanism") = "rr",
      py::arg("split") = py::none(), py::arg("alpha") = 20, py::arg("beta") = 0.01,
      py::arg("stage") = 4, py::arg("seed") = 0, py::arg("clip_nonnegative") = false);

  m.def(
      "run_trials",
      [](const Graph& g, const std::string& estimator, double epsilon, std::size_t trials,
         const std::string& mechanism, std::optional<std::vector<double>> split, Count alpha,
         double beta, int stage, std::uint64_t seed, unsigned threads) {
        const EstimatorConfig c =
            MakeConfig(estimator, epsilon, mechanism, split, alpha, beta, stage, false);
        TrialReport r;
        {
          py::gil_scoped_release release;
          r = RunTrials(g, c, trials, seed, threads);
        }
        py::dict d;
        d["truth"] = r.truth;
        d["values"] = r.values;
        d["stats"] = StatsDict(r.stats);
        d["theoretical_mse"] =
            r.theoretical ? py::object(py::float_(r.theoretical->value)) : py::none();
        d["download_bytes"] = r.cost_dl;
        d["epsilon_spent"] = r.ledger.total();
        d["seed"] = r.seed;
        return d;
      },
      py::arg("graph"), py::arg("estimator"), py::arg("epsilon"), py::arg("trials"),
      py::arg("mechanism") = "rr", py::arg("split") = py::none(), py::arg("alpha") = 20,
      py::arg("beta") = 0.01, py::arg("stage") = 4, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "theoretical_mse",
      [](const std::string& estimator, const Graph& g, double sigma2,
         std::optional<double> eps0, bool corrected) {
        const TheoreticalMse t =
            ComputeTheoreticalMse(ParseEstimatorKind(estimator), g, sigma2, eps0,
                                  corrected ? MseForm::kCorrected : MseForm::kPublished);
        py::dict terms;
        for (const MseTerm& term : t.terms) terms[py::str(term.name)] = term.value;
        return py::make_tuple(t.value, terms);
      },
      py::arg("estimator"), py::arg("graph"), py::arg("sigma2"), py::arg("eps0") = py::none(),
      py::arg("corrected") = false);

  m.def(
      "tradeoff_curve",
      [](const std::string& mechanism, double epsilon, std::size_t resolution) {
        std::vector<std::pair<double, double>> out;
        for (const TradeoffPoint& p :
             TradeoffCurve(Mechanism(ParseMechanismKind(mechanism), epsilon), resolution)) {
          out.emplace_back(p.type1, p.type2);
        }
        return out;
      },
      py::arg("mechanism"), py::arg("epsilon"), py::arg("resolution") = 100);

  m.def(
      "confusion_matrix",
      [](const std::string& strategy, double epsilon, double density) {
        const AttackPoint a = ConfusionMatrix(ParseAttackStrategy(strategy), epsilon, density);
        py::dict d;
        d["true_positive"] = a.true_positive;
        d["false_negative"] = a.false_negative;
        d["false_positive"] = a.false_positive;
        d["true_negative"] = a.true_negative;
        d["type1"] = a.type1;
        d["type2"] = a.type2;
        d["precision"] = a.precision;
        d["recall"] = a.recall;
        return d;
      },
      py::arg("strategy"), py::arg("epsilon"), py::arg("density"));
}

}  // namespace noisyadj
