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

// Command-line front end: exact counts, private estimates, attack curves
// and download-cost tables, all as plot-ready CSV.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noisyadj/analysis.h"
#include "noisyadj/config.h"
#include "noisyadj/error.h"
#include "noisyadj/estimators.h"
#include "noisyadj/graph.h"
#include "noisyadj/harness.h"
#include "noisyadj/mechanisms.h"

namespace fs = std::filesystem;

namespace noisyadj {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr std::size_t kLargeGraphNodes = 8000;

// Raised for bad input the user can fix; maps to the usage exit code.
class UsageError : public Error {
 public:
  using Error::Error;
};

const std::vector<std::string> kEstimateHeader = {
    "estimator", "mechanism",    "stage",          "epsilon",         "trials",
    "seed",      "truth",        "mean",           "median_re",       "mean_re",
    "empirical_mse", "theoretical_mse", "cost_dl", "ledger_total", "seconds"};

std::string Opt(const std::optional<double>& v) { return v ? FormatDouble(*v) : ""; }

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

ParsedEdgeList LoadDataset(const std::string& path) {
  if (path.empty()) throw UsageError("no dataset given (use --dataset or a config file)");
  if (!fs::exists(path)) throw UsageError("dataset not found: " + path);
  return LoadEdgeList(path);
}

void CheckSize(const Graph& g, bool large, bool dense) {
  if (dense && g.num_nodes() > kLargeGraphNodes && !large) {
    throw UsageError("graph has " + std::to_string(g.num_nodes()) +
                     " nodes; dense n x n matrices need --large above " +
                     std::to_string(kLargeGraphNodes));
  }
}

// Owns the output stream for one CSV: a file under the output directory or
// standard output.
class CsvSink {
 public:
  CsvSink(const std::string& dir, const std::string& name) {
    if (dir.empty()) return;
    fs::create_directories(dir);
    file_ = std::make_unique<std::ofstream>(fs::path(dir) / name, std::ios::binary);
    if (!*file_) throw Error("cannot write " + (fs::path(dir) / name).string());
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// Options shared by estimate, stage-sweep and joint. Values stay strings
// until they are applied to the config through ExperimentConfig::Set, so
// files and flags go through the same validation.
struct RunOptions {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  bool dump_config = false;
  std::string trace_path;

  void AddValue(CLI::App* app, const std::string& flag, const std::string& key,
                const std::string& help) {
    app->add_option(flag, values[key], help);
    keys.emplace_back(flag, key);
  }
  void AddFlag(CLI::App* app, const std::string& flag, const std::string& key,
               const std::string& help) {
    app->add_flag(flag, flags[key], help);
    flag_keys.emplace_back(flag, key);
  }

  ExperimentConfig Resolve(CLI::App* app) const {
    ExperimentConfig config;
    if (!config_path.empty()) {
      if (!fs::exists(config_path)) throw UsageError("config file not found: " + config_path);
      std::ifstream in(config_path);
      config = ExperimentConfig::Parse(in);
    } else {
      config = ExperimentConfig::Defaults();
    }
    std::vector<std::string> problems;
    for (const auto& [flag, key] : keys) {
      if (app->count(flag) == 0) continue;
      if (auto p = config.Set(key, values.at(key))) problems.push_back(*p);
    }
    for (const auto& [flag, key] : flag_keys) {
      if (app->count(flag) == 0) continue;
      if (auto p = config.Set(key, flags.at(key) ? "true" : "false")) problems.push_back(*p);
    }
    for (std::string& p : config.Problems()) problems.push_back(std::move(p));
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return config;
  }

  std::vector<std::pair<std::string, std::string>> keys;
  std::vector<std::pair<std::string, std::string>> flag_keys;
};

void AddRunOptions(CLI::App* app, RunOptions& o) {
  app->add_option("--config", o.config_path, "key = value config file; flags override it");
  o.AddValue(app, "--dataset", "dataset", "SNAP edge list");
  o.AddValue(app, "--estimators", "estimators", "TriOR,TriTR,TriMTR,QuaTR,2STAR");
  o.AddValue(app, "--mechanism", "mechanism", "rr, laplace or both");
  o.AddValue(app, "--epsilon", "epsilon", "comma-separated total budgets");
  o.AddValue(app, "--split", "split", "explicit eps0,eps1,eps2[,eps3]");
  o.AddValue(app, "--alpha", "alpha", "projection offset (default 20)");
  o.AddValue(app, "--beta", "beta", "clamp failure probability (default 0.01)");
  o.AddValue(app, "--trials", "trials", "trials per point (default 20)");
  o.AddValue(app, "--seed", "seed", "batch seed (default from NOISYADJ_SEED)");
  o.AddValue(app, "--stage", "stage", "ablation stage 1-4 (default 4)");
  o.AddValue(app, "--matmul", "matmul", "naive or blocked");
  o.AddValue(app, "--block", "block", "block size of the blocked multiply");
  o.AddValue(app, "--threads", "threads", "worker threads (0 = all cores)");
  o.AddValue(app, "--output", "output", "directory for CSV files (default stdout)");
  o.AddFlag(app, "--figure", "figure", "sweep the 12-point epsilon grid from 0.1 to 2");
  o.AddFlag(app, "--clip-nonneg", "clip_nonneg", "report max(estimate, 0)");
  o.AddFlag(app, "--timing", "timing", "fill the seconds column");
  o.AddFlag(app, "--large", "large", "allow dense matrices above 8000 nodes");
  app->add_flag("--dump-config", o.dump_config, "print the effective config and exit");
  app->add_option("--trace", o.trace_path, "write JSON-lines message traces of trial 0");
}

MatMulStrategy StrategyOf(const ExperimentConfig& c) {
  if (c.matmul == MatMulKind::kNaive) return MatMulStrategy::Naive();
  return MatMulStrategy::Blocked(c.block, c.threads);
}

EstimatorConfig MakeEstimatorConfig(const ExperimentConfig& c, EstimatorKind kind,
                                    MechanismKind mech, double epsilon, int stage) {
  EstimatorConfig e;
  e.kind = kind;
  e.epsilon = epsilon;
  e.split = c.split;
  e.mechanism = mech;
  e.alpha = c.alpha;
  e.beta = c.beta;
  e.strategy = StrategyOf(c);
  e.mask = StageMask::Stage(stage);
  e.clip_nonnegative = c.clip_nonnegative;
  return e;
}

bool IsTwoRound(EstimatorKind k) {
  return k == EstimatorKind::kTriTR || k == EstimatorKind::kTriMTR || k == EstimatorKind::kQuaTR;
}

void WriteTrace(std::ostream* trace, const std::string& label, const RunTrace& t) {
  if (trace == nullptr) return;
  *trace << "{\"run\":\"" << label << "\"}\n";
  t.WriteJsonLines(*trace);
}

int RunEstimates(CLI::App* app, const RunOptions& o, bool sweep_stages) {
  const ExperimentConfig c = o.Resolve(app);
  if (o.dump_config) {
    std::cout << c.Dump();
    return kExitOk;
  }
  const ParsedEdgeList data = LoadDataset(c.dataset);
  const Graph& g = data.graph;
  bool dense = false;
  for (EstimatorKind k : c.estimators) dense |= k != EstimatorKind::kTwoStar;
  CheckSize(g, c.large, dense);

  std::unique_ptr<std::ofstream> trace_file;
  if (!o.trace_path.empty()) {
    trace_file = std::make_unique<std::ofstream>(o.trace_path, std::ios::binary);
    if (!*trace_file) throw Error("cannot write " + o.trace_path);
  }
  std::unique_ptr<CsvSink> shared_sink;
  std::unique_ptr<CsvWriter> shared_writer;
  if (c.output_dir.empty()) {
    shared_sink = std::make_unique<CsvSink>("", "");
    shared_writer = std::make_unique<CsvWriter>(shared_sink->stream(), kEstimateHeader);
  }
  for (EstimatorKind kind : c.estimators) {
    if (sweep_stages && !IsTwoRound(kind)) {
      std::cerr << "stage-sweep: skipping " << ToString(kind) << " (single round)\n";
      continue;
    }
    std::unique_ptr<CsvSink> sink;
    std::unique_ptr<CsvWriter> own_writer;
    CsvWriter* writer = shared_writer.get();
    if (!writer) {
      std::string name = Lower(ToString(kind));
      if (sweep_stages) name += "_stages";
      sink = std::make_unique<CsvSink>(c.output_dir, name + ".csv");
      own_writer = std::make_unique<CsvWriter>(sink->stream(), kEstimateHeader);
      writer = own_writer.get();
    }
    const std::vector<int> stages =
        sweep_stages ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{c.stage};
    for (MechanismKind mech : c.mechanisms) {
      for (int stage : stages) {
        for (double eps : c.EpsilonGrid()) {
          const EstimatorConfig ec = MakeEstimatorConfig(c, kind, mech, eps, stage);
          const auto start = std::chrono::steady_clock::now();
          const TrialReport r = RunTrials(g, ec, c.trials, c.seed, c.threads);
          const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
          const bool staged = IsTwoRound(kind);
          writer->Row({std::string(ToString(kind)), std::string(ToString(mech)),
                       staged ? std::to_string(stage) : "", FormatDouble(eps),
                       std::to_string(c.trials), std::to_string(c.seed),
                       std::to_string(r.truth), FormatDouble(r.stats.mean),
                       Opt(r.stats.median_re), Opt(r.stats.mean_re), FormatDouble(r.stats.mse),
                       r.theoretical ? FormatDouble(r.theoretical->value) : "",
                       std::to_string(r.cost_dl), FormatDouble(r.ledger.total()),
                       c.timing ? FormatDouble(elapsed.count() / static_cast<double>(c.trials))
                                : ""});
          WriteTrace(trace_file.get(),
                     std::string(ToString(kind)) + "/" + std::string(ToString(mech)) + "/" +
                         std::to_string(stage) + "/" + FormatDouble(eps),
                     r.trace);
        }
      }
    }
  }
  return kExitOk;
}

int RunJoint(CLI::App* app, const RunOptions& o, const std::string& route_name) {
  const ExperimentConfig c = o.Resolve(app);
  if (o.dump_config) {
    std::cout << c.Dump();
    return kExitOk;
  }
  const std::string route_lower = Lower(route_name);
  TriangleRoute route;
  if (route_lower == "trimtr") {
    route = TriangleRoute::kTriMTR;
  } else if (route_lower == "tritr") {
    route = TriangleRoute::kTriTR;
  } else {
    throw UsageError("--route must be TriMTR or TriTR");
  }
  const ParsedEdgeList data = LoadDataset(c.dataset);
  CheckSize(data.graph, c.large, true);
  CsvSink sink(c.output_dir, "joint.csv");
  CsvWriter writer(sink.stream(),
                   {"subgraph", "route", "mechanism", "epsilon", "trials", "seed", "truth",
                    "mean", "median_re", "mean_re", "empirical_mse", "cost_dl",
                    "ledger_total"});
  for (MechanismKind mech : c.mechanisms) {
    std::vector<BudgetSplit> splits;
    if (c.split) {
      splits.push_back(*c.split);
    } else {
      for (double eps : c.EpsilonGrid()) {
        BudgetSplit s = BudgetSplit::FromTotal(eps);
        s.eps3 = 0.1 * eps;
        splits.push_back(s);
      }
    }
    for (const BudgetSplit& s : splits) {
      TwoRoundParams p;
      p.split = s;
      p.alpha = c.alpha;
      p.beta = c.beta;
      p.mechanism = mech;
      p.strategy = StrategyOf(c);
      const JointReport r = RunJointTrials(data.graph, p, route, c.trials, c.seed);
      const std::pair<const char*, std::pair<Count, const TrialStatistics*>> rows[] = {
          {"triangle", {r.triangles, &r.triangle}},
          {"quadrangle", {r.quadrangles, &r.quadrangle}},
          {"two-star", {r.two_stars, &r.two_star}}};
      for (const auto& [name, entry] : rows) {
        const TrialStatistics& st = *entry.second;
        writer.Row({name, route == TriangleRoute::kTriMTR ? "TriMTR" : "TriTR",
                    std::string(ToString(mech)), FormatDouble(s.Total()),
                    std::to_string(c.trials), std::to_string(c.seed),
                    std::to_string(entry.first), FormatDouble(st.mean), Opt(st.median_re),
                    Opt(st.mean_re), FormatDouble(st.mse), std::to_string(r.cost_dl),
                    FormatDouble(r.ledger.total())});
      }
    }
  }
  return kExitOk;
}

std::vector<double> ParseNumberList(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": invalid number '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(what + ": list is empty");
  return out;
}

struct AttackOptions {
  std::string epsilons;
  std::string densities = "0.001,0.01,0.1";
  std::size_t resolution = 100;
  std::uint64_t draws = 0;
  std::optional<std::uint64_t> seed;
  std::string output = ".";
};

int RunAttack(const AttackOptions& o) {
  std::vector<double> eps_grid = o.epsilons.empty() ? FigureEpsilonGrid()
                                                    : ParseNumberList(o.epsilons, "--epsilon");
  const std::vector<double> p_grid = ParseNumberList(o.densities, "--density");
  for (double e : eps_grid) {
    if (!(e > 0) || !std::isfinite(e)) throw UsageError("--epsilon values must be positive");
  }
  for (double p : p_grid) {
    if (!(p > 0 && p < 1)) throw UsageError("--density values must lie in (0, 1)");
  }
  if (o.resolution == 0) throw UsageError("--resolution must be positive");
  const std::uint64_t seed = o.seed ? *o.seed : ExperimentConfig::Defaults().seed;
  const std::string seed_text = std::to_string(seed);
  const bool mc = o.draws > 0;
  auto mc_field = [mc](double v) { return mc ? FormatDouble(v) : std::string(); };

  {
    CsvSink sink(o.output, "tradeoff.csv");
    CsvWriter w(sink.stream(), {"mechanism", "epsilon", "type1", "type2", "mc_type1", "mc_type2",
                                "seed"});
    std::uint64_t stream = 0;
    for (MechanismKind kind : {MechanismKind::kWarnerRR, MechanismKind::kLaplace}) {
      for (double eps : eps_grid) {
        const Mechanism mech(kind, eps);
        for (const TradeoffPoint& pt : TradeoffCurve(mech, o.resolution)) {
          TradeoffPoint sim{};
          if (mc) sim = SimulateTradeoffPoint(mech, pt.type1, o.draws, DeriveSeed(seed, Stage::kTest, stream++));
          w.Row({std::string(ToString(kind)), FormatDouble(eps), FormatDouble(pt.type1),
                 FormatDouble(pt.type2), mc_field(sim.type1), mc_field(sim.type2), seed_text});
        }
      }
    }
  }
  {
    CsvSink sink(o.output, "confusion.csv");
    CsvWriter w(sink.stream(),
                {"strategy", "epsilon", "density", "true_positive", "false_negative",
                 "false_positive", "true_negative", "type1", "type2", "precision", "recall",
                 "mc_precision", "mc_recall", "seed"});
    std::uint64_t stream = 0;
    for (const AttackStrategy& s :
         {AttackStrategy::RR(), AttackStrategy::LapKappa1(), AttackStrategy::LapKappa2()}) {
      for (double eps : eps_grid) {
        for (double p : p_grid) {
          const AttackPoint a = ConfusionMatrix(s, eps, p);
          AttackPoint sim{};
          if (mc) sim = SimulateAttack(s, eps, p, o.draws, DeriveSeed(seed, Stage::kTrial, stream++));
          w.Row({ToString(s), FormatDouble(eps), FormatDouble(p), FormatDouble(a.true_positive),
                 FormatDouble(a.false_negative), FormatDouble(a.false_positive),
                 FormatDouble(a.true_negative), FormatDouble(a.type1), FormatDouble(a.type2),
                 FormatDouble(a.precision), FormatDouble(a.recall), mc_field(sim.precision),
                 mc_field(sim.recall), seed_text});
        }
      }
    }
  }
  {
    CsvSink sink(o.output, "variance.csv");
    CsvWriter w(sink.stream(), {"epsilon", "rr", "laplace", "rr_doubled", "seed"});
    for (double eps : eps_grid) {
      const double rr = GetEntryVariance(Mechanism(MechanismKind::kWarnerRR, eps)).sigma2;
      const double lap = GetEntryVariance(Mechanism(MechanismKind::kLaplace, eps)).sigma2;
      w.Row({FormatDouble(eps), FormatDouble(rr), FormatDouble(lap), FormatDouble(2 * rr),
             seed_text});
    }
  }
  return kExitOk;
}

struct CostOptions {
  std::string dataset;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::string estimators = "TriOR,TriTR,TriMTR,QuaTR,2STAR";
  double epsilon = 1.0;
  std::optional<std::uint64_t> seed;
  bool large = false;
};

int RunCost(const CostOptions& o) {
  std::optional<Graph> g;
  if (!o.dataset.empty()) {
    g.emplace(LoadDataset(o.dataset).graph);
  } else if (o.nodes > 0) {
    g.emplace(RandomGraphWithEdges(o.nodes, o.edges, 1));
  } else {
    throw UsageError("cost needs --dataset or --nodes");
  }
  std::vector<EstimatorKind> kinds;
  {
    std::stringstream in(o.estimators);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        kinds.push_back(ParseEstimatorKind(item));
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
  }
  bool dense = false;
  for (EstimatorKind k : kinds) dense |= k != EstimatorKind::kTwoStar;
  CheckSize(*g, o.large, dense);
  const std::uint64_t seed = o.seed ? *o.seed : ExperimentConfig::Defaults().seed;
  CsvWriter w(std::cout, {"estimator", "nodes", "bytes", "kb", "kib", "mb", "mib",
                          "ledger_total", "seed"});
  for (EstimatorKind kind : kinds) {
    EstimatorConfig ec;
    ec.kind = kind;
    ec.epsilon = o.epsilon;
    const Estimate e = RunEstimator(*g, ec, seed);
    const double b = static_cast<double>(e.download_bytes);
    w.Row({std::string(ToString(kind)), std::to_string(g->num_nodes()),
           std::to_string(e.download_bytes), FormatDouble(b / 1e3), FormatDouble(b / 1024.0),
           FormatDouble(b / 1e6), FormatDouble(b / (1024.0 * 1024.0)),
           FormatDouble(e.ledger.total()), std::to_string(seed)});
  }
  return kExitOk;
}

int RunCountExact(const std::string& path, const std::string& kind_name) {
  const ParsedEdgeList data = LoadDataset(path);
  if (Lower(kind_name) == "all") {
    for (SubgraphKind k : {SubgraphKind::kTriangle, SubgraphKind::kQuadrangle,
                           SubgraphKind::kTwoStar}) {
      std::cout << ToString(k) << ' ' << ExactCount(data.graph, k) << '\n';
    }
    return kExitOk;
  }
  SubgraphKind kind;
  try {
    kind = ParseSubgraphKind(kind_name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::cout << ExactCount(data.graph, kind) << '\n';
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Subgraph counting under edge local differential privacy"};
  app.require_subcommand(1);

  std::string count_path;
  std::string count_kind = "triangle";
  auto* count = app.add_subcommand("count-exact", "exact subgraph count of an edge list");
  count->add_option("path", count_path, "SNAP edge list")->required();
  count->add_option("--kind", count_kind, "triangle, quadrangle, two-star or all");

  RunOptions estimate_opts;
  auto* estimate = app.add_subcommand("estimate", "private estimates over trial batches");
  AddRunOptions(estimate, estimate_opts);

  RunOptions sweep_opts;
  auto* sweep = app.add_subcommand("stage-sweep", "two-round estimators at stages 1-4");
  AddRunOptions(sweep, sweep_opts);

  RunOptions joint_opts;
  std::string route = "TriMTR";
  auto* joint = app.add_subcommand("joint", "triangles, quadrangles and 2-stars in one run");
  AddRunOptions(joint, joint_opts);
  joint->add_option("--route", route, "triangle route: TriMTR or TriTR");

  AttackOptions attack_opts;
  auto* attack = app.add_subcommand("attack", "trade-off curves and confusion matrices");
  attack->add_option("--epsilon", attack_opts.epsilons, "comma-separated budgets");
  attack->add_option("--density", attack_opts.densities, "comma-separated edge densities");
  attack->add_option("--resolution", attack_opts.resolution, "curve segments per budget");
  attack->add_option("--mc-draws", attack_opts.draws, "Monte-Carlo draws per point (0 = off)");
  attack->add_option("--seed", attack_opts.seed, "seed for Monte-Carlo columns");
  attack->add_option("--output", attack_opts.output, "output directory");

  CostOptions cost_opts;
  auto* cost = app.add_subcommand("cost", "measured download cost per estimator");
  cost->add_option("--dataset", cost_opts.dataset, "SNAP edge list");
  cost->add_option("--nodes", cost_opts.nodes, "synthetic graph size");
  cost->add_option("--edges", cost_opts.edges, "synthetic edge count");
  cost->add_option("--estimators", cost_opts.estimators, "comma-separated estimators");
  cost->add_option("--epsilon", cost_opts.epsilon, "total budget");
  cost->add_option("--seed", cost_opts.seed, "run seed");
  cost->add_flag("--large", cost_opts.large, "allow dense matrices above 8000 nodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*count) return RunCountExact(count_path, count_kind);
    if (*estimate) return RunEstimates(estimate, estimate_opts, false);
    if (*sweep) return RunEstimates(sweep, sweep_opts, true);
    if (*joint) return RunJoint(joint, joint_opts, route);
    if (*attack) return RunAttack(attack_opts);
    if (*cost) return RunCost(cost_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration:\n" << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace noisyadj

int main(int argc, char** argv) { return noisyadj::Main(argc, argv); }
