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

#ifndef NOISYADJ_CONFIG_H_
#define NOISYADJ_CONFIG_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "noisyadj/error.h"
#include "noisyadj/estimators.h"
#include "noisyadj/graph.h"
#include "noisyadj/matrix.h"
#include "noisyadj/mechanisms.h"

namespace noisyadj {

// One or more problems found in a configuration; what() lists them all,
// one per line.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Environment variable holding the default seed.
inline constexpr const char* kSeedEnvVar = "NOISYADJ_SEED";
inline constexpr std::uint64_t kDefaultSeed = 20240917;

// Experiment settings. Text form is flat "key = value" lines; '#' starts a
// comment. Lists are comma separated.
struct ExperimentConfig {
  std::string dataset;
  std::vector<EstimatorKind> estimators = {EstimatorKind::kTriOR};
  std::vector<MechanismKind> mechanisms = {MechanismKind::kWarnerRR};
  std::vector<double> epsilons = {1.0};
  // Replace `epsilons` by the 12-point grid from 0.1 to 2.
  bool figure = false;
  // Explicit eps0,eps1,eps2[,eps3]; overrides the total budget.
  std::optional<BudgetSplit> split;
  Count alpha = 20;
  double beta = 0.01;
  std::size_t trials = 20;
  std::uint64_t seed = kDefaultSeed;
  int stage = 4;
  MatMulKind matmul = MatMulKind::kBlocked;
  std::size_t block = 64;
  unsigned threads = 1;
  std::string output_dir;
  bool clip_nonnegative = false;
  bool timing = false;
  bool large = false;

  // Applies one key; returns a problem description instead of throwing.
  std::optional<std::string> Set(std::string_view key, std::string_view value);

  // Budgets the run sweeps over: the figure grid, or the listed values.
  std::vector<double> EpsilonGrid() const;

  // Every problem with the settings; empty when valid.
  std::vector<std::string> Problems() const;
  // Throws ConfigError listing Problems() when non-empty.
  void Validate() const;

  // All keys in canonical order; Parse(Dump()) reproduces the config.
  std::string Dump() const;

  // Starts from defaults (seed from the environment when set), applies
  // each line and throws ConfigError listing every bad line at once.
  static ExperimentConfig Parse(std::istream& in);
  static ExperimentConfig Parse(std::string_view text);
  static ExperimentConfig Defaults();
};

// 12 evenly spaced budgets from 0.1 to 2 inclusive.
std::vector<double> FigureEpsilonGrid();

// Ground truth for a bundled fixture graph, stored as key=value text with
// keys name, edges_file, nodes, edges, triangles, quadrangles, two_stars.
struct GroundTruthFixture {
  std::string name;
  std::string edges_file;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  Count triangles = 0;
  Count quadrangles = 0;
  Count two_stars = 0;

  Count CountOf(SubgraphKind kind) const;
};

GroundTruthFixture ParseFixture(std::istream& in);
void WriteFixture(const GroundTruthFixture& fixture, std::ostream& out);

// Shortest text that parses back to the same double ("inf" for +inf).
std::string FormatDouble(double x);

// CSV output with a fixed header, LF line endings and quoting of fields
// that contain commas, quotes or newlines.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void Row(const std::vector<std::string>& fields);
  std::size_t columns() const { return columns_; }

 private:
  void Write(const std::vector<std::string>& fields);
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace noisyadj

#endif  // NOISYADJ_CONFIG_H_
