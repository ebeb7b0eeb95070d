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

#include "noisyadj/config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>

namespace noisyadj {

namespace {

std::string JoinProblems(const std::vector<std::string>& problems) {
  std::string out;
  for (const std::string& p : problems) {
    if (!out.empty()) out += '\n';
    out += p;
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = s.find(',');
    parts.push_back(Trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

std::optional<double> ToDouble(std::string_view s) {
  s = Trim(s);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> ToInt(std::string_view s) {
  s = Trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<bool> ToBool(std::string_view s) {
  s = Trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  return std::nullopt;
}

std::string Bad(std::string_view key, std::string_view value, std::string_view expected) {
  return std::string(key) + ": invalid value '" + std::string(value) + "' (expected " +
         std::string(expected) + ")";
}

std::uint64_t SeedFromEnvironment() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr) return kDefaultSeed;
  const auto seed = ToInt<std::uint64_t>(env);
  return seed ? *seed : kDefaultSeed;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(JoinProblems(problems)), problems_(std::move(problems)) {}

std::vector<double> FigureEpsilonGrid() {
  std::vector<double> grid;
  for (int k = 0; k < 12; ++k) grid.push_back(0.1 + (2.0 - 0.1) * k / 11.0);
  grid.back() = 2.0;
  return grid;
}

std::optional<std::string> ExperimentConfig::Set(std::string_view key, std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  try {
    if (key == "dataset") {
      dataset = std::string(value);
    } else if (key == "estimators" || key == "estimator") {
      std::vector<EstimatorKind> kinds;
      for (std::string_view part : SplitList(value)) kinds.push_back(ParseEstimatorKind(part));
      estimators = std::move(kinds);
    } else if (key == "mechanism" || key == "mechanisms") {
      if (value == "both") {
        mechanisms = {MechanismKind::kWarnerRR, MechanismKind::kLaplace};
      } else {
        std::vector<MechanismKind> kinds;
        for (std::string_view part : SplitList(value)) kinds.push_back(ParseMechanismKind(part));
        mechanisms = std::move(kinds);
      }
    } else if (key == "epsilon" || key == "epsilons") {
      std::vector<double> values;
      for (std::string_view part : SplitList(value)) {
        const auto v = ToDouble(part);
        if (!v) return Bad(key, value, "comma-separated numbers");
        values.push_back(*v);
      }
      epsilons = std::move(values);
    } else if (key == "figure") {
      const auto v = ToBool(value);
      if (!v) return Bad(key, value, "true or false");
      figure = *v;
    } else if (key == "split") {
      if (value.empty()) {
        split.reset();
        return std::nullopt;
      }
      const auto parts = SplitList(value);
      if (parts.size() != 3 && parts.size() != 4) return Bad(key, value, "eps0,eps1,eps2[,eps3]");
      double eps[4] = {0, 0, 0, 0};
      for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto v = ToDouble(parts[k]);
        if (!v) return Bad(key, value, "eps0,eps1,eps2[,eps3]");
        eps[k] = *v;
      }
      split = BudgetSplit{eps[0], eps[1], eps[2], eps[3]};
    } else if (key == "alpha") {
      const auto v = ToInt<Count>(value);
      if (!v) return Bad(key, value, "an integer");
      alpha = *v;
    } else if (key == "beta") {
      const auto v = ToDouble(value);
      if (!v) return Bad(key, value, "a number");
      beta = *v;
    } else if (key == "trials") {
      const auto v = ToInt<std::size_t>(value);
      if (!v) return Bad(key, value, "a non-negative integer");
      trials = *v;
    } else if (key == "seed") {
      const auto v = ToInt<std::uint64_t>(value);
      if (!v) return Bad(key, value, "an unsigned 64-bit integer");
      seed = *v;
    } else if (key == "stage") {
      const auto v = ToInt<int>(value);
      if (!v) return Bad(key, value, "1, 2, 3 or 4");
      stage = *v;
    } else if (key == "matmul") {
      matmul = ParseMatMulKind(value);
      if (matmul == MatMulKind::kCustom) return Bad(key, value, "naive or blocked");
    } else if (key == "block") {
      const auto v = ToInt<std::size_t>(value);
      if (!v) return Bad(key, value, "a positive integer");
      block = *v;
    } else if (key == "threads") {
      const auto v = ToInt<unsigned>(value);
      if (!v) return Bad(key, value, "a non-negative integer");
      threads = *v;
    } else if (key == "output" || key == "output_dir") {
      output_dir = std::string(value);
    } else if (key == "clip_nonneg") {
      const auto v = ToBool(value);
      if (!v) return Bad(key, value, "true or false");
      clip_nonnegative = *v;
    } else if (key == "timing") {
      const auto v = ToBool(value);
      if (!v) return Bad(key, value, "true or false");
      timing = *v;
    } else if (key == "large") {
      const auto v = ToBool(value);
      if (!v) return Bad(key, value, "true or false");
      large = *v;
    } else {
      return "unknown key '" + std::string(key) + "'";
    }
  } catch (const Error& e) {
    return std::string(key) + ": " + e.what();
  }
  return std::nullopt;
}

std::vector<double> ExperimentConfig::EpsilonGrid() const {
  if (split) return {split->Total()};
  return figure ? FigureEpsilonGrid() : epsilons;
}

std::vector<std::string> ExperimentConfig::Problems() const {
  std::vector<std::string> problems;
  if (estimators.empty()) problems.push_back("estimators: at least one is required");
  if (mechanisms.empty()) problems.push_back("mechanism: at least one is required");
  if (!figure && !split && epsilons.empty()) problems.push_back("epsilon: list is empty");
  for (double e : epsilons) {
    if (!(e > 0)) problems.push_back("epsilon: " + FormatDouble(e) + " is not positive");
  }
  if (split) {
    const double parts[3] = {split->eps0, split->eps1, split->eps2};
    for (double e : parts) {
      if (!(e > 0)) problems.push_back("split: " + FormatDouble(e) + " is not positive");
    }
    if (!(split->eps3 >= 0)) problems.push_back("split: eps3 must be non-negative");
  }
  if (alpha < 0) problems.push_back("alpha: must be non-negative");
  if (!(beta > 0 && beta < 1)) problems.push_back("beta: must lie in (0, 1)");
  if (trials == 0) problems.push_back("trials: must be at least 1");
  if (stage < 1 || stage > 4) problems.push_back("stage: must be 1, 2, 3 or 4");
  if (block == 0) problems.push_back("block: must be positive");
  return problems;
}

void ExperimentConfig::Validate() const {
  auto problems = Problems();
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::string ExperimentConfig::Dump() const {
  std::ostringstream out;
  auto list = [](const auto& items, auto fmt) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ',';
      s += fmt(item);
    }
    return s;
  };
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "dataset = " << dataset << '\n';
  out << "estimators = "
      << list(estimators, [](EstimatorKind k) { return std::string(ToString(k)); }) << '\n';
  out << "mechanism = "
      << list(mechanisms, [](MechanismKind k) { return std::string(ToString(k)); }) << '\n';
  out << "epsilon = " << list(epsilons, FormatDouble) << '\n';
  out << "figure = " << b(figure) << '\n';
  out << "split = ";
  if (split) {
    out << FormatDouble(split->eps0) << ',' << FormatDouble(split->eps1) << ','
        << FormatDouble(split->eps2) << ',' << FormatDouble(split->eps3);
  }
  out << '\n';
  out << "alpha = " << alpha << '\n';
  out << "beta = " << FormatDouble(beta) << '\n';
  out << "trials = " << trials << '\n';
  out << "seed = " << seed << '\n';
  out << "stage = " << stage << '\n';
  out << "matmul = " << ToString(matmul) << '\n';
  out << "block = " << block << '\n';
  out << "threads = " << threads << '\n';
  out << "output = " << output_dir << '\n';
  out << "clip_nonneg = " << b(clip_nonnegative) << '\n';
  out << "timing = " << b(timing) << '\n';
  out << "large = " << b(large) << '\n';
  return out.str();
}

ExperimentConfig ExperimentConfig::Defaults() {
  ExperimentConfig config;
  config.seed = SeedFromEnvironment();
  return config;
}

ExperimentConfig ExperimentConfig::Parse(std::istream& in) {
  ExperimentConfig config = Defaults();
  std::vector<std::string> problems;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text(line);
    text = Trim(text.substr(0, text.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(number) + ": expected key = value");
      continue;
    }
    if (auto problem = config.Set(text.substr(0, eq), text.substr(eq + 1))) {
      problems.push_back("line " + std::to_string(number) + ": " + *problem);
    }
  }
  for (std::string& p : config.Problems()) problems.push_back(std::move(p));
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

ExperimentConfig ExperimentConfig::Parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return Parse(in);
}

Count GroundTruthFixture::CountOf(SubgraphKind kind) const {
  switch (kind) {
    case SubgraphKind::kTriangle:
      return triangles;
    case SubgraphKind::kQuadrangle:
      return quadrangles;
    case SubgraphKind::kTwoStar:
      return two_stars;
  }
  return 0;
}

GroundTruthFixture ParseFixture(std::istream& in) {
  GroundTruthFixture f;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text(line);
    text = Trim(text.substr(0, text.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", number);
    const std::string_view key = Trim(text.substr(0, eq));
    const std::string_view value = Trim(text.substr(eq + 1));
    auto count = [&]() {
      const auto v = ToInt<Count>(value);
      if (!v || *v < 0) throw ParseError("bad count for " + std::string(key), number);
      return *v;
    };
    if (key == "name") {
      f.name = std::string(value);
    } else if (key == "edges_file") {
      f.edges_file = std::string(value);
    } else if (key == "nodes") {
      f.nodes = static_cast<std::size_t>(count());
    } else if (key == "edges") {
      f.edges = static_cast<std::size_t>(count());
    } else if (key == "triangles") {
      f.triangles = count();
    } else if (key == "quadrangles") {
      f.quadrangles = count();
    } else if (key == "two_stars") {
      f.two_stars = count();
    } else {
      throw ParseError("unknown key " + std::string(key), number);
    }
  }
  return f;
}

void WriteFixture(const GroundTruthFixture& f, std::ostream& out) {
  out << "name = " << f.name << '\n'
      << "edges_file = " << f.edges_file << '\n'
      << "nodes = " << f.nodes << '\n'
      << "edges = " << f.edges << '\n'
      << "triangles = " << f.triangles << '\n'
      << "quadrangles = " << f.quadrangles << '\n'
      << "two_stars = " << f.two_stars << '\n';
}

std::string FormatDouble(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  Write(header);
}

void CsvWriter::Row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw DomainError("CSV row has the wrong number of fields");
  Write(fields);
}

void CsvWriter::Write(const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out_ << ',';
    const std::string& f = fields[k];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out_ << f;
      continue;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  out_ << '\n';
}

}  // namespace noisyadj
