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

#include "noisyadj/protocol.h"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "noisyadj/error.h"

namespace noisyadj {

void BudgetLedger::Charge(std::string stage, double epsilon) {
  if (!(epsilon >= 0)) {
    throw InvalidBudgetError("ledger charge for '" + stage + "' must be >= 0");
  }
  total_ += epsilon;
  charges_.push_back({std::move(stage), epsilon});
}

int RunTrace::rounds() const {
  int r = 0;
  for (const auto& rec : records_) r = std::max(r, rec.round);
  return r;
}

void RunTrace::WriteJsonLines(std::ostream& out) const {
  for (const auto& rec : records_) {
    nlohmann::json j = {{"round", rec.round},
                        {"stage", rec.stage},
                        {"user", rec.user},
                        {"download_bytes", rec.download_bytes},
                        {"upload_bytes", rec.upload_bytes}};
    // JSON has no infinity; an unbounded budget is written as null.
    if (std::isfinite(rec.epsilon)) {
      j["epsilon"] = rec.epsilon;
    } else {
      j["epsilon"] = nullptr;
    }
    out << j.dump() << '\n';
  }
}

CostMeter MeasureCost(const RunTrace& trace, std::size_t num_users) {
  CostMeter meter;
  meter.per_round_download.assign(static_cast<std::size_t>(trace.rounds()),
                                  std::vector<std::uint64_t>(num_users, 0));
  for (const auto& rec : trace.records()) {
    if (rec.user >= num_users) throw DomainError("trace user out of range");
    meter.per_round_download[static_cast<std::size_t>(rec.round - 1)][rec.user] +=
        rec.download_bytes;
  }
  for (std::size_t u = 0; u < num_users; ++u) {
    std::uint64_t total = 0;
    for (const auto& round : meter.per_round_download) total += round[u];
    meter.cost_dl = std::max(meter.cost_dl, total);
  }
  return meter;
}

}  // namespace noisyadj
