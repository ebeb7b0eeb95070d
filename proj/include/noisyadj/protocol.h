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

#ifndef NOISYADJ_PROTOCOL_H_
#define NOISYADJ_PROTOCOL_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "noisyadj/graph.h"

namespace noisyadj {

struct BudgetCharge {
  std::string stage;
  double epsilon = 0;
};

// Append-only record of the privacy budget spent by one run. Under
// sequential composition the run is total()-edge LDP.
class BudgetLedger {
 public:
  // Throws InvalidBudgetError for negative or NaN epsilon.
  void Charge(std::string stage, double epsilon);

  const std::vector<BudgetCharge>& charges() const { return charges_; }
  double total() const { return total_; }

 private:
  std::vector<BudgetCharge> charges_;
  double total_ = 0;
};

// One simulated message exchange between a user and the collector.
struct TraceRecord {
  int round = 0;
  std::string stage;
  NodeId user = 0;
  std::uint64_t download_bytes = 0;
  std::uint64_t upload_bytes = 0;
  double epsilon = 0;
};

class RunTrace {
 public:
  void Add(TraceRecord record) { records_.push_back(std::move(record)); }
  const std::vector<TraceRecord>& records() const { return records_; }
  int rounds() const;

  // Line-delimited JSON, one record per line.
  void WriteJsonLines(std::ostream& out) const;

 private:
  std::vector<TraceRecord> records_;
};

// Download volume per user per round and the protocol download cost:
// the maximum over users of bytes summed across rounds.
struct CostMeter {
  // per_round_download[r][u], rounds numbered from 1 (index r - 1).
  std::vector<std::vector<std::uint64_t>> per_round_download;
  std::uint64_t cost_dl = 0;
};

CostMeter MeasureCost(const RunTrace& trace, std::size_t num_users);

// Bytes in a float64 payload of `entries` values.
constexpr std::uint64_t Float64Bytes(std::uint64_t entries) { return 8 * entries; }

}  // namespace noisyadj

#endif  // NOISYADJ_PROTOCOL_H_
