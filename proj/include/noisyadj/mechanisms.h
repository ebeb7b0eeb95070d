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
#ifndef NOISYADJ_MECHANISMS_H_
#define NOISYADJ_MECHANISMS_H_

#include <string_view>

#include "noisyadj/rng.h"

namespace noisyadj {

enum class MechanismKind { kWarnerRR, kLaplace };

std::string_view ToString(MechanismKind kind);
// Accepts "rr"/"warner" and "laplace"/"lap".
MechanismKind ParseMechanismKind(std::string_view name);

// A local randomizer for one adjacency bit. epsilon may be +infinity, which
// denotes the noiseless limit.
class Mechanism {
 public:
  Mechanism(MechanismKind kind, double epsilon);

  MechanismKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }

 private:
  MechanismKind kind_;
  double epsilon_;
};

// Variance of one unbiased noisy adjacency entry.
struct EntryVariance {
  double sigma2 = 0;
};

// Throws InvalidBudgetError unless epsilon > 0 (NaN rejected, +inf allowed).
void CheckBudget(double epsilon, std::string_view what = "epsilon");

// Probability that Warner's randomized response reports the true bit,
// e^eps / (e^eps + 1).
double RrKeepProbability(double epsilon);

bool RrPerturb(bool bit, double epsilon, Rng& rng);

// Unbiasing map for a randomized-response report: 1 -> e^eps/(e^eps-1),
// 0 -> -1/(e^eps-1).
double RrUnbias(bool reported, double epsilon);

// Draw from Lap(scale) by inverse CDF. Throws InvalidBudgetError for
// scale <= 0.
double LaplaceSample(double scale, Rng& rng);

// CDF of Lap(scale) at x.
double LaplaceCdf(double x, double scale);
// Inverse CDF of Lap(scale); p in (0, 1).
double LaplaceQuantile(double p, double scale);

// sigma^2 = e^eps/(e^eps-1)^2 for RR and 2/eps^2 for Laplace.
EntryVariance GetEntryVariance(const Mechanism& mech);

// Perturbs one adjacency bit and returns its unbiased estimate: the RR
// report mapped through RrUnbias, or bit + Lap(1/eps).
double ReleaseEntry(const Mechanism& mech, bool bit, Rng& rng);

// Standard normal CDF.
double NormalCdf(double x);

// Inverse standard normal CDF for p in (0, 1); absolute error below 1e-9.
// Throws DomainError otherwise.
double NormalQuantile(double p);

}  // namespace noisyadj

#endif  // NOISYADJ_MECHANISMS_H_
