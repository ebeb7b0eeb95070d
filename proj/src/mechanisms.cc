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
#include "noisyadj/mechanisms.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "noisyadj/error.h"

namespace noisyadj {

std::string_view ToString(MechanismKind kind) {
  return kind == MechanismKind::kWarnerRR ? "rr" : "laplace";
}

MechanismKind ParseMechanismKind(std::string_view name) {
  if (name == "rr" || name == "warner" || name == "RR") return MechanismKind::kWarnerRR;
  if (name == "laplace" || name == "lap") return MechanismKind::kLaplace;
  throw DomainError("unknown mechanism: " + std::string(name));
}

void CheckBudget(double epsilon, std::string_view what) {
  if (!(epsilon > 0)) {
    throw InvalidBudgetError(std::string(what) + " must be positive, got " +
                             std::to_string(epsilon));
  }
}

Mechanism::Mechanism(MechanismKind kind, double epsilon)
    : kind_(kind), epsilon_(epsilon) {
  CheckBudget(epsilon);
}

double RrKeepProbability(double epsilon) {
  CheckBudget(epsilon);
  return 1.0 / (1.0 + std::exp(-epsilon));
}

bool RrPerturb(bool bit, double epsilon, Rng& rng) {
  const double keep = RrKeepProbability(epsilon);
  if (keep >= 1.0) return bit;
  return rng.Bernoulli(keep) ? bit : !bit;
}

double RrUnbias(bool reported, double epsilon) {
  CheckBudget(epsilon);
  // e^eps/(e^eps-1) = 1/(1-e^-eps); -1/(e^eps-1) = -1/expm1(eps).
  if (reported) return 1.0 / -std::expm1(-epsilon);
  return -1.0 / std::expm1(epsilon);
}

double LaplaceSample(double scale, Rng& rng) {
  if (!(scale > 0) || std::isinf(scale)) {
    throw InvalidBudgetError("Laplace scale must be positive and finite");
  }
  return LaplaceQuantile(rng.UniformOpen(), scale);
}

double LaplaceCdf(double x, double scale) {
  if (x < 0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

double LaplaceQuantile(double p, double scale) {
  if (!(p > 0 && p < 1)) throw DomainError("Laplace quantile needs p in (0,1)");
  if (p < 0.5) return scale * std::log(2.0 * p);
  return -scale * std::log(2.0 * (1.0 - p));
}

EntryVariance GetEntryVariance(const Mechanism& mech) {
  const double eps = mech.epsilon();
  if (std::isinf(eps)) return {0.0};
  if (mech.kind() == MechanismKind::kWarnerRR) {
    // e^eps/(e^eps-1)^2 written as e^-eps/(1-e^-eps)^2 to avoid overflow.
    const double q = -std::expm1(-eps);
    return {std::exp(-eps) / (q * q)};
  }
  return {2.0 / (eps * eps)};
}

double ReleaseEntry(const Mechanism& mech, bool bit, Rng& rng) {
  const double eps = mech.epsilon();
  if (std::isinf(eps)) return bit ? 1.0 : 0.0;
  if (mech.kind() == MechanismKind::kWarnerRR) {
    return RrUnbias(RrPerturb(bit, eps, rng), eps);
  }
  return (bit ? 1.0 : 0.0) + LaplaceSample(1.0 / eps, rng);
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Acklam's rational approximation, relative error about 1.15e-9.
double AcklamQuantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - kLow) {
    const double q = std::sqrt(-2 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double NormalQuantile(double p) {
  if (!(p > 0 && p < 1)) {
    throw DomainError("normal quantile needs p in (0,1), got " + std::to_string(p));
  }
  double x = AcklamQuantile(p);
  // One Halley step on the erfc-based CDF. The residual Phi(x) - p is taken
  // from the tail nearer to p so it keeps full relative precision.
  const double residual = (p < 0.5)
                              ? 0.5 * std::erfc(-x / std::numbers::sqrt2) - p
                              : (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi);
  const double u = residual / pdf;
  x -= u / (1 + 0.5 * x * u);
  return x;
}

}  // namespace noisyadj
