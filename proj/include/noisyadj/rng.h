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
#ifndef NOISYADJ_RNG_H_
#define NOISYADJ_RNG_H_

#include <cstdint>
#include <random>

namespace noisyadj {

// Protocol stages that own an independent family of per-user random streams.
enum class Stage : std::uint64_t {
  kProjection = 1,
  kGnam = 2,
  kSecondRound = 3,
  kSecondRoundExtra = 4,
  kTrial = 5,
  kTest = 6,
};

// SplitMix64 finalizer. Used only to derive stream seeds.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t DeriveSeed(std::uint64_t seed, Stage stage,
                                   std::uint64_t index) {
  return Mix64(Mix64(seed ^ Mix64(static_cast<std::uint64_t>(stage))) ^
               Mix64(index + 0x632be59bd9b4e019ULL));
}

// Seeded 64-bit generator. Handles are cheap to create, one per user per
// stage; they are never shared between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stage stage, std::uint64_t index)
      : engine_(DeriveSeed(seed, stage, index)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double UniformOpen() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace noisyadj

#endif  // NOISYADJ_RNG_H_
