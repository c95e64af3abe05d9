// Copyright 2026 The annealab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace annealab {

/// Input rejected by a precondition check. The message names the offending
/// value (and, for file formats, the line).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exact solver's frontier would exceed the configured width budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated internal invariant (e.g. a negative energy gap).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 stream: a Weyl sequence passed through the splitmix64
/// finalizer. Meets UniformRandomBitGenerator, so <random> distributions
/// accept it. Roughly 7x cheaper per draw than std::mt19937_64 here, which
/// matters in the Metropolis kernels where every proposal costs one draw.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw. Unlike
/// std::uniform_real_distribution this is bit-identical across standard
/// libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by multiply-shift; n must be nonzero.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

/// Metropolis test u < e^{-x}, u uniform on [0, 1). The bounds
/// 1 - x <= e^{-x} <= 1 / (1 + x) settle most draws without calling exp;
/// the decision is the same as evaluating e^{-x} directly.
inline bool metropolis_accept(double x, Rng& rng) {
  if (x <= 0.0) return true;
  const double u = uniform01(rng);
  if (u < 1.0 - x) return true;
  if (u * (1.0 + x) >= 1.0) return false;
  return u < std::exp(-x);
}

/// Energies closer than this are treated as degenerate by every solver and
/// statistic in the library.
inline constexpr double kEnergyTolerance = 1e-9;

/// One ±1 spin per working vertex, in ascending VertexId order.
struct SpinConfig {
  std::vector<std::int8_t> spins;

  SpinConfig() = default;
  explicit SpinConfig(std::vector<std::int8_t> s) : spins(std::move(s)) {}
  static SpinConfig uniform(std::size_t n, std::int8_t value) {
    return SpinConfig(std::vector<std::int8_t>(n, value));
  }

  std::size_t size() const { return spins.size(); }
  std::int8_t operator[](std::size_t i) const { return spins[i]; }
  std::int8_t& operator[](std::size_t i) { return spins[i]; }

  friend auto operator<=>(const SpinConfig&, const SpinConfig&) = default;
  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;
};

/// Hex encoding: bit i is 1 when spin i is +1; bits are grouped into
/// nibbles of four (bit 4j is the nibble's least significant bit) and
/// nibble 0 is written first. Lowercase, ceil(n/4) characters.
std::string to_hex(const SpinConfig& config);
SpinConfig from_hex(std::string_view hex, std::size_t n);

SpinConfig global_flip(const SpinConfig& config);

/// Outcome of one annealing run. The annealers fill config, energy and
/// seed; the harness fills provenance and the gap.
struct RunRecord {
  std::string instance;
  std::string method;
  std::uint32_t gauge = 0;
  std::uint32_t run = 0;
  std::uint64_t seed = 0;
  SpinConfig config;
  double energy = 0.0;
  double gap = 0.0;
};

}  // namespace annealab
