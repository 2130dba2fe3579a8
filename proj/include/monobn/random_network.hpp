#pragma once

/// @file
/// Seeded random networks for property tests and the `random` subcommand.
///
/// Reproducibility: the generator is std::mt19937_64 seeded with the 64-bit
/// seed verbatim. Only raw 64-bit outputs are consumed, through Rng below:
///   uniform01():    (x >> 11) * 2^-53, in [0, 1)
///   below(n):       rejection sampling on x with limit 2^64 - (2^64 mod n),
///                   then x mod n
/// No std distributions are used, so output is identical across standard
/// libraries and platforms.

#include <cstddef>
#include <cstdint>
#include <random>

#include "monobn/model.hpp"

namespace monobn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool chance(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

enum class CptStyle {
  /// Independent uniform draws per entry, normalised.
  Arbitrary,
  /// Cumulative-logit rows: every arc gets a random definite direction, so
  /// every arc sign is '+' or '-' (or '0' when its weight is zero).
  Monotone,
  /// As Monotone, with every weight positive.
  Positive,
};

struct RandomNetworkParams {
  std::size_t nodes = 6;
  std::size_t max_parents = 2;
  std::size_t min_values = 2;
  std::size_t max_values = 2;
  bool polytree = false;
  /// 0 picks 1..min(4, nodes - 1) at random.
  std::size_t observables = 0;
  CptStyle style = CptStyle::Arbitrary;
  /// Probability that an Arbitrary-style entry is forced to zero.
  double zero_entry_rate = 0.0;
};

inline constexpr std::size_t kMaxRandomNodes = 12;

/// Throws std::invalid_argument for infeasible parameters (fewer than 2 or
/// more than kMaxRandomNodes nodes, min_values < 2, min > max values,
/// observables >= nodes, max_parents == 0 with more than one node).
Network random_network(const RandomNetworkParams& params, std::uint64_t seed);

}  // namespace monobn
