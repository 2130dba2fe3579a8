#pragma once

/// @file
/// Exact monotonicity deciders. Every observable assignment is evaluated by
/// exact inference, then pairs x ⪯ x' are checked for stochastic dominance
/// (distribution) or ordered modes (mode).

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "monobn/inference.hpp"
#include "monobn/model.hpp"

namespace monobn {

enum class Property { Mid, Mim };
enum class Direction { Isotone, Antitone };

std::string_view to_string(Property p);
std::string_view to_string(Direction d);

/// q dominates p: F_q(v) <= F_p(v) + kTolerance for every v.
/// Throws std::invalid_argument on length mismatch.
bool dominates(const Distribution& q, const Distribution& p);

struct Counterexample {
  Assignment lower;  // x
  Assignment upper;  // x', with x ⪯ x'
  Distribution lower_posterior;
  Distribution upper_posterior;
  /// Mid: first CDF index where the dominance inequality fails.
  std::optional<std::size_t> cdf_index;
  /// Mim: modes of the two posteriors.
  std::optional<std::size_t> lower_mode;
  std::optional<std::size_t> upper_mode;
};

struct OracleVerdict {
  Property property = Property::Mid;
  Direction direction = Direction::Isotone;
  bool holds = true;
  std::optional<Counterexample> counterexample;
  /// Observable assignments of probability zero; pairs touching them are
  /// skipped.
  std::vector<Assignment> zero_probability_assignments;
  std::size_t skipped_pairs = 0;
  std::size_t checked_pairs = 0;
};

struct OracleOptions {
  /// Check every comparable pair instead of covering pairs only.
  bool all_pairs = false;
  /// Restrict to pairs that differ only in these observables (empty = all).
  std::vector<VarId> moving;
};

OracleVerdict decide_mid(const Network& net, Direction direction,
                         const OracleOptions& options = {});
OracleVerdict decide_mim(const Network& net, Direction direction,
                         const OracleOptions& options = {});
OracleVerdict decide(const Network& net, Property property, Direction direction,
                     const OracleOptions& options = {});

}  // namespace monobn
