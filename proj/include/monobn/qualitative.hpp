#pragma once

/// @file
/// Qualitative influences and the sound approximate verifier for
/// monotonicity in distribution.
///
/// Arc signs are read off the CPTs, propagated from one observable at a time
/// to the output (the remaining observables held as evidence), and mapped to
/// a verdict. A definite verdict is always correct; '?' results can be
/// refined with interval bounds on the output's hidden context.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monobn/model.hpp"

namespace monobn {

enum class Sign : std::uint8_t { Plus, Minus, Zero, Unknown };

inline constexpr Sign kAllSigns[] = {Sign::Plus, Sign::Minus, Sign::Zero, Sign::Unknown};

std::string_view to_string(Sign s);
std::optional<Sign> parse_sign(std::string_view text);

/// Serial combination (⊗).
Sign sign_product(Sign a, Sign b);
/// Parallel combination (⊕).
Sign sign_sum(Sign a, Sign b);
/// ⊕-sum of the effects of several separate observations.
Sign combine_observations(std::span<const Sign> effects);

struct ArcSign {
  VarId parent;
  VarId child;
  Sign sign;
};

/// Sign of the direct influence parent → child, checked uniformly over all
/// assignments to the child's other parents. Throws std::invalid_argument if
/// the arc does not exist.
Sign arc_sign(const Network& net, VarId parent, VarId child);
/// The arc's sign in likelihood-ratio order, given its dominance sign `arc`.
/// Equal to `arc` for a binary child. A larger child with a single parent
/// uses the 2x2 minors of its CPT; with further parents the answer is '?'
/// unless `arc` is '0'. Propagation uses it against the arc direction and
/// into children with observed descendants.
Sign likelihood_ratio_sign(const Network& net, VarId parent, VarId child, Sign arc);

/// Every arc's sign, in Network::arcs() order.
std::vector<ArcSign> arc_signs(const Network& net);

struct PropagationResult {
  /// Net sign of the source's influence on each variable. Observed
  /// variables keep '0'; the source is '+'.
  std::vector<Sign> signs;
  /// Number of times some variable's net sign changed.
  std::size_t node_updates = 0;
  std::size_t messages = 0;
};

/// Propagates the effect of raising `source` through the network with the
/// variables in `observed` held fixed. `arcs` must come from arc_signs().
PropagationResult propagate(const Network& net, std::span<const ArcSign> arcs, VarId source,
                            std::span<const VarId> observed);
/// Convenience overload: arc signs from the CPTs, every other observable
/// held fixed.
PropagationResult propagate(const Network& net, VarId source);

struct Refinement {
  Sign sign = Sign::Unknown;
  /// Context assignments evaluated by exact inference.
  std::size_t enumerated = 0;
  /// Number of context assignments needed to avoid widening.
  std::size_t required = 0;
  bool widened = false;
  std::string detail;
};

/// Tries to settle the sign of `source` on the output by bounding the
/// distribution of the output's hidden parents. Never returns a sign that
/// is not implied by the network. `budget` caps the number of exact
/// inference runs; 0 disables refinement.
Refinement refine(const Network& net, VarId source, std::size_t budget);
Sign refine_sign(const Network& net, VarId source, std::size_t budget);

enum class VerdictKind {
  IsotoneInDistribution,
  AntitoneInDistribution,
  Both,
  Mixed,
  Inconclusive,
};

std::string_view to_string(VerdictKind k);

struct AggregateVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::vector<VarId> isotone;       // '+'
  std::vector<VarId> antitone;      // '-'
  std::vector<VarId> both;          // '0'
  std::vector<VarId> inconclusive;  // '?'
};

AggregateVerdict aggregate_verdict(std::span<const std::pair<VarId, Sign>> signs);

struct ObservableSign {
  VarId variable;
  Sign propagated;
  Sign final_sign;
};

struct RefinementLogEntry {
  VarId variable;
  Sign before;
  Sign after;
  std::string detail;
};

struct ApproxReport {
  std::vector<ArcSign> arc_signs;
  std::vector<ObservableSign> observables;
  AggregateVerdict verdict;
  std::vector<RefinementLogEntry> refinement_log;
};

ApproxReport approx_verdict(const Network& net, std::size_t refine_budget = 0);

}  // namespace monobn
