#pragma once

/// @file
/// Exact inference by variable elimination, plus the distribution helpers
/// (CDF, lowest-tie mode) behind the distribution and mode output functions.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "monobn/model.hpp"

namespace monobn {

/// Nonnegative table over a scope in canonical order.
class Factor {
 public:
  Factor() = default;
  /// Scope is sorted; `table` must follow canonical order over the sorted
  /// scope and have exactly prod(cardinalities) entries.
  Factor(std::vector<VarId> scope, std::vector<std::size_t> cards, std::vector<double> table);

  /// The CPT of `var` as a factor over parents ∪ {var}.
  static Factor from_cpt(const Network& net, VarId var);

  const std::vector<VarId>& scope() const noexcept { return scope_; }
  const std::vector<std::size_t>& cardinalities() const noexcept { return cards_; }
  const std::vector<double>& table() const noexcept { return table_; }
  bool mentions(VarId v) const;

  Factor product(const Factor& other) const;
  Factor sum_out(VarId var) const;
  /// Restricts bound variables to their values and drops them from the scope.
  Factor reduce(const Assignment& evidence) const;

 private:
  std::vector<VarId> scope_;
  std::vector<std::size_t> cards_;
  std::vector<double> table_;
};

struct Distribution {
  VarId variable = 0;
  std::vector<double> probs;
};

/// Chain-rule probability of a full assignment. Throws
/// std::invalid_argument unless every variable is bound.
double joint_probability(const Network& net, const Assignment& x);

struct PosteriorOptions {
  /// Explicit elimination order. Variables that are not eliminated (target,
  /// evidence, irrelevant) are skipped. Defaults to min-degree.
  std::optional<std::vector<VarId>> elimination_order;
};

/// Pr(target | evidence). Throws ZeroEvidenceError when Pr(evidence) = 0 and
/// std::invalid_argument when the target is bound by the evidence.
Distribution posterior(const Network& net, const Assignment& evidence, VarId target,
                       const PosteriorOptions& options = {});

/// Joint posterior over several query variables, as a factor over `query`.
/// Same error contract as posterior().
Factor joint_posterior(const Network& net, const Assignment& evidence,
                       std::vector<VarId> query, const PosteriorOptions& options = {});

/// Pr(evidence), summing out every variable.
double evidence_probability(const Network& net, const Assignment& evidence);

std::vector<double> cdf(const Distribution& d);

/// Smallest value index attaining the maximum probability; entries within
/// kTolerance of the maximum count as ties.
std::size_t mode(const Distribution& d);

}  // namespace monobn
