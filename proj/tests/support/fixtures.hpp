#pragma once

// Hand-built networks shared by the unit tests and the acceptance suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monobn/model.hpp"
#include "monobn/random_network.hpp"

namespace monobn::testing {

class DraftBuilder {
 public:
  DraftBuilder& var(const std::string& name, std::vector<std::string> values, Role role);
  DraftBuilder& arc(const std::string& parent, const std::string& child);
  DraftBuilder& cpt(const std::string& name, std::vector<std::vector<double>> rows);
  const NetworkDraft& draft() const { return draft_; }
  Network build() const { return Network::from_draft(draft_); }

 private:
  NetworkDraft draft_;
};

/// X -> C, both binary, X observable: Pr(c | x-bar), Pr(c | x).
Network binary_chain(double c_given_xbar, double c_given_x);

/// One binary observable X and an output C whose posterior is `lower` when
/// X = x-bar and `upper` when X = x.
Network single_observable(const std::vector<double>& lower, const std::vector<double>& upper);

/// X observable -> E output, Pr(e | x-bar), Pr(e | x). The base for gadgets.
Network evidence_chain(double e_given_xbar, double e_given_x);

/// Two-parent fixture: X1 observable, X2 -> Y, X1 -> C <- Y. The arc X1 -> C
/// is non-monotone (its sign flips with Y) yet C is isotone in X1.
/// `x2_observable` makes X2 a second observable, so refinement has to bound
/// Pr(Y | X2) instead of using one exact value.
Network figure2_like(bool x2_observable = false);

/// CPT values for the figure2_like shape.
struct Figure2Params {
  double x2 = 0.1;                     // Pr(x2)
  double y_given_x2bar = 0.3;          // Pr(y | x2-bar)
  double y_given_x2 = 0.5;             // Pr(y | x2)
  double c[4] = {0.4, 0.95, 0.85, 0.9};  // Pr(c | X1, Y) rows in canonical order
};
Network figure2_network(const Figure2Params& p, bool x2_observable);

/// Grid search over Pr(c | X1, Y) for a fixture whose X1 -> C sign is '?',
/// whose unrefined verdict is Inconclusive, which the oracle certifies
/// isotone, and which refinement with `budget` resolves to '+'.
std::optional<Figure2Params> search_figure2(bool x2_observable, std::size_t budget);

/// Parameters of the i-th network of the shared random corpus: at most 10
/// binary variables and at most 4 observables, cycling through CPT styles,
/// polytree and zero-entry settings.
RandomNetworkParams corpus_params(std::size_t i);
std::uint64_t corpus_seed(std::size_t i);
Network corpus_network(std::size_t i);

/// Directory holding the bundled .mbn files.
std::string data_dir();

}  // namespace monobn::testing
