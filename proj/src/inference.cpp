#include "monobn/inference.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "monobn/simd.hpp"

namespace monobn {
namespace {

std::size_t table_size(const std::vector<std::size_t>& cards) {
  std::size_t n = 1;
  for (std::size_t c : cards) {
    if (c != 0 && n > std::numeric_limits<std::uint32_t>::max() / c)
      throw std::length_error("factor table exceeds 32-bit indexing");
    n *= c;
  }
  return n;
}

// Strides of `scope` (canonical, last variable fastest).
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& cards) {
  std::vector<std::size_t> s(cards.size(), 1);
  std::size_t acc = 1;
  for (std::size_t i = cards.size(); i-- > 0;) {
    s[i] = acc;
    acc *= cards[i];
  }
  return s;
}

// For every entry of the table over `target` (canonical order), the index of
// the matching entry of a table over `source` ⊆ target, plus `offset`.
std::vector<std::uint32_t> projection_indices(const std::vector<VarId>& target,
                                              const std::vector<std::size_t>& target_cards,
                                              const std::vector<VarId>& source,
                                              const std::vector<std::size_t>& source_cards,
                                              std::size_t offset = 0) {
  const auto source_strides = strides_of(source_cards);
  std::vector<std::size_t> step(target.size(), 0);
  for (std::size_t i = 0; i < target.size(); ++i) {
    auto it = std::lower_bound(source.begin(), source.end(), target[i]);
    if (it != source.end() && *it == target[i])
      step[i] = source_strides[static_cast<std::size_t>(it - source.begin())];
  }
  const std::size_t n = table_size(target_cards);
  std::vector<std::uint32_t> out(n);
  std::vector<std::size_t> digit(target.size(), 0);
  std::size_t index = offset;
  for (std::size_t r = 0; r < n; ++r) {
    out[r] = static_cast<std::uint32_t>(index);
    for (std::size_t i = target.size(); i-- > 0;) {
      if (++digit[i] < target_cards[i]) {
        index += step[i];
        break;
      }
      index -= step[i] * (target_cards[i] - 1);
      digit[i] = 0;
    }
  }
  return out;
}

}  // namespace

Factor::Factor(std::vector<VarId> scope, std::vector<std::size_t> cards,
               std::vector<double> table)
    : scope_(std::move(scope)), cards_(std::move(cards)), table_(std::move(table)) {
  if (scope_.size() != cards_.size())
    throw std::invalid_argument("Factor: scope and cardinalities differ in length");
  if (!std::is_sorted(scope_.begin(), scope_.end()) ||
      std::adjacent_find(scope_.begin(), scope_.end()) != scope_.end())
    throw std::invalid_argument("Factor: scope must be sorted and duplicate-free");
  if (table_.size() != table_size(cards_))
    throw std::invalid_argument("Factor: table length does not match scope");
  for (double x : table_)
    if (!(x >= 0.0)) throw std::invalid_argument("Factor: negative entry");
}

Factor Factor::from_cpt(const Network& net, VarId var) {
  const Cpt& cpt = net.cpt(var);
  std::vector<VarId> scope = cpt.parents;
  scope.push_back(var);
  std::sort(scope.begin(), scope.end());
  std::vector<std::size_t> cards;
  for (VarId v : scope) cards.push_back(net.cardinality(v));

  // The CPT is laid out as (parents..., var); re-index into sorted order.
  std::vector<VarId> cpt_order = cpt.parents;
  cpt_order.push_back(var);
  std::vector<std::size_t> cpt_cards;
  for (VarId v : cpt_order) cpt_cards.push_back(net.cardinality(v));
  const auto cpt_strides = strides_of(cpt_cards);

  std::vector<double> table(cpt.table.size());
  std::vector<std::size_t> digit(scope.size(), 0);
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < scope.size(); ++i) {
      auto pos = static_cast<std::size_t>(
          std::find(cpt_order.begin(), cpt_order.end(), scope[i]) - cpt_order.begin());
      src += digit[i] * cpt_strides[pos];
    }
    table[r] = cpt.table[src];
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (++digit[i] < cards[i]) break;
      digit[i] = 0;
    }
  }
  return Factor(std::move(scope), std::move(cards), std::move(table));
}

bool Factor::mentions(VarId v) const {
  return std::binary_search(scope_.begin(), scope_.end(), v);
}

Factor Factor::product(const Factor& other) const {
  std::vector<VarId> scope;
  std::set_union(scope_.begin(), scope_.end(), other.scope_.begin(), other.scope_.end(),
                 std::back_inserter(scope));
  std::vector<std::size_t> cards;
  for (VarId v : scope) {
    auto it = std::lower_bound(scope_.begin(), scope_.end(), v);
    if (it != scope_.end() && *it == v)
      cards.push_back(cards_[static_cast<std::size_t>(it - scope_.begin())]);
    else
      cards.push_back(other.cards_[static_cast<std::size_t>(
          std::lower_bound(other.scope_.begin(), other.scope_.end(), v) -
          other.scope_.begin())]);
  }
  const auto ia = projection_indices(scope, cards, scope_, cards_);
  const auto ib = projection_indices(scope, cards, other.scope_, other.cards_);
  std::vector<double> table(ia.size());
  simd::gather_multiply(table, table_, ia, other.table_, ib);
  return Factor(std::move(scope), std::move(cards), std::move(table));
}

Factor Factor::sum_out(VarId var) const {
  auto it = std::lower_bound(scope_.begin(), scope_.end(), var);
  if (it == scope_.end() || *it != var) return *this;
  const auto pos = static_cast<std::size_t>(it - scope_.begin());
  std::vector<VarId> scope = scope_;
  std::vector<std::size_t> cards = cards_;
  scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(pos));
  cards.erase(cards.begin() + static_cast<std::ptrdiff_t>(pos));
  const std::size_t stride = strides_of(cards_)[pos];

  std::vector<double> table(table_size(cards), 0.0);
  for (std::size_t k = 0; k < cards_[pos]; ++k) {
    const auto idx = projection_indices(scope, cards, scope_, cards_, k * stride);
    simd::gather_accumulate(table, table_, idx);
  }
  return Factor(std::move(scope), std::move(cards), std::move(table));
}

Factor Factor::reduce(const Assignment& evidence) const {
  std::vector<VarId> scope;
  std::vector<std::size_t> cards;
  std::size_t offset = 0;
  const auto strides = strides_of(cards_);
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (auto value = evidence.value_of(scope_[i])) {
      offset += *value * strides[i];
    } else {
      scope.push_back(scope_[i]);
      cards.push_back(cards_[i]);
    }
  }
  if (scope.size() == scope_.size()) return *this;
  const auto idx = projection_indices(scope, cards, scope_, cards_, offset);
  std::vector<double> table(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) table[r] = table_[idx[r]];
  return Factor(std::move(scope), std::move(cards), std::move(table));
}

double joint_probability(const Network& net, const Assignment& x) {
  check_assignment(net, x);
  if (x.size() != net.size())
    throw std::invalid_argument("joint_probability requires a full assignment");
  double p = 1.0;
  for (VarId v : net.topological_order()) {
    const Cpt& cpt = net.cpt(v);
    std::size_t row = 0;
    for (VarId parent : cpt.parents) row = row * net.cardinality(parent) + x.at(parent);
    p *= cpt.row(row)[x.at(v)];
  }
  return p;
}

namespace {

// Variables whose CPTs can influence Pr(query, evidence): the query and
// evidence variables and all their ancestors. Everything else is barren.
std::vector<bool> relevant_variables(const Network& net, const std::vector<VarId>& seeds) {
  std::vector<bool> keep(net.size(), false);
  std::vector<VarId> stack(seeds.begin(), seeds.end());
  for (VarId v : seeds) keep[v] = true;
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    for (VarId p : net.parents(v)) {
      if (!keep[p]) {
        keep[p] = true;
        stack.push_back(p);
      }
    }
  }
  return keep;
}

VarId pick_min_degree(const std::vector<Factor>& factors, const std::set<VarId>& pending) {
  VarId best = *pending.begin();
  std::size_t best_degree = std::numeric_limits<std::size_t>::max();
  for (VarId v : pending) {
    std::set<VarId> neighbours;
    for (const Factor& f : factors)
      if (f.mentions(v)) neighbours.insert(f.scope().begin(), f.scope().end());
    const std::size_t degree = neighbours.empty() ? 0 : neighbours.size() - 1;
    if (degree < best_degree) {
      best = v;
      best_degree = degree;
    }
  }
  return best;
}

void eliminate(std::vector<Factor>& factors, VarId var) {
  std::vector<Factor> kept;
  std::optional<Factor> merged;
  for (auto& f : factors) {
    if (!f.mentions(var)) {
      kept.push_back(std::move(f));
      continue;
    }
    merged = merged ? merged->product(f) : std::move(f);
  }
  if (merged) kept.push_back(merged->sum_out(var));
  factors = std::move(kept);
}

Factor eliminate_all(const Network& net, const Assignment& evidence,
                     const std::vector<VarId>& query, const PosteriorOptions& options) {
  std::vector<VarId> seeds = evidence.scope();
  seeds.insert(seeds.end(), query.begin(), query.end());
  const auto keep = relevant_variables(net, seeds);

  std::vector<Factor> factors;
  std::set<VarId> pending;
  for (VarId v = 0; v < net.size(); ++v) {
    if (!keep[v]) continue;
    factors.push_back(Factor::from_cpt(net, v).reduce(evidence));
    if (!evidence.contains(v) && std::find(query.begin(), query.end(), v) == query.end())
      pending.insert(v);
  }

  if (options.elimination_order) {
    for (VarId v : *options.elimination_order) {
      if (pending.erase(v)) eliminate(factors, v);
    }
    if (!pending.empty())
      throw std::invalid_argument("elimination order omits variable '" +
                                  net.variable(*pending.begin()).name + "'");
  } else {
    while (!pending.empty()) {
      VarId v = pick_min_degree(factors, pending);
      pending.erase(v);
      eliminate(factors, v);
    }
  }

  Factor result({}, {}, {1.0});
  for (const Factor& f : factors) result = result.product(f);
  return result;
}

}  // namespace

Factor joint_posterior(const Network& net, const Assignment& evidence,
                       std::vector<VarId> query, const PosteriorOptions& options) {
  check_assignment(net, evidence);
  std::sort(query.begin(), query.end());
  query.erase(std::unique(query.begin(), query.end()), query.end());
  for (VarId q : query) {
    if (q >= net.size()) throw std::invalid_argument("posterior: unknown query variable");
    if (evidence.contains(q))
      throw std::invalid_argument("posterior: query variable '" + net.variable(q).name +
                                  "' is bound by the evidence");
  }
  Factor joint = eliminate_all(net, evidence, query, options);
  std::vector<double> table = joint.table();
  const double z = simd::sum(table);
  if (!(z > 0.0))
    throw ZeroEvidenceError("evidence '" + format_assignment(net, evidence) +
                            "' has probability zero");
  simd::scale(table, 1.0 / z);
  return Factor(joint.scope(), joint.cardinalities(), std::move(table));
}

Distribution posterior(const Network& net, const Assignment& evidence, VarId target,
                       const PosteriorOptions& options) {
  Factor f = joint_posterior(net, evidence, {target}, options);
  return Distribution{target, f.table()};
}

double evidence_probability(const Network& net, const Assignment& evidence) {
  check_assignment(net, evidence);
  return simd::sum(eliminate_all(net, evidence, {}, {}).table());
}

std::vector<double> cdf(const Distribution& d) {
  std::vector<double> out(d.probs.size());
  simd::prefix_sum(d.probs, out);
  return out;
}

std::size_t mode(const Distribution& d) {
  if (d.probs.empty()) throw std::invalid_argument("mode of an empty distribution");
  const double top = *std::max_element(d.probs.begin(), d.probs.end());
  for (std::size_t i = 0; i < d.probs.size(); ++i)
    if (d.probs[i] >= top - kTolerance) return i;
  return 0;
}

}  // namespace monobn
