#include "monobn/random_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace monobn {

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;  // largest multiple of n, minus 1
  std::uint64_t x = next();
  while (x > limit) x = next();
  return x % n;
}

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<double> arbitrary_row(Rng& rng, std::size_t card, double zero_rate) {
  std::vector<double> row(card);
  double sum = 0.0;
  for (double& p : row) {
    p = zero_rate > 0.0 && rng.chance(zero_rate) ? 0.0 : 0.02 + rng.uniform01();
    sum += p;
  }
  if (sum == 0.0) {
    row[rng.below(card)] = 1.0;
    return row;
  }
  for (double& p : row) p /= sum;
  return row;
}

// Cumulative-logit row: F(j) = logistic(theta_j - eta). Larger eta moves
// mass to higher values.
std::vector<double> ordinal_row(const std::vector<double>& thresholds, double eta) {
  std::vector<double> row(thresholds.size() + 1);
  double prev = 0.0;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    const double f = logistic(thresholds[j] - eta);
    row[j] = f - prev;
    prev = f;
  }
  row.back() = 1.0 - prev;
  for (double& p : row) p = std::max(p, 0.0);
  return row;
}

}  // namespace

Network random_network(const RandomNetworkParams& params, std::uint64_t seed) {
  const std::size_t n = params.nodes;
  if (n < 2 || n > kMaxRandomNodes)
    throw std::invalid_argument("random_network: node count must be in [2, " +
                                std::to_string(kMaxRandomNodes) + "]");
  if (params.min_values < 2 || params.min_values > params.max_values)
    throw std::invalid_argument("random_network: need 2 <= min_values <= max_values");
  if (params.max_parents == 0)
    throw std::invalid_argument("random_network: max_parents must be positive");
  if (params.observables >= n)
    throw std::invalid_argument("random_network: observables must be fewer than nodes");
  if (params.zero_entry_rate < 0.0 || params.zero_entry_rate >= 1.0)
    throw std::invalid_argument("random_network: zero_entry_rate must be in [0, 1)");

  Rng rng(seed);
  NetworkDraft d;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t card =
        params.min_values + rng.below(params.max_values - params.min_values + 1);
    Variable var{"N" + std::to_string(i), {}};
    for (std::size_t k = 0; k < card; ++k) var.values.push_back("v" + std::to_string(k));
    d.variables.push_back(std::move(var));
  }

  std::vector<std::vector<std::size_t>> parents(n);
  if (params.polytree) {
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t j = rng.below(i);
      if (rng.chance(0.5) && parents[j].size() < params.max_parents)
        parents[j].push_back(i);
      else
        parents[i].push_back(j);
    }
  } else {
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::size_t> pool(i);
      for (std::size_t j = 0; j < i; ++j) pool[j] = j;
      const std::size_t k = 1 + rng.below(std::min(i, params.max_parents));
      for (std::size_t m = 0; m < k; ++m) {
        const std::size_t pick = m + rng.below(pool.size() - m);
        std::swap(pool[m], pool[pick]);
        parents[i].push_back(pool[m]);
      }
    }
  }
  for (auto& ps : parents) std::sort(ps.begin(), ps.end());
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t p : parents[c]) d.arcs.push_back({d.variables[p].name, d.variables[c].name});

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < n; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
  const std::size_t observables =
      params.observables != 0 ? params.observables : 1 + rng.below(std::min<std::size_t>(4, n - 1));
  std::vector<Role> roles(n, Role::Intermediate);
  roles[order[0]] = Role::Output;
  for (std::size_t i = 1; i <= observables; ++i) roles[order[i]] = Role::Observable;
  for (std::size_t i = 0; i < n; ++i) d.roles.push_back({d.variables[i].name, roles[i]});

  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t card = d.variables[v].cardinality();
    std::size_t rows = 1;
    for (std::size_t p : parents[v]) rows *= d.variables[p].cardinality();
    NetworkDraft::CptEntry entry{d.variables[v].name, {}};

    if (params.style == CptStyle::Arbitrary) {
      for (std::size_t r = 0; r < rows; ++r)
        entry.rows.push_back(arbitrary_row(rng, card, params.zero_entry_rate));
    } else {
      std::vector<double> weights;
      for (std::size_t i = 0; i < parents[v].size(); ++i) {
        double w = rng.uniform(0.5, 3.0);
        if (params.style == CptStyle::Monotone && rng.chance(0.5)) w = -w;
        if (rng.chance(0.1)) w = 0.0;
        weights.push_back(w);
      }
      std::vector<double> thresholds;
      double theta = rng.uniform(-1.5, 0.5);
      for (std::size_t j = 0; j + 1 < card; ++j) {
        thresholds.push_back(theta);
        theta += rng.uniform(0.5, 2.0);
      }
      double centre = 0.0;
      for (double w : weights) centre += w / 2.0;
      for (std::size_t r = 0; r < rows; ++r) {
        std::size_t rem = r;
        double eta = -centre;
        for (std::size_t i = parents[v].size(); i-- > 0;) {
          const std::size_t pc = d.variables[parents[v][i]].cardinality();
          const std::size_t digit = rem % pc;
          rem /= pc;
          eta += weights[i] * static_cast<double>(digit) / static_cast<double>(pc - 1);
        }
        entry.rows.push_back(ordinal_row(thresholds, eta));
      }
    }
    d.cpts.push_back(std::move(entry));
  }
  return Network::from_draft(d);
}

}  // namespace monobn
