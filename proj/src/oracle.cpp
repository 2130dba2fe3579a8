#include "monobn/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "monobn/simd.hpp"

namespace monobn {

std::string_view to_string(Property p) { return p == Property::Mid ? "MID" : "MIM"; }

std::string_view to_string(Direction d) {
  return d == Direction::Isotone ? "isotone" : "antitone";
}

bool dominates(const Distribution& q, const Distribution& p) {
  if (q.probs.size() != p.probs.size())
    throw std::invalid_argument("dominates: distributions differ in length");
  const auto fq = cdf(q);
  const auto fp = cdf(p);
  return simd::max_difference(fq, fp) <= kTolerance;
}

namespace {

struct Evaluated {
  std::vector<std::optional<Distribution>> posteriors;
  std::vector<std::vector<double>> cdfs;
  std::vector<std::size_t> modes;
};

Evaluated evaluate_all(const Network& net, const AssignmentSpace& space) {
  Evaluated e;
  e.posteriors.resize(space.size());
  e.cdfs.resize(space.size());
  e.modes.resize(space.size(), 0);
  for (std::size_t r = 0; r < space.size(); ++r) {
    try {
      e.posteriors[r] = posterior(net, space.at(r), net.output());
    } catch (const ZeroEvidenceError&) {
      continue;
    }
    e.cdfs[r] = cdf(*e.posteriors[r]);
    e.modes[r] = mode(*e.posteriors[r]);
  }
  return e;
}

// First CDF index where `upper` fails to be dominated as required, if any.
std::optional<std::size_t> dominance_failure(const std::vector<double>& lower,
                                             const std::vector<double>& upper,
                                             Direction direction) {
  const auto& hi = direction == Direction::Isotone ? upper : lower;
  const auto& lo = direction == Direction::Isotone ? lower : upper;
  if (simd::max_difference(hi, lo) <= kTolerance) return std::nullopt;
  for (std::size_t i = 0; i < hi.size(); ++i)
    if (hi[i] > lo[i] + kTolerance) return i;
  return std::nullopt;
}

}  // namespace

OracleVerdict decide(const Network& net, Property property, Direction direction,
                     const OracleOptions& options) {
  OracleVerdict verdict;
  verdict.property = property;
  verdict.direction = direction;

  const AssignmentSpace space(net, net.observables());
  const std::size_t dims = space.scope().size();
  std::vector<bool> may_move(dims, options.moving.empty());
  for (VarId v : options.moving) {
    auto it = std::find(space.scope().begin(), space.scope().end(), v);
    if (it == space.scope().end())
      throw std::invalid_argument("oracle: '" + net.variable(v).name + "' is not observable");
    may_move[static_cast<std::size_t>(it - space.scope().begin())] = true;
  }

  const Evaluated eval = evaluate_all(net, space);
  for (std::size_t r = 0; r < space.size(); ++r)
    if (!eval.posteriors[r]) verdict.zero_probability_assignments.push_back(space.at(r));

  // Returns true when the pair violates the property (and records it).
  auto check = [&](std::size_t x, std::size_t y) {
    ++verdict.checked_pairs;
    std::optional<std::size_t> cdf_index;
    bool violated = false;
    if (property == Property::Mid) {
      cdf_index = dominance_failure(eval.cdfs[x], eval.cdfs[y], direction);
      violated = cdf_index.has_value();
    } else {
      violated = direction == Direction::Isotone ? eval.modes[x] > eval.modes[y]
                                                 : eval.modes[x] < eval.modes[y];
    }
    if (!violated) return false;
    Counterexample cx{space.at(x), space.at(y), *eval.posteriors[x], *eval.posteriors[y],
                      cdf_index, std::nullopt, std::nullopt};
    if (property == Property::Mim) {
      cx.lower_mode = eval.modes[x];
      cx.upper_mode = eval.modes[y];
    }
    verdict.holds = false;
    verdict.counterexample = std::move(cx);
    return true;
  };

  auto positive = [&](std::size_t r) { return eval.posteriors[r].has_value(); };

  if (options.all_pairs) {
    for (std::size_t x = 0; x < space.size(); ++x) {
      const auto dx = space.digits(x);
      for (std::size_t y = 0; y < space.size(); ++y) {
        if (y == x) continue;
        const auto dy = space.digits(y);
        bool comparable = true;
        for (std::size_t i = 0; i < dims && comparable; ++i)
          comparable = dx[i] <= dy[i] && (dx[i] == dy[i] || may_move[i]);
        if (!comparable) continue;
        if (!positive(x) || !positive(y)) {
          ++verdict.skipped_pairs;
          continue;
        }
        if (!verdict.counterexample) check(x, y);
      }
    }
    return verdict;
  }

  // Covering pairs of the subposet of positive-probability assignments:
  // single-step raises, bridging over zero-probability assignments.
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto dx = space.digits(x);
    for (std::size_t i = 0; i < dims; ++i)
      if (may_move[i] && dx[i] + 1 < space.cardinalities()[i] &&
          (!positive(x) || !positive(x + space.stride(i))))
        ++verdict.skipped_pairs;
  }
  for (std::size_t x = 0; x < space.size() && !verdict.counterexample; ++x) {
    if (!positive(x)) continue;
    std::vector<std::size_t> covers;
    std::vector<bool> seen(space.size(), false);
    std::deque<std::size_t> frontier{x};
    while (!frontier.empty()) {
      const std::size_t z = frontier.front();
      frontier.pop_front();
      const auto dz = space.digits(z);
      for (std::size_t i = 0; i < dims; ++i) {
        if (!may_move[i] || dz[i] + 1 >= space.cardinalities()[i]) continue;
        const std::size_t next = z + space.stride(i);
        if (seen[next]) continue;
        seen[next] = true;
        if (positive(next))
          covers.push_back(next);
        else
          frontier.push_back(next);
      }
    }
    std::sort(covers.begin(), covers.end());
    for (std::size_t y : covers)
      if (check(x, y)) break;
  }
  return verdict;
}

OracleVerdict decide_mid(const Network& net, Direction direction,
                         const OracleOptions& options) {
  return decide(net, Property::Mid, direction, options);
}

OracleVerdict decide_mim(const Network& net, Direction direction,
                         const OracleOptions& options) {
  return decide(net, Property::Mim, direction, options);
}

}  // namespace monobn
