#include "monobn/qualitative.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "monobn/inference.hpp"
#include "monobn/simd.hpp"

namespace monobn {

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::Plus: return "+";
    case Sign::Minus: return "-";
    case Sign::Zero: return "0";
    case Sign::Unknown: return "?";
  }
  return "?";
}

std::optional<Sign> parse_sign(std::string_view text) {
  if (text == "+") return Sign::Plus;
  if (text == "-") return Sign::Minus;
  if (text == "0") return Sign::Zero;
  if (text == "?") return Sign::Unknown;
  return std::nullopt;
}

namespace {

// Rows and columns ordered +, -, 0, ?.
constexpr Sign kProduct[4][4] = {
    {Sign::Plus, Sign::Minus, Sign::Zero, Sign::Unknown},
    {Sign::Minus, Sign::Plus, Sign::Zero, Sign::Unknown},
    {Sign::Zero, Sign::Zero, Sign::Zero, Sign::Zero},
    {Sign::Unknown, Sign::Unknown, Sign::Zero, Sign::Unknown},
};

constexpr Sign kSum[4][4] = {
    {Sign::Plus, Sign::Unknown, Sign::Plus, Sign::Unknown},
    {Sign::Unknown, Sign::Minus, Sign::Minus, Sign::Unknown},
    {Sign::Plus, Sign::Minus, Sign::Zero, Sign::Unknown},
    {Sign::Unknown, Sign::Unknown, Sign::Unknown, Sign::Unknown},
};

Sign sign_from_flags(bool nonincreasing_cdf, bool nondecreasing_cdf) {
  if (nonincreasing_cdf && nondecreasing_cdf) return Sign::Zero;
  if (nonincreasing_cdf) return Sign::Plus;
  if (nondecreasing_cdf) return Sign::Minus;
  return Sign::Unknown;
}

}  // namespace

Sign sign_product(Sign a, Sign b) {
  return kProduct[static_cast<int>(a)][static_cast<int>(b)];
}

Sign sign_sum(Sign a, Sign b) { return kSum[static_cast<int>(a)][static_cast<int>(b)]; }

Sign combine_observations(std::span<const Sign> effects) {
  Sign acc = Sign::Zero;
  for (Sign s : effects) acc = sign_sum(acc, s);
  return acc;
}

Sign arc_sign(const Network& net, VarId parent, VarId child) {
  if (!net.has_arc(parent, child))
    throw std::invalid_argument("arc_sign: no arc " + net.variable(parent).name + " -> " +
                                net.variable(child).name);
  const Cpt& cpt = net.cpt(child);
  const AssignmentSpace rows(net, cpt.parents);
  const auto pos = static_cast<std::size_t>(
      std::find(cpt.parents.begin(), cpt.parents.end(), parent) - cpt.parents.begin());
  const std::size_t stride = rows.stride(pos);
  const std::size_t values = net.cardinality(parent);

  std::vector<std::vector<double>> cdfs(values, std::vector<double>(cpt.cardinality));
  bool plus = true;
  bool minus = true;
  for (std::size_t base = 0; base < rows.size(); ++base) {
    if (rows.digits(base)[pos] != 0) continue;  // one pass per context
    for (std::size_t v = 0; v < values; ++v)
      simd::prefix_sum(cpt.row(base + v * stride), cdfs[v]);
    for (std::size_t lo = 0; lo < values; ++lo) {
      for (std::size_t hi = lo + 1; hi < values; ++hi) {
        plus &= simd::max_difference(cdfs[hi], cdfs[lo]) <= kTolerance;
        minus &= simd::max_difference(cdfs[lo], cdfs[hi]) <= kTolerance;
      }
    }
  }
  return sign_from_flags(plus, minus);
}

Sign likelihood_ratio_sign(const Network& net, VarId parent, VarId child, Sign arc) {
  if (arc == Sign::Zero || arc == Sign::Unknown || net.cardinality(child) == 2) return arc;
  if (net.parents(child).size() != 1) return Sign::Unknown;
  // Single parent: likelihood-ratio order, every 2x2 minor of the kernel.
  const Cpt& cpt = net.cpt(child);
  const std::size_t values = net.cardinality(parent);
  const std::size_t k = cpt.cardinality;
  bool plus = true;
  bool minus = true;
  for (std::size_t lo = 0; lo < values; ++lo)
    for (std::size_t hi = lo + 1; hi < values; ++hi) {
      const auto a = cpt.row(lo);
      const auto b = cpt.row(hi);
      for (std::size_t q = 0; q < k; ++q)
        for (std::size_t r = q + 1; r < k; ++r) {
          const double minor = a[q] * b[r] - a[r] * b[q];
          plus &= minor >= -kTolerance;
          minus &= minor <= kTolerance;
        }
    }
  const Sign ratio = sign_from_flags(plus, minus);
  return ratio == Sign::Zero || ratio == arc ? arc : Sign::Unknown;
}

std::vector<ArcSign> arc_signs(const Network& net) {
  std::vector<ArcSign> out;
  for (auto [p, c] : net.arcs()) out.push_back({p, c, arc_sign(net, p, c)});
  return out;
}

namespace {

enum class Arrival : std::uint8_t { FromParent, FromChild };

struct Message {
  VarId to;
  VarId from;
  Arrival arrival;
};

}  // namespace

// Node-sign messages over non-backtracking active trails. Each state is a
// (receiver, sender, direction) triple holding the ⊕ of every message that
// arrived along it; a state is re-expanded only when its sign changes, so
// every state is expanded at most twice. Observed variables block serial
// and diverging connections. A converging connection passes messages only
// when the collider or a descendant is observed, and then with sign '?'
// because intercausal effects are not tracked.
PropagationResult propagate(const Network& net, std::span<const ArcSign> arcs, VarId source,
                            std::span<const VarId> observed_vars) {
  const std::size_t n = net.size();
  std::map<std::pair<VarId, VarId>, Sign> arc_lookup;
  for (const ArcSign& a : arcs) arc_lookup[{a.parent, a.child}] = a.sign;
  auto arc = [&](VarId p, VarId c) {
    auto it = arc_lookup.find({p, c});
    if (it == arc_lookup.end()) throw std::invalid_argument("propagate: missing arc sign");
    return it->second;
  };
  std::map<std::pair<VarId, VarId>, Sign> ratio_lookup;
  auto ratio = [&](VarId p, VarId c) {
    auto it = ratio_lookup.find({p, c});
    if (it == ratio_lookup.end())
      it = ratio_lookup.emplace(std::make_pair(p, c), likelihood_ratio_sign(net, p, c, arc(p, c)))
               .first;
    return it->second;
  };
  auto binary = [&](VarId v) { return net.cardinality(v) == 2; };

  std::vector<bool> observed(n, false);
  for (VarId v : observed_vars)
    if (v != source) observed.at(v) = true;
  std::vector<bool> activates(n, false);  // observed, or has an observed descendant
  for (VarId v = 0; v < n; ++v) {
    if (!observed[v] && v != source) continue;
    activates[v] = true;
    std::vector<VarId> stack{v};
    while (!stack.empty()) {
      VarId u = stack.back();
      stack.pop_back();
      for (VarId p : net.parents(u))
        if (!activates[p]) activates[p] = true, stack.push_back(p);
    }
  }

  PropagationResult result;
  result.signs.assign(n, Sign::Zero);
  result.signs.at(source) = Sign::Plus;

  // A message is strong when the posterior it describes moves in likelihood
  // ratio order, not only in stochastic dominance. Every message into a binary
  // node is strong. Evidence below a larger node reweights it, which keeps
  // the likelihood-ratio order but can break dominance, so weak messages into
  // such nodes decay to '?'.
  struct State {
    Sign sign = Sign::Zero;
    bool strong = true;
  };
  std::map<std::tuple<VarId, VarId, Arrival>, State> states;
  std::deque<std::tuple<VarId, VarId, Arrival>> work;

  auto deliver = [&](const Message& m, Sign s, bool strong) {
    if (m.to == source || s == Sign::Zero) return;
    if (binary(m.to)) strong = true;
    if (!strong && activates[m.to]) s = Sign::Unknown;
    ++result.messages;
    const auto key = std::make_tuple(m.to, m.from, m.arrival);
    State& state = states.try_emplace(key).first->second;
    const Sign updated = sign_sum(state.sign, s);
    const bool both = state.strong && strong;
    if (updated == state.sign && both == state.strong) return;
    state = {updated, both};
    work.push_back(key);
    if (!observed[m.to]) {
      const Sign node = sign_sum(result.signs[m.to], s);
      if (node != result.signs[m.to]) {
        result.signs[m.to] = node;
        ++result.node_updates;
      }
    }
  };
  // Child to parent: the likelihood-ratio sign, and only from a strong
  // message when the child is not binary.
  auto up = [&](VarId p, VarId child, Sign s, bool strong) {
    const Sign r = ratio(p, child);
    deliver({p, child, Arrival::FromChild},
            sign_product(s, binary(child) || strong || r == Sign::Zero ? r : Sign::Unknown), true);
  };
  // Parent to child: the dominance sign stays valid unless evidence below
  // the child reweights it, which needs the likelihood-ratio sign.
  auto down = [&](VarId parent, VarId c, Sign s, bool strong) {
    const Sign a = arc(parent, c);
    const Sign r = ratio(parent, c);
    const bool keeps = r == a && (r == Sign::Plus || r == Sign::Minus);
    deliver({c, parent, Arrival::FromParent}, sign_product(s, activates[c] ? r : a),
            strong && keeps);
  };

  for (VarId c : net.children(source)) down(source, c, Sign::Plus, true);
  for (VarId p : net.parents(source)) up(p, source, Sign::Plus, true);

  while (!work.empty()) {
    const auto key = work.front();
    work.pop_front();
    const auto [node, from, arrival] = key;
    const auto [s, strong] = states.at(key);
    if (observed[node]) {
      if (arrival == Arrival::FromParent)
        for (VarId p : net.parents(node))
          if (p != from) deliver({p, node, Arrival::FromChild}, sign_product(s, Sign::Unknown), true);
      continue;
    }
    if (arrival == Arrival::FromChild) {
      for (VarId p : net.parents(node))
        if (p != from) up(p, node, s, strong);
      for (VarId c : net.children(node))
        if (c != from) down(node, c, s, strong);
    } else {
      for (VarId c : net.children(node)) down(node, c, s, strong);
      if (activates[node])
        for (VarId p : net.parents(node))
          if (p != from) deliver({p, node, Arrival::FromChild}, sign_product(s, Sign::Unknown), true);
    }
  }
  return result;
}

PropagationResult propagate(const Network& net, VarId source) {
  const auto arcs = arc_signs(net);
  std::vector<VarId> observed;
  for (VarId v : net.observables())
    if (v != source) observed.push_back(v);
  return propagate(net, arcs, source, observed);
}

namespace {

// max Σ c[t]·q[t] subject to lo ≤ q ≤ hi and Σ q = 1. The optimum sits at a
// vertex of the box ∩ simplex; the greedy fill reaches it directly.
double box_simplex_max(std::span<const double> c, std::span<const double> lo,
                       std::span<const double> hi) {
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
  double value = simd::dot(c, lo);
  double remaining = 1.0 - simd::sum(lo);
  for (std::size_t t : order) {
    if (remaining <= 0.0) break;
    const double add = std::min(remaining, hi[t] - lo[t]);
    value += add * c[t];
    remaining -= add;
  }
  return value;
}

double box_simplex_min(std::span<const double> c, std::span<const double> lo,
                       std::span<const double> hi) {
  std::vector<double> neg(c.begin(), c.end());
  for (double& x : neg) x = -x;
  return -box_simplex_max(neg, lo, hi);
}

struct Box {
  bool seen = false;
  std::vector<double> lo;
  std::vector<double> hi;

  void widen(std::size_t n) {
    seen = true;
    lo.assign(n, 0.0);
    hi.assign(n, 1.0);
  }
  void include(std::span<const double> q) {
    if (!seen) {
      seen = true;
      lo.assign(q.begin(), q.end());
      hi.assign(q.begin(), q.end());
      return;
    }
    for (std::size_t t = 0; t < q.size(); ++t) {
      lo[t] = std::min(lo[t], q[t]);
      hi[t] = std::max(hi[t], q[t]);
    }
  }
};

std::string names(const Network& net, const std::vector<VarId>& vars) {
  std::string out = "{";
  for (VarId v : vars) out += (out.size() > 1 ? "," : "") + net.variable(v).name;
  return out + "}";
}

}  // namespace

Refinement refine(const Network& net, VarId source, std::size_t budget) {
  Refinement out;
  if (budget == 0) {
    out.detail = "no refinement budget";
    return out;
  }
  const VarId output = net.output();
  const auto& obs = net.observables();
  for (VarId o : obs) {
    if (net.is_ancestor(output, o)) {
      out.detail = "not applicable: observable " + net.variable(o).name +
                   " is a descendant of the output";
      return out;
    }
  }

  const auto& parents = net.parents(output);
  const bool source_is_parent =
      std::find(parents.begin(), parents.end(), source) != parents.end();
  std::vector<VarId> observed_parents;
  std::vector<VarId> hidden_parents;
  for (VarId p : parents) {
    if (p == source) continue;
    (net.role(p) == Role::Observable ? observed_parents : hidden_parents).push_back(p);
  }

  // Observables that can shift the hidden context once the source is known.
  std::vector<VarId> relevant;
  for (VarId o : obs)
    if (o != source) relevant.push_back(o);
  if (hidden_parents.empty()) relevant.clear();
  for (VarId candidate : std::vector<VarId>(relevant)) {
    std::vector<VarId> given{source};
    for (VarId r : relevant)
      if (r != candidate) given.push_back(r);
    if (d_separated(net, hidden_parents, {candidate}, given))
      relevant.erase(std::find(relevant.begin(), relevant.end(), candidate));
  }
  const bool coupled =
      hidden_parents.empty() || d_separated(net, hidden_parents, {source}, relevant);

  std::vector<VarId> enum_scope = relevant;
  for (VarId p : observed_parents)
    if (std::find(enum_scope.begin(), enum_scope.end(), p) == enum_scope.end())
      enum_scope.push_back(p);
  const AssignmentSpace enum_space(net, enum_scope);
  const AssignmentSpace group_space(net, observed_parents);
  const AssignmentSpace context_space(net, hidden_parents);
  const std::size_t source_values = net.cardinality(source);
  const std::size_t box_slots = coupled ? 1 : source_values;

  std::vector<std::vector<Box>> boxes(group_space.size(), std::vector<Box>(box_slots));
  out.required = hidden_parents.empty() ? 0 : enum_space.size() * box_slots;
  if (hidden_parents.empty()) {
    for (auto& group : boxes)
      for (Box& b : group) b.include(std::vector<double>{1.0});
  } else if (out.required > budget) {
    out.widened = true;
    for (auto& group : boxes)
      for (Box& b : group) b.widen(context_space.size());
  } else {
    for (std::size_t y = 0; y < enum_space.size(); ++y) {
      const Assignment full = enum_space.at(y);
      Assignment group_values;
      for (VarId p : observed_parents) group_values.bind(p, full.at(p));
      Assignment evidence;
      for (VarId r : relevant) evidence.bind(r, full.at(r));
      const std::size_t g = group_space.rank(group_values);
      for (std::size_t slot = 0; slot < box_slots; ++slot) {
        Assignment e = evidence;
        if (!coupled) e.bind(source, slot);
        ++out.enumerated;
        try {
          const Factor q = joint_posterior(net, e, hidden_parents);
          boxes[g][slot].include(q.table());
        } catch (const ZeroEvidenceError&) {
        }
      }
    }
  }

  // CDF of the output for a given source value, observed-parent group and
  // hidden context.
  const Cpt& cpt = net.cpt(output);
  const AssignmentSpace cpt_rows(net, cpt.parents);
  const std::size_t k = cpt.cardinality;
  auto output_cdf = [&](std::size_t v, const Assignment& group, std::size_t t) {
    Assignment row = group.merged(context_space.at(t));
    if (source_is_parent) row.bind(source, v);
    std::vector<double> f(k);
    simd::prefix_sum(cpt.row(cpt_rows.rank(row)), f);
    return f;
  };

  bool plus = true;
  bool minus = true;
  const std::size_t contexts = context_space.size();
  for (std::size_t g = 0; g < group_space.size(); ++g) {
    const Assignment group = group_space.at(g);
    for (std::size_t lo_v = 0; lo_v < source_values; ++lo_v) {
      for (std::size_t hi_v = lo_v + 1; hi_v < source_values; ++hi_v) {
        const Box& lo_box = boxes[g][coupled ? 0 : lo_v];
        const Box& hi_box = boxes[g][coupled ? 0 : hi_v];
        if (!lo_box.seen || !hi_box.seen) continue;  // impossible situation
        std::vector<std::vector<double>> f_lo(contexts), f_hi(contexts);
        for (std::size_t t = 0; t < contexts; ++t) {
          f_lo[t] = output_cdf(lo_v, group, t);
          f_hi[t] = output_cdf(hi_v, group, t);
        }
        for (std::size_t w = 0; w + 1 < k; ++w) {
          std::vector<double> a(contexts), b(contexts);
          for (std::size_t t = 0; t < contexts; ++t) {
            a[t] = f_hi[t][w];
            b[t] = f_lo[t][w];
          }
          double max_d = 0.0;
          double min_d = 0.0;
          if (coupled) {
            std::vector<double> diff(contexts);
            for (std::size_t t = 0; t < contexts; ++t) diff[t] = a[t] - b[t];
            max_d = box_simplex_max(diff, lo_box.lo, lo_box.hi);
            min_d = box_simplex_min(diff, lo_box.lo, lo_box.hi);
          } else {
            max_d = box_simplex_max(a, hi_box.lo, hi_box.hi) -
                    box_simplex_min(b, lo_box.lo, lo_box.hi);
            min_d = box_simplex_min(a, hi_box.lo, hi_box.hi) -
                    box_simplex_max(b, lo_box.lo, lo_box.hi);
          }
          plus &= max_d <= kTolerance;
          minus &= min_d >= -kTolerance;
        }
      }
    }
  }
  out.sign = sign_from_flags(plus, minus);

  out.detail = "context " + names(net, hidden_parents) + " bounded over " +
               names(net, relevant) + (coupled ? " (shared)" : " (per source value)");
  if (out.widened)
    out.detail += "; budget " + std::to_string(budget) + " below " +
                  std::to_string(out.required) + ", bounds widened to [0,1]";
  else
    out.detail += "; " + std::to_string(out.enumerated) + " exact evaluations";
  return out;
}

Sign refine_sign(const Network& net, VarId source, std::size_t budget) {
  return refine(net, source, budget).sign;
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::IsotoneInDistribution: return "IsotoneInDistribution";
    case VerdictKind::AntitoneInDistribution: return "AntitoneInDistribution";
    case VerdictKind::Both: return "Both";
    case VerdictKind::Mixed: return "Mixed";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

AggregateVerdict aggregate_verdict(std::span<const std::pair<VarId, Sign>> signs) {
  AggregateVerdict v;
  for (auto [var, s] : signs) {
    switch (s) {
      case Sign::Plus: v.isotone.push_back(var); break;
      case Sign::Minus: v.antitone.push_back(var); break;
      case Sign::Zero: v.both.push_back(var); break;
      case Sign::Unknown: v.inconclusive.push_back(var); break;
    }
  }
  if (!v.inconclusive.empty())
    v.kind = VerdictKind::Inconclusive;
  else if (v.isotone.empty() && v.antitone.empty())
    v.kind = VerdictKind::Both;
  else if (v.antitone.empty())
    v.kind = VerdictKind::IsotoneInDistribution;
  else if (v.isotone.empty())
    v.kind = VerdictKind::AntitoneInDistribution;
  else
    v.kind = VerdictKind::Mixed;
  return v;
}

ApproxReport approx_verdict(const Network& net, std::size_t refine_budget) {
  ApproxReport report;
  report.arc_signs = arc_signs(net);
  std::vector<std::pair<VarId, Sign>> finals;
  for (VarId x : net.observables()) {
    std::vector<VarId> observed;
    for (VarId o : net.observables())
      if (o != x) observed.push_back(o);
    const auto prop = propagate(net, report.arc_signs, x, observed);
    const Sign propagated = prop.signs[net.output()];
    Sign final_sign = propagated;
    if (propagated == Sign::Unknown && refine_budget > 0) {
      Refinement r = refine(net, x, refine_budget);
      final_sign = r.sign;
      report.refinement_log.push_back({x, propagated, r.sign, std::move(r.detail)});
    }
    report.observables.push_back({x, propagated, final_sign});
    finals.emplace_back(x, final_sign);
  }
  report.verdict = aggregate_verdict(finals);
  return report;
}

}  // namespace monobn
