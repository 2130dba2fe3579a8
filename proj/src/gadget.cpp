#include "monobn/gadget.hpp"

#include <stdexcept>

#include "monobn/inference.hpp"

namespace monobn {

double gadget_a_given_not_e(double threshold) { return (0.5 - threshold) / (1.0 - threshold); }

Network build_gadget(const GadgetSpec& spec) {
  const double p = spec.threshold;
  if (!(p >= 0.0 && p < 0.5))
    throw std::invalid_argument("gadget threshold p must satisfy 0 <= p < 1/2 (got " +
                                std::to_string(p) + ")");
  const Network& base = spec.base;
  const auto e_id = base.find(spec.evidence_variable);
  if (!e_id) throw std::invalid_argument("unknown evidence variable '" + spec.evidence_variable + "'");
  const Variable& e_var = base.variable(*e_id);
  if (base.role(*e_id) == Role::Observable)
    throw std::invalid_argument("evidence variable '" + e_var.name + "' must not be observable");
  if (e_var.cardinality() != 2)
    throw std::invalid_argument("evidence variable '" + e_var.name + "' must be binary");
  const auto e_value = e_var.value_index(spec.evidence_value);
  if (!e_value)
    throw std::invalid_argument("evidence variable '" + e_var.name + "' has no value '" +
                                spec.evidence_value + "'");
  for (const auto& name : {kGadgetA, kGadgetB, kGadgetC})
    if (base.find(name)) throw std::invalid_argument("name collision: '" + name + "' exists");

  NetworkDraft d = base.to_draft();
  for (auto& entry : d.roles)
    if (entry.role == Role::Output) entry.role = Role::Intermediate;

  d.variables.push_back({kGadgetA, {"no", "yes"}});
  d.variables.push_back({kGadgetB, {"no", "yes"}});
  d.variables.push_back({kGadgetC, {"no", "yes"}});
  d.arcs.push_back({e_var.name, kGadgetA});
  d.arcs.push_back({kGadgetA, kGadgetC});
  d.arcs.push_back({kGadgetB, kGadgetC});
  d.roles.push_back({kGadgetA, Role::Intermediate});
  d.roles.push_back({kGadgetB, Role::Observable});
  d.roles.push_back({kGadgetC, Role::Output});

  const double r = gadget_a_given_not_e(p);
  NetworkDraft::CptEntry a{kGadgetA, {}};
  for (std::size_t ev = 0; ev < 2; ++ev) {
    const double pa = ev == *e_value ? 1.0 : r;
    a.rows.push_back({1.0 - pa, pa});
  }
  d.cpts.push_back(std::move(a));
  d.cpts.push_back({kGadgetB, {{0.5, 0.5}}});
  // Rows over (A, B): (no,no) (no,yes) (yes,no) (yes,yes).
  d.cpts.push_back({kGadgetC, {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}}});
  return Network::from_draft(d);
}

CondMapResult condmap_exceeds(const Network& net, VarId evidence_variable,
                              std::size_t evidence_value, double threshold) {
  if (net.role(evidence_variable) == Role::Observable)
    throw std::invalid_argument("condmap_exceeds: evidence variable is observable");
  if (evidence_value >= net.cardinality(evidence_variable))
    throw std::invalid_argument("condmap_exceeds: evidence value out of range");
  CondMapResult result;
  const AssignmentSpace space(net, net.observables());
  for (std::size_t r = 0; r < space.size(); ++r) {
    const Assignment x = space.at(r);
    double q = 0.0;
    try {
      q = posterior(net, x, evidence_variable).probs[evidence_value];
    } catch (const ZeroEvidenceError&) {
      continue;
    }
    result.max_probability = std::max(result.max_probability, q);
    if (q > threshold && !result.exceeds) {
      result.exceeds = true;
      result.witness = x;
    }
  }
  return result;
}

}  // namespace monobn
