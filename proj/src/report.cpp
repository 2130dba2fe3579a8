#include "monobn/report.hpp"

#include <iomanip>

namespace monobn {
namespace {

using nlohmann::json;

json names_json(const Network& net, const std::vector<VarId>& vars) {
  json out = json::array();
  for (VarId v : vars) out.push_back(net.variable(v).name);
  return out;
}

std::string sign_str(Sign s) { return std::string(to_string(s)); }

std::string name_list(const Network& net, const std::vector<VarId>& vars) {
  std::string out;
  for (VarId v : vars) out += (out.empty() ? "" : ", ") + net.variable(v).name;
  return out.empty() ? "-" : out;
}

}  // namespace

json assignment_json(const Network& net, const Assignment& a) {
  json out = json::object();
  for (auto [var, value] : a.bindings())
    out[net.variable(var).name] = net.variable(var).values.at(value);
  return out;
}

json distribution_json(const Network& net, const Distribution& d) {
  json probs = json::object();
  const Variable& var = net.variable(d.variable);
  json values = json::array();
  for (std::size_t i = 0; i < d.probs.size(); ++i)
    values.push_back({{"value", var.values[i]}, {"probability", d.probs[i]}});
  return {{"variable", var.name}, {"distribution", values}, {"cdf", cdf(d)},
          {"mode", var.values[mode(d)]}};
}

json verdict_json(const Network& net, const OracleVerdict& v) {
  json out = {{"property", to_string(v.property)},
              {"direction", to_string(v.direction)},
              {"holds", v.holds},
              {"counterexample", nullptr},
              {"zero_probability_assignments", json::array()},
              {"skipped_pairs", v.skipped_pairs},
              {"checked_pairs", v.checked_pairs}};
  if (v.counterexample) {
    const Counterexample& cx = *v.counterexample;
    json c = {{"lower", assignment_json(net, cx.lower)},
              {"upper", assignment_json(net, cx.upper)},
              {"lower_posterior", cx.lower_posterior.probs},
              {"upper_posterior", cx.upper_posterior.probs},
              {"cdf_index", nullptr},
              {"lower_mode", nullptr},
              {"upper_mode", nullptr}};
    if (cx.cdf_index) c["cdf_index"] = *cx.cdf_index;
    if (cx.lower_mode) c["lower_mode"] = *cx.lower_mode;
    if (cx.upper_mode) c["upper_mode"] = *cx.upper_mode;
    out["counterexample"] = std::move(c);
  }
  for (const auto& a : v.zero_probability_assignments)
    out["zero_probability_assignments"].push_back(assignment_json(net, a));
  return out;
}

json signs_json(const Network& net, const ApproxReport& r) {
  json arcs = json::array();
  for (const ArcSign& a : r.arc_signs)
    arcs.push_back({{"parent", net.variable(a.parent).name},
                    {"child", net.variable(a.child).name},
                    {"sign", sign_str(a.sign)}});
  json obs = json::array();
  for (const ObservableSign& o : r.observables)
    obs.push_back({{"variable", net.variable(o.variable).name},
                   {"propagated_sign", sign_str(o.propagated)}});
  return {{"output", net.variable(net.output()).name}, {"arc_signs", arcs}, {"observables", obs}};
}

json approx_report_json(const Network& net, const ApproxReport& r) {
  json out = signs_json(net, r);
  for (std::size_t i = 0; i < r.observables.size(); ++i)
    out["observables"][i]["sign"] = sign_str(r.observables[i].final_sign);
  out["verdict"] = {{"kind", to_string(r.verdict.kind)},
                    {"isotone", names_json(net, r.verdict.isotone)},
                    {"antitone", names_json(net, r.verdict.antitone)},
                    {"both", names_json(net, r.verdict.both)},
                    {"inconclusive", names_json(net, r.verdict.inconclusive)}};
  json log = json::array();
  for (const auto& e : r.refinement_log)
    log.push_back({{"variable", net.variable(e.variable).name},
                   {"before", sign_str(e.before)},
                   {"after", sign_str(e.after)},
                   {"detail", e.detail}});
  out["refinement_log"] = log;
  return out;
}

void print_verdict(std::ostream& os, const Network& net, const OracleVerdict& v) {
  os << "property: " << to_string(v.property) << '\n'
     << "direction: " << to_string(v.direction) << '\n'
     << "holds: " << (v.holds ? "true" : "false") << '\n';
  if (v.holds && !v.zero_probability_assignments.empty())
    os << "note: holds (with " << v.zero_probability_assignments.size()
       << " unobservable assignments skipped)\n";
  for (const auto& a : v.zero_probability_assignments)
    os << "zero-probability: " << format_assignment(net, a) << '\n';
  os << "checked pairs: " << v.checked_pairs << ", skipped pairs: " << v.skipped_pairs << '\n';
  if (!v.counterexample) return;
  const Counterexample& cx = *v.counterexample;
  const Variable& out_var = net.variable(net.output());
  auto probs = [&](const Distribution& d) {
    std::ostringstream s;
    s << '(';
    for (std::size_t i = 0; i < d.probs.size(); ++i) s << (i ? ", " : "") << d.probs[i];
    s << ')';
    return s.str();
  };
  os << "counterexample:\n"
     << "  x  = " << format_assignment(net, cx.lower) << "  Pr(" << out_var.name
     << " | x)  = " << probs(cx.lower_posterior) << '\n'
     << "  x' = " << format_assignment(net, cx.upper) << "  Pr(" << out_var.name
     << " | x') = " << probs(cx.upper_posterior) << '\n';
  if (cx.cdf_index)
    os << "  cdf fails at " << out_var.name << " <= " << out_var.values[*cx.cdf_index] << '\n';
  if (cx.lower_mode && cx.upper_mode)
    os << "  modes: " << out_var.values[*cx.lower_mode] << " vs "
       << out_var.values[*cx.upper_mode] << '\n';
}

void print_signs(std::ostream& os, const Network& net, const ApproxReport& r) {
  os << "arc signs:\n";
  for (const ArcSign& a : r.arc_signs)
    os << "  " << net.variable(a.parent).name << " -> " << net.variable(a.child).name << ": "
       << to_string(a.sign) << '\n';
  os << "net influence on " << net.variable(net.output()).name << ":\n";
  for (const ObservableSign& o : r.observables)
    os << "  " << net.variable(o.variable).name << ": " << to_string(o.propagated) << '\n';
}

void print_approx_report(std::ostream& os, const Network& net, const ApproxReport& r) {
  print_signs(os, net, r);
  for (const auto& e : r.refinement_log)
    os << "refined " << net.variable(e.variable).name << ": " << to_string(e.before) << " -> "
       << to_string(e.after) << " (" << e.detail << ")\n";
  os << "isotone: " << name_list(net, r.verdict.isotone) << '\n'
     << "antitone: " << name_list(net, r.verdict.antitone) << '\n'
     << "both: " << name_list(net, r.verdict.both) << '\n'
     << "inconclusive: " << name_list(net, r.verdict.inconclusive) << '\n'
     << "verdict: " << to_string(r.verdict.kind) << '\n';
}

void print_distribution(std::ostream& os, const Network& net, const Distribution& d) {
  const Variable& var = net.variable(d.variable);
  const auto f = cdf(d);
  os << std::setprecision(12);
  for (std::size_t i = 0; i < d.probs.size(); ++i)
    os << var.name << '=' << var.values[i] << ": " << d.probs[i] << "  (cdf " << f[i] << ")\n";
  os << "mode: " << var.values[mode(d)] << '\n';
}

}  // namespace monobn
