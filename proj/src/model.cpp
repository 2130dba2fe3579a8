#include "monobn/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace monobn {

ValidationError::ValidationError(ValidationReport report)
    : Error([&] {
        std::string msg = "network validation failed";
        for (const auto& v : report) msg += "\n  " + v.location + ": " + v.message;
        return msg;
      }()),
      report_(std::move(report)) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            what),
      line_(line),
      column_(column) {}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Observable: return "observable";
    case Role::Intermediate: return "intermediate";
    case Role::Output: return "output";
  }
  return "?";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "observable") return Role::Observable;
  if (text == "intermediate") return Role::Intermediate;
  if (text == "output") return Role::Output;
  return std::nullopt;
}

std::optional<std::size_t> Variable::value_index(std::string_view label) const {
  auto it = std::find(values.begin(), values.end(), label);
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Kahn's algorithm over declaration indices. Returns fewer than n ids when
// the arc relation has a cycle.
std::vector<VarId> topological_sort(std::size_t n,
                                    const std::vector<std::vector<VarId>>& children,
                                    std::vector<std::size_t> indegree) {
  std::priority_queue<VarId, std::vector<VarId>, std::greater<>> ready;
  for (VarId v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<VarId> order;
  order.reserve(n);
  while (!ready.empty()) {
    VarId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (VarId c : children[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  return order;
}

struct Resolved {
  std::map<std::string, VarId, std::less<>> ids;
  std::vector<std::vector<VarId>> parents;
  std::vector<std::vector<VarId>> children;
};

}  // namespace

ValidationReport validate_network(const NetworkDraft& draft) {
  ValidationReport report;
  auto add = [&](std::string location, std::string message) {
    report.push_back({std::move(location), std::move(message)});
  };

  Resolved r;
  const std::size_t n = draft.variables.size();
  if (n == 0) add("variables", "network declares no variables");
  for (VarId i = 0; i < n; ++i) {
    const Variable& var = draft.variables[i];
    const std::string loc = "var " + var.name;
    if (var.name.empty()) add("var #" + std::to_string(i), "empty variable name");
    if (!r.ids.emplace(var.name, i).second) add(loc, "duplicate variable name");
    if (var.values.size() < 2) add(loc, "at least 2 values required");
    std::set<std::string_view> seen;
    for (const auto& label : var.values) {
      if (label.empty()) add(loc, "empty value label");
      if (!seen.insert(label).second) add(loc, "duplicate value label '" + label + "'");
    }
  }

  r.parents.assign(n, {});
  r.children.assign(n, {});
  std::set<std::pair<VarId, VarId>> arc_set;
  for (const auto& arc : draft.arcs) {
    const std::string loc = "arc " + arc.parent + " -> " + arc.child;
    auto p = r.ids.find(arc.parent);
    auto c = r.ids.find(arc.child);
    if (p == r.ids.end()) add(loc, "unknown variable '" + arc.parent + "'");
    if (c == r.ids.end()) add(loc, "unknown variable '" + arc.child + "'");
    if (p == r.ids.end() || c == r.ids.end()) continue;
    if (p->second == c->second) {
      add(loc, "self loop");
      continue;
    }
    if (!arc_set.emplace(p->second, c->second).second) {
      add(loc, "duplicate arc");
      continue;
    }
    r.parents[c->second].push_back(p->second);
    r.children[p->second].push_back(c->second);
  }
  for (auto& ps : r.parents) std::sort(ps.begin(), ps.end());
  for (auto& cs : r.children) std::sort(cs.begin(), cs.end());

  std::vector<std::size_t> indegree(n);
  for (VarId v = 0; v < n; ++v) indegree[v] = r.parents[v].size();
  if (topological_sort(n, r.children, indegree).size() != n) add("arcs", "cycle detected");

  std::vector<std::optional<Role>> roles(n);
  for (const auto& entry : draft.roles) {
    auto it = r.ids.find(entry.variable);
    if (it == r.ids.end()) {
      add("role " + entry.variable, "unknown variable '" + entry.variable + "'");
      continue;
    }
    if (roles[it->second]) {
      add("role " + entry.variable, "variable has more than one role");
      continue;
    }
    roles[it->second] = entry.role;
  }
  std::size_t outputs = 0;
  std::size_t observables = 0;
  for (VarId v = 0; v < n; ++v) {
    if (!roles[v]) {
      add("role " + draft.variables[v].name, "variable has no role");
      continue;
    }
    outputs += *roles[v] == Role::Output;
    observables += *roles[v] == Role::Observable;
  }
  if (n > 0 && outputs != 1) add("roles", "exactly one output variable required");
  if (n > 0 && observables == 0) add("roles", "at least one observable variable required");

  std::vector<const NetworkDraft::CptEntry*> cpts(n, nullptr);
  for (const auto& entry : draft.cpts) {
    auto it = r.ids.find(entry.variable);
    if (it == r.ids.end()) {
      add("cpt " + entry.variable, "unknown variable '" + entry.variable + "'");
      continue;
    }
    if (cpts[it->second]) {
      add("cpt " + entry.variable, "duplicate cpt");
      continue;
    }
    cpts[it->second] = &entry;
  }
  for (VarId v = 0; v < n; ++v) {
    const Variable& var = draft.variables[v];
    const std::string loc = "cpt " + var.name;
    if (!cpts[v]) {
      add(loc, "missing cpt");
      continue;
    }
    std::size_t expected_rows = 1;
    for (VarId p : r.parents[v]) expected_rows *= draft.variables[p].cardinality();
    const auto& rows = cpts[v]->rows;
    if (rows.size() != expected_rows) {
      add(loc, "expected " + std::to_string(expected_rows) + " rows for variable " +
                   var.name + ", found " + std::to_string(rows.size()));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string row_loc = loc + " row " + std::to_string(i);
      const auto& row = rows[i];
      if (row.size() != var.cardinality()) {
        add(row_loc, "expected " + std::to_string(var.cardinality()) + " entries, found " +
                         std::to_string(row.size()));
        continue;
      }
      bool finite = true;
      for (double p : row) {
        if (!std::isfinite(p) || p < 0.0) {
          add(row_loc, "entry " + format_number(p) + " is not a probability");
          finite = false;
        }
      }
      if (!finite) continue;
      const double sum = std::accumulate(row.begin(), row.end(), 0.0);
      if (std::abs(sum - 1.0) > kTolerance)
        add(row_loc, "row sum " + format_number(sum) + " ≠ 1");
    }
  }
  return report;
}

Network Network::from_draft(const NetworkDraft& draft) {
  if (auto report = validate_network(draft); !report.empty())
    throw ValidationError(std::move(report));

  Network net;
  const std::size_t n = draft.variables.size();
  net.variables_ = draft.variables;
  std::map<std::string, VarId, std::less<>> ids;
  for (VarId i = 0; i < n; ++i) ids.emplace(draft.variables[i].name, i);

  net.cpts_.resize(n);
  net.children_.assign(n, {});
  for (const auto& arc : draft.arcs) {
    VarId p = ids.at(arc.parent);
    VarId c = ids.at(arc.child);
    net.cpts_[c].parents.push_back(p);
    net.children_[p].push_back(c);
  }
  for (auto& cs : net.children_) std::sort(cs.begin(), cs.end());

  net.roles_.resize(n);
  for (const auto& entry : draft.roles) net.roles_[ids.at(entry.variable)] = entry.role;
  for (VarId v = 0; v < n; ++v) {
    switch (net.roles_[v]) {
      case Role::Observable: net.observables_.push_back(v); break;
      case Role::Intermediate: net.intermediates_.push_back(v); break;
      case Role::Output: net.output_ = v; break;
    }
  }

  for (const auto& entry : draft.cpts) {
    Cpt& cpt = net.cpts_[ids.at(entry.variable)];
    std::sort(cpt.parents.begin(), cpt.parents.end());
    cpt.cardinality = net.variables_[ids.at(entry.variable)].cardinality();
    cpt.table.reserve(entry.rows.size() * cpt.cardinality);
    for (const auto& row : entry.rows) {
      const double sum = std::accumulate(row.begin(), row.end(), 0.0);
      for (double p : row) cpt.table.push_back(p / sum);
    }
  }

  std::vector<std::size_t> indegree(n);
  for (VarId v = 0; v < n; ++v) indegree[v] = net.cpts_[v].parents.size();
  net.topo_ = topological_sort(n, net.children_, indegree);
  return net;
}

NetworkDraft Network::to_draft() const {
  NetworkDraft d;
  d.variables = variables_;
  for (auto [p, c] : arcs()) d.arcs.push_back({variables_[p].name, variables_[c].name});
  for (VarId v = 0; v < size(); ++v) {
    d.roles.push_back({variables_[v].name, roles_[v]});
    NetworkDraft::CptEntry entry{variables_[v].name, {}};
    const Cpt& cpt = cpts_[v];
    for (std::size_t r = 0; r < cpt.row_count(); ++r) {
      auto row = cpt.row(r);
      entry.rows.emplace_back(row.begin(), row.end());
    }
    d.cpts.push_back(std::move(entry));
  }
  return d;
}

std::optional<VarId> Network::find(std::string_view name) const {
  for (VarId v = 0; v < variables_.size(); ++v)
    if (variables_[v].name == name) return v;
  return std::nullopt;
}

VarId Network::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

bool Network::has_arc(VarId parent, VarId child) const {
  const auto& ps = cpts_.at(child).parents;
  return std::binary_search(ps.begin(), ps.end(), parent);
}

std::vector<std::pair<VarId, VarId>> Network::arcs() const {
  std::vector<std::pair<VarId, VarId>> out;
  for (VarId c = 0; c < size(); ++c)
    for (VarId p : cpts_[c].parents) out.emplace_back(p, c);
  return out;
}

bool Network::is_ancestor(VarId ancestor, VarId of) const {
  std::vector<bool> seen(size(), false);
  std::vector<VarId> stack{of};
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    for (VarId p : parents(v)) {
      if (p == ancestor) return true;
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return false;
}

void Assignment::bind(VarId var, std::size_t value) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                             [](const auto& b, VarId v) { return b.first < v; });
  if (it != bindings_.end() && it->first == var)
    it->second = value;
  else
    bindings_.insert(it, {var, value});
}

std::optional<std::size_t> Assignment::value_of(VarId var) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                             [](const auto& b, VarId v) { return b.first < v; });
  if (it != bindings_.end() && it->first == var) return it->second;
  return std::nullopt;
}

std::size_t Assignment::at(VarId var) const {
  if (auto v = value_of(var)) return *v;
  throw std::invalid_argument("variable #" + std::to_string(var) + " is not bound");
}

std::vector<VarId> Assignment::scope() const {
  std::vector<VarId> out;
  out.reserve(bindings_.size());
  for (const auto& b : bindings_) out.push_back(b.first);
  return out;
}

Assignment Assignment::merged(const Assignment& other) const {
  Assignment out = *this;
  for (auto [var, value] : other.bindings_) {
    if (auto mine = value_of(var); mine && *mine != value)
      throw std::invalid_argument("conflicting bindings for variable #" + std::to_string(var));
    out.bind(var, value);
  }
  return out;
}

Assignment parse_assignment(const Network& net, std::string_view text) {
  Assignment out;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  while (!trim(text).empty()) {
    auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("expected NAME=VALUE, got '" + std::string(item) + "'");
    VarId var = net.id_of(trim(item.substr(0, eq)));
    std::string_view label = trim(item.substr(eq + 1));
    auto value = net.variable(var).value_index(label);
    if (!value)
      throw std::invalid_argument("variable '" + net.variable(var).name + "' has no value '" +
                                  std::string(label) + "'");
    if (out.contains(var))
      throw std::invalid_argument("variable '" + net.variable(var).name + "' bound twice");
    out.bind(var, *value);
  }
  return out;
}

std::string format_assignment(const Network& net, const Assignment& a) {
  std::string out;
  for (auto [var, value] : a.bindings()) {
    if (!out.empty()) out += ',';
    out += net.variable(var).name + "=" + net.variable(var).values.at(value);
  }
  return out;
}

void check_assignment(const Network& net, const Assignment& a) {
  for (auto [var, value] : a.bindings()) {
    if (var >= net.size())
      throw std::invalid_argument("variable #" + std::to_string(var) + " out of range");
    if (value >= net.cardinality(var))
      throw std::invalid_argument("value index " + std::to_string(value) +
                                  " out of range for " + net.variable(var).name);
  }
}

std::string_view to_string(OrderRelation rel) {
  switch (rel) {
    case OrderRelation::Equal: return "Equal";
    case OrderRelation::LessEq: return "LessEq";
    case OrderRelation::GreaterEq: return "GreaterEq";
    case OrderRelation::Incomparable: return "Incomparable";
  }
  return "?";
}

OrderRelation compare_assignments(const Assignment& x, const Assignment& y) {
  const auto& xb = x.bindings();
  const auto& yb = y.bindings();
  if (xb.size() != yb.size())
    throw std::invalid_argument("compare_assignments: scope mismatch");
  bool some_less = false;
  bool some_greater = false;
  for (std::size_t i = 0; i < xb.size(); ++i) {
    if (xb[i].first != yb[i].first)
      throw std::invalid_argument("compare_assignments: scope mismatch");
    some_less |= xb[i].second < yb[i].second;
    some_greater |= xb[i].second > yb[i].second;
  }
  if (some_less && some_greater) return OrderRelation::Incomparable;
  if (some_less) return OrderRelation::LessEq;
  if (some_greater) return OrderRelation::GreaterEq;
  return OrderRelation::Equal;
}

bool precedes(const Assignment& x, const Assignment& y) {
  auto rel = compare_assignments(x, y);
  return rel == OrderRelation::Equal || rel == OrderRelation::LessEq;
}

AssignmentSpace::AssignmentSpace(const Network& net, std::vector<VarId> scope)
    : scope_(std::move(scope)) {
  std::sort(scope_.begin(), scope_.end());
  if (std::adjacent_find(scope_.begin(), scope_.end()) != scope_.end())
    throw std::invalid_argument("AssignmentSpace: duplicate variable in scope");
  cards_.reserve(scope_.size());
  for (VarId v : scope_) {
    if (v >= net.size()) throw std::invalid_argument("AssignmentSpace: unknown variable");
    cards_.push_back(net.cardinality(v));
  }
  strides_.assign(scope_.size(), 1);
  for (std::size_t i = scope_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ *= cards_[i];
  }
}

std::vector<std::size_t> AssignmentSpace::digits(std::size_t rank) const {
  std::vector<std::size_t> out(scope_.size());
  for (std::size_t i = scope_.size(); i-- > 0;) {
    out[i] = rank % cards_[i];
    rank /= cards_[i];
  }
  return out;
}

std::size_t AssignmentSpace::rank_of_digits(std::span<const std::size_t> digits) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < scope_.size(); ++i) r += digits[i] * strides_[i];
  return r;
}

Assignment AssignmentSpace::at(std::size_t rank) const {
  Assignment a;
  auto d = digits(rank);
  for (std::size_t i = 0; i < scope_.size(); ++i) a.bind(scope_[i], d[i]);
  return a;
}

std::size_t AssignmentSpace::rank(const Assignment& a) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < scope_.size(); ++i) r += a.at(scope_[i]) * strides_[i];
  return r;
}

std::vector<Assignment> enumerate_assignments(const Network& net, std::vector<VarId> scope) {
  AssignmentSpace space(net, std::move(scope));
  std::vector<Assignment> out;
  out.reserve(space.size());
  for (std::size_t r = 0; r < space.size(); ++r) out.push_back(space.at(r));
  return out;
}

std::vector<Assignment> enumerate_assignments(const Network& net,
                                              const std::vector<std::string>& scope) {
  std::vector<VarId> ids;
  ids.reserve(scope.size());
  for (const auto& name : scope) ids.push_back(net.id_of(name));
  return enumerate_assignments(net, std::move(ids));
}

std::vector<Assignment> covering_successors(const Network& net, const Assignment& x) {
  std::vector<Assignment> out;
  for (auto [var, value] : x.bindings()) {
    if (value + 1 >= net.cardinality(var)) continue;
    Assignment next = x;
    next.bind(var, value + 1);
    out.push_back(std::move(next));
  }
  return out;
}

bool is_polytree(const Network& net) {
  std::vector<VarId> parent(net.size());
  std::iota(parent.begin(), parent.end(), VarId{0});
  auto root = [&](VarId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [p, c] : net.arcs()) {
    VarId a = root(p);
    VarId b = root(c);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::vector<VarId> descendants(const Network& net, VarId v) {
  std::vector<bool> seen(net.size(), false);
  std::vector<VarId> stack{v};
  std::vector<VarId> out;
  while (!stack.empty()) {
    VarId u = stack.back();
    stack.pop_back();
    for (VarId c : net.children(u)) {
      if (seen[c]) continue;
      seen[c] = true;
      out.push_back(c);
      stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Reachability over (variable, direction) pairs: a trail may continue
// through an unobserved variable in any non-collider fashion, and through a
// collider only when the collider or one of its descendants is observed.
bool d_separated(const Network& net, const std::vector<VarId>& a,
                 const std::vector<VarId>& b, const std::vector<VarId>& given) {
  const std::size_t n = net.size();
  std::vector<bool> observed(n, false);
  for (VarId z : given) observed.at(z) = true;

  // Observed variables and their ancestors activate colliders.
  std::vector<bool> activates(n, false);
  std::vector<VarId> stack(given.begin(), given.end());
  for (VarId z : given) activates[z] = true;
  while (!stack.empty()) {
    VarId u = stack.back();
    stack.pop_back();
    for (VarId p : net.parents(u)) {
      if (activates[p]) continue;
      activates[p] = true;
      stack.push_back(p);
    }
  }

  std::vector<bool> target(n, false);
  for (VarId v : b) target.at(v) = true;

  enum : std::size_t { kUp = 0, kDown = 1 };  // arrived from a child / from a parent
  std::vector<std::array<bool, 2>> visited(n, {false, false});
  std::vector<std::pair<VarId, std::size_t>> queue;
  for (VarId v : a)
    if (!observed.at(v)) queue.emplace_back(v, kUp);
  while (!queue.empty()) {
    auto [v, dir] = queue.back();
    queue.pop_back();
    if (visited[v][dir]) continue;
    visited[v][dir] = true;
    if (!observed[v] && target[v]) return false;
    if (dir == kUp && !observed[v]) {
      for (VarId p : net.parents(v)) queue.emplace_back(p, kUp);
      for (VarId c : net.children(v)) queue.emplace_back(c, kDown);
    } else if (dir == kDown) {
      if (!observed[v])
        for (VarId c : net.children(v)) queue.emplace_back(c, kDown);
      if (activates[v])
        for (VarId p : net.parents(v)) queue.emplace_back(p, kUp);
    }
  }
  return true;
}

}  // namespace monobn
