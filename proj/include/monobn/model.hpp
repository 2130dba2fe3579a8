#pragma once

/// @file
/// Discrete Bayesian networks over totally ordered value domains.
///
/// A network is built from a mutable NetworkDraft, validated, and then
/// frozen into an immutable Network. Variables are identified by their
/// declaration index (VarId); value order is declaration order, so a value
/// index doubles as its rank.
///
/// Canonical order: every enumeration of joint assignments (CPT rows,
/// observable assignments, factor tables) is a mixed-radix counter over the
/// scope in declaration order, last variable least significant.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monobn/error.hpp"

namespace monobn {

using VarId = std::size_t;

/// Tolerance used for CPT row sums and every probability comparison.
inline constexpr double kTolerance = 1e-9;

enum class Role { Observable, Intermediate, Output };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

struct Variable {
  std::string name;
  std::vector<std::string> values;  // index = rank under the value order

  std::size_t cardinality() const noexcept { return values.size(); }
  std::optional<std::size_t> value_index(std::string_view label) const;
};

/// Unvalidated network description, as read from a file or assembled by a
/// generator. Names are resolved during validation.
struct NetworkDraft {
  struct Arc {
    std::string parent;
    std::string child;
  };
  struct RoleEntry {
    std::string variable;
    Role role;
  };
  struct CptEntry {
    std::string variable;
    std::vector<std::vector<double>> rows;
  };

  std::vector<Variable> variables;
  std::vector<Arc> arcs;
  std::vector<RoleEntry> roles;
  std::vector<CptEntry> cpts;
};

/// Every violated invariant of `draft`; empty means valid.
ValidationReport validate_network(const NetworkDraft& draft);

/// Conditional probability table of one variable. Parents are sorted by
/// declaration index; rows follow canonical order over the parents.
struct Cpt {
  std::vector<VarId> parents;
  std::size_t cardinality = 0;
  std::vector<double> table;  // row-major, rows * cardinality entries

  std::size_t row_count() const noexcept {
    return cardinality == 0 ? 0 : table.size() / cardinality;
  }
  std::span<const double> row(std::size_t r) const {
    return {table.data() + r * cardinality, cardinality};
  }
};

class Network {
 public:
  /// Validates `draft` and renormalises every CPT row once.
  /// Throws ValidationError carrying the full report.
  static Network from_draft(const NetworkDraft& draft);

  NetworkDraft to_draft() const;

  std::size_t size() const noexcept { return variables_.size(); }
  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const Variable& variable(VarId id) const { return variables_.at(id); }
  std::size_t cardinality(VarId id) const { return variables_.at(id).cardinality(); }

  std::optional<VarId> find(std::string_view name) const;
  /// Throws std::invalid_argument for unknown names.
  VarId id_of(std::string_view name) const;

  Role role(VarId id) const { return roles_.at(id); }
  const std::vector<VarId>& observables() const noexcept { return observables_; }
  const std::vector<VarId>& intermediates() const noexcept { return intermediates_; }
  VarId output() const noexcept { return output_; }

  const std::vector<VarId>& parents(VarId id) const { return cpts_.at(id).parents; }
  const std::vector<VarId>& children(VarId id) const { return children_.at(id); }
  const Cpt& cpt(VarId id) const { return cpts_.at(id); }
  bool has_arc(VarId parent, VarId child) const;
  /// All arcs, ordered by (child, parent) declaration index.
  std::vector<std::pair<VarId, VarId>> arcs() const;

  /// Topological order; ties broken by smallest declaration index.
  const std::vector<VarId>& topological_order() const noexcept { return topo_; }

  bool is_ancestor(VarId ancestor, VarId of) const;

 private:
  Network() = default;

  std::vector<Variable> variables_;
  std::vector<Role> roles_;
  std::vector<Cpt> cpts_;
  std::vector<std::vector<VarId>> children_;
  std::vector<VarId> observables_;
  std::vector<VarId> intermediates_;
  VarId output_ = 0;
  std::vector<VarId> topo_;
};

/// Joint value assignment to a subset of a network's variables. Bindings are
/// kept sorted by VarId, so two assignments over the same scope compare
/// coordinate by coordinate.
class Assignment {
 public:
  Assignment() = default;

  void bind(VarId var, std::size_t value);
  std::optional<std::size_t> value_of(VarId var) const;
  std::size_t at(VarId var) const;
  bool contains(VarId var) const { return value_of(var).has_value(); }

  std::vector<VarId> scope() const;
  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }
  const std::vector<std::pair<VarId, std::size_t>>& bindings() const noexcept {
    return bindings_;
  }

  /// Union of two assignments; throws std::invalid_argument on conflicting
  /// bindings.
  Assignment merged(const Assignment& other) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::pair<VarId, std::size_t>> bindings_;
};

/// "X=x1,Y=y0" using value labels; whitespace around items is ignored.
/// Throws std::invalid_argument on unknown names or labels.
Assignment parse_assignment(const Network& net, std::string_view text);
std::string format_assignment(const Network& net, const Assignment& a);

/// Throws std::invalid_argument if a bound variable or value is out of range.
void check_assignment(const Network& net, const Assignment& a);

enum class OrderRelation { Equal, LessEq, GreaterEq, Incomparable };

std::string_view to_string(OrderRelation rel);

/// Product order on assignments over an identical scope. LessEq and
/// GreaterEq are reported only for distinct assignments.
/// Throws std::invalid_argument on scope mismatch.
OrderRelation compare_assignments(const Assignment& x, const Assignment& y);

/// x ⪯ y under the product order (Equal or LessEq).
bool precedes(const Assignment& x, const Assignment& y);

/// Mixed-radix indexing of Ω(scope) in canonical order.
class AssignmentSpace {
 public:
  AssignmentSpace(const Network& net, std::vector<VarId> scope);

  const std::vector<VarId>& scope() const noexcept { return scope_; }
  const std::vector<std::size_t>& cardinalities() const noexcept { return cards_; }
  std::size_t size() const noexcept { return size_; }

  Assignment at(std::size_t rank) const;
  std::size_t rank(const Assignment& a) const;
  /// Value indices of the assignment at `rank`, one per scope variable.
  std::vector<std::size_t> digits(std::size_t rank) const;
  std::size_t rank_of_digits(std::span<const std::size_t> digits) const;
  /// Rank difference caused by raising scope position `pos` by one.
  std::size_t stride(std::size_t pos) const { return strides_.at(pos); }

 private:
  std::vector<VarId> scope_;
  std::vector<std::size_t> cards_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// Every assignment to `scope` in canonical order. Throws
/// std::invalid_argument on unknown names.
std::vector<Assignment> enumerate_assignments(const Network& net,
                                              const std::vector<std::string>& scope);
std::vector<Assignment> enumerate_assignments(const Network& net,
                                              std::vector<VarId> scope);

/// Assignments covering `x`: one variable raised by exactly one step, in
/// scope order.
std::vector<Assignment> covering_successors(const Network& net, const Assignment& x);

/// Underlying undirected graph is a forest.
bool is_polytree(const Network& net);

/// True when every variable of `a` is d-separated from every variable of `b`
/// given `given`. Variables of `a` or `b` that are in `given` are ignored.
bool d_separated(const Network& net, const std::vector<VarId>& a,
                 const std::vector<VarId>& b, const std::vector<VarId>& given);

/// Variables reachable from `v` by following arcs forward (excluding `v`).
std::vector<VarId> descendants(const Network& net, VarId v);

}  // namespace monobn
