#pragma once

/// @file
/// The NOT-MIM hardness gadget: from a base network, an unobserved binary
/// evidence variable E with observed value e and a threshold p, build a
/// network whose mode output is non-isotone exactly when some observable
/// assignment x'' has Pr(e | x'') > p.
///
/// Three binary variables are added: A with parent E, B (observable, uniform
/// prior) and the new output C with parents A and B.
///
///   Pr(a | E = e) = 1,   Pr(a | E != e) = (1/2 - p) / (1 - p)
///   Pr(c | A, B)  = 1 if A = a and B = b-bar, else 0

#include <optional>
#include <string>
#include <string_view>

#include "monobn/model.hpp"

namespace monobn {

/// Gadget variables carry this reserved suffix; MBN names may contain '$'
/// but generated names are the only ones expected to.
inline constexpr std::string_view kGadgetSuffix = "$gadget";
inline const std::string kGadgetA = "A$gadget";
inline const std::string kGadgetB = "B$gadget";
inline const std::string kGadgetC = "C$gadget";

struct GadgetSpec {
  Network base;
  std::string evidence_variable;
  std::string evidence_value;
  /// Must lie in [0, 1/2): above that the Pr(a | e-bar) expression leaves
  /// [0, 1].
  double threshold = 0.0;
};

/// Pr(a | e-bar) for threshold p.
double gadget_a_given_not_e(double threshold);

/// Throws std::invalid_argument when the threshold is outside [0, 1/2), the
/// evidence variable is unknown, observable or not binary, the value is not
/// one of its labels, or a gadget name already exists.
Network build_gadget(const GadgetSpec& spec);

struct CondMapResult {
  bool exceeds = false;
  std::optional<Assignment> witness;  // first x'' in canonical order
  double max_probability = 0.0;       // max Pr(e | x'') over positive x''
};

/// Brute force: does some full observable assignment x'' with Pr(x'') > 0
/// give Pr(E = e | x'') > p (strictly)?
CondMapResult condmap_exceeds(const Network& net, VarId evidence_variable,
                              std::size_t evidence_value, double threshold);

}  // namespace monobn
