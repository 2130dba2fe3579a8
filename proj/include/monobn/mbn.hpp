#pragma once

/// @file
/// MBN: the line-oriented network format.
///
///   # comment (to end of line, anywhere)
///   var <name> : <v0> <v1> ...         value order = listed order
///   role observable|intermediate|output <name> [<name> ...]
///   arc <parent> -> <child>
///   cpt <name>
///   row <p0> <p1> ...                  one per parent assignment
///
/// CPT rows follow canonical order over the variable's parents taken in
/// declaration order (last parent varies fastest). Names and labels are
/// runs of [A-Za-z0-9_.$'+]; '$' is reserved for generated variables.

#include <string>
#include <string_view>

#include "monobn/model.hpp"

namespace monobn {

/// Parses an MBN document without validating it. Throws ParseError.
NetworkDraft parse_mbn_draft(std::string_view text);

/// Parses and validates. Throws ParseError or ValidationError.
Network parse_mbn(std::string_view text);

/// Canonical text: variables in declaration order, one role line per
/// variable, arcs ordered by (child, parent), CPTs in declaration order,
/// probabilities printed with 12 significant digits.
std::string serialize_mbn(const Network& net);

/// Reads a file and parses it; I/O failures raise Error.
Network load_mbn_file(const std::string& path);
void save_mbn_file(const Network& net, const std::string& path);

}  // namespace monobn
