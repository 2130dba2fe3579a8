#pragma once

/// @file
/// Machine-readable (JSON) and human-readable renderings of verdicts.
///
/// JSON trees mirror the C++ structs field for field; assignments render as
/// objects mapping variable name to value label, distributions as arrays
/// ordered by value rank, and signs as one of "+", "-", "0", "?".

#include <ostream>

#include <json.hpp>

#include "monobn/inference.hpp"
#include "monobn/oracle.hpp"
#include "monobn/qualitative.hpp"

namespace monobn {

nlohmann::json assignment_json(const Network& net, const Assignment& a);
nlohmann::json verdict_json(const Network& net, const OracleVerdict& v);
nlohmann::json approx_report_json(const Network& net, const ApproxReport& r);
/// Arc signs and per-observable propagated signs, without refinement.
nlohmann::json signs_json(const Network& net, const ApproxReport& r);
nlohmann::json distribution_json(const Network& net, const Distribution& d);

void print_verdict(std::ostream& os, const Network& net, const OracleVerdict& v);
void print_approx_report(std::ostream& os, const Network& net, const ApproxReport& r);
void print_signs(std::ostream& os, const Network& net, const ApproxReport& r);
void print_distribution(std::ostream& os, const Network& net, const Distribution& d);

}  // namespace monobn
