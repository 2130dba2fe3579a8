#include "monobn/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>

#include "monobn/gadget.hpp"
#include "monobn/mbn.hpp"
#include "monobn/random_network.hpp"
#include "monobn/report.hpp"

namespace monobn {
namespace {

/// User input that names something the network does not have.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw UsageError("cannot write '" + path + "'");
}

void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotonicity verification for discrete Bayesian networks", "monobn"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;

  auto* verify = app.add_subcommand("verify", "Sound approximate verdict by sign propagation");
  std::size_t budget = 0;
  verify->add_option("file", file, "MBN network")->required()->check(CLI::ExistingFile);
  verify->add_option("--refine", budget, "Exact-inference budget per inconclusive observable");
  verify->add_flag("--json", json, "Machine-readable output");

  auto* oracle = app.add_subcommand("oracle", "Exact decision by enumeration");
  std::string property_name;
  std::string direction_name;
  bool all_pairs = false;
  oracle->add_option("file", file, "MBN network")->required()->check(CLI::ExistingFile);
  oracle->add_option("--property", property_name, "mid or mim")
      ->required()
      ->check(CLI::IsMember({"mid", "mim"}));
  oracle->add_option("--direction", direction_name, "isotone or antitone")
      ->required()
      ->check(CLI::IsMember({"isotone", "antitone"}));
  oracle->add_flag("--all-pairs", all_pairs, "Check every comparable pair, not only covers");
  oracle->add_flag("--json", json, "Machine-readable output");

  auto* signs = app.add_subcommand("signs", "Arc signs and net influences on the output");
  signs->add_option("file", file, "MBN network")->required()->check(CLI::ExistingFile);
  signs->add_flag("--json", json, "Machine-readable output");

  auto* gadget = app.add_subcommand("gadget", "Build the mode-monotonicity hardness gadget");
  std::string evidence;
  double threshold = 0.0;
  std::string output;
  gadget->add_option("file", file, "MBN base network")->required()->check(CLI::ExistingFile);
  gadget->add_option("--evidence", evidence, "E=e, an unobserved binary variable")->required();
  gadget->add_option("--p", threshold, "Threshold, 0 <= p < 1/2")->required();
  gadget->add_option("-o,--output", output, "Output MBN file ('-' for stdout)")->required();

  auto* random = app.add_subcommand("random", "Generate a seeded random network");
  RandomNetworkParams params;
  std::uint64_t seed = 0;
  std::size_t values = 0;
  random->add_option("--nodes", params.nodes, "Variable count")->required();
  random->add_option("--seed", seed, "64-bit seed")->required();
  random->add_flag("--polytree", params.polytree, "Singly connected graph");
  random->add_option("--max-parents", params.max_parents, "Parent cap per variable");
  random->add_option("--values", values, "Maximum values per variable (minimum is 2)");
  random->add_option("--observables", params.observables, "Observable count (0 = random)");
  random->add_option("--style", params.style, "arbitrary, monotone or positive")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CptStyle>{{"arbitrary", CptStyle::Arbitrary},
                                          {"monotone", CptStyle::Monotone},
                                          {"positive", CptStyle::Positive}},
          CLI::ignore_case));
  random->add_option("--zero-rate", params.zero_entry_rate, "Chance of a zero CPT entry");
  random->add_option("-o,--output", output, "Output MBN file ('-' for stdout)")->required();

  auto* infer = app.add_subcommand("infer", "Posterior of one variable");
  std::string target;
  infer->add_option("file", file, "MBN network")->required()->check(CLI::ExistingFile);
  infer->add_option("--evidence", evidence, "X1=v,X2=w,... (may be empty)");
  infer->add_option("--target", target, "Query variable")->required();
  infer->add_flag("--json", json, "Machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) {
      const Network net = load_mbn_file(file);
      const ApproxReport report = approx_verdict(net, budget);
      if (json)
        emit_json(out, approx_report_json(net, report));
      else
        print_approx_report(out, net, report);
    } else if (*oracle) {
      const Network net = load_mbn_file(file);
      OracleOptions options;
      options.all_pairs = all_pairs;
      const OracleVerdict v =
          decide(net, property_name == "mim" ? Property::Mim : Property::Mid,
                 direction_name == "antitone" ? Direction::Antitone : Direction::Isotone,
                 options);
      if (json)
        emit_json(out, verdict_json(net, v));
      else
        print_verdict(out, net, v);
    } else if (*signs) {
      const Network net = load_mbn_file(file);
      const ApproxReport report = approx_verdict(net, 0);
      if (json)
        emit_json(out, signs_json(net, report));
      else
        print_signs(out, net, report);
    } else if (*gadget) {
      if (!(threshold >= 0.0 && threshold < 0.5))
        throw UsageError("--p must satisfy 0 <= p < 1/2");
      const auto eq = evidence.find('=');
      if (eq == std::string::npos) throw UsageError("--evidence expects E=e");
      GadgetSpec spec{load_mbn_file(file), evidence.substr(0, eq), evidence.substr(eq + 1),
                      threshold};
      write_output(output, serialize_mbn(build_gadget(spec)), out);
    } else if (*random) {
      if (values != 0) params.max_values = values;
      write_output(output, serialize_mbn(random_network(params, seed)), out);
    } else if (*infer) {
      const Network net = load_mbn_file(file);
      const Assignment ev = parse_assignment(net, evidence);
      const Distribution d = posterior(net, ev, net.id_of(target));
      if (json)
        emit_json(out, distribution_json(net, d));
      else
        print_distribution(out, net, d);
    }
  } catch (const ZeroEvidenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitZeroEvidence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidNetwork;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace monobn
