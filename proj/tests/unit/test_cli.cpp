#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "monobn/cli.hpp"
#include "monobn/mbn.hpp"

using namespace monobn;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return testing::data_dir() + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("monobn_test_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = temp_path(name);
  FILE* f = std::fopen(path.c_str(), "wb");
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
  return path;
}

}  // namespace

TEST_CASE("oracle reports holds: true on the isotone chain") {
  const auto r = run({"oracle", data("two_variable.mbn"), "--property", "mid", "--direction",
                      "isotone"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("holds: true") != std::string::npos);
}

TEST_CASE("oracle --json mirrors the verdict") {
  const auto r = run({"oracle", data("ternary_pair.mbn"), "--property", "mim", "--direction",
                      "isotone", "--all-pairs", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["holds"] == false);
  CHECK(j["property"] == "MIM");
  CHECK(j["counterexample"]["lower"]["X"] == "x0");
  CHECK(j["counterexample"]["lower_mode"] == 2);
  CHECK(j["counterexample"]["upper_mode"] == 1);
}

TEST_CASE("verify on a positive chain is isotone") {
  const auto path = write_temp("chain.mbn", serialize_mbn(testing::binary_chain(0.2, 0.7)));
  const auto r = run({"verify", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("IsotoneInDistribution") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("verify --refine resolves the figure2-like fixture") {
  auto r = run({"verify", data("figure2_like.mbn"), "--json"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["verdict"]["kind"] == "Inconclusive");
  r = run({"verify", data("figure2_like.mbn"), "--refine", "16", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"]["kind"] == "IsotoneInDistribution");
  CHECK(j["refinement_log"].size() == 1);
  CHECK(j["observables"][0]["propagated_sign"] == "?");
  CHECK(j["observables"][0]["sign"] == "+");
}

TEST_CASE("signs lists every arc") {
  const auto r = run({"signs", data("oesophagus_like.mbn"), "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["arc_signs"].size() == 11);
  CHECK(j["output"] == "Stage");
}

TEST_CASE("gadget enforces p < 1/2") {
  const auto out = temp_path("gadget.mbn");
  const auto base = write_temp("base.mbn", serialize_mbn(testing::evidence_chain(0.2, 0.6)));
  auto r = run({"gadget", base, "--evidence", "E=e1", "--p", "0.6", "-o", out});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("p < 1/2") != std::string::npos);
  r = run({"gadget", base, "--evidence", "E=e1", "--p", "0.3", "-o", out});
  CHECK(r.code == kExitOk);
  const auto net = load_mbn_file(out);
  CHECK(net.variable(net.output()).name == "C$gadget");
  r = run({"gadget", base, "--evidence", "X=x1", "--p", "0.3", "-o", out});
  CHECK(r.code == kExitUsage);
  std::filesystem::remove(out);
  std::filesystem::remove(base);
}

TEST_CASE("random writes a reproducible network") {
  const auto a = run({"random", "--nodes", "5", "--seed", "17", "--polytree", "-o", "-"});
  const auto b = run({"random", "--nodes", "5", "--seed", "17", "--polytree", "-o", "-"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(is_polytree(parse_mbn(a.out)));
  CHECK(run({"random", "--nodes", "40", "--seed", "1", "-o", "-"}).code == kExitUsage);
}

TEST_CASE("infer prints the posterior") {
  auto r = run({"infer", data("two_variable.mbn"), "--evidence", "X=x1", "--target", "C",
                "--json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["distribution"][1]["probability"].get<double>() == doctest::Approx(0.8));
  CHECK(j["mode"] == "c1");
  r = run({"infer", data("two_variable.mbn"), "--evidence", "Q=1", "--target", "C"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("infer on impossible evidence exits 4") {
  const auto net = testing::DraftBuilder{}
                       .var("X", {"x0", "x1"}, Role::Observable)
                       .var("Y", {"y0", "y1"}, Role::Observable)
                       .var("C", {"c0", "c1"}, Role::Output)
                       .arc("X", "Y")
                       .arc("Y", "C")
                       .cpt("X", {{0.5, 0.5}})
                       .cpt("Y", {{1.0, 0.0}, {0.5, 0.5}})
                       .cpt("C", {{0.5, 0.5}, {0.2, 0.8}})
                       .build();
  const auto path = write_temp("zero.mbn", serialize_mbn(net));
  auto r = run({"infer", path, "--evidence", "X=x0,Y=y1", "--target", "C"});
  CHECK(r.code == kExitZeroEvidence);
  CHECK_FALSE(r.err.empty());
  r = run({"infer", path, "--evidence", "X=x0,C=c1", "--target", "C"});
  CHECK(r.code == kExitUsage);  // target bound by the evidence
  std::filesystem::remove(path);
}

TEST_CASE("parse and validation errors exit 2") {
  auto path = write_temp("bad.mbn", "var X : a b\nbogus\n");
  auto r = run({"verify", path});
  CHECK(r.code == kExitInvalidNetwork);
  CHECK(r.err.find("line 2") != std::string::npos);
  path = write_temp("bad.mbn", "var X : a b\nrole observable X\ncpt X\nrow 0.5 0.5\n");
  r = run({"verify", path});
  CHECK(r.code == kExitInvalidNetwork);
  CHECK(r.err.find("exactly one output variable required") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 3") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"oracle", data("two_variable.mbn"), "--property", "maybe", "--direction",
             "isotone"})
            .code == kExitUsage);
  CHECK(run({"verify", "/nonexistent.mbn"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("verify never contradicts oracle across the random corpus") {
  const auto path = temp_path("corpus.mbn");
  std::size_t definite = 0;
  for (std::size_t i = 0; i < 120; ++i) {
    CAPTURE(i);
    REQUIRE(run({"random", "--nodes", std::to_string(testing::corpus_params(i).nodes), "--seed",
                 std::to_string(testing::corpus_seed(i)), "--style",
                 i % 2 ? "arbitrary" : "monotone", "--max-parents", "2", "-o", path})
                .code == kExitOk);
    const auto verify = run({"verify", path, "--refine", "16", "--json"});
    REQUIRE(verify.code == kExitOk);
    const std::string kind = nlohmann::json::parse(verify.out)["verdict"]["kind"];
    for (const char* direction : {"isotone", "antitone"}) {
      const bool claimed = kind == "Both" || (std::string(direction) == "isotone"
                                                  ? kind == "IsotoneInDistribution"
                                                  : kind == "AntitoneInDistribution");
      if (!claimed) continue;
      ++definite;
      const auto oracle =
          run({"oracle", path, "--property", "mid", "--direction", direction, "--json"});
      REQUIRE(oracle.code == kExitOk);
      CHECK(nlohmann::json::parse(oracle.out)["holds"] == true);
    }
  }
  CHECK(definite > 0);
  std::filesystem::remove(path);
}
