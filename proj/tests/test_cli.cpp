#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "qmetric/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qmetric::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string descriptor(const std::string& name) { return std::string(QMETRIC_SOURCE_DIR) + "/descriptors/" + name; }

nlohmann::json body(const Outcome& o) { return nlohmann::json::parse(o.out); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate every shipped descriptor") {
  for (const char* name : {"example1_metric_space.json", "example2_semimetric.json", "example3_quotient_norm.json",
                           "example4_pauli.json", "example5_flip.json", "example5_identity.json",
                           "example6_homomorphism.json", "classical_line.json", "a_tensor_one.json",
                           "two_point.json"}) {
    CAPTURE(name);
    const Outcome o = run({"--no-timestamp", "validate", descriptor(name)});
    CHECK(o.code == qmetric::cli::kExitOk);
    CHECK(body(o)["passed"] == true);
  }
}

TEST_CASE("quantum metric flag separates metric from semi-metric") {
  const auto a = body(run({"--no-timestamp", "validate", descriptor("example1_metric_space.json")}));
  const auto b = body(run({"--no-timestamp", "validate", descriptor("example2_semimetric.json")}));
  CHECK(a["result"]["structure"]["quantum_metric"] == true);
  CHECK(b["result"]["structure"]["quantum_metric"] == false);
}

TEST_CASE("invalid homomorphism is a verification failure") {
  const Outcome o = run({"--no-timestamp", "validate", descriptor("transpose_map.json")});
  CHECK(o.code == qmetric::cli::kExitFailed);
  bool seen = false;
  const auto j = body(o);
  for (const auto& c : j["report"]["checks"]) {
    if (c["id"] == "hom.multiplicative") {
      seen = true;
      CHECK(c["passed"] == false);
    }
  }
  CHECK(seen);
}

TEST_CASE("input errors") {
  CHECK(run({"validate", "/nonexistent/file.json"}).code == qmetric::cli::kExitInput);
  CHECK(run({"verify", "nosuch"}).code == qmetric::cli::kExitInput);
  CHECK(run({"--format", "xml", "verify", "duality"}).code == qmetric::cli::kExitInput);
  CHECK(run({"dist", descriptor("two_point.json"), "--pair", "0", "9"}).code == qmetric::cli::kExitInput);
  CHECK(run({}).code == qmetric::cli::kExitInput);
}

TEST_CASE("dist on two points") {
  const auto j = body(run({"--no-timestamp", "dist", descriptor("two_point.json"), "--pair", "0", "1"}));
  CHECK(j["result"]["rho"]["value"].get<double>() == doctest::Approx(2.0));
  CHECK(j["result"]["rho"]["exact"] == true);
  CHECK(j["result"]["lp_primal"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("induce reproduces d1 for a classical family") {
  const auto j = body(run({"--no-timestamp", "induce", descriptor("classical_line.json")}));
  CHECK(j["passed"] == true);
  CHECK(j["result"]["d"][0][1].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("induce warns on a degenerate family") {
  const Outcome o = run({"--no-timestamp", "induce", descriptor("a_tensor_one.json")});
  CHECK(body(o)["result"]["degenerate"] == true);
  CHECK_FALSE(body(o)["warnings"].empty());
}

TEST_CASE("verify with count 0 passes with a warning") {
  const Outcome o = run({"--no-timestamp", "verify", "theorem4", "--count", "0"});
  CHECK(o.code == qmetric::cli::kExitOk);
  CHECK(body(o)["warnings"].size() == 1);
}

TEST_CASE("timestamp is isolated by the flag") {
  const auto with = body(run({"verify", "duality", "--count", "2"}));
  const auto without = body(run({"--no-timestamp", "verify", "duality", "--count", "2"}));
  CHECK(with.contains("timestamp"));
  CHECK_FALSE(without.contains("timestamp"));
  auto stripped = with;
  stripped.erase("timestamp");
  CHECK(stripped == without);
}

TEST_CASE("csv output") {
  const Outcome o = run({"--no-timestamp", "--format", "csv", "verify", "duality", "--count", "2"});
  CHECK(o.code == 0);
  CHECK(o.out.rfind("command,seed,tol_lp,tol_iter,id,passed,advisory,residual,tolerance,samples,value,note", 0) == 0);
  CHECK(o.out.find("duality.kantorovich,true") != std::string::npos);
}

}
