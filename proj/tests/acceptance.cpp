// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include "qmetric/cli.hpp"
#include "qmetric/suites.hpp"

using namespace qmetric;

namespace {

constexpr double kTolLp = 1e-8;
constexpr double kTolIter = 1e-6;
constexpr double kRatioRelative = 0.01;

int failures = 0;

void verdict(int n, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct Timed {
  SuiteResult result;
  double seconds;
};

Timed run(const std::string& suite, int count) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.count = count;
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r = run_suite(cfg);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(r), s};
}

// Present, passed, sampled, and within `tol` regardless of the tolerance recorded in the check.
bool holds(const Report& r, const std::string& id, double tol, std::string& detail, std::size_t min_samples = 1) {
  const Check* c = r.find(id);
  std::ostringstream s;
  if (c == nullptr) {
    s << id << " missing; ";
    detail += s.str();
    return false;
  }
  s << id << " residual " << c->residual << " n " << c->samples << "; ";
  detail += s.str();
  return c->passed && c->residual <= tol && c->samples >= min_samples;
}

std::string seconds(double s) {
  std::ostringstream o;
  o << s << " s";
  return o.str();
}

}  // namespace

int main() {
  {
    const Timed t = run("duality", 200);
    std::string d;
    bool ok = holds(t.result.report, "duality.kantorovich", kTolLp, d, 200);
    ok = ok && t.seconds < 10.0 && t.result.instances == 200;
    verdict(1, ok, d + seconds(t.seconds));
  }
  {
    const Timed t = run("prop1", 100);
    std::string d;
    bool ok = holds(t.result.report, "prop1.i", kTolLp, d);
    const Check* z = t.result.report.find("prop1.zero_pairs");
    const std::size_t zeros = z ? z->samples : 0;
    ok = ok && zeros > 0;
    verdict(2, ok, d + std::to_string(zeros) + " zero-distance pairs");
  }
  {
    const Timed t = run("theorem4", 100);
    std::string d3, d4;
    bool ok3 = holds(t.result.report, "theorem.i", kTolLp, d3, 100);
    ok3 = holds(t.result.report, "theorem.d", kTolLp, d3, 100) && ok3;
    ok3 = ok3 && t.seconds < 60.0;
    verdict(3, ok3, d3 + seconds(t.seconds));
    const bool ok4 = holds(t.result.report, "theorem.iii", kTolLp, d4, 100);
    verdict(4, ok4, d4);
  }
  {
    const Timed t = run("prop2", 100);
    std::string d;
    bool ok = holds(t.result.report, "prop2.iv", kTolIter, d, 100);
    ok = holds(t.result.report, "prop2.iv.noncommutative", kTolIter, d, 50) && ok;
    verdict(5, ok, d);
  }
  {
    const Timed t = run("lemma3", 25);
    std::string d;
    const Check* exact = t.result.report.find("lemma3.bound");
    const Check* iter = t.result.report.find("lemma3.bound.noncommutative");
    bool ok = holds(t.result.report, "lemma3.bound", kTolLp, d);
    ok = holds(t.result.report, "lemma3.bound.noncommutative", kTolIter, d) && ok;
    ok = holds(t.result.report, "lemma3.domain", 1e-9, d) && ok;
    const std::size_t slices = (exact ? exact->samples : 0) + (iter ? iter->samples : 0);
    ok = ok && slices >= 500;
    verdict(6, ok, d + std::to_string(slices) + " slices");
  }
  {
    const Timed t = run("lemma1", 1000);
    std::string d;
    verdict(7, holds(t.result.report, "lemma1.characterization", 0.0, d, 1000), d);
  }
  {
    const Timed t = run("ratio", 100);
    std::string d;
    verdict(8, holds(t.result.report, "ratio.lp", kRatioRelative, d, 100), d);
  }
  {
    const Report r = verify_pauli_example(20, 0, kTolIter);
    std::string d;
    bool ok = holds(r, "example4.ergodic", 0.0, d);
    ok = holds(r, "example4.sigma_z", 0.0, d) && ok;
    ok = holds(r, "example4.radius", 0.0, d) && ok;
    for (const char* id : {"example4.identity", "example4.symmetry", "example4.nonnegative", "example4.triangle"}) {
      ok = holds(r, id, kTolIter, d) && ok;
    }
    verdict(9, ok, d);
  }
  {
    bool ok = true;
    std::string d;
    const std::vector<std::vector<std::string>> runs{
        {"--no-timestamp", "--seed", "3", "verify", "prop2", "--count", "4"},
        {"--no-timestamp", "--seed", "3", "verify", "example4"},
        {"--no-timestamp", "--seed", "3", "induce", std::string(QMETRIC_SOURCE_DIR) + "/descriptors/example6_homomorphism.json"},
        {"--no-timestamp", "--seed", "3", "--format", "csv", "verify", "lemma3", "--count", "3"}};
    const char* labels[] = {"verify prop2", "verify example4", "induce", "csv verify lemma3"};
    for (std::size_t k = 0; k < runs.size(); ++k) {
      const auto& args = runs[k];
      std::ostringstream a, b, e;
      cli::run(args, a, e);
      cli::run(args, b, e);
      const bool same = a.str() == b.str() && !a.str().empty();
      d += std::string(labels[k]) + (same ? " identical; " : " differs; ");
      ok = ok && same;
    }
    verdict(10, ok, d);
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
