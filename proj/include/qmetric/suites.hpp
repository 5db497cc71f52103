#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmetric/report.hpp"

namespace qmetric {

struct SuiteConfig {
  std::string suite;
  int count = 10;
  std::uint64_t seed = 0;
  /// Tolerance for statements computed by exact LPs.
  double tol_lp = 1e-8;
  /// Tolerance for statements that pass through the ratio engine or a sampled sup.
  double tol_iter = 1e-6;
  int probes_pure = 2;
  int probes_mixed = 2;
};

struct SuiteResult {
  Report report;
  int instances = 0;
  std::vector<std::string> warnings;
};

/// prop1, prop2, lemma1, lemma3, prop4, lemma5, theorem4, duality, ratio, example4.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs `count` seeded instances of a suite. Instance k draws from instance_rng(seed, k),
/// so results depend only on the configuration. Throws std::invalid_argument for an
/// unknown suite.
SuiteResult run_suite(const SuiteConfig& config);

/// The Pauli action on M2: ergodicity, L(sigma_z) = 2, finite radius and the metric
/// axioms of rho_L on `probes` states.
Report verify_pauli_example(int probes, std::uint64_t seed, double tolerance = 1e-6);

}  // namespace qmetric
