#pragma once

#include <random>
#include <vector>

#include "qmetric/family.hpp"
#include "qmetric/metric_space.hpp"

namespace qmetric {

/// A finite family of maps F: Y x Z -> X into a semi-metric space. f[y][z] is the
/// image point of (y, z).
struct ClassicalFamily {
  int y_size = 0;
  int z_size = 0;
  SemiMetricSpace x;
  std::vector<std::vector<int>> f;

  /// Throws std::invalid_argument when the table shape or an entry is out of range.
  void validate() const;
};

/// d1(z, z') = max over y of d0(F(y, z), F(y, z')).
SemiMetricSpace d1_direct(const ClassicalFamily& family);

/// The family as phi: C(X) -> C(Y) ⊗ C(Z), phi(a)(y, z) = a(F(y, z)); row y * |Z| + z
/// carries a single 1 in column F(y, z).
QuantumFamily compile_family(const ClassicalFamily& family);

/// Random family with |X|, |Y|, |Z| in [1, max_size] and a random semi-metric on X.
ClassicalFamily random_classical_family(std::mt19937_64& rng, int max_size = 6,
                                        double merge_probability = 0.2);

struct TheoremOptions {
  int samples = 16;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
};

/// Runs the pipeline compile -> induce on the point masses of Z -> LP and checks
/// theorem.d (induced d equals d1), theorem.i (d1 = rho_N on point masses),
/// theorem.ii (|c(z) - c(z')| <= N(c) d1(z, z') on 𝒞) and theorem.iii
/// (||c||_{d1} <= N(c) on a spanning sample of 𝒞).
Report verify_theorem(const ClassicalFamily& family, const TheoremOptions& options = {});

/// Checks lemma5.equality: d(delta_x, delta_x') = rho_{L_d}(delta_x, delta_x') for every
/// pair of point masses, by LP. The probes must be states of a commutative algebra and
/// include every point mass. The advisory lemma5.witness reports whether the functions
/// b_x(y) = d(delta_x, delta_y) lie in 𝒞 with L_d(b_x) <= 1.
Report verify_lemma5(const StateSemiMetric& metric, double tolerance = 1e-8);

/// Kantorovich lift of a semi-metric on points to arbitrary probe distributions.
StateSemiMetric transport_state_metric(const SemiMetricSpace& space, const ProbeSet& probes);

}  // namespace qmetric
