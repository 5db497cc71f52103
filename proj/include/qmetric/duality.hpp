#pragma once

#include <string>

#include "qmetric/lp.hpp"
#include "qmetric/metric_space.hpp"
#include "qmetric/ratio_search.hpp"
#include "qmetric/seminorms.hpp"
#include "qmetric/states.hpp"

namespace qmetric {

enum class DistanceMethod { lp_dual, lp_primal, ratio_grid };
std::string to_string(DistanceMethod m);

/// rho_L(mu, nu) = sup{ |mu(a) - nu(a)| : L(a) <= 1 }, with provenance.
///
/// `witness` is the optimal function (lp_dual), the row-major transport plan
/// (lp_primal) or the best self-adjoint direction in Hermitian-frame coordinates
/// (ratio_grid). `residual` is the discrepancy observed when re-evaluating the witness.
struct DistanceResult {
  double value = 0.0;
  bool exact = false;
  DistanceMethod method = DistanceMethod::lp_dual;
  Eigen::VectorXd witness;
  double residual = 0.0;
  /// Certified upper bound (equal to value for exact methods, +inf when unknown).
  double upper = 0.0;
  long iterations = 0;
  std::string diagnostic;
};

struct DistanceOptions {
  lp::Tolerances lp;
  RatioOptions ratio;
};

/// Exact LP for the polyhedral kinds. With a transport form (Lipschitz, or a state
/// metric on a commutative algebra) it maximizes (mu - nu).c over real functions c
/// subject to |(p_i - p_j).c| <= d_ij on positive pairs and equality on zero pairs; a
/// state metric on a matrix algebra is solved the same way over trace-zero
/// self-adjoint domain coordinates. Throws std::invalid_argument for other kinds.
DistanceResult rho_lp_dual(const State& mu, const State& nu, const Seminorm& seminorm,
                           const lp::Tolerances& tol = {});

/// min sum pi(x, y) d(x, y) over couplings of the two distributions.
DistanceResult kantorovich_primal(const State& mu, const State& nu, const SemiMetricSpace& space,
                                  const lp::Tolerances& tol = {});

/// Ratio maximization of |(mu - nu)(u)| / L(u) over trace-zero self-adjoint domain
/// directions: grid and ascent, then cutting planes from the seminorm's supporting
/// functionals when it has them (closing the gap to `upper`). The value is a
/// certified lower bound; never flagged exact.
DistanceResult rho_ratio(const State& mu, const State& nu, const Seminorm& seminorm,
                         const RatioOptions& options = {});

/// rho_lp_dual for the polyhedral kinds, otherwise rho_ratio.
DistanceResult rho(const State& mu, const State& nu, const Seminorm& seminorm,
                   const DistanceOptions& options = {});

/// rho_L(mu o phi, nu o phi) for L on phi.source().
DistanceResult rho_between_pullbacks(const State& mu, const State& nu, const StarHomomorphism& phi,
                                     const Seminorm& seminorm, const DistanceOptions& options = {});

/// Norm of mu - nu as a functional for the operator norm: the sum of the blockwise
/// trace norms of the density differences. rho_L(mu, nu) <= R * this, R the radius.
double functional_distance(const State& mu, const State& nu);

}  // namespace qmetric
