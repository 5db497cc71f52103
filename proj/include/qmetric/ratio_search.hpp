#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Dense>

namespace qmetric {

struct RatioOptions {
  /// Deterministic start directions (low-discrepancy points plus the +-axes).
  int grid = 256;
  /// Ascent sweeps per start.
  int refine_steps = 200;
  /// Number of best grid points refined by ascent.
  int starts = 4;
  /// Dimensions above this use seeded random start directions instead of the grid.
  int max_dim = 16;
  /// Seeded random directions tried per sweep in addition to the coordinate axes.
  int random_directions = 4;
  /// Sweeps stop once the step falls below this.
  double min_step = 1e-10;
  /// Cutting-plane iterations for callers that can supply supporting functionals
  /// (linear-numerator problems); 0 disables the polish.
  int cuts = 200;
  /// Relative gap at which the cutting-plane polish stops.
  double gap = 1e-10;
  std::uint64_t seed = 0;
};

struct RatioSearch {
  double value = 0.0;
  Eigen::VectorXd best;
  bool unbounded = false;
  bool sampled = false;
  long evaluations = 0;
  std::string diagnostic;
};

/// Maximizes a positively homogeneous-of-degree-0 objective over unit vectors of R^k:
/// grid of start directions, then per-coordinate and random-direction ascent with a
/// halving step. Returns a certified lower bound (the objective at `best`). An
/// objective value of +inf stops the search and is reported as unbounded.
RatioSearch maximize_ratio(int k, const std::function<double(const Eigen::VectorXd&)>& objective,
                           const RatioOptions& options = {});

}  // namespace qmetric
