#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qmetric/report.hpp"

namespace qmetric {

/// Residual report for the semi-metric axioms of a square matrix: symmetry, zero
/// diagonal, nonnegativity and the triangle inequality over all triples.
Report check_semimetric(const Eigen::MatrixXd& d, double tol = 1e-12);

/// A finite set {0, ..., n-1} with a semi-metric (distinct points may be at distance 0).
class SemiMetricSpace {
 public:
  /// Validates with check_semimetric; throws std::invalid_argument on failure.
  explicit SemiMetricSpace(Eigen::MatrixXd d, double tol = 1e-12);

  int size() const { return static_cast<int>(d_.rows()); }
  double operator()(int x, int y) const { return d_(x, y); }
  const Eigen::MatrixXd& matrix() const { return d_; }

  double diameter() const;
  /// Smallest positive distance, or 0 when every distance vanishes.
  double min_positive() const;
  /// True when no two distinct points are at distance <= zero_tol.
  bool is_metric(double zero_tol = 0.0) const;
  SemiMetricSpace scaled(double t) const;

 private:
  Eigen::MatrixXd d_;
};

/// X/~ where x ~ x' iff d(x, x') <= zero_tol. `projection[x]` is the class of x,
/// classes numbered by first occurrence, and the induced distance on classes
/// satisfies d̂(proj x, proj y) = d(x, y).
struct QuotientSpace {
  SemiMetricSpace space;
  std::vector<int> projection;
};

QuotientSpace quotient_space(const SemiMetricSpace& space, double zero_tol = 0.0);

/// Random semi-metric on n points: integer half-unit edge weights, each point
/// merged into an earlier point's zero class with probability `merge_probability`,
/// then closed under shortest paths. The result is exact in floating point.
SemiMetricSpace random_semimetric(int n, std::mt19937_64& rng, double merge_probability = 0.0);

}  // namespace qmetric
