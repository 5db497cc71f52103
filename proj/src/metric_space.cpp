#include "qmetric/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qmetric {

Report check_semimetric(const Eigen::MatrixXd& d, double tol) {
  Report report("semimetric");
  if (d.rows() != d.cols() || d.rows() == 0) {
    report.add_flag("semimetric.shape", false, "distance matrix must be square and nonempty");
    return report;
  }
  const auto n = d.rows();
  double asym = 0.0, diag = 0.0, neg = 0.0, tri = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    diag = std::max(diag, std::abs(d(x, x)));
    for (Eigen::Index y = 0; y < n; ++y) {
      asym = std::max(asym, std::abs(d(x, y) - d(y, x)));
      neg = std::max(neg, -d(x, y));
      if (!std::isfinite(d(x, y))) neg = std::numeric_limits<double>::infinity();
      for (Eigen::Index z = 0; z < n; ++z) tri = std::max(tri, d(x, z) - d(x, y) - d(y, z));
    }
  }
  report.add("semimetric.symmetric", asym, tol);
  report.add("semimetric.zero_diagonal", diag, tol);
  report.add("semimetric.nonnegative", neg, tol);
  report.add("semimetric.triangle", tri, tol, static_cast<std::size_t>(n * n * n));
  return report;
}

SemiMetricSpace::SemiMetricSpace(Eigen::MatrixXd d, double tol) : d_(std::move(d)) {
  const Report report = check_semimetric(d_, tol);
  if (!report.passed()) {
    std::string failed;
    for (const auto& c : report.checks()) {
      if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.id;
    }
    throw std::invalid_argument("not a semi-metric: " + failed);
  }
}

double SemiMetricSpace::diameter() const { return d_.maxCoeff(); }

double SemiMetricSpace::min_positive() const {
  double best = 0.0;
  for (Eigen::Index i = 0; i < d_.size(); ++i) {
    const double v = d_.data()[i];
    if (v > 0.0 && (best == 0.0 || v < best)) best = v;
  }
  return best;
}

bool SemiMetricSpace::is_metric(double zero_tol) const {
  for (int x = 0; x < size(); ++x) {
    for (int y = x + 1; y < size(); ++y) {
      if (d_(x, y) <= zero_tol) return false;
    }
  }
  return true;
}

SemiMetricSpace SemiMetricSpace::scaled(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("scale must be positive");
  return SemiMetricSpace(t * d_);
}

QuotientSpace quotient_space(const SemiMetricSpace& space, double zero_tol) {
  const int n = space.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (space(x, y) <= zero_tol) {
        const int rx = find(x), ry = find(y);
        if (rx != ry) parent[static_cast<std::size_t>(std::max(rx, ry))] = std::min(rx, ry);
      }
    }
  }
  std::vector<int> projection(static_cast<std::size_t>(n), -1);
  std::vector<int> representative;
  std::vector<int> class_of_root(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    const int root = find(x);
    if (class_of_root[static_cast<std::size_t>(root)] < 0) {
      class_of_root[static_cast<std::size_t>(root)] = static_cast<int>(representative.size());
      representative.push_back(x);
    }
    projection[static_cast<std::size_t>(x)] = class_of_root[static_cast<std::size_t>(root)];
  }
  const auto k = static_cast<Eigen::Index>(representative.size());
  Eigen::MatrixXd d(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      d(i, j) = space(representative[static_cast<std::size_t>(i)],
                      representative[static_cast<std::size_t>(j)]);
    }
  }
  return {SemiMetricSpace(std::move(d)), std::move(projection)};
}

SemiMetricSpace random_semimetric(int n, std::mt19937_64& rng, double merge_probability) {
  if (n < 1) throw std::invalid_argument("need at least one point");
  std::uniform_int_distribution<int> weight(1, 12);
  std::bernoulli_distribution merge(merge_probability);
  std::vector<int> cls(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    cls[static_cast<std::size_t>(x)] = x;
    if (x > 0 && merge_probability > 0.0 && merge(rng)) {
      std::uniform_int_distribution<int> earlier(0, x - 1);
      cls[static_cast<std::size_t>(x)] = cls[static_cast<std::size_t>(earlier(rng))];
    }
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const double w = cls[static_cast<std::size_t>(x)] == cls[static_cast<std::size_t>(y)]
                           ? 0.0
                           : 0.5 * weight(rng);
      d(x, y) = d(y, x) = w;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) d(x, y) = std::min(d(x, y), d(x, k) + d(k, y));
    }
  }
  return SemiMetricSpace(std::move(d));
}

}  // namespace qmetric
