#pragma once

// Reference computations that share no code with the library engines.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// W1 between distributions on points t_0 < ... of the real line with d = |t_i - t_j|:
// the integral of |F - G| between consecutive atoms.
inline double line_w1(const std::vector<double>& t, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  std::vector<int> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return t[a] < t[b]; });
  double cdf = 0.0, total = 0.0;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    cdf += p(order[k]) - q(order[k]);
    total += std::abs(cdf) * (t[order[k + 1]] - t[order[k]]);
  }
  return total;
}

inline Eigen::MatrixXd line_metric(const std::vector<double>& t) {
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = std::abs(t[i] - t[j]);
  return d;
}

// max over pairs of |f(x) - f(y)| / d(x, y); infinite when f separates a zero pair.
inline double lipschitz_constant(const Eigen::VectorXd& f, const Eigen::MatrixXd& d) {
  double best = 0.0;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = i + 1; j < d.cols(); ++j) {
      const double gap = std::abs(f(i) - f(j));
      if (d(i, j) == 0.0) {
        if (gap > 0.0) return std::numeric_limits<double>::infinity();
      } else {
        best = std::max(best, gap / d(i, j));
      }
    }
  return best;
}

// Floyd-Warshall closure of a symmetric weight matrix.
inline Eigen::MatrixXd shortest_paths(Eigen::MatrixXd w) {
  const int n = static_cast<int>(w.rows());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = std::min(w(i, j), w(i, k) + w(k, j));
  return w;
}

// Brute force W1 for distributions with a common denominator m: split each side into m
// unit atoms and minimize over all assignments (m! permutations; keep m small).
inline double atomic_w1(const std::vector<int>& p_counts, const std::vector<int>& q_counts,
                        const Eigen::MatrixXd& d) {
  std::vector<int> a, b;
  for (std::size_t x = 0; x < p_counts.size(); ++x) a.insert(a.end(), p_counts[x], static_cast<int>(x));
  for (std::size_t x = 0; x < q_counts.size(); ++x) b.insert(b.end(), q_counts[x], static_cast<int>(x));
  std::sort(b.begin(), b.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) cost += d(a[k], b[k]);
    best = std::min(best, cost);
  } while (std::next_permutation(b.begin(), b.end()));
  return best / static_cast<double>(a.size());
}

}  // namespace oracle
