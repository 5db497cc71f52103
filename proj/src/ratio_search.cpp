#include "qmetric/ratio_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace qmetric {

namespace {

constexpr std::array<int, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(int index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

struct Evaluator {
  const std::function<double(const Eigen::VectorXd&)>& fn;
  RatioSearch& out;

  double operator()(const Eigen::VectorXd& y) {
    ++out.evaluations;
    const double v = fn(y);
    if (std::isinf(v) && v > 0) {
      out.unbounded = true;
      out.value = std::numeric_limits<double>::infinity();
      out.best = y;
    }
    return std::isnan(v) ? -1.0 : v;
  }
};

}  // namespace

RatioSearch maximize_ratio(int k, const std::function<double(const Eigen::VectorXd&)>& objective,
                           const RatioOptions& options) {
  RatioSearch out;
  if (k <= 0) {
    out.diagnostic = "empty direction space";
    return out;
  }
  Evaluator eval{objective, out};
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;

  std::vector<Eigen::VectorXd> starts;
  for (int j = 0; j < k; ++j) {
    starts.push_back(Eigen::VectorXd::Unit(k, j));
  }
  if (k > 1) {
    if (k <= options.max_dim) {
      for (int i = 1; i <= options.grid; ++i) {
        Eigen::VectorXd y(k);
        for (int j = 0; j < k; ++j) y(j) = 2.0 * radical_inverse(i, kPrimes[static_cast<std::size_t>(j)]) - 1.0;
        if (y.norm() > 1e-12) starts.push_back(y.normalized());
      }
    } else {
      out.sampled = true;
      out.diagnostic = "direction space exceeds grid cap; using sampled directions";
      for (int i = 0; i < options.grid; ++i) {
        Eigen::VectorXd y(k);
        for (int j = 0; j < k; ++j) y(j) = gauss(rng);
        starts.push_back(y.normalized());
      }
    }
  }

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double v = eval(starts[i]);
    if (out.unbounded) return out;
    scored.emplace_back(v, i);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  out.value = scored.front().first;
  out.best = starts[scored.front().second];
  if (k == 1) return out;

  const int n_starts = std::min<int>(options.starts, static_cast<int>(scored.size()));
  for (int s = 0; s < n_starts; ++s) {
    Eigen::VectorXd y = starts[scored[static_cast<std::size_t>(s)].second];
    double f = scored[static_cast<std::size_t>(s)].first;
    double h = 0.5;
    for (int step = 0; step < options.refine_steps && h >= options.min_step; ++step) {
      bool improved = false;
      auto attempt = [&](const Eigen::VectorXd& dir) {
        Eigen::VectorXd cand = y + h * dir;
        const double norm = cand.norm();
        if (norm < 1e-14) return;
        cand /= norm;
        const double fc = eval(cand);
        if (fc > f) {
          f = fc;
          y = std::move(cand);
          improved = true;
        }
      };
      for (int j = 0; j < k && !out.unbounded; ++j) {
        attempt(Eigen::VectorXd::Unit(k, j));
        attempt(-Eigen::VectorXd::Unit(k, j));
      }
      for (int r = 0; r < options.random_directions && !out.unbounded; ++r) {
        Eigen::VectorXd dir(k);
        for (int j = 0; j < k; ++j) dir(j) = gauss(rng);
        attempt(dir.normalized());
      }
      if (out.unbounded) return out;
      if (!improved) h *= 0.5;
    }
    if (f > out.value) {
      out.value = f;
      out.best = y;
    }
  }
  return out;
}

}  // namespace qmetric
