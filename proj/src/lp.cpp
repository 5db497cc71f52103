#include "qmetric/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace qmetric::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal:
      return "optimal";
    case Status::infeasible:
      return "infeasible";
    case Status::unbounded:
      return "unbounded";
    case Status::iteration_limit:
      return "iteration_limit";
  }
  return "unknown";
}

void Problem::add_row(const Eigen::RowVectorXd& row, Sense s, double rhs) {
  if (a.cols() == 0 && a.rows() == 0) a.resize(0, row.size());
  if (row.size() != a.cols()) throw std::invalid_argument("LP row width mismatch");
  a.conservativeResize(a.rows() + 1, Eigen::NoChange);
  a.row(a.rows() - 1) = row;
  b.conservativeResize(b.size() + 1);
  b(b.size() - 1) = rhs;
  sense.push_back(s);
}

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows, -1),
                                blocked_(cols, false) {}

  Eigen::MatrixXd& data() { return t_; }
  std::vector<int>& basis() { return basis_; }
  std::vector<bool>& blocked() { return blocked_; }
  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  double value() const { return t_(rows(), cols()); }

  void pivot(int r, int e) {
    t_.row(r) /= t_(r, e);
    for (int i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, e);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = e;
  }

  Status run(const Tolerances& tol, int& iterations) {
    const int m = rows();
    const int n = cols();
    while (true) {
      if (iterations >= tol.max_iterations) return Status::iteration_limit;
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (!blocked_[static_cast<std::size_t>(j)] && t_(m, j) < -tol.optimality) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::optimal;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        const double coef = t_(i, enter);
        if (coef <= tol.feasibility) continue;
        const double ratio = t_(i, n) / coef;
        if (leave < 0 || ratio < best - 1e-12 * (1.0 + std::abs(best)) ||
            (std::abs(ratio - best) <= 1e-12 * (1.0 + std::abs(best)) &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
      ++iterations;
    }
  }

  void drop_row(int r) {
    const int m = rows();
    Eigen::MatrixXd next(t_.rows() - 1, t_.cols());
    int k = 0;
    for (int i = 0; i <= m; ++i) {
      if (i != r) next.row(k++) = t_.row(i);
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  std::vector<bool> blocked_;
};

}  // namespace

Solution solve(const Problem& problem, const Tolerances& tol) {
  const int m = static_cast<int>(problem.a.rows());
  const int n = static_cast<int>(problem.c.size());
  if (problem.a.cols() != n && m > 0) throw std::invalid_argument("LP matrix width mismatch");
  if (problem.b.size() != m || static_cast<int>(problem.sense.size()) != m) {
    throw std::invalid_argument("LP row data mismatch");
  }

  // Normalize to b >= 0, then count slack and artificial columns.
  Eigen::MatrixXd a = problem.a;
  Eigen::VectorXd b = problem.b;
  std::vector<Sense> sense = problem.sense;
  int slacks = 0, artificials = 0;
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      a.row(i) *= -1.0;
      b(i) = -b(i);
      if (sense[static_cast<std::size_t>(i)] == Sense::less_equal) {
        sense[static_cast<std::size_t>(i)] = Sense::greater_equal;
      } else if (sense[static_cast<std::size_t>(i)] == Sense::greater_equal) {
        sense[static_cast<std::size_t>(i)] = Sense::less_equal;
      }
    }
    if (sense[static_cast<std::size_t>(i)] != Sense::equal) ++slacks;
    if (sense[static_cast<std::size_t>(i)] != Sense::less_equal) ++artificials;
  }
  const int total = n + slacks + artificials;
  Tableau tab(m, total);
  auto& t = tab.data();
  int slack_col = n;
  int art_col = n + slacks;
  for (int i = 0; i < m; ++i) {
    t.row(i).head(n) = a.row(i);
    t(i, total) = b(i);
    switch (sense[static_cast<std::size_t>(i)]) {
      case Sense::less_equal:
        t(i, slack_col) = 1.0;
        tab.basis()[static_cast<std::size_t>(i)] = slack_col++;
        break;
      case Sense::greater_equal:
        t(i, slack_col++) = -1.0;
        t(i, art_col) = 1.0;
        tab.basis()[static_cast<std::size_t>(i)] = art_col++;
        break;
      case Sense::equal:
        t(i, art_col) = 1.0;
        tab.basis()[static_cast<std::size_t>(i)] = art_col++;
        break;
    }
  }
  const int first_art = n + slacks;
  Solution sol;
  int iterations = 0;

  if (artificials > 0) {
    for (int j = first_art; j < total; ++j) t(m, j) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] >= first_art) t.row(m) -= t.row(i);
    }
    const Status phase1 = tab.run(tol, iterations);
    if (phase1 == Status::iteration_limit) {
      sol.status = phase1;
      sol.iterations = iterations;
      return sol;
    }
    const double scale = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
    if (tab.value() < -tol.feasibility * scale * 10.0) {
      sol.status = Status::infeasible;
      sol.iterations = iterations;
      return sol;
    }
    // Pivot remaining artificials out of the basis; rows where that is impossible
    // are linearly dependent and are dropped.
    for (int i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < first_art) continue;
      int col = -1;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(tab.data()(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.drop_row(i);
      }
    }
    for (int j = first_art; j < total; ++j) tab.blocked()[static_cast<std::size_t>(j)] = true;
  }

  auto& t2 = tab.data();
  const int rows = tab.rows();
  t2.row(rows).setZero();
  t2.row(rows).head(n) = -problem.c.transpose();
  for (int i = 0; i < rows; ++i) {
    const double coef = t2(rows, tab.basis()[static_cast<std::size_t>(i)]);
    if (coef != 0.0) t2.row(rows) -= coef * t2.row(i);
  }
  sol.status = tab.run(tol, iterations);
  sol.iterations = iterations;
  sol.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < rows; ++i) {
    const int var = tab.basis()[static_cast<std::size_t>(i)];
    if (var < n) sol.x(var) = t2(i, total);
  }
  sol.objective = problem.c.dot(sol.x);
  return sol;
}

}  // namespace qmetric::lp
