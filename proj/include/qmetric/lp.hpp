#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qmetric::lp {

enum class Sense { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status s);

struct Tolerances {
  double feasibility = 1e-10;
  double optimality = 1e-10;
  int max_iterations = 200000;
};

/// maximize c.x subject to rows(A) x (sense) b and x >= 0.
struct Problem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  std::vector<Sense> sense;
  Eigen::VectorXd c;

  void add_row(const Eigen::RowVectorXd& row, Sense s, double rhs);
};

struct Solution {
  Status status = Status::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  int iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's rule for both the entering and the
/// leaving variable, so it terminates on degenerate problems.
Solution solve(const Problem& problem, const Tolerances& tol = {});

}  // namespace qmetric::lp
