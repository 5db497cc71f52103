#include "qmetric/duality.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>
#include <stdexcept>

namespace qmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd distribution(const State& s) {
  const Algebra& alg = s.algebra();
  if (!alg.is_commutative()) throw std::invalid_argument("distribution of a state on a noncommutative algebra");
  Eigen::VectorXd p(alg.dim());
  for (int x = 0; x < alg.dim(); ++x) p(x) = s.density(x)(0, 0).real();
  return p;
}

void require_same(const State& mu, const State& nu, const Algebra& alg) {
  if (!(mu.algebra() == alg) || !(nu.algebra() == alg)) {
    throw AlgebraMismatch("states and seminorm live on different algebras");
  }
}

struct FrameLp {
  lp::Status status = lp::Status::infeasible;
  double value = 0.0;
  Eigen::VectorXd y;
  long iterations = 0;
  bool box_active = false;
};

// maximize g.y over free y subject to |c.y| <= 1 for every cut row, and |y_i| <= box
// when box is finite.
FrameLp solve_frame_lp(const Eigen::RowVectorXd& g, const std::vector<Eigen::RowVectorXd>& cuts,
                       double box, const lp::Tolerances& tol) {
  const auto k = g.size();
  auto lift = [&](const Eigen::RowVectorXd& row) {
    Eigen::RowVectorXd r(2 * k);
    r << row, -row;
    return r;
  };
  lp::Problem prob;
  prob.c = lift(g).transpose();
  prob.a.resize(0, 2 * k);
  for (const auto& c : cuts) {
    prob.add_row(lift(c), lp::Sense::less_equal, 1.0);
    prob.add_row(-lift(c), lp::Sense::less_equal, 1.0);
  }
  if (std::isfinite(box)) {
    for (Eigen::Index i = 0; i < 2 * k; ++i) {
      Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(2 * k);
      e(i) = 1.0;
      prob.add_row(e, lp::Sense::less_equal, box);
    }
  }
  const lp::Solution sol = lp::solve(prob, tol);
  FrameLp out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  if (sol.status != lp::Status::optimal) return out;
  out.y = sol.x.head(k) - sol.x.tail(k);
  out.value = sol.objective;
  out.box_active = std::isfinite(box) && out.y.cwiseAbs().maxCoeff() >= box * (1.0 - 1e-9);
  return out;
}

DistanceResult state_metric_frame_lp(const State& mu, const State& nu, const Seminorm& seminorm,
                                     const lp::Tolerances& tol) {
  DistanceResult out;
  out.method = DistanceMethod::lp_dual;
  out.exact = true;
  const HermitianFrame frame(seminorm.algebra());
  const Eigen::MatrixXd q = quotient_domain_directions(seminorm);
  out.witness = Eigen::VectorXd::Zero(frame.dim());
  const Eigen::RowVectorXd g = frame.real_rows(mu.functional() - nu.functional()).row(0) * q;
  if (q.cols() == 0 || g.norm() <= 1e-12) {
    out.diagnostic = "difference vanishes on the domain";
    return out;
  }
  std::vector<Eigen::RowVectorXd> cuts;
  for (const auto& phi : seminorm.kernel_functionals()) {
    cuts.push_back(frame.real_rows(phi * seminorm.scale()).row(0) * q);
  }
  const FrameLp sol = solve_frame_lp(g, cuts, kInf, tol);
  out.iterations = sol.iterations;
  if (sol.status == lp::Status::unbounded) {
    out.value = out.upper = kInf;
    out.diagnostic = "unbounded: the states are separated by directions the seminorm does not control";
    return out;
  }
  if (sol.status != lp::Status::optimal) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.exact = false;
    out.diagnostic = std::string("LP ") + lp::to_string(sol.status);
    return out;
  }
  out.value = out.upper = std::max(0.0, sol.value);
  out.witness = q * sol.y;
  const Element w = frame.element(out.witness);
  out.residual = std::max(std::abs(g.dot(sol.y) - out.value), seminorm(w) - 1.0);
  out.residual = std::max(0.0, out.residual);
  return out;
}

}  // namespace

std::string to_string(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::lp_dual:
      return "lp_dual";
    case DistanceMethod::lp_primal:
      return "lp_primal";
    case DistanceMethod::ratio_grid:
      return "ratio_grid";
  }
  return "unknown";
}

DistanceResult rho_lp_dual(const State& mu, const State& nu, const Seminorm& seminorm,
                           const lp::Tolerances& tol) {
  require_same(mu, nu, seminorm.algebra());
  const auto form = seminorm.transport_form();
  if (!form) {
    if (seminorm.kind() == SeminormKind::state_metric) return state_metric_frame_lp(mu, nu, seminorm, tol);
    throw std::invalid_argument("rho_lp_dual needs a Lipschitz or state-metric seminorm");
  }
  const Eigen::VectorXd delta = distribution(mu) - distribution(nu);
  const auto n = static_cast<int>(delta.size());
  DistanceResult out;
  out.method = DistanceMethod::lp_dual;

  // c_0 = 0 (every row annihilates constants); c_k = u_k - v_k for k >= 1.
  const int vars = 2 * (n - 1);
  auto lift = [&](const Eigen::RowVectorXd& row) {
    Eigen::RowVectorXd r(vars);
    for (int k = 1; k < n; ++k) {
      r(2 * (k - 1)) = row(k);
      r(2 * (k - 1) + 1) = -row(k);
    }
    return r;
  };
  lp::Problem prob;
  prob.c = lift(delta.transpose()).transpose();
  prob.a.resize(0, vars);
  const auto m = form->probes.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const Eigen::RowVectorXd diff = lift(form->probes.row(i) - form->probes.row(j));
      const double dij = form->d(i, j);
      if (dij == 0.0) {
        prob.add_row(diff, lp::Sense::equal, 0.0);
      } else if (std::isfinite(dij)) {
        prob.add_row(diff, lp::Sense::less_equal, dij);
        prob.add_row(-diff, lp::Sense::less_equal, dij);
      }
    }
  }
  out.witness = Eigen::VectorXd::Zero(n);
  if (n == 1) {
    out.exact = true;
    return out;
  }
  const lp::Solution sol = lp::solve(prob, tol);
  out.iterations = sol.iterations;
  if (sol.status == lp::Status::unbounded) {
    out.value = out.upper = kInf;
    out.exact = true;
    out.diagnostic = "unbounded: the states are separated by directions the seminorm does not control";
    return out;
  }
  if (sol.status != lp::Status::optimal) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.diagnostic = std::string("LP ") + lp::to_string(sol.status);
    return out;
  }
  for (int k = 1; k < n; ++k) out.witness(k) = sol.x(2 * (k - 1)) - sol.x(2 * (k - 1) + 1);
  out.value = out.upper = std::max(0.0, sol.objective);
  out.exact = true;
  // The witness must reproduce the value and satisfy the constraints.
  double res = std::abs(delta.dot(out.witness) - out.value);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double gap = std::abs((form->probes.row(i) - form->probes.row(j)).dot(out.witness));
      res = std::max(res, gap - form->d(i, j));
    }
  }
  out.residual = std::max(0.0, res);
  return out;
}

DistanceResult kantorovich_primal(const State& mu, const State& nu, const SemiMetricSpace& space,
                                  const lp::Tolerances& tol) {
  const Eigen::VectorXd p = distribution(mu);
  const Eigen::VectorXd q = distribution(nu);
  const int n = space.size();
  if (p.size() != n || q.size() != n) throw AlgebraMismatch("marginals do not match the space");
  lp::Problem prob;
  prob.c.resize(n * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) prob.c(x * n + y) = -space(x, y);
  }
  prob.a.resize(0, n * n);
  for (int x = 0; x < n; ++x) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n * n);
    for (int y = 0; y < n; ++y) row(x * n + y) = 1.0;
    prob.add_row(row, lp::Sense::equal, p(x));
  }
  for (int y = 0; y < n; ++y) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n * n);
    for (int x = 0; x < n; ++x) row(x * n + y) = 1.0;
    prob.add_row(row, lp::Sense::equal, q(y));
  }
  DistanceResult out;
  out.method = DistanceMethod::lp_primal;
  const lp::Solution sol = lp::solve(prob, tol);
  out.iterations = sol.iterations;
  if (sol.status != lp::Status::optimal) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.diagnostic = std::string("LP ") + lp::to_string(sol.status);
    return out;
  }
  out.witness = sol.x;
  out.value = out.upper = std::max(0.0, -sol.objective);
  out.exact = true;
  const Eigen::Map<const Eigen::MatrixXd> plan(sol.x.data(), n, n);  // column-major view: plan(y, x)
  const double marginal = std::max((plan.colwise().sum().transpose() - p).cwiseAbs().maxCoeff(),
                                   (plan.rowwise().sum() - q).cwiseAbs().maxCoeff());
  out.residual = marginal;
  return out;
}

DistanceResult rho_ratio(const State& mu, const State& nu, const Seminorm& seminorm,
                         const RatioOptions& options) {
  require_same(mu, nu, seminorm.algebra());
  DistanceResult out;
  out.method = DistanceMethod::ratio_grid;
  const HermitianFrame frame(seminorm.algebra());
  const Eigen::MatrixXd q = quotient_domain_directions(seminorm);
  const Functional delta = mu.functional() - nu.functional();
  const Eigen::RowVectorXd g = frame.real_rows(delta).row(0) * q;
  out.witness = Eigen::VectorXd::Zero(frame.dim());
  if (q.cols() == 0 || g.norm() <= 1e-12) {
    out.diagnostic = "difference vanishes on the domain";
    return out;
  }
  const auto objective = [&](const Eigen::VectorXd& y) {
    const double num = std::abs(g.dot(y));
    if (num == 0.0) return 0.0;
    const double l = seminorm(frame.element(q * y));
    if (!(l > 0.0)) return kInf;
    return num / l;
  };
  const RatioSearch search = maximize_ratio(static_cast<int>(q.cols()), objective, options);
  out.iterations = search.evaluations;
  out.value = search.value;
  out.upper = kInf;
  out.diagnostic = search.diagnostic;
  Eigen::VectorXd best = search.best;
  if (search.unbounded) {
    out.upper = kInf;
    out.diagnostic = "unbounded: seminorm vanishes on a separating direction";
    out.witness = q * best;
    return out;
  }

  // Cutting planes: every supporting functional s gives the valid constraint
  // |s.y| <= 1 on the unit ball of L, so the LP value bounds rho from above while
  // each LP vertex, rescaled, is a feasible point bounding it from below.
  auto cut_at = [&](const Eigen::VectorXd& y) -> std::optional<Eigen::RowVectorXd> {
    const auto s = seminorm.support(frame.element(q * y));
    if (!s) return std::nullopt;
    return Eigen::RowVectorXd(frame.real_rows(*s).row(0) * q);
  };
  std::vector<Eigen::RowVectorXd> cuts;
  if (options.cuts > 0 && cut_at(best)) {
    cuts.push_back(*cut_at(best));
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      if (auto c = cut_at(Eigen::VectorXd::Unit(q.cols(), j))) cuts.push_back(*c);
    }
    const double box = 1e6 * (1.0 + out.value) / std::max(1e-12, g.norm());
    for (int it = 0; it < options.cuts; ++it) {
      const FrameLp sol = solve_frame_lp(g, cuts, box, {});
      out.iterations += sol.iterations;
      if (sol.status != lp::Status::optimal) break;
      const double ly = seminorm(frame.element(q * sol.y));
      const double num = g.dot(sol.y);
      if (!(ly > 0.0)) break;
      if (num / ly > out.value) {
        out.value = num / ly;
        best = sol.y;
      }
      if (!sol.box_active) out.upper = std::min(out.upper, sol.value);
      if (std::isfinite(out.upper) && out.upper - out.value <= options.gap * std::max(1.0, out.upper)) break;
      auto c = cut_at(sol.y);
      if (!c) break;
      cuts.push_back(*c);
    }
  }
  out.witness = q * best;
  out.residual = std::abs(objective(best) - out.value);
  return out;
}

DistanceResult rho(const State& mu, const State& nu, const Seminorm& seminorm,
                   const DistanceOptions& options) {
  if (seminorm.kind() == SeminormKind::lipschitz || seminorm.kind() == SeminormKind::state_metric) {
    return rho_lp_dual(mu, nu, seminorm, options.lp);
  }
  return rho_ratio(mu, nu, seminorm, options.ratio);
}

DistanceResult rho_between_pullbacks(const State& mu, const State& nu, const StarHomomorphism& phi,
                                     const Seminorm& seminorm, const DistanceOptions& options) {
  return rho(pullback(mu, phi), pullback(nu, phi), seminorm, options);
}

double functional_distance(const State& mu, const State& nu) {
  if (!(mu.algebra() == nu.algebra())) throw AlgebraMismatch("states on different algebras");
  double total = 0.0;
  for (int i = 0; i < mu.algebra().block_count(); ++i) {
    const Matrix diff = mu.density(i) - nu.density(i);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    total += es.eigenvalues().cwiseAbs().sum();
  }
  return total;
}

}  // namespace qmetric
