#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qmetric/duality.hpp"
#include "qmetric/instances.hpp"
#include "qmetric/lp.hpp"

using namespace qmetric;
using testing_support::distribution;
using testing_support::pauli;

TEST_SUITE("duality") {

TEST_CASE("simplex on a textbook problem") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
  lp::Problem p;
  p.c = Eigen::Vector2d(3, 5);
  p.a.resize(0, 2);
  p.add_row(Eigen::RowVector2d(1, 0), lp::Sense::less_equal, 4);
  p.add_row(Eigen::RowVector2d(0, 2), lp::Sense::less_equal, 12);
  p.add_row(Eigen::RowVector2d(3, 2), lp::Sense::less_equal, 18);
  const lp::Solution s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.objective == doctest::Approx(36.0));
  CHECK(s.x(0) == doctest::Approx(2.0));
  CHECK(s.x(1) == doctest::Approx(6.0));
}

TEST_CASE("simplex reports infeasible and unbounded") {
  lp::Problem p;
  p.c = Eigen::Vector2d(1, 1);
  p.a.resize(0, 2);
  p.add_row(Eigen::RowVector2d(1, -1), lp::Sense::less_equal, 1);
  CHECK(lp::solve(p).status == lp::Status::unbounded);
  lp::Problem q;
  q.c = Eigen::Vector2d(1, 1);
  q.a.resize(0, 2);
  q.add_row(Eigen::RowVector2d(1, 1), lp::Sense::less_equal, 1);
  q.add_row(Eigen::RowVector2d(1, 1), lp::Sense::greater_equal, 2);
  CHECK(lp::solve(q).status == lp::Status::infeasible);
}

TEST_CASE("two points") {
  const Algebra c2 = Algebra::functions_on(2);
  Eigen::MatrixXd d(2, 2);
  d << 0, 2, 2, 0;
  const Seminorm l = Seminorm::lipschitz(SemiMetricSpace(d));
  const State mu = distribution(c2, {0.75, 0.25}), nu = distribution(c2, {0.5, 0.5});
  const DistanceResult r = rho_lp_dual(mu, nu, l);
  CHECK(r.exact);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(kantorovich_primal(mu, nu, SemiMetricSpace(d)).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rho_ratio(mu, nu, l).value == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(rho_lp_dual(mu, mu, l).value == 0.0);
}

TEST_CASE("zero-distance pairs give infinite distance") {
  const Algebra c3 = Algebra::functions_on(3);
  Eigen::MatrixXd d(3, 3);
  d << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  const Seminorm l = Seminorm::lipschitz(SemiMetricSpace(d));
  const State a = point_mass(c3, 0), b = point_mass(c3, 1), c = point_mass(c3, 2);
  CHECK(rho_lp_dual(a, b, l).value == 0.0);
  CHECK(rho_lp_dual(a, c, l).value == doctest::Approx(1.0));
  const State m = distribution(c3, {0.5, 0.5, 0.0});
  CHECK(rho_lp_dual(m, c, l).value == doctest::Approx(1.0));
}

TEST_CASE("line metrics against the cumulative oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pos(0.0, 5.0);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 6;
    std::vector<double> t(static_cast<std::size_t>(n));
    for (double& x : t) x = std::round(pos(rng) * 4.0) / 4.0;
    const Eigen::MatrixXd d = oracle::line_metric(t);
    const SemiMetricSpace space(d);
    const Algebra c = Algebra::functions_on(n);
    const State mu = random_rational_state(c, rng), nu = random_rational_state(c, rng);
    Eigen::VectorXd p(n), q(n);
    for (int x = 0; x < n; ++x) {
      p(x) = mu.density(x)(0, 0).real();
      q(x) = nu.density(x)(0, 0).real();
    }
    const double expect = oracle::line_w1(t, p, q);
    CHECK(rho_lp_dual(mu, nu, Seminorm::lipschitz(space)).value == doctest::Approx(expect).epsilon(1e-10));
    CHECK(kantorovich_primal(mu, nu, space).value == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("general semi-metrics against brute-force transport") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 25; ++k) {
    const int n = 3 + k % 3;
    const SemiMetricSpace space = random_semimetric(n, rng, 0.2);
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = space(i, j);
    // four unit atoms per side
    std::vector<int> pc(static_cast<std::size_t>(n), 0), qc(static_cast<std::size_t>(n), 0);
    std::uniform_int_distribution<int> point(0, n - 1);
    for (int a = 0; a < 4; ++a) {
      ++pc[static_cast<std::size_t>(point(rng))];
      ++qc[static_cast<std::size_t>(point(rng))];
    }
    std::vector<double> p, q;
    for (int x = 0; x < n; ++x) {
      p.push_back(pc[static_cast<std::size_t>(x)] / 4.0);
      q.push_back(qc[static_cast<std::size_t>(x)] / 4.0);
    }
    const Algebra c = Algebra::functions_on(n);
    const double expect = oracle::atomic_w1(pc, qc, d);
    const DistanceResult dual = rho_lp_dual(distribution(c, p), distribution(c, q), Seminorm::lipschitz(space));
    CHECK(dual.value == doctest::Approx(expect).epsilon(1e-10));
    // the optimal function is 1-Lipschitz and attains the value
    Eigen::VectorXd f = dual.witness;
    CHECK(oracle::lipschitz_constant(f, d) <= 1.0 + 1e-9);
  }
}

TEST_CASE("homogeneity and symmetry") {
  std::mt19937_64 rng(9);
  const SemiMetricSpace space = random_semimetric(5, rng, 0.0);
  const Algebra c = Algebra::functions_on(5);
  const State mu = random_rational_state(c, rng), nu = random_rational_state(c, rng);
  const Seminorm l = Seminorm::lipschitz(space);
  const double base = rho_lp_dual(mu, nu, l).value;
  CHECK(rho_lp_dual(nu, mu, l).value == base);
  CHECK(rho_lp_dual(mu, nu, l.scaled(4.0)).value == doctest::Approx(base / 4.0).epsilon(1e-12));
}

TEST_CASE("ratio engine on the Pauli example") {
  const Algebra m2 = Algebra::full_matrices(2);
  const Seminorm l = Seminorm::group_action(pauli_action());
  Vector e0(2);
  e0 << 1.0, 0.0;
  const State mu = vector_state(m2, 0, e0), nu = block_trace_state(m2, 0);
  const DistanceResult r = rho(mu, nu, l);
  CHECK_FALSE(r.exact);
  CHECK(r.value > 0.0);
  CHECK(r.value <= r.upper + 1e-12);
  // (mu - nu)(sigma_z) = 1/2 and L(sigma_z) = 2 give the lower bound 1/4
  CHECK(r.value >= 0.25 - 1e-12);
  RatioOptions other;
  other.seed = 17;
  CHECK(rho_ratio(mu, nu, l, other).value == doctest::Approx(r.value).epsilon(1e-3));
  const RadiusResult radius = seminorm_radius(l);
  CHECK(r.value <= radius.value * functional_distance(mu, nu) + 1e-9);
  CHECK(rho(mu, mu, l).value == 0.0);
}

TEST_CASE("pullback distances along the identity") {
  std::mt19937_64 rng(14);
  const SemiMetricSpace space = random_semimetric(4, rng);
  const Algebra c = Algebra::functions_on(4);
  const State mu = random_rational_state(c, rng), nu = random_rational_state(c, rng);
  const Seminorm l = Seminorm::lipschitz(space);
  CHECK(rho_between_pullbacks(mu, nu, identity_homomorphism(c).checked(), l).value ==
        doctest::Approx(rho_lp_dual(mu, nu, l).value).epsilon(1e-12));
}

}
