#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qmetric/instances.hpp"
#include "qmetric/seminorms.hpp"

using namespace qmetric;
using testing_support::distribution;
using testing_support::pauli;

namespace {

SemiMetricSpace example_space() {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 2, 1, 0, 1.5, 2, 1.5, 0;
  return SemiMetricSpace(d);
}

}  // namespace

TEST_SUITE("seminorms") {

TEST_CASE("semi-metric validation") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 3, 1, 0, 1, 3, 1, 0;
  CHECK_THROWS_AS(SemiMetricSpace{d}, std::invalid_argument);  // triangle
  d << 0, 1, 1, 2, 0, 1, 1, 1, 0;
  CHECK_THROWS_AS(SemiMetricSpace{d}, std::invalid_argument);  // symmetry
  d << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  const SemiMetricSpace s(d);
  CHECK_FALSE(s.is_metric());
  const QuotientSpace q = quotient_space(s);
  CHECK(q.space.size() == 2);
  CHECK(q.projection == std::vector<int>{0, 0, 1});
}

TEST_CASE("random semi-metrics satisfy the axioms") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const SemiMetricSpace s = random_semimetric(6, rng, 0.3);
    Eigen::MatrixXd d(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) d(i, j) = s(i, j);
    CHECK((oracle::shortest_paths(d) - d).cwiseAbs().maxCoeff() == 0.0);
    CHECK(check_semimetric(d).passed());
  }
}

TEST_CASE("Lipschitz seminorm against the pairwise oracle") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 40; ++k) {
    const SemiMetricSpace s = random_semimetric(5, rng, 0.25);
    Eigen::MatrixXd d(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) d(i, j) = s(i, j);
    const Algebra c5 = Algebra::functions_on(5);
    const Seminorm l = Seminorm::lipschitz(s);
    Eigen::VectorXd f = Eigen::VectorXd::Random(5);
    const double expect = oracle::lipschitz_constant(f, d);
    const double got = l(Element::function(c5, f));
    if (std::isinf(expect)) {
      CHECK(std::isinf(got));
    } else {
      CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("Lipschitz seminorm basics") {
  const Algebra c3 = Algebra::functions_on(3);
  const Seminorm l = Seminorm::lipschitz(example_space());
  Eigen::VectorXd f(3);
  f << 0.0, 1.0, 2.0;
  CHECK(l(Element::function(c3, f)) == doctest::Approx(1.0));
  CHECK(l(Element::unit(c3)) == 0.0);
  CHECK(l.scaled(2.0)(Element::function(c3, f)) == doctest::Approx(2.0));
  CHECK(kernel_nullity(l) == 0);
  CHECK(l.exact());
}

TEST_CASE("Pauli action seminorm") {
  const Algebra m2 = Algebra::full_matrices(2);
  const Seminorm l = Seminorm::group_action(pauli_action());
  CHECK(l.action()->fixed_rank == 1);
  // sigma_z commutes with Z and anticommutes with X and Y
  CHECK(l(Element(m2, {pauli('z')})) == 2.0);
  CHECK(l(Element(m2, {pauli('x')})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(l(Element::unit(m2)) == 0.0);
  const Element mixed(m2, {pauli('x') + pauli('z')});
  // X(x + z)X - (x + z) = -2z, etc.; the largest is 2 * ||x + z|| for Y
  CHECK(l(mixed) == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("a non-ergodic action is rejected") {
  const Algebra m2 = Algebra::full_matrices(2);
  const std::vector<Element> us{Element::unit(m2), Element(m2, {pauli('z')})};
  CHECK_THROWS_AS(conjugation_action(m2, us, {0.0, 1.0}), std::invalid_argument);
  const std::vector<Element> all{Element::unit(m2), Element(m2, {pauli('x')}), Element(m2, {pauli('y')}),
                                 Element(m2, {pauli('z')})};
  CHECK_THROWS_AS(conjugation_action(m2, all, {0.0, 1.0, 1.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(conjugation_action(m2, all, {0.0, 0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("permutation action on a cycle") {
  // Z3 acting by rotation on three points is ergodic on C(X)
  const auto act = permutation_action(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {0.0, 1.0, 1.0});
  const Seminorm l = Seminorm::group_action(act);
  Eigen::VectorXd f(3);
  f << 1.0, 0.0, 0.0;
  CHECK(l(Element::function(Algebra::functions_on(3), f)) == doctest::Approx(1.0));
}

TEST_CASE("quotient norms") {
  const Algebra a({1, 2});
  Matrix m(2, 2);
  m << 3, 0, 0, -1;
  const Element e(a, {Matrix::Constant(1, 1, 1.0), m});
  // spectrum {1, 3, -1}: half-width 2
  CHECK(quotient_operator_norm(e) == doctest::Approx(2.0));
  const Seminorm n = Seminorm::quotient_of_norm(a, NormDescriptor{});
  CHECK(n(e) == doctest::Approx(2.0));
  CHECK(n(Element::unit(a)) == doctest::Approx(0.0).epsilon(1e-12));
  const Algebra c3 = Algebra::functions_on(3);
  NormDescriptor w{NormKind::weighted_sup, Eigen::Vector3d(1.0, 2.0, 1.0)};
  Eigen::VectorXd f(3);
  f << 0.0, 1.0, 0.0;
  // inf over lambda of max(|l|, 2|1 + l|, |l|) = 2/3 at l = -2/3
  CHECK(Seminorm::quotient_of_norm(c3, w)(Element::function(c3, f)) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("radius of a Lipschitz seminorm is half the diameter") {
  const RadiusResult r = seminorm_radius(Seminorm::lipschitz(example_space()));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
  Eigen::MatrixXd d(2, 2);
  d << 0, 0, 0, 0;
  CHECK(std::isinf(seminorm_radius(Seminorm::lipschitz(SemiMetricSpace(d))).value) == false);
}

TEST_CASE("QSM axioms for a metric and a semi-metric") {
  const QsmStructure metric = make_qsm(Seminorm::lipschitz(example_space()));
  CHECK(metric.axioms.passed());
  CHECK(metric.quantum_metric);
  Eigen::MatrixXd d(3, 3);
  d << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  const QsmStructure semi = make_qsm(Seminorm::lipschitz(SemiMetricSpace(d)));
  CHECK(semi.axioms.passed());
  CHECK_FALSE(semi.quantum_metric);
  const Seminorm l = Seminorm::lipschitz(SemiMetricSpace(d));
  Eigen::VectorXd f(3);
  f << 1.0, 0.0, 0.0;
  CHECK_FALSE(l.in_domain(Element::function(Algebra::functions_on(3), f)));
  CHECK(domain_directions(l).cols() == 2);
}

TEST_CASE("state metric seminorm on probes") {
  const Algebra c2 = Algebra::functions_on(2);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 1) = d(1, 0) = 4.0;
  const StateSemiMetric m{point_mass_probes(c2), d, Eigen::MatrixXi::Ones(2, 2)};
  const Seminorm l = Seminorm::state_metric(m);
  Eigen::VectorXd f(2);
  f << 1.0, -1.0;
  CHECK(l(Element::function(c2, f)) == doctest::Approx(0.5));
  CHECK(check_state_semimetric(m).passed());
  CHECK(distribution(c2, {0.5, 0.5})(Element::function(c2, f)).real() == 0.0);
}

}
