#include <doctest.h>

#include "helpers.hpp"
#include "qmetric/family.hpp"
#include "qmetric/instances.hpp"

using namespace qmetric;
using testing_support::distribution;

TEST_SUITE("states") {

TEST_CASE("validation") {
  const Algebra m2 = Algebra::full_matrices(2);
  Matrix bad(2, 2);
  bad << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(State(m2, {bad}), std::invalid_argument);
  Matrix half(2, 2);
  half << 0.25, 0, 0, 0.25;
  CHECK_THROWS_AS(State(m2, {half}), std::invalid_argument);
  Matrix nonhermitian(2, 2);
  nonhermitian << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(State(m2, {nonhermitian}), std::invalid_argument);
}

TEST_CASE("pairing with point masses and vector states") {
  const Algebra c3 = Algebra::functions_on(3);
  Eigen::VectorXd f(3);
  f << 2.0, -1.0, 5.0;
  CHECK(point_mass(c3, 2)(Element::function(c3, f)).real() == 5.0);
  const Algebra a({1, 2});
  Vector psi(2);
  psi << 1.0, Complex(0.0, 1.0);
  const State s = vector_state(a, 1, psi);
  const Element e = Element::matrix_unit(a, 1, 0, 1);
  // <psi, E01 psi> / |psi|^2 = conj(psi0) psi1 / 2
  CHECK(std::abs(s(e) - Complex(0.0, 0.5)) < 1e-15);
  CHECK(block_trace_state(a, 1)(Element::unit(a)).real() == doctest::Approx(1.0));
}

TEST_CASE("product states factorize and slices contract") {
  std::mt19937_64 rng(11);
  const Algebra b({1, 2}), c({2});
  const State mu = random_state(b, rng), nu = random_state(c, rng);
  const Element x = random_element(b, rng), y = random_element(c, rng);
  const State p = product_state(mu, nu);
  CHECK(std::abs(p(tensor(x, y)) - mu(x) * nu(y)) < 1e-13);
  const Element s = slice_left(mu, tensor(x, y), c);
  CHECK(max_abs_difference(s, mu(x) * y) < 1e-13);
  const Element r = slice_right(tensor(x, y), nu, b);
  CHECK(max_abs_difference(r, nu(y) * x) < 1e-13);
}

TEST_CASE("pullback along a homomorphism") {
  std::mt19937_64 rng(2);
  const Algebra m2 = Algebra::full_matrices(2);
  const Element u = random_unitary_element(m2, rng);
  const auto phi = conjugation(u).checked();
  const State mu = random_state(m2, rng);
  const Element a = random_element(m2, rng);
  CHECK(std::abs(pullback(mu, phi)(a) - mu(u * a * u.adjoint())) < 1e-13);
  CHECK_THROWS(pullback(mu, conjugation(u)));
}

TEST_CASE("mixtures") {
  const Algebra c2 = Algebra::functions_on(2);
  const std::vector<State> s{point_mass(c2, 0), point_mass(c2, 1)};
  const std::vector<double> w{0.25, 0.75};
  CHECK(state_distance_max(mixture(s, w), distribution(c2, {0.25, 0.75})) < 1e-15);
}

TEST_CASE("probe sets are deterministic and contain the extreme states") {
  const Algebra a({1, 2});
  const ProbeSet p = build_probes(a, 2, 3, 7), q = build_probes(a, 2, 3, 7);
  REQUIRE(p.size() == q.size());
  for (std::size_t k = 0; k < p.size(); ++k) CHECK(state_distance_max(p.states[k], q.states[k]) == 0.0);
  const ProbeSet e = point_mass_probes(a);
  CHECK(e.size() == 3);
  CHECK(build_probes(Algebra::functions_on(4), 0, 0, 1).has_all_point_masses());
  CHECK(e.provenance[0] == Provenance::extreme);
}

}
