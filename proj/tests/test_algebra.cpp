#include <doctest.h>

#include "helpers.hpp"
#include "qmetric/algebra.hpp"
#include "qmetric/instances.hpp"

using namespace qmetric;
using testing_support::pauli;

TEST_SUITE("algebra") {

TEST_CASE("dimensions and tensor blocks") {
  const Algebra a({1, 2});
  CHECK(a.dim() == 5);
  CHECK_FALSE(a.is_commutative());
  CHECK(Algebra::functions_on(3).is_commutative());
  const Algebra t = tensor_algebra(a, Algebra({1, 3}));
  // blocks ordered (i, j) -> i * |right| + j
  REQUIRE(t.block_count() == 4);
  CHECK(t.block_size(0) == 1);
  CHECK(t.block_size(1) == 3);
  CHECK(t.block_size(2) == 2);
  CHECK(t.block_size(3) == 6);
  CHECK_THROWS(Algebra({0, 2}));
}

TEST_CASE("blockwise product and adjoint") {
  const Algebra m2 = Algebra::full_matrices(2);
  const Element x(m2, {pauli('x')}), y(m2, {pauli('y')}), z(m2, {pauli('z')});
  const Complex i(0.0, 1.0);
  CHECK(max_abs_difference(x * y, i * z) < 1e-15);
  CHECK(max_abs_difference(y.adjoint(), y) < 1e-15);
  CHECK((x * y).is_self_adjoint() == false);
  CHECK(z.operator_norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(x * Element::unit(Algebra::functions_on(4)), AlgebraMismatch);
}

TEST_CASE("coordinates round trip") {
  std::mt19937_64 rng(3);
  const Algebra a({1, 2, 3});
  const Element e = random_element(a, rng);
  CHECK(max_abs_difference(Element::from_coordinates(a, e.coordinates()), e) == 0.0);
  CHECK(Element::matrix_unit(a, 2, 1, 0).coordinates()(1 + 4 + 1 * 3 + 0) == Complex(1.0));
}

TEST_CASE("tensor product of elements is multiplicative") {
  std::mt19937_64 rng(5);
  const Algebra b({1, 2}), c({2});
  const Element b1 = random_element(b, rng), b2 = random_element(b, rng);
  const Element c1 = random_element(c, rng), c2 = random_element(c, rng);
  CHECK(max_abs_difference(tensor(b1, c1) * tensor(b2, c2), tensor(b1 * b2, c1 * c2)) < 1e-12);
}

TEST_CASE("standard homomorphisms validate") {
  const Algebra a({1, 2}), c({2});
  CHECK(validate_homomorphism(identity_homomorphism(a)).valid);
  CHECK(validate_homomorphism(flip_homomorphism(a, c)).valid);
  CHECK(validate_homomorphism(left_embedding(a, c)).valid);
  CHECK(validate_homomorphism(right_embedding(c, a)).valid);
  std::mt19937_64 rng(1);
  CHECK(validate_homomorphism(conjugation(random_unitary_element(a, rng))).valid);
  const auto round = compose(flip_homomorphism(c, a), flip_homomorphism(a, c));
  CHECK((round.matrix() - identity_homomorphism(round.source()).matrix()).norm() == 0.0);
}

TEST_CASE("transpose is a *-anti-homomorphism only") {
  const Algebra m2 = Algebra::full_matrices(2);
  const auto t = linear_map(m2, m2, [&](const Element& a) { return Element(m2, {a.block(0).transpose()}); });
  const auto r = validate_homomorphism(t);
  CHECK(r.unitality == 0.0);
  CHECK(r.star == 0.0);
  CHECK(r.multiplicativity == doctest::Approx(1.0));
  CHECK_FALSE(r.valid);
  CHECK_THROWS_AS(t.checked(), std::invalid_argument);
}

}
