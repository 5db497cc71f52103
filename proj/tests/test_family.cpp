#include <doctest.h>

#include "helpers.hpp"
#include "qmetric/duality.hpp"
#include "qmetric/family.hpp"
#include "qmetric/instances.hpp"

using namespace qmetric;
using testing_support::distribution;

namespace {

// points (a, c) of a two-by-two grid, index 2a + c
SemiMetricSpace grid_space() {
  Eigen::MatrixXd d(4, 4);
  d << 0, 2, 1, 3, 2, 0, 3, 1, 1, 3, 0, 2, 3, 1, 2, 0;
  return SemiMetricSpace(d);
}

}  // namespace

TEST_SUITE("family") {

TEST_CASE("identity and flip families on a product of points") {
  const Algebra c2 = Algebra::functions_on(2);
  const Seminorm base = Seminorm::lipschitz(grid_space());
  const ProbeSet probes = point_mass_probes(c2);
  // identity: sup over the first factor, d(c, c') = max_a d((a, c), (a, c'))
  const StateSemiMetric id = induced_state_semimetric(identity_family(c2, c2), base, probes);
  CHECK(id.d(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(id.all_exact());
  // flip: sup over the second factor, d(a, a') = max_c d((a, c), (a', c))
  const StateSemiMetric fl = induced_state_semimetric(flip_family(c2, c2), base, probes);
  CHECK(fl.d(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("induced semi-metric is a semi-metric on mixed probes") {
  const Algebra c2 = Algebra::functions_on(2);
  const ProbeSet probes = build_probes(c2, 0, 3, 5);
  const StateSemiMetric m = induced_state_semimetric(identity_family(c2, c2), Seminorm::lipschitz(grid_space()), probes);
  CHECK(check_state_semimetric(m).passed());
  CHECK((m.d - m.d.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("slices and pulled states") {
  std::mt19937_64 rng(6);
  const Algebra b({2}), c({1, 1});
  const QuantumFamily fam = identity_family(b, c);
  const State mu = random_state(b, rng), nu = random_state(c, rng);
  const Element a = random_element(fam.source(), rng);
  // (mu ⊗ nu)(a) = nu((mu ⊗ id)(a))
  CHECK(std::abs(fam.pulled(mu, nu)(a) - nu(fam.slice(mu, a))) < 1e-13);
}

TEST_CASE("a ⊗ 1 gives the zero semi-metric") {
  const Algebra c3 = Algebra::functions_on(3), m2 = Algebra::full_matrices(2);
  std::mt19937_64 rng(2);
  const QuantumFamily fam(c3, m2, left_embedding(c3, m2).checked());
  const StateSemiMetric m = induced_state_semimetric(fam, Seminorm::lipschitz(random_semimetric(3, rng)),
                                                     build_probes(m2, 2, 1, 3));
  CHECK(m.degenerate());
  const DensityResult dens = check_prop4_density(fam, spanning_states(c3, 0));
  CHECK(dens.rank == 1);
  CHECK_FALSE(dens.full);
}

TEST_CASE("homomorphism families") {
  const Algebra m2 = Algebra::full_matrices(2);
  std::mt19937_64 rng(12);
  const auto phi = conjugation(random_unitary_element(m2, rng)).checked();
  const QuantumFamily fam = homomorphism_family(phi);
  CHECK(fam.averaged().dim() == 1);
  const DensityResult dens = check_prop4_density(fam, spanning_states(fam.averaged(), 0));
  CHECK(dens.full);
  CHECK(dens.rank == 4);
}

TEST_CASE("induced structure satisfies the proposition checks") {
  const Algebra c2 = Algebra::functions_on(2);
  const QuantumFamily fam = identity_family(c2, c2);
  const Seminorm base = Seminorm::lipschitz(grid_space());
  const QsmStructure q = induce_qsm(fam, base, build_probes(c2, 0, 2, 1));
  CHECK(q.axioms.passed());
  const Report r = check_prop2(q);
  CHECK(r.passed());
  REQUIRE(r.find("prop2.iv") != nullptr);
  std::mt19937_64 rng(1);
  std::vector<Element> samples;
  for (int k = 0; k < 8; ++k) samples.push_back(random_domain_element(base, rng));
  const Report l3 = check_lemma3(fam, base, q.seminorm, spanning_states(c2, 0), samples, 1e-8);
  CHECK(l3.passed());
}

TEST_CASE("noncommutative instances") {
  for (int kind = 0; kind < 5; ++kind) {
    std::mt19937_64 rng = instance_rng(0, static_cast<std::uint64_t>(kind));
    const FamilyInstance inst = random_noncommutative_instance(rng, kind, 1, 1);
    const StateSemiMetric m = induced_state_semimetric(inst.family, inst.base, inst.probes);
    CAPTURE(inst.label);
    CHECK(check_state_semimetric(m, 1e-6).passed());
    for (Eigen::Index i = 0; i < m.d.rows(); ++i) CHECK(m.d(i, i) == 0.0);
  }
}

}

TEST_SUITE("family") {

TEST_CASE("mixed averaging states never beat the point masses") {
  std::mt19937_64 rng(19);
  const Algebra b = Algebra::functions_on(3), c = Algebra::functions_on(2);
  for (int k = 0; k < 10; ++k) {
    const SemiMetricSpace space = random_semimetric(6, rng, 0.1);
    const Seminorm base = Seminorm::lipschitz(space);
    const QuantumFamily fam = identity_family(b, c);
    const ProbeSet probes = point_mass_probes(c);
    const StateSemiMetric m = induced_state_semimetric(fam, base, probes);
    for (int s = 0; s < 5; ++s) {
      const State mu = random_state(b, rng);
      const double v = rho_lp_dual(fam.pulled(mu, probes.states[0]), fam.pulled(mu, probes.states[1]), base).value;
      CHECK(v <= m.d(0, 1) + 1e-8);
    }
  }
}

}
