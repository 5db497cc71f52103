#include <doctest.h>

#include "helpers.hpp"
#include "qmetric/classical.hpp"
#include "qmetric/duality.hpp"
#include "qmetric/instances.hpp"

using namespace qmetric;
using testing_support::distribution;

namespace {

ClassicalFamily line_family() {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  return ClassicalFamily{2, 2, SemiMetricSpace(d), {{0, 2}, {1, 1}}};
}

}  // namespace

TEST_SUITE("classical") {

TEST_CASE("d1 by hand") {
  const SemiMetricSpace d1 = d1_direct(line_family());
  CHECK(d1(0, 1) == 2.0);
  CHECK(d1(0, 0) == 0.0);
}

TEST_CASE("validation of the table") {
  ClassicalFamily f = line_family();
  f.f[1][0] = 3;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f = line_family();
  f.f.pop_back();
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}

TEST_CASE("compiled family is the composition map") {
  const QuantumFamily q = compile_family(line_family());
  CHECK(q.averaged().dim() == 2);
  CHECK(q.parameter().dim() == 2);
  Eigen::VectorXd a(3);
  a << 5.0, 7.0, 11.0;
  const Element img = q.phi()(Element::function(q.source(), a));
  // (y, z) -> a(F(y, z))
  CHECK(img.value(0).real() == 5.0);
  CHECK(img.value(1).real() == 11.0);
  CHECK(img.value(2).real() == 7.0);
  CHECK(img.value(3).real() == 7.0);
}

TEST_CASE("induced semi-metric on point masses equals d1") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 20; ++k) {
    const ClassicalFamily f = random_classical_family(rng);
    const SemiMetricSpace d1 = d1_direct(f);
    const StateSemiMetric m = induced_state_semimetric(compile_family(f), Seminorm::lipschitz(f.x),
                                                       point_mass_probes(Algebra::functions_on(f.z_size)));
    for (int z = 0; z < f.z_size; ++z)
      for (int w = 0; w < f.z_size; ++w) CHECK(m.d(z, w) == doctest::Approx(d1(z, w)).epsilon(1e-12));
  }
}

TEST_CASE("theorem pipeline passes on random families") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const Report r = verify_theorem(random_classical_family(rng));
    CHECK(r.passed());
    CHECK(r.find("theorem.i") != nullptr);
    CHECK(r.find("theorem.iii") != nullptr);
  }
}

TEST_CASE("point-mass distance recovery fails for a general semi-metric on mixed probes") {
  // probes delta_0, delta_1 and their midpoint m with d(0, 1) = 2, d(0, m) = 1/2,
  // d(m, 1) = 3/2. Every c with L_d(c) <= 1 has |c0 - c1| <= 2 d(0, m) = 1, so
  // rho_{L_d}(delta_0, delta_1) = 1 < 2.
  const Algebra c2 = Algebra::functions_on(2);
  ProbeSet probes = point_mass_probes(c2);
  probes.states.push_back(distribution(c2, {0.5, 0.5}));
  probes.provenance.push_back(Provenance::mixed);
  Eigen::MatrixXd d(3, 3);
  d << 0, 2, 0.5, 2, 0, 1.5, 0.5, 1.5, 0;
  const StateSemiMetric metric{probes, d, Eigen::MatrixXi::Ones(3, 3)};
  REQUIRE(check_state_semimetric(metric).passed());
  const DistanceResult r = rho_lp_dual(probes.states[0], probes.states[1], Seminorm::state_metric(metric));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  const Report lemma = verify_lemma5(metric);
  CHECK_FALSE(lemma.passed());
}

TEST_CASE("point-mass distance recovery holds for the transport lift") {
  std::mt19937_64 rng(40);
  for (int k = 0; k < 10; ++k) {
    const SemiMetricSpace space = random_semimetric(4, rng, 0.2);
    const ProbeSet probes = build_probes(Algebra::functions_on(4), 0, 3, static_cast<std::uint64_t>(k));
    const Report r = verify_lemma5(transport_state_metric(space, probes));
    CHECK(r.passed());
  }
}

}
