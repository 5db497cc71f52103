#pragma once

#include <cstdint>
#include <vector>

#include "qmetric/duality.hpp"
#include "qmetric/seminorms.hpp"
#include "qmetric/states.hpp"

namespace qmetric {

/// A quantum family of maps: a validated unital *-homomorphism
/// phi: A -> B ⊗ C. L lives on A (`source`), the sup runs over states of B
/// (`averaged`) and the induced structure lands on C (`parameter`).
class QuantumFamily {
 public:
  /// Validates phi (throws std::invalid_argument) and its shape.
  QuantumFamily(Algebra averaged, Algebra parameter, StarHomomorphism phi);

  const Algebra& source() const { return phi_.source(); }
  const Algebra& averaged() const { return averaged_; }
  const Algebra& parameter() const { return parameter_; }
  const StarHomomorphism& phi() const { return phi_; }

  /// (mu ⊗ nu) o phi, a state on the source.
  State pulled(const State& mu, const State& nu) const;
  /// (mu ⊗ id) phi(a), an element of the parameter algebra.
  Element slice(const State& mu, const Element& a) const;

 private:
  Algebra averaged_;
  Algebra parameter_;
  StarHomomorphism phi_;
};

/// (C, id) with id: A ⊗ C -> A ⊗ C; the sup runs over S(A).
QuantumFamily identity_family(const Algebra& a, const Algebra& c);
/// (A, F) with the flip F: A ⊗ C -> C ⊗ A; the sup runs over S(C).
QuantumFamily flip_family(const Algebra& a, const Algebra& c);
/// phi: A -> B read as a family A -> C ⊗ B over the one-point algebra.
QuantumFamily homomorphism_family(const StarHomomorphism& phi);

struct InduceOptions {
  /// Seeded random pure states of B added to its basis vector states when B is
  /// noncommutative, and ascent steps spent on the best of them.
  int mu_pure = 4;
  int mu_refine = 12;
  std::uint64_t seed = 0;
  DistanceOptions distance;
};

/// The states of B over which the sup is taken before refinement: every point
/// mass when B is commutative (exhaustive by convexity), otherwise the basis vector
/// states and `mu_pure` seeded pure states of each block.
ProbeSet averaging_states(const QuantumFamily& family, const InduceOptions& options);

/// d(nu, nu') = sup over mu in S(B) of rho_L((mu ⊗ nu) phi, (mu ⊗ nu') phi) on every
/// probe pair. Entries below 1e-12 are set to 0. An entry is exact when B is
/// commutative and every rho came from an exact engine.
StateSemiMetric induced_state_semimetric(const QuantumFamily& family, const Seminorm& base,
                                         const ProbeSet& probes, const InduceOptions& options = {});

/// The induced structure (C, 𝒞, L_d) at probe resolution, with its axiom report.
QsmStructure induce_qsm(const QuantumFamily& family, const Seminorm& base, const ProbeSet& probes,
                        const InduceOptions& options = {}, const QsmOptions& qsm = {});

/// Checks prop2.i (1 in 𝒞, 𝒞 self-adjoint), prop2.ii (L_d(c) = 0 forces c to agree
/// with a scalar on the probes), prop2.iv (rho_{L_d} <= d on every probe pair) and, as
/// the finite-dimensional stand-in for iii)/v), a finite radius.
Report check_prop2(const QsmStructure& induced, const QsmOptions& options = {},
                   const DistanceOptions& distance = {});

/// For every (mu, a): c = (mu ⊗ id) phi(a) satisfies L_d(c) <= L(a) + tol and agrees on
/// every zero-distance probe pair. The note records how many samples were tight.
Report check_lemma3(const QuantumFamily& family, const Seminorm& base, const Seminorm& induced,
                    const std::vector<State>& mus, const std::vector<Element>& samples,
                    double tolerance);

struct DensityResult {
  int rank = 0;
  bool full = false;
  Report report;
};

/// Rank of the span of slices (mu ⊗ id) phi(a) over the given states of B and the
/// matrix units a of A (rank tolerance 1e-8). Full rank is finite-dimensional density.
DensityResult check_prop4_density(const QuantumFamily& family, const std::vector<State>& mus);

/// States spanning the dual of B, for density checks.
std::vector<State> spanning_states(const Algebra& algebra, std::uint64_t seed);

}  // namespace qmetric
