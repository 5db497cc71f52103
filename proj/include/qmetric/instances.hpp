#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "qmetric/classical.hpp"
#include "qmetric/family.hpp"

namespace qmetric {

/// Generator for instance k of a run seeded with `seed`.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t k);

/// Probability vector with small integer weights (at least one positive) as a state
/// on a commutative algebra.
State random_rational_state(const Algebra& algebra, std::mt19937_64& rng);
/// Random full-rank state: per block G G* for complex Gaussian G, scaled by random
/// block weights.
State random_state(const Algebra& algebra, std::mt19937_64& rng);
/// Haar-like random unitary of size n (QR of a complex Gaussian matrix).
Matrix random_unitary(int n, std::mt19937_64& rng);
/// Random unitary element, block by block.
Element random_unitary_element(const Algebra& algebra, std::mt19937_64& rng);
/// Complex Gaussian element.
Element random_element(const Algebra& algebra, std::mt19937_64& rng);

/// The Pauli group {1, X, Y, Z} acting on M2 by conjugation with length 1 off the
/// identity.
GroupAction pauli_action();

/// A family with its base seminorm on the source and probes on the parameter.
struct FamilyInstance {
  std::string label;
  QuantumFamily family;
  Seminorm base;
  ProbeSet probes;
};

/// Classical family compiled, with Lipschitz base and probes on C(Z) made of every
/// point mass plus `mixed` random mixtures.
FamilyInstance classical_instance(const ClassicalFamily& family, int mixed, std::uint64_t seed);

/// Random family with at least one noncommutative algebra, all blocks of B and C of
/// size <= 2. Kinds cycle with `kind`:
///   0 C(X) onto spectral projections in B ⊗ C with B noncommutative, Lipschitz base
///   1 the same with B commutative and C noncommutative
///   2 M2 with the Pauli seminorm, a -> (a, u a u*) in M2 ⊗ C^2 or C^2 ⊗ M2
///   3 the same map with the quotient operator norm as base
///   4 a -> a ⊗ 1 from C(X) into C(X) ⊗ M2 (induced d vanishes)
FamilyInstance random_noncommutative_instance(std::mt19937_64& rng, int kind, int probes_pure,
                                              int probes_mixed);

}  // namespace qmetric
