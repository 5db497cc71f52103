#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmetric/algebra.hpp"
#include "qmetric/hermitian.hpp"

namespace qmetric {

/// Tolerance for positivity (eigenvalues >= -tol, clipped to 0) and unit trace.
inline constexpr double kStateTolerance = 1e-10;

/// A state given by one density matrix per block: mu(a) = sum_i tr(rho_i a_i).
class State {
 public:
  /// Validates Hermiticity, positivity and total trace 1; throws std::invalid_argument.
  State(Algebra algebra, std::vector<Matrix> densities, double tol = kStateTolerance);

  /// The state whose pairing is phi, i.e. rho_i(c, r) = phi(offset + r * n + c).
  static State from_functional(const Algebra& algebra, const Functional& phi,
                               double tol = kStateTolerance);

  const Algebra& algebra() const { return algebra_; }
  const Matrix& density(int block) const { return densities_[static_cast<std::size_t>(block)]; }
  const std::vector<Matrix>& densities() const { return densities_; }

  /// Coordinates w with mu(a) = sum_k w_k a_k.
  const Functional& functional() const { return functional_; }
  Complex operator()(const Element& a) const;

 private:
  Algebra algebra_;
  std::vector<Matrix> densities_;
  Functional functional_;
};

Complex pairing(const State& mu, const Element& a);

/// Largest entrywise difference between the densities of two states on one algebra.
double state_distance_max(const State& a, const State& b);

/// Dirac state at point x of a commutative algebra.
State point_mass(const Algebra& algebra, int x);
/// Vector state psi psi* / |psi|^2 supported on one block.
State vector_state(const Algebra& algebra, int block, const Vector& psi);
/// Normalized trace of one block, I / n_i.
State block_trace_state(const Algebra& algebra, int block);
State mixture(std::span<const State> states, std::span<const double> weights);

/// mu ⊗ nu on tensor_algebra(mu.algebra(), nu.algebra()); (mu ⊗ nu)(b ⊗ c) = mu(b) nu(c).
State product_state(const State& mu, const State& nu);

/// mu ∘ phi on phi.source(). Throws std::invalid_argument when phi is not validated or
/// the result fails the state axioms.
State pullback(const State& mu, const StarHomomorphism& phi);

/// (mu ⊗ id)(x) for x in left ⊗ right, an element of right.
Element slice_left(const State& mu, const Element& x, const Algebra& right);
/// (id ⊗ nu)(x) for x in left ⊗ right, an element of left.
Element slice_right(const Element& x, const State& nu, const Algebra& left);
/// (mu ⊗ id) phi(a), where phi maps into mu.algebra() ⊗ parameter.
Element slice(const State& mu, const StarHomomorphism& phi, const Element& a,
              const Algebra& parameter);

enum class Provenance { extreme, sampled, mixed };
std::string to_string(Provenance p);

/// A finite stand-in for the state space: the states over which suprema are taken.
struct ProbeSet {
  Algebra algebra;
  std::vector<State> states;
  std::vector<Provenance> provenance;
  std::uint64_t seed = 0;

  std::size_t size() const { return states.size(); }
  /// True when the probes contain every point mass of a commutative algebra.
  bool has_all_point_masses() const;
};

/// Probes for an algebra: every point mass of each 1x1 block; per larger block the
/// standard basis vector states, n_pure seeded random pure states and the block
/// trace state; finally n_mixed random convex mixtures of the pure probes.
/// Near-duplicates (max density difference <= 1e-9) are dropped. Deterministic in seed.
ProbeSet build_probes(const Algebra& algebra, int n_pure, int n_mixed, std::uint64_t seed);

/// Only the extreme probes that need no sampling (point masses and basis vector states).
ProbeSet point_mass_probes(const Algebra& algebra);

}  // namespace qmetric
