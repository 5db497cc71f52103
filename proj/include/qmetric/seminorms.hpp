#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmetric/algebra.hpp"
#include "qmetric/hermitian.hpp"
#include "qmetric/metric_space.hpp"
#include "qmetric/ratio_search.hpp"
#include "qmetric/report.hpp"
#include "qmetric/states.hpp"

namespace qmetric {

/// A semi-metric on a probe set of states. Entry (i, j) is d(probes[i], probes[j]);
/// `exact(i, j)` is nonzero when the entry is a proven value rather than a lower bound.
struct StateSemiMetric {
  ProbeSet probes;
  Eigen::MatrixXd d;
  Eigen::MatrixXi exact;

  bool all_exact() const;
  /// True when every off-diagonal entry vanishes.
  bool degenerate() const;
  StateSemiMetric scaled(double t) const;
};

/// Symmetry, zero diagonal, nonnegativity and triangle inequality on the probes.
Report check_state_semimetric(const StateSemiMetric& metric, double tol = 1e-8);

enum class NormKind { operator_norm, weighted_sup, weighted_l1 };

/// A norm N on the algebra with N(a) = N(a*). Weighted norms act on the complex
/// coordinates; their weights must be positive and invariant under the adjoint
/// coordinate permutation (i, r, c) -> (i, c, r).
struct NormDescriptor {
  NormKind kind = NormKind::operator_norm;
  Eigen::VectorXd weights;
};

double evaluate_norm(const NormDescriptor& norm, const Element& a);

/// A finite group acting by *-automorphisms, with a length function.
/// The Cayley table and inverses are recovered from the coordinate matrices.
struct GroupAction {
  Algebra algebra;
  std::vector<StarHomomorphism> elements;
  std::vector<double> lengths;
  std::vector<std::vector<int>> product;
  std::vector<int> inverse;
  int identity = 0;
  /// Rank of the group average of the action; 1 means ergodic.
  int fixed_rank = 0;
};

/// Validates each element as an automorphism, closure under composition, the
/// length-function axioms and ergodicity (fixed subspace of the averaged action equal
/// to C1 at rank tolerance 1e-8). Throws std::invalid_argument naming the failure.
GroupAction make_group_action(std::vector<StarHomomorphism> elements, std::vector<double> lengths,
                              double tol = kHomomorphismTolerance);
/// Action g . a = u_g a u_g*.
GroupAction conjugation_action(const Algebra& algebra, const std::vector<Element>& unitaries,
                               std::vector<double> lengths);
/// Action on functions on points: (g . a)(x) = a(perm_g^{-1}(x)).
GroupAction permutation_action(int points, const std::vector<std::vector<int>>& permutations,
                               std::vector<double> lengths);

enum class SeminormKind { lipschitz, group_action, quotient_of_norm, state_metric };
std::string to_string(SeminormKind kind);

/// Description of a seminorm on a commutative algebra as
///   L(c) = max over d_ij > 0 of |(p_i - p_j) . c| / d_ij,
/// with domain (p_i - p_j) . c = 0 whenever d_ij = 0. Rows of `probes` are
/// probability vectors over the points. Both distance engines consume this form.
struct TransportForm {
  Eigen::MatrixXd probes;
  Eigen::MatrixXd d;
  bool point_masses = false;
};

/// An evaluable seminorm L: algebra -> [0, inf]. Infinity is a regular value (the
/// Lipschitz seminorm of a function that separates a zero-distance pair).
class Seminorm {
 public:
  /// Lipschitz seminorm ||a||_d on functions on a finite semi-metric space.
  static Seminorm lipschitz(SemiMetricSpace space);
  /// sup over g != e of ||g . a - a|| / length(g).
  static Seminorm group_action(GroupAction action);
  /// N_0(a) = inf over complex lambda of N(a + lambda 1).
  static Seminorm quotient_of_norm(Algebra algebra, NormDescriptor norm);
  /// L_d(a) = max over probe pairs with d > 0 of |mu(a) - nu(a)| / d(mu, nu).
  static Seminorm state_metric(StateSemiMetric metric);

  SeminormKind kind() const { return kind_; }
  const Algebra& algebra() const { return algebra_; }
  double scale() const { return scale_; }
  Seminorm scaled(double t) const;

  double operator()(const Element& a) const;

  /// Functionals whose common kernel is the domain (beyond finiteness).
  std::vector<Functional> domain_constraints() const;
  /// Functionals whose common kernel, intersected with the domain, is ker L.
  std::vector<Functional> kernel_functionals() const;
  bool in_domain(const Element& a, double tol = 1e-10) const;

  /// A functional s, real on self-adjoint elements, with s(u) = L(u) and
  /// |s(v)| <= L(v) for every self-adjoint v in the domain. Defined for self-adjoint
  /// domain elements u; absent for the weighted quotient norms.
  std::optional<Functional> support(const Element& u) const;

  /// Present for the Lipschitz kind and for state metrics on commutative algebras.
  std::optional<TransportForm> transport_form() const;

  /// False when evaluation is probe-relative and only a lower bound for the
  /// corresponding supremum over the whole state space.
  bool exact() const;

  const SemiMetricSpace* space() const { return space_.get(); }
  const GroupAction* action() const { return action_.get(); }
  const NormDescriptor* norm() const { return norm_.get(); }
  const StateSemiMetric* metric() const { return metric_.get(); }

 private:
  Seminorm(SeminormKind kind, Algebra algebra) : kind_(kind), algebra_(std::move(algebra)) {}

  double eval_lipschitz(const Element& a) const;
  double eval_group_action(const Element& a) const;
  double eval_quotient(const Element& a) const;
  double eval_state_metric(const Element& a) const;

  SeminormKind kind_;
  Algebra algebra_;
  double scale_ = 1.0;
  std::shared_ptr<const SemiMetricSpace> space_;
  std::shared_ptr<const GroupAction> action_;
  std::shared_ptr<const NormDescriptor> norm_;
  std::shared_ptr<const StateSemiMetric> metric_;
  // Precomputed: rows (p_i - p_j) / d_ij over positive pairs, and the action's g - id.
  std::shared_ptr<const Matrix> pair_rows_;
  std::shared_ptr<const std::vector<Matrix>> displacements_;
};

/// Real orthonormal basis of the self-adjoint part of the domain (scalars included).
Eigen::MatrixXd domain_directions(const Seminorm& seminorm);
/// Real orthonormal basis of the trace-zero self-adjoint part of the domain.
Eigen::MatrixXd quotient_domain_directions(const Seminorm& seminorm);
/// Dimension of the self-adjoint null space of L on the domain modulo scalars.
int kernel_nullity(const Seminorm& seminorm);
/// Random complex element of the domain (complex combination of domain_directions).
Element random_domain_element(const Seminorm& seminorm, std::mt19937_64& rng);

/// inf over lambda of ||a + lambda 1||. Closed form (spectral half-width) for
/// self-adjoint a, golden-section search otherwise.
double quotient_operator_norm(const Element& a);

struct RadiusResult {
  double value = 0.0;
  bool certified = false;
  Eigen::VectorXd witness;
  std::string diagnostic;
};

/// R = sup over the domain modulo scalars of ||a||~ / L(a), computed by ratio
/// maximization over trace-zero self-adjoint directions. Infinite, with a
/// diagnostic, when L vanishes on a nonscalar domain element.
RadiusResult seminorm_radius(const Seminorm& seminorm, const RatioOptions& options = {});

struct QsmOptions {
  int samples = 24;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;
  RatioOptions ratio;
};

/// A seminorm together with its axiom report: (a) adjoint invariance, (b) kernel
/// equal to the scalars, (c) certified by a finite radius; plus the quantum-metric
/// flag (domain spans the algebra).
struct QsmStructure {
  Seminorm seminorm;
  double radius = 0.0;
  bool quantum_metric = false;
  bool degenerate = false;
  Report axioms;
};

Report check_qsm_axioms(const Seminorm& seminorm, const QsmOptions& options, RadiusResult* radius);
QsmStructure make_qsm(Seminorm seminorm, const QsmOptions& options = {});

}  // namespace qmetric
