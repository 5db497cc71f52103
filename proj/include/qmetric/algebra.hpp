#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmetric {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default tolerance for *-homomorphism validation.
inline constexpr double kHomomorphismTolerance = 1e-9;

/// Operands live on different algebras, or a shape disagrees with the block signature.
class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite-dimensional C*-algebra M_{n_1} ⊕ ... ⊕ M_{n_k}, identified by its block sizes.
///
/// Coordinate convention: each block is flattened row-major and the blocks are
/// concatenated in order, so entry (r, c) of block i has coordinate
/// offset(i) + r * n_i + c. Every linear map in this library (homomorphisms,
/// functionals) is expressed in these coordinates.
class Algebra {
 public:
  explicit Algebra(std::vector<int> blocks);

  /// Functions on a finite set of `points` elements: blocks (1, ..., 1).
  static Algebra functions_on(int points);
  /// The full matrix algebra M_n.
  static Algebra full_matrices(int n);

  const std::vector<int>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_size(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  int offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }
  /// Complex coordinate dimension, the sum of n_i^2.
  int dim() const { return dim_; }
  bool is_commutative() const;

  std::string describe() const;

  bool operator==(const Algebra& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

/// Spatial tensor product. Block (i, j) of the result, i over `left` and j over
/// `right`, has size n_i * m_j and index i * right.block_count() + j.
Algebra tensor_algebra(const Algebra& left, const Algebra& right);

/// An element of an Algebra: one square complex matrix per block.
class Element {
 public:
  Element(Algebra algebra, std::vector<Matrix> blocks);

  static Element zero(const Algebra& algebra);
  static Element unit(const Algebra& algebra);
  static Element from_coordinates(const Algebra& algebra, const Vector& coordinates);
  /// Function on the points of a commutative algebra.
  static Element function(const Algebra& algebra, const Eigen::VectorXd& values);
  /// Matrix unit E_{rc} in the given block.
  static Element matrix_unit(const Algebra& algebra, int block, int row, int col);

  const Algebra& algebra() const { return algebra_; }
  const Matrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  Vector coordinates() const;
  /// Value at a point of a commutative algebra.
  Complex value(int point) const;

  Element adjoint() const;
  /// Largest singular value over all blocks.
  double operator_norm() const;
  bool is_self_adjoint(double tol = 1e-12) const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex scalar);

 private:
  Algebra algebra_;
  std::vector<Matrix> blocks_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(Complex scalar, Element a);
Element operator*(const Element& a, const Element& b);

/// Elementary tensor a ⊗ c in tensor_algebra(a.algebra(), c.algebra()).
/// Block (i, j) is the Kronecker product of a_i and c_j.
Element tensor(const Element& a, const Element& c);

/// Kronecker product; row (r1, r2) of the result is r1 * b.rows() + r2.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// Largest entrywise modulus of a - b.
double max_abs_difference(const Element& a, const Element& b);

/// Operator norm of a Hermitian block, via its spectrum.
double hermitian_spectral_radius(const Matrix& block);

struct HomomorphismReport {
  double unitality = 0.0;
  double star = 0.0;
  double multiplicativity = 0.0;
  double tolerance = kHomomorphismTolerance;
  bool valid = false;
};

/// Linear map between algebras, stored as a dense dim(target) x dim(source)
/// matrix over the flattened coordinates. It is a *-homomorphism only once
/// validated; `checked` returns a copy carrying the flag.
class StarHomomorphism {
 public:
  StarHomomorphism(Algebra source, Algebra target, Matrix map);

  const Algebra& source() const { return source_; }
  const Algebra& target() const { return target_; }
  const Matrix& matrix() const { return map_; }
  bool validated() const { return validated_; }

  Element operator()(const Element& a) const;

  /// Validates and returns a flagged copy; throws std::invalid_argument when the
  /// residuals exceed `tol`.
  StarHomomorphism checked(double tol = kHomomorphismTolerance) const;

 private:
  Algebra source_;
  Algebra target_;
  Matrix map_;
  bool validated_ = false;
};

/// Residuals of unitality, *-preservation and multiplicativity, the last two over
/// the matrix-unit basis of the source. Residuals are max entrywise moduli.
HomomorphismReport validate_homomorphism(const StarHomomorphism& map,
                                         double tol = kHomomorphismTolerance);

/// Matrix of a linear map given as a callable on elements.
StarHomomorphism linear_map(const Algebra& source, const Algebra& target,
                            const std::function<Element(const Element&)>& fn);

StarHomomorphism identity_homomorphism(const Algebra& algebra);
/// a ⊗ c ↦ c ⊗ a, from left ⊗ right to right ⊗ left.
StarHomomorphism flip_homomorphism(const Algebra& left, const Algebra& right);
/// a ↦ a ⊗ 1, from `algebra` into algebra ⊗ other.
StarHomomorphism left_embedding(const Algebra& algebra, const Algebra& other);
/// a ↦ 1 ⊗ a, from `algebra` into other ⊗ algebra.
StarHomomorphism right_embedding(const Algebra& other, const Algebra& algebra);
/// Inner automorphism a ↦ u a u*.
StarHomomorphism conjugation(const Element& unitary);
/// outer ∘ inner.
StarHomomorphism compose(const StarHomomorphism& outer, const StarHomomorphism& inner);

}  // namespace qmetric
