#pragma once

#include <vector>

#include "qmetric/algebra.hpp"

namespace qmetric {

/// Complex-linear functional in algebra coordinates, phi(a) = sum_k w_k a_k.
using Functional = Vector;

Complex evaluate(const Functional& phi, const Element& a);

/// Unnormalized trace a ↦ sum_i tr(a_i). Its kernel is the Hilbert-Schmidt
/// orthogonal complement of the unit.
Functional trace_functional(const Algebra& algebra);

/// Real orthonormal coordinates on the self-adjoint part of an algebra.
///
/// Per block the basis is E_rr, (E_rc + E_cr)/sqrt2 and i(E_rc - E_cr)/sqrt2 for
/// r < c, which is orthonormal for the real Hilbert-Schmidt product Re tr(a* b).
/// The real dimension equals the complex coordinate dimension.
class HermitianFrame {
 public:
  explicit HermitianFrame(Algebra algebra);

  const Algebra& algebra() const { return algebra_; }
  int dim() const { return algebra_.dim(); }
  /// Complex coordinates of the element with real coordinates x are embedding() * x.
  const Matrix& embedding() const { return embedding_; }

  Element element(const Eigen::VectorXd& x) const;
  /// Real coordinates of the self-adjoint part (a + a*)/2.
  Eigen::VectorXd coordinates(const Element& a) const;
  /// The two real rows Re(phi), Im(phi) of a complex functional restricted to
  /// self-adjoint elements.
  Eigen::MatrixXd real_rows(const Functional& phi) const;

 private:
  Algebra algebra_;
  Matrix embedding_;
};

/// Orthonormal basis (as columns) of the null space of `rows`, acting on vectors
/// of length `cols`. Singular values at most tol * max(1, sigma_max) count as zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows, int cols, double tol = 1e-9);

/// Numerical rank with the same relative threshold as null_space.
int numerical_rank(const Matrix& m, double tol = 1e-9);

/// Orthonormal basis of the trace-zero self-adjoint elements annihilated by every
/// functional in `constraints`. These represent the self-adjoint part of the
/// constrained subspace modulo the scalars.
Eigen::MatrixXd quotient_directions(const HermitianFrame& frame,
                                    const std::vector<Functional>& constraints);

}  // namespace qmetric
