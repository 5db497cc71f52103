#include "qmetric/hermitian.hpp"

#include <cmath>

namespace qmetric {

Complex evaluate(const Functional& phi, const Element& a) {
  if (phi.size() != a.algebra().dim()) throw AlgebraMismatch("functional length mismatch");
  return (phi.transpose() * a.coordinates())(0);
}

Functional trace_functional(const Algebra& algebra) {
  Functional t = Functional::Zero(algebra.dim());
  for (int i = 0; i < algebra.block_count(); ++i) {
    const int n = algebra.block_size(i);
    for (int r = 0; r < n; ++r) t(algebra.offset(i) + r * n + r) = 1.0;
  }
  return t;
}

HermitianFrame::HermitianFrame(Algebra algebra)
    : algebra_(std::move(algebra)), embedding_(Matrix::Zero(algebra_.dim(), algebra_.dim())) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  int col = 0;
  for (int b = 0; b < algebra_.block_count(); ++b) {
    const int n = algebra_.block_size(b);
    const int off = algebra_.offset(b);
    for (int r = 0; r < n; ++r) embedding_(off + r * n + r, col++) = 1.0;
    for (int r = 0; r < n; ++r) {
      for (int c = r + 1; c < n; ++c) {
        embedding_(off + r * n + c, col) = s;
        embedding_(off + c * n + r, col) = s;
        ++col;
        embedding_(off + r * n + c, col) = i_unit * s;
        embedding_(off + c * n + r, col) = -i_unit * s;
        ++col;
      }
    }
  }
}

Element HermitianFrame::element(const Eigen::VectorXd& x) const {
  return Element::from_coordinates(algebra_, embedding_ * x.cast<Complex>());
}

Eigen::VectorXd HermitianFrame::coordinates(const Element& a) const {
  if (!(a.algebra() == algebra_)) throw AlgebraMismatch("frame algebra mismatch");
  return (embedding_.adjoint() * a.coordinates()).real();
}

Eigen::MatrixXd HermitianFrame::real_rows(const Functional& phi) const {
  const Eigen::RowVectorXcd row = phi.transpose() * embedding_;
  Eigen::MatrixXd out(2, dim());
  out.row(0) = row.real();
  out.row(1) = row.imag();
  return out;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows, int cols, double tol) {
  if (rows.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double threshold = tol * std::max(1.0, sv(0));
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > threshold) ++rank;
  }
  return rank;
}

Eigen::MatrixXd quotient_directions(const HermitianFrame& frame,
                                    const std::vector<Functional>& constraints) {
  Eigen::MatrixXd rows(2 * static_cast<Eigen::Index>(constraints.size()) + 1, frame.dim());
  Eigen::Index r = 0;
  for (const auto& phi : constraints) {
    rows.middleRows(r, 2) = frame.real_rows(phi);
    r += 2;
  }
  rows.row(r) = frame.real_rows(trace_functional(frame.algebra())).row(0);
  return null_space(rows, frame.dim());
}

}  // namespace qmetric
