#include "qmetric/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmetric {

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

void require_same(const Algebra& a, const Algebra& b, const char* what) {
  if (!(a == b)) {
    throw AlgebraMismatch(std::string(what) + ": " + a.describe() + " vs " + b.describe());
  }
}

}  // namespace

Algebra::Algebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("algebra needs at least one block");
  offsets_.reserve(blocks_.size());
  for (int n : blocks_) {
    if (n < 1) throw std::invalid_argument("block sizes must be positive");
    offsets_.push_back(dim_);
    dim_ += n * n;
  }
}

Algebra Algebra::functions_on(int points) {
  if (points < 1) throw std::invalid_argument("need at least one point");
  return Algebra(std::vector<int>(static_cast<std::size_t>(points), 1));
}

Algebra Algebra::full_matrices(int n) { return Algebra(std::vector<int>{n}); }

bool Algebra::is_commutative() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](int n) { return n == 1; });
}

std::string Algebra::describe() const {
  std::ostringstream out;
  out << "blocks(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) out << (i ? "," : "") << blocks_[i];
  out << ")";
  return out.str();
}

Algebra tensor_algebra(const Algebra& left, const Algebra& right) {
  std::vector<int> blocks;
  blocks.reserve(static_cast<std::size_t>(left.block_count() * right.block_count()));
  for (int n : left.blocks()) {
    for (int m : right.blocks()) blocks.push_back(n * m);
  }
  return Algebra(std::move(blocks));
}

Element::Element(Algebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != algebra_.block_count()) {
    throw AlgebraMismatch("element block count does not match " + algebra_.describe());
  }
  for (int i = 0; i < algebra_.block_count(); ++i) {
    const auto n = algebra_.block_size(i);
    if (blocks_[static_cast<std::size_t>(i)].rows() != n ||
        blocks_[static_cast<std::size_t>(i)].cols() != n) {
      throw AlgebraMismatch("element block shape does not match " + algebra_.describe());
    }
  }
}

Element Element::zero(const Algebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.blocks()) blocks.push_back(Matrix::Zero(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::unit(const Algebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.blocks()) blocks.push_back(Matrix::Identity(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::from_coordinates(const Algebra& algebra, const Vector& coordinates) {
  if (coordinates.size() != algebra.dim()) {
    throw AlgebraMismatch("coordinate vector length does not match " + algebra.describe());
  }
  std::vector<Matrix> blocks;
  for (int i = 0; i < algebra.block_count(); ++i) {
    const int n = algebra.block_size(i);
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) m(r, c) = coordinates(algebra.offset(i) + r * n + c);
    }
    blocks.push_back(std::move(m));
  }
  return Element(algebra, std::move(blocks));
}

Element Element::function(const Algebra& algebra, const Eigen::VectorXd& values) {
  if (!algebra.is_commutative()) throw AlgebraMismatch("function() needs a commutative algebra");
  if (values.size() != algebra.dim()) throw AlgebraMismatch("function value count mismatch");
  return from_coordinates(algebra, values.cast<Complex>());
}

Element Element::matrix_unit(const Algebra& algebra, int block, int row, int col) {
  Element e = zero(algebra);
  e.blocks_[static_cast<std::size_t>(block)](row, col) = 1.0;
  return e;
}

Vector Element::coordinates() const {
  Vector out(algebra_.dim());
  for (int i = 0; i < algebra_.block_count(); ++i) {
    const int n = algebra_.block_size(i);
    const Matrix& m = block(i);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) out(algebra_.offset(i) + r * n + c) = m(r, c);
    }
  }
  return out;
}

Complex Element::value(int point) const {
  if (!algebra_.is_commutative()) throw AlgebraMismatch("value() needs a commutative algebra");
  return block(point)(0, 0);
}

Element Element::adjoint() const {
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (const auto& m : blocks_) out.push_back(m.adjoint());
  return Element(algebra_, std::move(out));
}

double hermitian_spectral_radius(const Matrix& block) {
  if (block.rows() == 1) return std::abs(block(0, 0));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(block, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double Element::operator_norm() const {
  double best = 0.0;
  for (const auto& m : blocks_) {
    double s = 0.0;
    if (m.rows() == 1) {
      s = std::abs(m(0, 0));
    } else {
      Eigen::JacobiSVD<Matrix> svd(m);
      s = svd.singularValues()(0);
    }
    best = std::max(best, s);
  }
  return best;
}

bool Element::is_self_adjoint(double tol) const {
  for (const auto& m : blocks_) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

Element& Element::operator+=(const Element& other) {
  require_same(algebra_, other.algebra_, "add");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same(algebra_, other.algebra_, "subtract");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

Element& Element::operator*=(Complex scalar) {
  for (auto& m : blocks_) m *= scalar;
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator*(Complex scalar, Element a) { return a *= scalar; }

Element operator*(const Element& a, const Element& b) {
  require_same(a.algebra(), b.algebra(), "multiply");
  std::vector<Matrix> out;
  out.reserve(a.blocks().size());
  for (int i = 0; i < a.algebra().block_count(); ++i) out.push_back(a.block(i) * b.block(i));
  return Element(a.algebra(), std::move(out));
}

Element tensor(const Element& a, const Element& c) {
  std::vector<Matrix> out;
  for (int i = 0; i < a.algebra().block_count(); ++i) {
    for (int j = 0; j < c.algebra().block_count(); ++j) out.push_back(kronecker(a.block(i), c.block(j)));
  }
  return Element(tensor_algebra(a.algebra(), c.algebra()), std::move(out));
}

double max_abs_difference(const Element& a, const Element& b) {
  require_same(a.algebra(), b.algebra(), "compare");
  double worst = 0.0;
  for (int i = 0; i < a.algebra().block_count(); ++i) {
    worst = std::max(worst, (a.block(i) - b.block(i)).cwiseAbs().maxCoeff());
  }
  return worst;
}

StarHomomorphism::StarHomomorphism(Algebra source, Algebra target, Matrix map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.rows() != target_.dim() || map_.cols() != source_.dim()) {
    throw AlgebraMismatch("homomorphism matrix must be dim(target) x dim(source)");
  }
}

Element StarHomomorphism::operator()(const Element& a) const {
  require_same(a.algebra(), source_, "apply homomorphism");
  return Element::from_coordinates(target_, map_ * a.coordinates());
}

StarHomomorphism StarHomomorphism::checked(double tol) const {
  const auto report = validate_homomorphism(*this, tol);
  if (!report.valid) {
    std::ostringstream msg;
    msg << "not a unital *-homomorphism (unitality " << report.unitality << ", star "
        << report.star << ", multiplicativity " << report.multiplicativity << ")";
    throw std::invalid_argument(msg.str());
  }
  StarHomomorphism out = *this;
  out.validated_ = true;
  return out;
}

HomomorphismReport validate_homomorphism(const StarHomomorphism& map, double tol) {
  HomomorphismReport report;
  report.tolerance = tol;
  const Algebra& src = map.source();
  report.unitality = max_abs_difference(map(Element::unit(src)), Element::unit(map.target()));

  struct Unit {
    int block, row, col;
  };
  std::vector<Unit> units;
  std::vector<Element> images;
  for (int i = 0; i < src.block_count(); ++i) {
    const int n = src.block_size(i);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        units.push_back({i, r, c});
        images.push_back(map(Element::matrix_unit(src, i, r, c)));
      }
    }
  }
  auto index_of = [&](int block, int row, int col) {
    return src.offset(block) + row * src.block_size(block) + col;
  };
  const Element zero = Element::zero(map.target());
  for (std::size_t k = 0; k < units.size(); ++k) {
    const auto& u = units[k];
    const auto& transposed = images[static_cast<std::size_t>(index_of(u.block, u.col, u.row))];
    report.star = std::max(report.star, max_abs_difference(transposed, images[k].adjoint()));
    for (std::size_t l = 0; l < units.size(); ++l) {
      const auto& v = units[l];
      const Element product = images[k] * images[l];
      const bool nonzero = u.block == v.block && u.col == v.row;
      const Element& expected =
          nonzero ? images[static_cast<std::size_t>(index_of(u.block, u.row, v.col))] : zero;
      report.multiplicativity =
          std::max(report.multiplicativity, max_abs_difference(product, expected));
    }
  }
  report.valid = report.unitality <= tol && report.star <= tol && report.multiplicativity <= tol;
  return report;
}

StarHomomorphism linear_map(const Algebra& source, const Algebra& target,
                            const std::function<Element(const Element&)>& fn) {
  Matrix m(target.dim(), source.dim());
  for (int k = 0; k < source.dim(); ++k) {
    Vector e = Vector::Zero(source.dim());
    e(k) = 1.0;
    const Element image = fn(Element::from_coordinates(source, e));
    require_same(image.algebra(), target, "linear_map image");
    m.col(k) = image.coordinates();
  }
  return StarHomomorphism(source, target, std::move(m));
}

StarHomomorphism identity_homomorphism(const Algebra& algebra) {
  return StarHomomorphism(algebra, algebra, Matrix::Identity(algebra.dim(), algebra.dim()));
}

StarHomomorphism flip_homomorphism(const Algebra& left, const Algebra& right) {
  const Algebra source = tensor_algebra(left, right);
  const Algebra target = tensor_algebra(right, left);
  Matrix m = Matrix::Zero(target.dim(), source.dim());
  for (int i = 0; i < left.block_count(); ++i) {
    const int n = left.block_size(i);
    for (int j = 0; j < right.block_count(); ++j) {
      const int k = right.block_size(j);
      const int src_block = i * right.block_count() + j;
      const int dst_block = j * left.block_count() + i;
      for (int r1 = 0; r1 < n; ++r1) {
        for (int c1 = 0; c1 < n; ++c1) {
          for (int r2 = 0; r2 < k; ++r2) {
            for (int c2 = 0; c2 < k; ++c2) {
              const int src = source.offset(src_block) + (r1 * k + r2) * (n * k) + (c1 * k + c2);
              const int dst = target.offset(dst_block) + (r2 * n + r1) * (n * k) + (c2 * n + c1);
              m(dst, src) = 1.0;
            }
          }
        }
      }
    }
  }
  return StarHomomorphism(source, target, std::move(m));
}

StarHomomorphism left_embedding(const Algebra& algebra, const Algebra& other) {
  const Element one = Element::unit(other);
  return linear_map(algebra, tensor_algebra(algebra, other),
                    [&](const Element& a) { return tensor(a, one); });
}

StarHomomorphism right_embedding(const Algebra& other, const Algebra& algebra) {
  const Element one = Element::unit(other);
  return linear_map(algebra, tensor_algebra(other, algebra),
                    [&](const Element& a) { return tensor(one, a); });
}

StarHomomorphism conjugation(const Element& unitary) {
  const Element u_star = unitary.adjoint();
  return linear_map(unitary.algebra(), unitary.algebra(),
                    [&](const Element& a) { return unitary * a * u_star; });
}

StarHomomorphism compose(const StarHomomorphism& outer, const StarHomomorphism& inner) {
  require_same(inner.target(), outer.source(), "compose");
  return StarHomomorphism(inner.source(), outer.target(), outer.matrix() * inner.matrix());
}

}  // namespace qmetric
