#include "qmetric/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qmetric {

namespace {

Matrix validated_density(const Matrix& rho, double tol, double& trace) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  if (herm.rows() == 1) {
    double v = herm(0, 0).real();
    if (v < -tol) throw std::invalid_argument("density matrix is not positive");
    v = std::max(v, 0.0);
    trace += v;
    return Matrix::Constant(1, 1, v);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  Eigen::VectorXd ev = solver.eigenvalues();
  if (ev.minCoeff() < -tol) throw std::invalid_argument("density matrix is not positive");
  trace += herm.trace().real();
  if (ev.minCoeff() >= 0.0) return herm;
  ev = ev.cwiseMax(0.0);
  return solver.eigenvectors() * ev.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

Functional functional_of(const Algebra& algebra, const std::vector<Matrix>& densities) {
  Functional w(algebra.dim());
  for (int i = 0; i < algebra.block_count(); ++i) {
    const int n = algebra.block_size(i);
    const Matrix& rho = densities[static_cast<std::size_t>(i)];
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) w(algebra.offset(i) + r * n + c) = rho(c, r);
    }
  }
  return w;
}

std::vector<Matrix> zero_densities(const Algebra& algebra) {
  std::vector<Matrix> out;
  for (int n : algebra.blocks()) out.push_back(Matrix::Zero(n, n));
  return out;
}

void require_same(const Algebra& a, const Algebra& b, const char* what) {
  if (!(a == b)) {
    throw AlgebraMismatch(std::string(what) + ": " + a.describe() + " vs " + b.describe());
  }
}

}  // namespace

State::State(Algebra algebra, std::vector<Matrix> densities, double tol)
    : algebra_(std::move(algebra)) {
  if (static_cast<int>(densities.size()) != algebra_.block_count()) {
    throw AlgebraMismatch("density count does not match " + algebra_.describe());
  }
  double trace = 0.0;
  for (int i = 0; i < algebra_.block_count(); ++i) {
    const Matrix& rho = densities[static_cast<std::size_t>(i)];
    if (rho.rows() != algebra_.block_size(i) || rho.cols() != algebra_.block_size(i)) {
      throw AlgebraMismatch("density shape does not match " + algebra_.describe());
    }
    densities_.push_back(validated_density(rho, tol, trace));
  }
  if (std::abs(trace - 1.0) > tol) {
    std::ostringstream msg;
    msg << "state has total trace " << trace;
    throw std::invalid_argument(msg.str());
  }
  functional_ = functional_of(algebra_, densities_);
}

State State::from_functional(const Algebra& algebra, const Functional& phi, double tol) {
  if (phi.size() != algebra.dim()) throw AlgebraMismatch("functional length mismatch");
  std::vector<Matrix> densities;
  for (int i = 0; i < algebra.block_count(); ++i) {
    const int n = algebra.block_size(i);
    Matrix rho(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) rho(c, r) = phi(algebra.offset(i) + r * n + c);
    }
    densities.push_back(std::move(rho));
  }
  return State(algebra, std::move(densities), tol);
}

Complex State::operator()(const Element& a) const {
  require_same(a.algebra(), algebra_, "pairing");
  return evaluate(functional_, a);
}

Complex pairing(const State& mu, const Element& a) { return mu(a); }

double state_distance_max(const State& a, const State& b) {
  require_same(a.algebra(), b.algebra(), "state comparison");
  double worst = 0.0;
  for (int i = 0; i < a.algebra().block_count(); ++i) {
    worst = std::max(worst, (a.density(i) - b.density(i)).cwiseAbs().maxCoeff());
  }
  return worst;
}

State point_mass(const Algebra& algebra, int x) {
  if (!algebra.is_commutative()) throw AlgebraMismatch("point masses need a commutative algebra");
  if (x < 0 || x >= algebra.block_count()) throw std::out_of_range("point index out of range");
  auto d = zero_densities(algebra);
  d[static_cast<std::size_t>(x)](0, 0) = 1.0;
  return State(algebra, std::move(d));
}

State vector_state(const Algebra& algebra, int block, const Vector& psi) {
  if (block < 0 || block >= algebra.block_count()) throw std::out_of_range("block out of range");
  if (psi.size() != algebra.block_size(block)) throw AlgebraMismatch("vector length mismatch");
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("zero vector has no vector state");
  const Vector unit = psi / norm;
  auto d = zero_densities(algebra);
  d[static_cast<std::size_t>(block)] = unit * unit.adjoint();
  return State(algebra, std::move(d));
}

State block_trace_state(const Algebra& algebra, int block) {
  if (block < 0 || block >= algebra.block_count()) throw std::out_of_range("block out of range");
  const int n = algebra.block_size(block);
  auto d = zero_densities(algebra);
  d[static_cast<std::size_t>(block)] = Matrix::Identity(n, n) / static_cast<double>(n);
  return State(algebra, std::move(d));
}

State mixture(std::span<const State> states, std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw std::invalid_argument("mixture needs matching nonempty states and weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("mixture weights must not all vanish");
  const Algebra& algebra = states.front().algebra();
  auto d = zero_densities(algebra);
  for (std::size_t k = 0; k < states.size(); ++k) {
    require_same(states[k].algebra(), algebra, "mixture");
    for (int i = 0; i < algebra.block_count(); ++i) {
      d[static_cast<std::size_t>(i)] += (weights[k] / total) * states[k].density(i);
    }
  }
  return State(algebra, std::move(d));
}

State product_state(const State& mu, const State& nu) {
  std::vector<Matrix> d;
  for (const auto& rho : mu.densities()) {
    for (const auto& sigma : nu.densities()) d.push_back(kronecker(rho, sigma));
  }
  return State(tensor_algebra(mu.algebra(), nu.algebra()), std::move(d));
}

State pullback(const State& mu, const StarHomomorphism& phi) {
  if (!phi.validated()) throw std::invalid_argument("pullback needs a validated homomorphism");
  require_same(mu.algebra(), phi.target(), "pullback");
  const Functional w = phi.matrix().transpose() * mu.functional();
  return State::from_functional(phi.source(), w);
}

Element slice_left(const State& mu, const Element& x, const Algebra& right) {
  const Algebra& left = mu.algebra();
  require_same(x.algebra(), tensor_algebra(left, right), "slice");
  std::vector<Matrix> out;
  for (int n : right.blocks()) out.push_back(Matrix::Zero(n, n));
  for (int i = 0; i < left.block_count(); ++i) {
    const int n = left.block_size(i);
    const Matrix& rho = mu.density(i);
    for (int j = 0; j < right.block_count(); ++j) {
      const int m = right.block_size(j);
      const Matrix& blk = x.block(i * right.block_count() + j);
      Matrix& dst = out[static_cast<std::size_t>(j)];
      for (int r1 = 0; r1 < n; ++r1) {
        for (int c1 = 0; c1 < n; ++c1) {
          const Complex w = rho(c1, r1);
          if (w == Complex(0.0)) continue;
          dst += w * blk.block(r1 * m, c1 * m, m, m);
        }
      }
    }
  }
  return Element(right, std::move(out));
}

Element slice_right(const Element& x, const State& nu, const Algebra& left) {
  const Algebra& right = nu.algebra();
  require_same(x.algebra(), tensor_algebra(left, right), "slice");
  std::vector<Matrix> out;
  for (int n : left.blocks()) out.push_back(Matrix::Zero(n, n));
  for (int i = 0; i < left.block_count(); ++i) {
    const int n = left.block_size(i);
    for (int j = 0; j < right.block_count(); ++j) {
      const int m = right.block_size(j);
      const Matrix& sigma = nu.density(j);
      const Matrix& blk = x.block(i * right.block_count() + j);
      Matrix& dst = out[static_cast<std::size_t>(i)];
      for (int r1 = 0; r1 < n; ++r1) {
        for (int c1 = 0; c1 < n; ++c1) {
          // tr(sigma * sub-block) with sub-block the (r1, c1) m x m tile.
          dst(r1, c1) += (sigma.transpose().cwiseProduct(blk.block(r1 * m, c1 * m, m, m))).sum();
        }
      }
    }
  }
  return Element(left, std::move(out));
}

Element slice(const State& mu, const StarHomomorphism& phi, const Element& a,
              const Algebra& parameter) {
  return slice_left(mu, phi(a), parameter);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::extreme:
      return "extreme";
    case Provenance::sampled:
      return "sampled";
    case Provenance::mixed:
      return "mixed";
  }
  return "unknown";
}

bool ProbeSet::has_all_point_masses() const {
  if (!algebra.is_commutative()) return false;
  for (int x = 0; x < algebra.block_count(); ++x) {
    const State delta = point_mass(algebra, x);
    const bool found = std::any_of(states.begin(), states.end(), [&](const State& s) {
      return state_distance_max(s, delta) <= 1e-12;
    });
    if (!found) return false;
  }
  return true;
}

namespace {

void push_unique(ProbeSet& set, State s, Provenance p) {
  for (const auto& existing : set.states) {
    if (state_distance_max(existing, s) <= 1e-9) return;
  }
  set.states.push_back(std::move(s));
  set.provenance.push_back(p);
}

}  // namespace

ProbeSet build_probes(const Algebra& algebra, int n_pure, int n_mixed, std::uint64_t seed) {
  if (n_pure < 0 || n_mixed < 0) throw std::invalid_argument("probe counts must be nonnegative");
  ProbeSet set{algebra, {}, {}, seed};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < algebra.block_count(); ++i) {
    const int n = algebra.block_size(i);
    if (n == 1) {
      auto d = zero_densities(algebra);
      d[static_cast<std::size_t>(i)](0, 0) = 1.0;
      push_unique(set, State(algebra, std::move(d)), Provenance::extreme);
      continue;
    }
    for (int k = 0; k < n; ++k) {
      push_unique(set, vector_state(algebra, i, Vector::Unit(n, k)), Provenance::extreme);
    }
    for (int k = 0; k < n_pure; ++k) {
      Vector psi(n);
      for (int r = 0; r < n; ++r) psi(r) = Complex(gauss(rng), gauss(rng));
      push_unique(set, vector_state(algebra, i, psi), Provenance::sampled);
    }
    push_unique(set, block_trace_state(algebra, i), Provenance::mixed);
  }
  std::vector<State> pure;
  for (std::size_t k = 0; k < set.states.size(); ++k) {
    if (set.provenance[k] != Provenance::mixed) pure.push_back(set.states[k]);
  }
  std::uniform_int_distribution<int> weight(0, 8);
  for (int k = 0; k < n_mixed && pure.size() > 1; ++k) {
    std::vector<double> w(pure.size());
    double total = 0.0;
    while (total == 0.0) {
      total = 0.0;
      for (auto& v : w) total += (v = weight(rng));
    }
    push_unique(set, mixture(pure, w), Provenance::mixed);
  }
  return set;
}

ProbeSet point_mass_probes(const Algebra& algebra) {
  ProbeSet all = build_probes(algebra, 0, 0, 0);
  ProbeSet out{algebra, {}, {}, 0};
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (all.provenance[k] == Provenance::extreme) {
      out.states.push_back(all.states[k]);
      out.provenance.push_back(Provenance::extreme);
    }
  }
  return out;
}

}  // namespace qmetric
