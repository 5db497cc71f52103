#include "qmetric/instances.hpp"

#include <array>
#include <stdexcept>

namespace qmetric {

namespace {

Algebra pick(std::mt19937_64& rng, std::initializer_list<std::vector<int>> choices) {
  std::uniform_int_distribution<std::size_t> u(0, choices.size() - 1);
  return Algebra(*(choices.begin() + static_cast<std::ptrdiff_t>(u(rng))));
}

// a -> sum_x a(x) P_x for a random partition of unity by spectral projections.
StarHomomorphism projection_map(const Algebra& a, const Algebra& target, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> point(0, a.dim() - 1);
  std::vector<std::vector<Matrix>> proj(static_cast<std::size_t>(a.dim()));
  for (auto& p : proj) {
    for (int b = 0; b < target.block_count(); ++b) p.push_back(Matrix::Zero(target.block_size(b), target.block_size(b)));
  }
  for (int b = 0; b < target.block_count(); ++b) {
    const Matrix u = random_unitary(target.block_size(b), rng);
    for (int k = 0; k < target.block_size(b); ++k) {
      proj[static_cast<std::size_t>(point(rng))][static_cast<std::size_t>(b)] += u.col(k) * u.col(k).adjoint();
    }
  }
  Matrix m(target.dim(), a.dim());
  for (int x = 0; x < a.dim(); ++x) m.col(x) = Element(target, proj[static_cast<std::size_t>(x)]).coordinates();
  return StarHomomorphism(a, target, m).checked();
}

}  // namespace

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  return std::mt19937_64(seq);
}

State random_rational_state(const Algebra& algebra, std::mt19937_64& rng) {
  if (!algebra.is_commutative()) throw std::invalid_argument("rational states need a commutative algebra");
  std::uniform_int_distribution<int> weight(0, 6);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(algebra.dim());
  while (w.sum() == 0.0) {
    for (int x = 0; x < algebra.dim(); ++x) w(x) = weight(rng);
  }
  w /= w.sum();
  std::vector<Matrix> d;
  for (int x = 0; x < algebra.dim(); ++x) d.push_back(Matrix::Constant(1, 1, w(x)));
  return State(algebra, std::move(d));
}

State random_state(const Algebra& algebra, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<Matrix> d;
  double total = 0.0;
  for (int b = 0; b < algebra.block_count(); ++b) {
    const int n = algebra.block_size(b);
    Matrix g(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    }
    Matrix rho = g * g.adjoint();
    rho *= unit(rng) / rho.trace().real();
    total += rho.trace().real();
    d.push_back(rho);
  }
  for (auto& rho : d) rho /= total;
  return State(algebra, std::move(d));
}

Matrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix rr = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex d = rr(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Element random_unitary_element(const Algebra& algebra, std::mt19937_64& rng) {
  std::vector<Matrix> blocks;
  for (int b = 0; b < algebra.block_count(); ++b) blocks.push_back(random_unitary(algebra.block_size(b), rng));
  return Element(algebra, std::move(blocks));
}

Element random_element(const Algebra& algebra, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector v(algebra.dim());
  for (int k = 0; k < algebra.dim(); ++k) v(k) = Complex(gauss(rng), gauss(rng));
  return Element::from_coordinates(algebra, v);
}

GroupAction pauli_action() {
  const Algebra m2 = Algebra::full_matrices(2);
  const Complex i(0.0, 1.0);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  std::vector<Element> us{Element::unit(m2), Element(m2, {x}), Element(m2, {y}), Element(m2, {z})};
  return conjugation_action(m2, us, {0.0, 1.0, 1.0, 1.0});
}

FamilyInstance classical_instance(const ClassicalFamily& family, int mixed, std::uint64_t seed) {
  QuantumFamily qf = compile_family(family);
  ProbeSet probes = build_probes(qf.parameter(), 0, mixed, seed);
  return {"classical", std::move(qf), Seminorm::lipschitz(family.x), std::move(probes)};
}

FamilyInstance random_noncommutative_instance(std::mt19937_64& rng, int kind, int probes_pure,
                                              int probes_mixed) {
  std::uniform_int_distribution<int> points(2, 3);
  const std::uint64_t probe_seed = rng();
  auto finish = [&](std::string label, QuantumFamily family, Seminorm base) {
    ProbeSet probes = build_probes(family.parameter(), probes_pure, probes_mixed, probe_seed);
    return FamilyInstance{std::move(label), std::move(family), std::move(base), std::move(probes)};
  };
  switch (kind % 5) {
    case 0:
    case 1: {
      const Algebra a = Algebra::functions_on(points(rng));
      const Algebra b = kind % 5 == 0 ? pick(rng, {{2}, {1, 2}}) : Algebra({1, 1});
      const Algebra c = kind % 5 == 0 ? pick(rng, {{2}, {1, 1}, {1, 2}}) : pick(rng, {{2}, {1, 2}});
      const SemiMetricSpace x = random_semimetric(a.dim(), rng, 0.2);
      QuantumFamily fam(b, c, projection_map(a, tensor_algebra(b, c), rng));
      return finish(kind % 5 == 0 ? "projections/B noncommutative" : "projections/C noncommutative",
                    std::move(fam), Seminorm::lipschitz(x));
    }
    case 2:
    case 3: {
      const Algebra m2 = Algebra::full_matrices(2);
      const Algebra c2 = Algebra::functions_on(2);
      const bool left = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
      const Algebra b = left ? m2 : c2;
      const Algebra c = left ? c2 : m2;
      const Matrix u = random_unitary(2, rng);
      const Algebra target = tensor_algebra(b, c);
      StarHomomorphism phi = linear_map(m2, target, [&](const Element& a) {
        return Element(target, {a.block(0), u * a.block(0) * u.adjoint()});
      }).checked();
      Seminorm base = kind % 5 == 2 ? Seminorm::group_action(pauli_action())
                                    : Seminorm::quotient_of_norm(m2, NormDescriptor{});
      return finish(kind % 5 == 2 ? "pair of conjugates/Pauli" : "pair of conjugates/quotient norm",
                    QuantumFamily(b, c, std::move(phi)), std::move(base));
    }
    default: {
      const Algebra a = Algebra::functions_on(points(rng));
      const Algebra m2 = Algebra::full_matrices(2);
      const SemiMetricSpace x = random_semimetric(a.dim(), rng, 0.2);
      return finish("a tensor 1", QuantumFamily(a, m2, left_embedding(a, m2).checked()),
                    Seminorm::lipschitz(x));
    }
  }
}

}  // namespace qmetric
