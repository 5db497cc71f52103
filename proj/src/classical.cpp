#include "qmetric/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmetric {

void ClassicalFamily::validate() const {
  if (y_size < 1 || z_size < 1) throw std::invalid_argument("classical family: Y and Z must be nonempty");
  if (static_cast<int>(f.size()) != y_size) throw std::invalid_argument("classical family: one row per y");
  for (const auto& row : f) {
    if (static_cast<int>(row.size()) != z_size) throw std::invalid_argument("classical family: one entry per z");
    for (int v : row) {
      if (v < 0 || v >= x.size()) throw std::invalid_argument("classical family: image point out of range");
    }
  }
}

SemiMetricSpace d1_direct(const ClassicalFamily& family) {
  family.validate();
  const int n = family.z_size;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int z = 0; z < n; ++z) {
    for (int w = 0; w < n; ++w) {
      for (int y = 0; y < family.y_size; ++y) {
        const auto& row = family.f[static_cast<std::size_t>(y)];
        d(z, w) = std::max(d(z, w), family.x(row[static_cast<std::size_t>(z)], row[static_cast<std::size_t>(w)]));
      }
    }
  }
  return SemiMetricSpace(std::move(d));
}

QuantumFamily compile_family(const ClassicalFamily& family) {
  family.validate();
  const Algebra a = Algebra::functions_on(family.x.size());
  const Algebra b = Algebra::functions_on(family.y_size);
  const Algebra c = Algebra::functions_on(family.z_size);
  Matrix m = Matrix::Zero(family.y_size * family.z_size, a.dim());
  for (int y = 0; y < family.y_size; ++y) {
    for (int z = 0; z < family.z_size; ++z) {
      m(y * family.z_size + z, family.f[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)]) = 1.0;
    }
  }
  return QuantumFamily(b, c, StarHomomorphism(a, tensor_algebra(b, c), m));
}

ClassicalFamily random_classical_family(std::mt19937_64& rng, int max_size, double merge_probability) {
  std::uniform_int_distribution<int> size(1, max_size);
  const int nx = size(rng);
  ClassicalFamily fam{size(rng), size(rng), random_semimetric(nx, rng, merge_probability), {}};
  std::uniform_int_distribution<int> point(0, nx - 1);
  fam.f.assign(static_cast<std::size_t>(fam.y_size), std::vector<int>(static_cast<std::size_t>(fam.z_size)));
  for (auto& row : fam.f) {
    for (auto& v : row) v = point(rng);
  }
  return fam;
}

Report verify_theorem(const ClassicalFamily& family, const TheoremOptions& options) {
  Report report("theorem");
  const QuantumFamily qf = compile_family(family);
  const SemiMetricSpace d1 = d1_direct(family);
  const Seminorm base = Seminorm::lipschitz(family.x);
  const ProbeSet probes = point_mass_probes(qf.parameter());
  const StateSemiMetric metric = induced_state_semimetric(qf, base, probes);
  const Seminorm n = Seminorm::state_metric(metric);
  const int nz = family.z_size;

  double res_d = 0.0, res_i = 0.0;
  bool exact = metric.all_exact() || nz == 1;
  for (int z = 0; z < nz; ++z) {
    for (int w = z + 1; w < nz; ++w) {
      res_d = std::max(res_d, std::abs(metric.d(z, w) - d1(z, w)));
      const DistanceResult r = rho_lp_dual(probes.states[static_cast<std::size_t>(z)],
                                           probes.states[static_cast<std::size_t>(w)], n);
      exact = exact && r.exact;
      res_i = std::max(res_i, std::abs(r.value - d1(z, w)));
    }
  }
  const std::size_t pairs = static_cast<std::size_t>(nz * (nz - 1) / 2);
  report.add("theorem.d", res_d, options.tolerance, pairs, "induced d on point masses equals d1");
  report.add("theorem.i", res_i, options.tolerance, pairs, "d1(z, z') = rho_N(delta_z, delta_z')");
  report.add_flag("theorem.exact", exact, "every value from an exact LP");

  // 𝒞 sample: a basis of its self-adjoint part plus random complex elements.
  const HermitianFrame frame(qf.parameter());
  const Eigen::MatrixXd dirs = domain_directions(n);
  std::vector<Element> cs;
  for (Eigen::Index k = 0; k < dirs.cols(); ++k) cs.push_back(frame.element(dirs.col(k)));
  std::mt19937_64 rng(options.seed);
  for (int s = 0; s < options.samples; ++s) cs.push_back(random_domain_element(n, rng));

  const Seminorm lip1 = Seminorm::lipschitz(d1);
  double res_ii = 0.0, res_iii = 0.0;
  for (const auto& c : cs) {
    const double nc = n(c);
    const double scale = std::max(1.0, c.operator_norm());
    for (int z = 0; z < nz; ++z) {
      for (int w = z + 1; w < nz; ++w) {
        const double gap = std::abs(c.value(z) - c.value(w)) - nc * d1(z, w);
        res_ii = std::max(res_ii, gap / scale);
      }
    }
    res_iii = std::max(res_iii, lip1(c) - nc);
  }
  report.add("theorem.ii", std::max(0.0, res_ii), options.tolerance, cs.size(), "C within Lip(Z, d1)");
  report.add("theorem.iii", std::max(0.0, res_iii), options.tolerance, cs.size(), "||c||_{d1} <= N(c)");
  report.add_advisory("theorem.degenerate", d1.diameter() == 0.0,
                      d1.diameter() == 0.0 ? "d1 vanishes identically" : "d1 not identically zero");
  return report;
}

Report verify_lemma5(const StateSemiMetric& metric, double tolerance) {
  const Algebra& alg = metric.probes.algebra;
  if (!alg.is_commutative()) throw std::invalid_argument("verify_lemma5 needs a commutative algebra");
  const int nx = alg.dim();
  std::vector<int> index(static_cast<std::size_t>(nx), -1);
  for (int x = 0; x < nx; ++x) {
    const State delta = point_mass(alg, x);
    for (std::size_t k = 0; k < metric.probes.size(); ++k) {
      if (state_distance_max(metric.probes.states[k], delta) <= 1e-12) {
        index[static_cast<std::size_t>(x)] = static_cast<int>(k);
        break;
      }
    }
    if (index[static_cast<std::size_t>(x)] < 0) throw std::invalid_argument("verify_lemma5: probes miss a point mass");
  }
  const Seminorm ld = Seminorm::state_metric(metric);
  Report report("lemma5");
  double res = 0.0;
  for (int x = 0; x < nx; ++x) {
    for (int y = x + 1; y < nx; ++y) {
      const int i = index[static_cast<std::size_t>(x)];
      const int j = index[static_cast<std::size_t>(y)];
      const DistanceResult r = rho_lp_dual(metric.probes.states[static_cast<std::size_t>(i)],
                                           metric.probes.states[static_cast<std::size_t>(j)], ld);
      res = std::max(res, std::abs(r.value - metric.d(i, j)));
    }
  }
  report.add("lemma5.equality", res, tolerance, static_cast<std::size_t>(nx * (nx - 1) / 2),
             "d(delta_x, delta_x') = rho_{L_d}(delta_x, delta_x')");

  double worst = 0.0;
  bool in_domain = true;
  for (int x = 0; x < nx; ++x) {
    Eigen::VectorXd b(nx);
    for (int y = 0; y < nx; ++y) b(y) = metric.d(index[static_cast<std::size_t>(x)], index[static_cast<std::size_t>(y)]);
    const Element bx = Element::function(alg, b);
    in_domain = in_domain && ld.in_domain(bx, 1e-9);
    worst = std::max(worst, ld(bx));
  }
  const bool ok = in_domain && worst <= 1.0 + tolerance;
  report.add_advisory("lemma5.witness", ok,
                      "b_x in domain: " + std::string(in_domain ? "yes" : "no") +
                          ", max L_d(b_x) = " + std::to_string(worst));
  return report;
}

StateSemiMetric transport_state_metric(const SemiMetricSpace& space, const ProbeSet& probes) {
  const auto n = static_cast<Eigen::Index>(probes.size());
  StateSemiMetric out{probes, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXi::Ones(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = kantorovich_primal(probes.states[static_cast<std::size_t>(i)],
                                          probes.states[static_cast<std::size_t>(j)], space)
                           .value;
      out.d(i, j) = out.d(j, i) = v < 1e-12 ? 0.0 : v;
    }
  }
  return out;
}

}  // namespace qmetric
