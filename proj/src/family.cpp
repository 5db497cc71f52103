#include "qmetric/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

namespace qmetric {

namespace {

constexpr double kZeroSnap = 1e-12;

struct Best {
  double value = 0.0;
  bool exact = true;
  std::optional<State> argmax;
};

Best pair_distance(const QuantumFamily& family, const Seminorm& base, const std::vector<State>& mus,
                   const State& nu, const State& nu2, const InduceOptions& options, std::uint64_t salt) {
  Best best;
  int arg = -1;
  auto eval = [&](const State& mu) {
    const DistanceResult r = rho(family.pulled(mu, nu), family.pulled(mu, nu2), base, options.distance);
    best.exact = best.exact && r.exact;
    return r.value;
  };
  for (std::size_t k = 0; k < mus.size(); ++k) {
    const double v = eval(mus[k]);
    if (v > best.value || arg < 0) {
      best.value = v;
      arg = static_cast<int>(k);
    }
  }
  if (family.averaged().is_commutative()) return best;
  best.argmax = mus[static_cast<std::size_t>(arg)];

  // Pure-state ascent from the best candidate; only ever raises the lower bound.
  best.exact = false;
  const State& start = mus[static_cast<std::size_t>(arg)];
  int block = 0;
  for (int b = 0; b < family.averaged().block_count(); ++b) {
    if (start.density(b).trace().real() > 0.5) block = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(start.density(block));
  const Eigen::Index n = es.eigenvalues().size();
  Vector psi = es.eigenvectors().col(n - 1);
  if (n == 1) return best;
  std::mt19937_64 rng(options.seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
  std::normal_distribution<double> gauss;
  double h = 0.5;
  for (int step = 0; step < options.mu_refine; ++step) {
    Vector cand = psi;
    for (Eigen::Index r = 0; r < n; ++r) cand(r) += h * Complex(gauss(rng), gauss(rng));
    if (cand.norm() < 1e-12) continue;
    State mu = vector_state(family.averaged(), block, cand);
    const double v = eval(mu);
    best.exact = false;
    if (v > best.value) {
      best.value = v;
      best.argmax = std::move(mu);
      psi = cand.normalized();
    } else {
      h *= 0.5;
    }
  }
  return best;
}

}  // namespace

QuantumFamily::QuantumFamily(Algebra averaged, Algebra parameter, StarHomomorphism phi)
    : averaged_(std::move(averaged)), parameter_(std::move(parameter)), phi_(std::move(phi)) {
  if (!(phi_.target() == tensor_algebra(averaged_, parameter_))) {
    throw AlgebraMismatch("family map must land in " + tensor_algebra(averaged_, parameter_).describe());
  }
  if (!phi_.validated()) phi_ = phi_.checked();
}

State QuantumFamily::pulled(const State& mu, const State& nu) const {
  return pullback(product_state(mu, nu), phi_);
}

Element QuantumFamily::slice(const State& mu, const Element& a) const {
  return qmetric::slice(mu, phi_, a, parameter_);
}

QuantumFamily identity_family(const Algebra& a, const Algebra& c) {
  return QuantumFamily(a, c, identity_homomorphism(tensor_algebra(a, c)));
}

QuantumFamily flip_family(const Algebra& a, const Algebra& c) {
  return QuantumFamily(c, a, flip_homomorphism(a, c));
}

QuantumFamily homomorphism_family(const StarHomomorphism& phi) {
  const Algebra point = Algebra::functions_on(1);
  // C ⊗ B has the blocks and coordinates of B.
  StarHomomorphism lifted(phi.source(), tensor_algebra(point, phi.target()), phi.matrix());
  return QuantumFamily(point, phi.target(), lifted);
}

ProbeSet averaging_states(const QuantumFamily& family, const InduceOptions& options) {
  const Algebra& b = family.averaged();
  if (b.is_commutative()) return point_mass_probes(b);
  ProbeSet all = build_probes(b, options.mu_pure, 0, options.seed);
  ProbeSet out{b, {}, {}, options.seed};
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (all.provenance[k] == Provenance::mixed) continue;
    out.states.push_back(all.states[k]);
    out.provenance.push_back(all.provenance[k]);
  }
  return out;
}

StateSemiMetric induced_state_semimetric(const QuantumFamily& family, const Seminorm& base,
                                         const ProbeSet& probes, const InduceOptions& options) {
  if (!(base.algebra() == family.source())) throw AlgebraMismatch("base seminorm is not on the family's source");
  if (!(probes.algebra == family.parameter())) throw AlgebraMismatch("probes are not on the parameter algebra");
  const ProbeSet mus = averaging_states(family, options);
  const auto n = static_cast<Eigen::Index>(probes.size());
  StateSemiMetric out{probes, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXi::Ones(n, n)};
  std::uint64_t salt = 0;
  std::vector<State> found;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Best b = pair_distance(family, base, mus.states, probes.states[static_cast<std::size_t>(i)],
                             probes.states[static_cast<std::size_t>(j)], options, salt++);
      out.d(i, j) = out.d(j, i) = b.value;
      out.exact(i, j) = out.exact(j, i) = b.exact ? 1 : 0;
      if (b.argmax && std::none_of(found.begin(), found.end(), [&](const State& s) {
            return state_distance_max(s, *b.argmax) <= 1e-9;
          })) {
        found.push_back(std::move(*b.argmax));
      }
    }
  }
  // Each mu gives a pseudometric on the probes. Entries maximized over different
  // sampled mu can break the triangle inequality, so every pair is re-evaluated at
  // every maximizer found, making d a maximum over one common set.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const State& nu = probes.states[static_cast<std::size_t>(i)];
      const State& nu2 = probes.states[static_cast<std::size_t>(j)];
      for (const State& mu : found) {
        const double v = rho(family.pulled(mu, nu), family.pulled(mu, nu2), base, options.distance).value;
        if (v > out.d(i, j)) out.d(i, j) = out.d(j, i) = v;
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (out.d(i, j) < kZeroSnap) out.d(i, j) = 0.0;
    }
  }
  return out;
}

QsmStructure induce_qsm(const QuantumFamily& family, const Seminorm& base, const ProbeSet& probes,
                        const InduceOptions& options, const QsmOptions& qsm) {
  return make_qsm(Seminorm::state_metric(induced_state_semimetric(family, base, probes, options)), qsm);
}

Report check_prop2(const QsmStructure& induced, const QsmOptions& options, const DistanceOptions& distance) {
  const Seminorm& ld = induced.seminorm;
  if (ld.kind() != SeminormKind::state_metric) throw std::invalid_argument("check_prop2 needs an induced state metric");
  const StateSemiMetric& metric = *ld.metric();
  const auto& probes = metric.probes.states;
  Report report("prop2");
  std::mt19937_64 rng(options.seed);

  // i) 1 in 𝒞 and 𝒞 closed under the adjoint with L_d(c) = L_d(c*).
  const Element one = Element::unit(ld.algebra());
  // Trace rounding divided by small distances: L_d(1) is only zero to about 1e-13.
  report.add("prop2.i.unit", ld.in_domain(one) ? ld(one) : std::numeric_limits<double>::infinity(), 1e-9, 1,
             "1 in domain with L_d(1) = 0");
  double res_i = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    const Element c = random_domain_element(ld, rng);
    const Element cs = c.adjoint();
    if (!ld.in_domain(cs)) res_i = std::numeric_limits<double>::infinity();
    res_i = std::max(res_i, std::abs(ld(c) - ld(cs)) / std::max(1.0, ld(c)));
  }
  report.add("prop2.i", res_i, 1e-12, static_cast<std::size_t>(options.samples), "domain closed under *, L_d(c) = L_d(c*)");

  // ii) self-adjoint domain elements with L_d = 0 take one value on all probes.
  const HermitianFrame frame(ld.algebra());
  std::vector<Functional> fs = ld.domain_constraints();
  const auto ker = ld.kernel_functionals();
  fs.insert(fs.end(), ker.begin(), ker.end());
  Eigen::MatrixXd rows(2 * static_cast<Eigen::Index>(fs.size()), frame.dim());
  for (std::size_t k = 0; k < fs.size(); ++k) rows.middleRows(2 * static_cast<Eigen::Index>(k), 2) = frame.real_rows(fs[k]);
  const Eigen::MatrixXd zero_dirs = null_space(rows, frame.dim());
  double res_ii = 0.0;
  for (Eigen::Index k = 0; k < zero_dirs.cols(); ++k) {
    const Element c = frame.element(zero_dirs.col(k));
    res_ii = std::max(res_ii, ld(c));
    const Complex v0 = probes.front()(c);
    for (const auto& nu : probes) res_ii = std::max(res_ii, std::abs(nu(c) - v0));
  }
  const int nonscalar = static_cast<int>(zero_dirs.cols()) - 1;
  report.add("prop2.ii", res_ii, 1e-9, static_cast<std::size_t>(zero_dirs.cols()),
             "L_d = 0 on the domain forces agreement with a scalar on the probes");
  report.add_advisory("prop2.ii.scalar", nonscalar <= 0,
                      nonscalar <= 0 ? "null space is C1"
                                     : std::to_string(nonscalar) + " null direction(s) not separated by the probes");

  // iv) rho_{L_d} <= d on every probe pair.
  double res_iv = 0.0;
  bool all_exact = true;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      const DistanceResult r = rho(probes[i], probes[j], ld, distance);
      all_exact = all_exact && r.exact;
      res_iv = std::max(res_iv, r.value - metric.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      ++pairs;
    }
  }
  report.add("prop2.iv", std::max(0.0, res_iv), all_exact ? 1e-8 : 1e-6, pairs, "rho_{L_d} <= d");

  const RadiusResult radius = seminorm_radius(ld, options.ratio);
  report.add_flag("prop2.radius", radius.certified,
                  radius.certified ? "radius " + std::to_string(radius.value) : radius.diagnostic);
  return report;
}

Report check_lemma3(const QuantumFamily& family, const Seminorm& base, const Seminorm& induced,
                    const std::vector<State>& mus, const std::vector<Element>& samples, double tolerance) {
  Report report("lemma3");
  const auto& probes = induced.metric()->probes.states;
  const Eigen::MatrixXd& d = induced.metric()->d;
  double res = 0.0, agree = 0.0;
  std::size_t count = 0, tight = 0;
  for (const auto& mu : mus) {
    for (const auto& a : samples) {
      const double la = base(a);
      if (!std::isfinite(la)) continue;
      const Element c = family.slice(mu, a);
      const double lc = induced(c);
      res = std::max(res, lc - la);
      if (la > 0.0 && lc >= la * (1.0 - 1e-9)) ++tight;
      const double scale = std::max(1.0, c.operator_norm());
      for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t j = i + 1; j < probes.size(); ++j) {
          if (d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) continue;
          agree = std::max(agree, std::abs(probes[i](c) - probes[j](c)) / scale);
        }
      }
      ++count;
    }
  }
  report.add("lemma3.bound", std::max(0.0, res), tolerance, count,
             std::to_string(tight) + " of " + std::to_string(count) + " tight");
  report.add("lemma3.domain", agree, 1e-9, count, "slices agree on zero-distance probe pairs");
  return report;
}

std::vector<State> spanning_states(const Algebra& algebra, std::uint64_t seed) {
  return build_probes(algebra, algebra.dim(), 0, seed).states;
}

DensityResult check_prop4_density(const QuantumFamily& family, const std::vector<State>& mus) {
  const Algebra& a = family.source();
  const int dim_c = family.parameter().dim();
  std::vector<Vector> cols;
  for (const auto& mu : mus) {
    for (int b = 0; b < a.block_count(); ++b) {
      for (int r = 0; r < a.block_size(b); ++r) {
        for (int c = 0; c < a.block_size(b); ++c) {
          cols.push_back(family.slice(mu, Element::matrix_unit(a, b, r, c)).coordinates());
        }
      }
    }
  }
  Matrix span(dim_c, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = cols[k];
  DensityResult out;
  out.rank = numerical_rank(span, 1e-8);
  out.full = out.rank == dim_c;
  out.report = Report("prop4");
  out.report.add_advisory("prop4.density", out.full,
                          "slice span rank " + std::to_string(out.rank) + " of " + std::to_string(dim_c));
  return out;
}

}  // namespace qmetric
