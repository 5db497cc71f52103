#include "qmetric/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "qmetric/instances.hpp"

namespace qmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

StateSemiMetric lp_state_metric(const ProbeSet& probes, const Seminorm& l) {
  const auto n = static_cast<Eigen::Index>(probes.size());
  StateSemiMetric m{probes, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXi::Ones(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = rho_lp_dual(probes.states[static_cast<std::size_t>(i)],
                                   probes.states[static_cast<std::size_t>(j)], l).value;
      m.d(i, j) = m.d(j, i) = v < 1e-12 ? 0.0 : v;
    }
  }
  return m;
}

ProbeSet rational_probes(const Algebra& alg, int mixed, std::mt19937_64& rng) {
  ProbeSet p = point_mass_probes(alg);
  for (int k = 0; k < mixed; ++k) {
    p.states.push_back(random_rational_state(alg, rng));
    p.provenance.push_back(Provenance::mixed);
  }
  return p;
}

// Class-constant complex function on X/~.
Element class_function(const SemiMetricSpace& x, std::mt19937_64& rng) {
  const QuotientSpace q = quotient_space(x);
  std::normal_distribution<double> gauss;
  std::vector<Complex> cls(static_cast<std::size_t>(q.space.size()));
  for (auto& c : cls) c = Complex(gauss(rng), gauss(rng));
  const Algebra alg = Algebra::functions_on(x.size());
  Vector v(x.size());
  for (int p = 0; p < x.size(); ++p) v(p) = cls[static_cast<std::size_t>(q.projection[static_cast<std::size_t>(p)])];
  return Element::from_coordinates(alg, v);
}

Report with_suffix(const Report& in, const std::string& suffix) {
  Report out(in.subject());
  for (const auto& c : in.checks()) {
    Check& copy = out.add_flag(c.id + suffix, c.passed);
    copy = c;
    copy.id = c.id + suffix;
  }
  return out;
}

Report duality_instance(std::mt19937_64& rng, const SuiteConfig& cfg) {
  const int n = std::uniform_int_distribution<int>(1, 8)(rng);
  const SemiMetricSpace x = random_semimetric(n, rng, 0.2);
  const Algebra alg = Algebra::functions_on(n);
  const Seminorm l = Seminorm::lipschitz(x);
  const State mu = random_rational_state(alg, rng);
  const State nu = random_rational_state(alg, rng);
  const State la = random_rational_state(alg, rng);
  const DistanceResult dual = rho_lp_dual(mu, nu, l);
  const DistanceResult primal = kantorovich_primal(mu, nu, x);
  const DistanceResult back = rho_lp_dual(nu, mu, l);
  const double ml = rho_lp_dual(mu, la, l).value;
  const double nl = rho_lp_dual(nu, la, l).value;
  const double t = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
  const double scaled = rho_lp_dual(mu, nu, l.scaled(t)).value;

  Report r("duality");
  r.add("duality.kantorovich", std::abs(dual.value - primal.value), cfg.tol_lp, 1, "dual LP against transport plan");
  r.add("duality.symmetry", std::abs(dual.value - back.value), 0.0, 1, "rho(mu, nu) = rho(nu, mu)");
  r.add("duality.triangle", std::max(0.0, ml - dual.value - nl), cfg.tol_lp, 1, "rho(mu, la) <= rho(mu, nu) + rho(nu, la)");
  r.add("duality.homogeneity", rel(scaled * t, dual.value), cfg.tol_lp, 1, "rho_{tL} = rho_L / t");
  r.add("duality.witness", std::max(dual.residual, primal.residual), 1e-9, 2, "witness and plan reproduce the value");
  r.add_flag("duality.exact", dual.exact && primal.exact);
  double bound = 0.0;
  for (int s = 0; s < 4; ++s) {
    const Element a = random_domain_element(l, rng);
    const double gap = std::abs(mu(a) - nu(a)) - l(a) * dual.value;
    bound = std::max(bound, gap / std::max(1.0, a.operator_norm()));
  }
  r.add("prop3.bound", bound, cfg.tol_lp, 4, "|mu(a) - nu(a)| <= L(a) rho(mu, nu)");
  return r;
}

Report lemma1_instance(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(1, 8)(rng);
  const SemiMetricSpace x = random_semimetric(n, rng, 0.3);
  const Algebra alg = Algebra::functions_on(n);
  Vector v(n);
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    std::normal_distribution<double> gauss;
    for (int p = 0; p < n; ++p) v(p) = Complex(gauss(rng), gauss(rng));
  } else {
    // Scaled McShane extension of random anchor values: Lipschitz constant near s.
    const int anchors = std::uniform_int_distribution<int>(1, n)(rng);
    std::uniform_int_distribution<int> point(0, n - 1);
    std::uniform_real_distribution<double> val(0.0, 2.0);
    std::vector<std::pair<int, double>> an;
    for (int k = 0; k < anchors; ++k) an.emplace_back(point(rng), val(rng));
    const double scales[] = {0.5, 0.9, 1.0, 1.1, 2.0};
    const double s = scales[std::uniform_int_distribution<int>(0, 4)(rng)];
    const Complex phase = std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2 * std::numbers::pi)(rng));
    for (int p = 0; p < n; ++p) {
      double m = kInf;
      for (const auto& [q, w] : an) m = std::min(m, w + x(q, p));
      v(p) = s * phase * m;
    }
  }
  const Element a = Element::from_coordinates(alg, v);
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  bool pairwise = true;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double diff = std::abs(v(p) - v(q));
      pairwise = pairwise && (x(p, q) > 0.0 ? diff <= x(p, q) * (1.0 + 1e-12) : diff <= 1e-12 * scale);
    }
  }
  const bool bounded = Seminorm::lipschitz(x)(a) <= 1.0 + 1e-12;
  Report r("lemma1");
  r.add("lemma1.characterization", bounded == pairwise ? 0.0 : 1.0, 0.0, 1,
        "||a||_d <= 1 iff |a(x) - a(x')| <= d(x, x')");
  return r;
}

Report prop1_instance(std::mt19937_64& rng, const SuiteConfig& cfg) {
  const int n = std::uniform_int_distribution<int>(1, 8)(rng);
  const SemiMetricSpace x = random_semimetric(n, rng, 0.3);
  const Algebra alg = Algebra::functions_on(n);
  const Seminorm l = Seminorm::lipschitz(x);
  Report r("prop1");

  double res_i = 0.0;
  int zero_pairs = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      res_i = std::max(res_i, std::abs(rho_lp_dual(point_mass(alg, p), point_mass(alg, q), l).value - x(p, q)));
      if (x(p, q) == 0.0) ++zero_pairs;
    }
  }
  r.add("prop1.i", res_i, cfg.tol_lp, static_cast<std::size_t>(n * (n - 1) / 2), "d(x, y) = rho(delta_x, delta_y)");
  // Advisory tally: samples counts the zero-distance pairs seen across instances.
  r.add("prop1.zero_pairs", 0.0, 0.0, static_cast<std::size_t>(zero_pairs), "zero-distance pairs covered").advisory = true;

  // ii) L_rho = ||.||_d, with rho computed on point masses plus rational mixtures.
  const ProbeSet probes = rational_probes(alg, cfg.probes_mixed + 2, rng);
  const Seminorm lrho = Seminorm::state_metric(lp_state_metric(probes, l));
  std::vector<Element> fs;
  for (int p = 0; p < n; ++p) {
    Eigen::VectorXd b(n);
    for (int q = 0; q < n; ++q) b(q) = x(p, q);
    fs.push_back(Element::function(alg, b));
  }
  for (int k = 0; k < 3; ++k) fs.push_back(class_function(x, rng));
  double res_ii = 0.0;
  int wrong = 0;
  for (const auto& a : fs) {
    res_ii = std::max(res_ii, rel(lrho(a), l(a)));
    if (!lrho.in_domain(a)) ++wrong;
  }
  r.add("prop1.ii", res_ii, cfg.tol_lp, fs.size(), "L_rho = ||.||_d on C(X, d)");
  // iii) a is constant on zero classes iff nu -> nu(a) is constant on rho-zero probe pairs.
  if (zero_pairs > 0) {
    const Element a = random_element(alg, rng);
    if (lrho.in_domain(a)) ++wrong;
  }
  r.add("prop1.iii.continuity", wrong, 0.0, fs.size() + (zero_pairs > 0 ? 1 : 0),
        "C(X, d) is the domain of L_rho");

  // iii) rho on C(X) equals rho on the metric quotient through the canonical embedding.
  const QuotientSpace qs = quotient_space(x);
  const Algebra ya = Algebra::functions_on(qs.space.size());
  Matrix m = Matrix::Zero(n, ya.dim());
  for (int p = 0; p < n; ++p) m(p, qs.projection[static_cast<std::size_t>(p)]) = 1.0;
  const StarHomomorphism phi = StarHomomorphism(ya, alg, m).checked();
  const Seminorm lq = Seminorm::lipschitz(qs.space);
  double res_iii = 0.0, res_iv = 0.0;
  for (int k = 0; k < 3; ++k) {
    const State mu = random_rational_state(alg, rng);
    const State nu = random_rational_state(alg, rng);
    const double direct = rho_lp_dual(mu, nu, l).value;
    res_iii = std::max(res_iii, std::abs(rho_between_pullbacks(mu, nu, phi, lq).value - direct));
    res_iv = std::max(res_iv, direct - x.diameter() * 0.5 * functional_distance(mu, nu));
  }
  r.add("prop1.iii", res_iii, cfg.tol_lp, 3, "rho(nu, nu') = rho(nu o Phi, nu' o Phi) on X/~");
  r.add("prop1.iv", std::max(0.0, res_iv), cfg.tol_lp, 3, "rho <= diam(X) ||mu - nu|| / 2");
  return r;
}

Report prop2_instance(std::mt19937_64& rng, int k, const SuiteConfig& cfg) {
  const ClassicalFamily fam = random_classical_family(rng);
  const QsmOptions qsm{.samples = 8, .seed = rng(), .tolerance = 1e-12, .ratio = {}};
  const FamilyInstance ci = classical_instance(fam, cfg.probes_mixed, rng());
  Report r("prop2");
  r.merge(check_prop2(induce_qsm(ci.family, ci.base, ci.probes, {}, qsm), qsm));
  if (k % 2 == 0) {
    const FamilyInstance ni = random_noncommutative_instance(rng, k / 2, cfg.probes_pure, cfg.probes_mixed);
    r.merge(with_suffix(check_prop2(induce_qsm(ni.family, ni.base, ni.probes, {}, qsm), qsm), ".noncommutative"));
  }
  return r;
}

Report lemma3_instance(std::mt19937_64& rng, int k, const SuiteConfig& cfg) {
  Report r("lemma3");
  const InduceOptions induce;
  auto run = [&](const FamilyInstance& inst, const std::string& suffix) {
    const StateSemiMetric m = induced_state_semimetric(inst.family, inst.base, inst.probes, induce);
    const Seminorm ld = Seminorm::state_metric(m);
    std::vector<State> mus = averaging_states(inst.family, induce).states;
    if (inst.family.averaged().is_commutative()) {
      for (int s = 0; s < 2; ++s) mus.push_back(random_rational_state(inst.family.averaged(), rng));
    }
    std::vector<Element> as;
    for (int s = 0; s < 4; ++s) as.push_back(random_domain_element(inst.base, rng));
    const bool exact = m.all_exact() && (inst.base.kind() == SeminormKind::lipschitz ||
                                         inst.base.kind() == SeminormKind::state_metric);
    r.merge(with_suffix(check_lemma3(inst.family, inst.base, ld, mus, as, exact ? cfg.tol_lp : cfg.tol_iter),
                        suffix));
  };
  run(classical_instance(random_classical_family(rng), cfg.probes_mixed, rng()), "");
  run(random_noncommutative_instance(rng, k, cfg.probes_pure, cfg.probes_mixed), ".noncommutative");
  return r;
}

Report prop4_instance(std::mt19937_64& rng, int k, const SuiteConfig& cfg) {
  std::uniform_int_distribution<int> size(1, 3);
  std::optional<FamilyInstance> inst;
  std::string kind;
  switch (k % 4) {
    case 0:
    case 1: {
      const Algebra a = Algebra::functions_on(size(rng));
      const Algebra c = Algebra::functions_on(size(rng));
      const SemiMetricSpace x = random_semimetric(a.dim() * c.dim(), rng, 0.0);
      QuantumFamily fam = k % 4 == 0 ? flip_family(a, c) : identity_family(a, c);
      ProbeSet probes = build_probes(fam.parameter(), 0, cfg.probes_mixed, rng());
      inst.emplace(FamilyInstance{k % 4 == 0 ? "flip" : "identity", std::move(fam), Seminorm::lipschitz(x),
                                  std::move(probes)});
      break;
    }
    case 2: {
      const Algebra m2 = Algebra::full_matrices(2);
      QuantumFamily fam = homomorphism_family(conjugation(random_unitary_element(m2, rng)).checked());
      ProbeSet probes = build_probes(m2, cfg.probes_pure, cfg.probes_mixed, rng());
      inst.emplace(FamilyInstance{"surjective homomorphism", std::move(fam),
                                  Seminorm::group_action(pauli_action()), std::move(probes)});
      break;
    }
    default:
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        inst.emplace(classical_instance(random_classical_family(rng, 4), cfg.probes_mixed, rng()));
      } else {
        inst.emplace(random_noncommutative_instance(rng, 4, cfg.probes_pure, cfg.probes_mixed));
      }
  }
  Report r("prop4");
  const HermitianFrame src(inst->family.source());
  const bool base_qm = domain_directions(inst->base).cols() == src.dim();
  const DensityResult density = check_prop4_density(inst->family, spanning_states(inst->family.averaged(), rng()));
  const bool hypothesis = base_qm && density.full;
  r.add_advisory("prop4.hypothesis", hypothesis,
                 inst->label + ": base domain " + (base_qm ? "full" : "partial") + ", slice rank " +
                     std::to_string(density.rank) + " of " + std::to_string(inst->family.parameter().dim()));
  if (!hypothesis) return r;
  const QsmStructure q = induce_qsm(inst->family, inst->base, inst->probes);
  const HermitianFrame par(inst->family.parameter());
  const auto missing = static_cast<double>(par.dim() - domain_directions(q.seminorm).cols());
  r.add("prop4.qm", missing, 0.0, 1, "induced domain spans the parameter algebra");
  r.add_flag("prop4.qsm", q.axioms.passed(), "induced structure passes the seminorm axioms");
  return r;
}

Report lemma5_instance(std::mt19937_64& rng, int k, const SuiteConfig& cfg) {
  switch (k % 3) {
    case 0: {
      const FamilyInstance ci = classical_instance(random_classical_family(rng), cfg.probes_mixed + 1, rng());
      return verify_lemma5(induced_state_semimetric(ci.family, ci.base, ci.probes), cfg.tol_lp);
    }
    case 1: {
      const int n = std::uniform_int_distribution<int>(1, 6)(rng);
      const SemiMetricSpace x = random_semimetric(n, rng, 0.2);
      return verify_lemma5(transport_state_metric(x, rational_probes(Algebra::functions_on(n), cfg.probes_mixed + 1, rng)),
                           cfg.tol_lp);
    }
    default: {
      const int n = std::uniform_int_distribution<int>(1, 6)(rng);
      Eigen::MatrixXd d = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
      const SemiMetricSpace x{d};
      return verify_lemma5(transport_state_metric(x, rational_probes(Algebra::functions_on(n), cfg.probes_mixed + 1, rng)),
                           cfg.tol_lp);
    }
  }
}

Report theorem_instance(std::mt19937_64& rng, int k, const SuiteConfig& cfg) {
  const ClassicalFamily fam = random_classical_family(rng);
  Report r = verify_theorem(fam, TheoremOptions{.samples = 16, .seed = static_cast<std::uint64_t>(k) ^ cfg.seed,
                                                .tolerance = cfg.tol_lp});
  const HomomorphismReport h = validate_homomorphism(compile_family(fam).phi());
  r.add("theorem.compile", std::max({h.unitality, h.star, h.multiplicativity}), 0.0, 1,
        "compiled map is a *-homomorphism with residual 0");
  return r;
}

Report ratio_instance(std::mt19937_64& rng, const SuiteConfig& cfg) {
  const int n = std::uniform_int_distribution<int>(2, 6)(rng);
  const SemiMetricSpace x = random_semimetric(n, rng, 0.2);
  const Algebra alg = Algebra::functions_on(n);
  const Seminorm l = Seminorm::lipschitz(x);
  const State mu = random_rational_state(alg, rng);
  const State nu = random_rational_state(alg, rng);
  const double lp = rho_lp_dual(mu, nu, l).value;
  RatioOptions opts;
  opts.seed = rng();
  const double ratio = rho_ratio(mu, nu, l, opts).value;
  const double t = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
  const double scaled = rho_ratio(mu, nu, l.scaled(t), opts).value;
  Report r("ratio");
  r.add("ratio.lp", lp > 0.0 ? std::abs(ratio - lp) / lp : std::abs(ratio), 1e-2, 1,
        "ratio engine within 1% of the LP");
  r.add("ratio.homogeneity", rel(scaled * t, ratio), cfg.tol_iter, 1, "rho_{tL} = rho_L / t");
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"prop1", "prop2", "lemma1", "lemma3", "prop4",
                                              "lemma5", "theorem4", "duality", "ratio", "example4"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Report verify_pauli_example(int probes, std::uint64_t seed, double tolerance) {
  Report r("example4");
  const GroupAction g = pauli_action();
  r.add_flag("example4.ergodic", g.fixed_rank == 1, "fixed rank " + std::to_string(g.fixed_rank));
  const Seminorm l = Seminorm::group_action(g);
  const Algebra& m2 = g.algebra;
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  r.add("example4.sigma_z", std::abs(l(Element(m2, {z})) - 2.0), 0.0, 1, "L(sigma_z) = 2");
  const RadiusResult radius = seminorm_radius(l);
  r.add_flag("example4.radius", radius.certified && std::isfinite(radius.value),
             "radius " + std::to_string(radius.value));

  const ProbeSet ps = build_probes(m2, std::max(0, probes - 3), 0, seed);
  const auto n = static_cast<Eigen::Index>(ps.size());
  Eigen::MatrixXd d(n, n);
  double sym = 0.0, diag = 0.0, neg = 0.0;
  bool finite = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    diag = std::max(diag, rho(ps.states[static_cast<std::size_t>(i)], ps.states[static_cast<std::size_t>(i)], l).value);
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto& a = ps.states[static_cast<std::size_t>(i)];
      const auto& b = ps.states[static_cast<std::size_t>(j)];
      d(i, j) = rho(a, b, l).value;
      d(j, i) = rho(b, a, l).value;
      sym = std::max(sym, std::abs(d(i, j) - d(j, i)));
      neg = std::max(neg, -d(i, j));
      finite = finite && std::isfinite(d(i, j)) && d(i, j) > 0.0;
    }
  }
  double tri = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) tri = std::max(tri, d(i, k) - d(i, j) - d(j, k));
    }
  }
  const auto pairs = static_cast<std::size_t>(n * (n - 1) / 2);
  r.add("example4.identity", diag, tolerance, static_cast<std::size_t>(n), "rho(mu, mu) = 0");
  r.add("example4.symmetry", sym, tolerance, pairs, "rho(mu, nu) = rho(nu, mu)");
  r.add("example4.nonnegative", neg, tolerance, pairs);
  r.add("example4.triangle", std::max(0.0, tri), tolerance, static_cast<std::size_t>(n * n * n),
        "triangle inequality on " + std::to_string(n) + " probes");
  r.add_flag("example4.separating", finite, "finite and positive between distinct probes");
  return r;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  if (!is_suite(cfg.suite)) throw std::invalid_argument("unknown suite: " + cfg.suite);
  if (cfg.count < 0) throw std::invalid_argument("count must be nonnegative");
  SuiteResult out;
  out.report = Report(cfg.suite);
  if (cfg.count == 0) {
    out.warnings.push_back("count 0: no instances run");
    return out;
  }
  if (cfg.suite == "example4") {
    out.report.merge(verify_pauli_example(20, cfg.seed, cfg.tol_iter));
    out.instances = 1;
    if (cfg.count != 1) out.warnings.push_back("example4 is a single instance; count ignored");
    return out;
  }
  for (int k = 0; k < cfg.count; ++k) {
    std::mt19937_64 rng = instance_rng(cfg.seed, static_cast<std::uint64_t>(k));
    Report r;
    if (cfg.suite == "duality") r = duality_instance(rng, cfg);
    else if (cfg.suite == "lemma1") r = lemma1_instance(rng);
    else if (cfg.suite == "prop1") r = prop1_instance(rng, cfg);
    else if (cfg.suite == "prop2") r = prop2_instance(rng, k, cfg);
    else if (cfg.suite == "lemma3") r = lemma3_instance(rng, k, cfg);
    else if (cfg.suite == "prop4") r = prop4_instance(rng, k, cfg);
    else if (cfg.suite == "lemma5") r = lemma5_instance(rng, k, cfg);
    else if (cfg.suite == "theorem4") r = theorem_instance(rng, k, cfg);
    else r = ratio_instance(rng, cfg);
    out.report.merge(r);
    ++out.instances;
  }
  if (cfg.suite == "prop4") {
    if (const Check* c = out.report.find("prop4.qm"); c == nullptr) {
      out.warnings.push_back("no instance met the density hypothesis");
    }
  }
  return out;
}

}  // namespace qmetric
