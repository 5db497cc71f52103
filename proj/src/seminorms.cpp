#include "qmetric/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

// Agreement tolerance on zero-distance pairs, relative to the element's size.
double agreement_tolerance(double magnitude) { return 1e-12 * std::max(1.0, magnitude); }

bool exactly_self_adjoint(const Element& a) {
  for (const auto& m : a.blocks()) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = r; c < m.cols(); ++c) {
        if (m(r, c) != std::conj(m(c, r))) return false;
      }
    }
  }
  return true;
}

// Minimizes a convex function of one variable on [lo, hi].
template <typename F>
double golden_minimize(F&& f, double lo, double hi, double tol) {
  double c = hi - kGolden * (hi - lo);
  double d = lo + kGolden * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kGolden * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kGolden * (hi - lo);
      fd = f(d);
    }
  }
  return std::min({fc, fd, f(0.5 * (lo + hi))});
}

std::vector<int> adjoint_permutation(const Algebra& alg) {
  std::vector<int> perm(static_cast<std::size_t>(alg.dim()));
  for (int i = 0; i < alg.block_count(); ++i) {
    const int n = alg.block_size(i);
    const int off = alg.offset(i);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) perm[static_cast<std::size_t>(off + r * n + c)] = off + c * n + r;
    }
  }
  return perm;
}

Functional coordinate_functional(int dim, int k) {
  Functional f = Functional::Zero(dim);
  f(k) = 1.0;
  return f;
}

Eigen::MatrixXd stacked_rows(const HermitianFrame& frame, const std::vector<Functional>& fs) {
  Eigen::MatrixXd rows(2 * static_cast<Eigen::Index>(fs.size()), frame.dim());
  Eigen::Index r = 0;
  for (const auto& phi : fs) {
    rows.middleRows(r, 2) = frame.real_rows(phi);
    r += 2;
  }
  return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateSemiMetric

bool StateSemiMetric::all_exact() const {
  return exact.size() == 0 ? false : (exact.array() != 0).all();
}

bool StateSemiMetric::degenerate() const {
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0.0) return false;
    }
  }
  return true;
}

StateSemiMetric StateSemiMetric::scaled(double t) const {
  StateSemiMetric out = *this;
  out.d *= t;
  return out;
}

Report check_state_semimetric(const StateSemiMetric& metric, double tol) {
  return check_semimetric(metric.d, tol);
}

// ---------------------------------------------------------------------------
// Norms

double evaluate_norm(const NormDescriptor& norm, const Element& a) {
  if (norm.kind == NormKind::operator_norm) return a.operator_norm();
  const Vector x = a.coordinates();
  const Eigen::VectorXd w = norm.weights.size() ? norm.weights : Eigen::VectorXd::Ones(x.size());
  if (w.size() != x.size()) throw AlgebraMismatch("norm weights do not match the algebra");
  const Eigen::VectorXd mag = x.cwiseAbs().cwiseProduct(w);
  return norm.kind == NormKind::weighted_sup ? mag.maxCoeff() : mag.sum();
}

double quotient_operator_norm(const Element& a) {
  if (a.is_self_adjoint(1e-13 * std::max(1.0, a.operator_norm()))) {
    double lo = kInf, hi = -kInf;
    for (const auto& m : a.blocks()) {
      const Matrix h = 0.5 * (m + m.adjoint());
      Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
      lo = std::min(lo, es.eigenvalues().minCoeff());
      hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    return 0.5 * (hi - lo);
  }
  const Element one = Element::unit(a.algebra());
  const double r = 2.0 * a.operator_norm();
  auto f = [&](double x, double y) { return (a + Complex(x, y) * one).operator_norm(); };
  return golden_minimize(
      [&](double x) { return golden_minimize([&](double y) { return f(x, y); }, -r, r, 1e-10); },
      -r, r, 1e-10);
}

// ---------------------------------------------------------------------------
// Group actions

GroupAction make_group_action(std::vector<StarHomomorphism> elements, std::vector<double> lengths,
                              double tol) {
  if (elements.empty()) throw std::invalid_argument("group action needs at least one element");
  if (elements.size() != lengths.size()) {
    throw std::invalid_argument("group action: one length per element required");
  }
  GroupAction g{elements.front().source(), {}, std::move(lengths), {}, {}, -1, 0};
  const int n = static_cast<int>(elements.size());
  const int dim = g.algebra.dim();
  for (auto& e : elements) {
    if (!(e.source() == g.algebra) || !(e.target() == g.algebra)) {
      throw std::invalid_argument("group action: every element must map the algebra to itself");
    }
    g.elements.push_back(e.validated() ? e : e.checked(tol));
  }
  auto find = [&](const Matrix& m) {
    for (int k = 0; k < n; ++k) {
      if ((g.elements[static_cast<std::size_t>(k)].matrix() - m).cwiseAbs().maxCoeff() <= tol) {
        return k;
      }
    }
    return -1;
  };
  for (int k = 0; k < n; ++k) {
    if (find(g.elements[static_cast<std::size_t>(k)].matrix()) != k) {
      throw std::invalid_argument("group action: repeated element");
    }
  }
  g.identity = find(Matrix::Identity(dim, dim));
  if (g.identity < 0) throw std::invalid_argument("group action: identity element missing");

  g.product.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  g.inverse.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int k = find(g.elements[static_cast<std::size_t>(a)].matrix() *
                         g.elements[static_cast<std::size_t>(b)].matrix());
      if (k < 0) throw std::invalid_argument("group action: not closed under composition");
      g.product[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = k;
      if (k == g.identity) g.inverse[static_cast<std::size_t>(a)] = b;
    }
  }

  const auto& len = g.lengths;
  const auto at = [&](int k) { return len[static_cast<std::size_t>(k)]; };
  if (at(g.identity) != 0.0) throw std::invalid_argument("length function: l(e) must be 0");
  for (int a = 0; a < n; ++a) {
    if (!std::isfinite(at(a))) throw std::invalid_argument("length function: values must be finite");
    if (a != g.identity && !(at(a) > 0.0)) {
      throw std::invalid_argument("length function: l(g) must be positive for g != e");
    }
    if (std::abs(at(a) - at(g.inverse[static_cast<std::size_t>(a)])) > 1e-12 * std::max(1.0, at(a))) {
      throw std::invalid_argument("length function: l(g) must equal l(g^-1)");
    }
    for (int b = 0; b < n; ++b) {
      const int ab = g.product[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (at(ab) > at(a) + at(b) + 1e-12 * std::max(1.0, at(a) + at(b))) {
        throw std::invalid_argument("length function: subadditivity fails");
      }
    }
  }

  Matrix average = Matrix::Zero(dim, dim);
  for (const auto& e : g.elements) average += e.matrix();
  average /= static_cast<double>(n);
  g.fixed_rank = numerical_rank(average, 1e-8);
  if (g.fixed_rank != 1) {
    throw std::invalid_argument("group action is not ergodic: fixed subspace has dimension " +
                                std::to_string(g.fixed_rank));
  }
  return g;
}

GroupAction conjugation_action(const Algebra& algebra, const std::vector<Element>& unitaries,
                               std::vector<double> lengths) {
  std::vector<StarHomomorphism> maps;
  for (const auto& u : unitaries) {
    if (!(u.algebra() == algebra)) throw AlgebraMismatch("unitary lives on another algebra");
    maps.push_back(conjugation(u));
  }
  return make_group_action(std::move(maps), std::move(lengths));
}

GroupAction permutation_action(int points, const std::vector<std::vector<int>>& permutations,
                               std::vector<double> lengths) {
  const Algebra alg = Algebra::functions_on(points);
  std::vector<StarHomomorphism> maps;
  for (const auto& p : permutations) {
    if (static_cast<int>(p.size()) != points) throw std::invalid_argument("permutation length mismatch");
    Matrix m = Matrix::Zero(points, points);
    std::vector<bool> hit(static_cast<std::size_t>(points), false);
    for (int x = 0; x < points; ++x) {
      const int y = p[static_cast<std::size_t>(x)];
      if (y < 0 || y >= points || hit[static_cast<std::size_t>(y)]) {
        throw std::invalid_argument("not a permutation");
      }
      hit[static_cast<std::size_t>(y)] = true;
      m(y, x) = 1.0;
    }
    maps.emplace_back(alg, alg, m);
  }
  return make_group_action(std::move(maps), std::move(lengths));
}

// ---------------------------------------------------------------------------
// Seminorm

std::string to_string(SeminormKind kind) {
  switch (kind) {
    case SeminormKind::lipschitz:
      return "lipschitz";
    case SeminormKind::group_action:
      return "group_action";
    case SeminormKind::quotient_of_norm:
      return "quotient_of_norm";
    case SeminormKind::state_metric:
      return "state_metric";
  }
  return "unknown";
}

Seminorm Seminorm::lipschitz(SemiMetricSpace space) {
  Seminorm s(SeminormKind::lipschitz, Algebra::functions_on(space.size()));
  s.space_ = std::make_shared<const SemiMetricSpace>(std::move(space));
  return s;
}

Seminorm Seminorm::group_action(GroupAction action) {
  Seminorm s(SeminormKind::group_action, action.algebra);
  const int dim = action.algebra.dim();
  auto disp = std::make_shared<std::vector<Matrix>>();
  for (std::size_t k = 0; k < action.elements.size(); ++k) {
    if (static_cast<int>(k) == action.identity) continue;
    disp->push_back((action.elements[k].matrix() - Matrix::Identity(dim, dim)) / action.lengths[k]);
  }
  s.displacements_ = std::move(disp);
  s.action_ = std::make_shared<const GroupAction>(std::move(action));
  return s;
}

Seminorm Seminorm::quotient_of_norm(Algebra algebra, NormDescriptor norm) {
  if (norm.kind != NormKind::operator_norm) {
    if (norm.weights.size() == 0) norm.weights = Eigen::VectorXd::Ones(algebra.dim());
    if (norm.weights.size() != algebra.dim()) {
      throw std::invalid_argument("norm descriptor: one weight per coordinate required");
    }
    const auto perm = adjoint_permutation(algebra);
    for (int k = 0; k < algebra.dim(); ++k) {
      const double w = norm.weights(k);
      if (!std::isfinite(w) || w <= 0.0) {
        throw std::invalid_argument("norm descriptor: weights must be positive and finite");
      }
      if (w != norm.weights(perm[static_cast<std::size_t>(k)])) {
        throw std::invalid_argument("norm descriptor: weights must be invariant under the adjoint");
      }
    }
  } else {
    norm.weights.resize(0);
  }
  Seminorm s(SeminormKind::quotient_of_norm, std::move(algebra));
  s.norm_ = std::make_shared<const NormDescriptor>(std::move(norm));
  return s;
}

Seminorm Seminorm::state_metric(StateSemiMetric metric) {
  const auto n = static_cast<Eigen::Index>(metric.probes.size());
  if (n == 0) throw std::invalid_argument("state metric: empty probe set");
  if (metric.d.rows() != n || metric.d.cols() != n) {
    throw std::invalid_argument("state metric: distance matrix does not match the probes");
  }
  if (metric.exact.size() == 0) metric.exact = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (metric.d(i, i) != 0.0) throw std::invalid_argument("state metric: nonzero diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = metric.d(i, j);
      if (std::isnan(v) || v < 0.0) throw std::invalid_argument("state metric: negative entry");
      if (v != metric.d(j, i)) throw std::invalid_argument("state metric: not symmetric");
    }
  }
  Seminorm s(SeminormKind::state_metric, metric.probes.algebra);
  const int dim = s.algebra_.dim();
  std::vector<Eigen::RowVectorXcd> rows;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = metric.d(i, j);
      if (v > 0.0 && std::isfinite(v)) {
        rows.push_back((metric.probes.states[static_cast<std::size_t>(i)].functional() -
                        metric.probes.states[static_cast<std::size_t>(j)].functional())
                           .transpose() /
                       v);
      }
    }
  }
  auto p = std::make_shared<Matrix>(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) p->row(static_cast<Eigen::Index>(r)) = rows[r];
  s.pair_rows_ = std::move(p);
  s.metric_ = std::make_shared<const StateSemiMetric>(std::move(metric));
  return s;
}

Seminorm Seminorm::scaled(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("seminorm scale must be positive");
  Seminorm s = *this;
  s.scale_ *= t;
  return s;
}

double Seminorm::operator()(const Element& a) const {
  if (!(a.algebra() == algebra_)) throw AlgebraMismatch("seminorm applied to an element of another algebra");
  double raw = 0.0;
  switch (kind_) {
    case SeminormKind::lipschitz:
      raw = eval_lipschitz(a);
      break;
    case SeminormKind::group_action:
      raw = eval_group_action(a);
      break;
    case SeminormKind::quotient_of_norm:
      raw = eval_quotient(a);
      break;
    case SeminormKind::state_metric:
      raw = eval_state_metric(a);
      break;
  }
  return raw * scale_;
}

double Seminorm::eval_lipschitz(const Element& a) const {
  const int n = space_->size();
  std::vector<Complex> v(static_cast<std::size_t>(n));
  double mag = 0.0;
  for (int x = 0; x < n; ++x) {
    v[static_cast<std::size_t>(x)] = a.value(x);
    mag = std::max(mag, std::abs(v[static_cast<std::size_t>(x)]));
  }
  const double agree = agreement_tolerance(mag);
  double best = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const double diff = std::abs(v[static_cast<std::size_t>(x)] - v[static_cast<std::size_t>(y)]);
      const double dxy = (*space_)(x, y);
      if (dxy == 0.0) {
        if (diff > agree) return kInf;
      } else {
        best = std::max(best, diff / dxy);
      }
    }
  }
  return best;
}

// Group-action and state-metric values are maxima of quantities that agree under
// a -> a* in exact arithmetic; taking the max over both makes axiom (a) hold exactly.
double Seminorm::eval_group_action(const Element& a) const {
  auto raw = [&](const Vector& x) {
    double best = 0.0;
    for (const auto& m : *displacements_) {
      best = std::max(best, Element::from_coordinates(algebra_, m * x).operator_norm());
    }
    return best;
  };
  const double v = raw(a.coordinates());
  return exactly_self_adjoint(a) ? v : std::max(v, raw(a.adjoint().coordinates()));
}

double Seminorm::eval_state_metric(const Element& a) const {
  if (pair_rows_->rows() == 0) return 0.0;
  auto raw = [&](const Vector& x) { return (*pair_rows_ * x).cwiseAbs().maxCoeff(); };
  const double v = raw(a.coordinates());
  return exactly_self_adjoint(a) ? v : std::max(v, raw(a.adjoint().coordinates()));
}

// inf over lambda is approached from above by the search; min over a and a* keeps
// the value adjoint-invariant.
double Seminorm::eval_quotient(const Element& a) const {
  const NormDescriptor& nd = *norm_;
  const Element one = Element::unit(algebra_);
  const double n_one = evaluate_norm(nd, one);
  auto search = [&](const Element& x) {
    const double nx = evaluate_norm(nd, x);
    if (nx == 0.0) return 0.0;
    const double r = std::max(x.operator_norm() + nx, 2.0 * nx / n_one);
    if (exactly_self_adjoint(x)) {
      if (nd.kind == NormKind::operator_norm) return quotient_operator_norm(x);
      return golden_minimize([&](double t) { return evaluate_norm(nd, x + Complex(t, 0.0) * one); },
                             -r, r, 1e-10);
    }
    auto f = [&](double re, double im) { return evaluate_norm(nd, x + Complex(re, im) * one); };
    return golden_minimize(
        [&](double re) { return golden_minimize([&](double im) { return f(re, im); }, -r, r, 1e-10); },
        -r, r, 1e-10);
  };
  const double v = search(a);
  return exactly_self_adjoint(a) ? v : std::min(v, search(a.adjoint()));
}

std::vector<Functional> Seminorm::domain_constraints() const {
  std::vector<Functional> out;
  if (kind_ == SeminormKind::lipschitz) {
    const int n = space_->size();
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        if ((*space_)(x, y) == 0.0) {
          out.push_back(coordinate_functional(n, x) - coordinate_functional(n, y));
        }
      }
    }
  } else if (kind_ == SeminormKind::state_metric) {
    const auto& st = metric_->probes.states;
    for (std::size_t i = 0; i < st.size(); ++i) {
      for (std::size_t j = i + 1; j < st.size(); ++j) {
        if (metric_->d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 0.0) {
          out.push_back(st[i].functional() - st[j].functional());
        }
      }
    }
  }
  return out;
}

std::vector<Functional> Seminorm::kernel_functionals() const {
  std::vector<Functional> out;
  const int dim = algebra_.dim();
  switch (kind_) {
    case SeminormKind::lipschitz: {
      const int n = space_->size();
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          if ((*space_)(x, y) > 0.0) out.push_back(coordinate_functional(n, x) - coordinate_functional(n, y));
        }
      }
      break;
    }
    case SeminormKind::group_action:
      for (const auto& m : *displacements_) {
        for (int k = 0; k < dim; ++k) out.push_back(m.row(k).transpose());
      }
      break;
    case SeminormKind::quotient_of_norm:
      for (int k = 0; k < dim; ++k) out.push_back(coordinate_functional(dim, k));
      break;
    case SeminormKind::state_metric:
      for (Eigen::Index r = 0; r < pair_rows_->rows(); ++r) out.push_back(pair_rows_->row(r).transpose());
      break;
  }
  return out;
}

bool Seminorm::in_domain(const Element& a, double tol) const {
  if (!(a.algebra() == algebra_)) return false;
  const double scale = std::max(1.0, a.operator_norm());
  for (const auto& phi : domain_constraints()) {
    if (std::abs(evaluate(phi, a)) > tol * scale) return false;
  }
  return std::isfinite((*this)(a));
}

std::optional<TransportForm> Seminorm::transport_form() const {
  if (kind_ == SeminormKind::lipschitz) {
    const int n = space_->size();
    return TransportForm{Eigen::MatrixXd::Identity(n, n), space_->matrix() / scale_, true};
  }
  if (kind_ == SeminormKind::state_metric && algebra_.is_commutative()) {
    const auto& st = metric_->probes.states;
    const int n = algebra_.dim();
    Eigen::MatrixXd p(static_cast<Eigen::Index>(st.size()), n);
    for (std::size_t i = 0; i < st.size(); ++i) {
      for (int x = 0; x < n; ++x) p(static_cast<Eigen::Index>(i), x) = st[i].density(x)(0, 0).real();
    }
    bool point_masses = true;
    for (auto prov : metric_->probes.provenance) point_masses = point_masses && prov == Provenance::extreme;
    return TransportForm{std::move(p), metric_->d / scale_, point_masses};
  }
  return std::nullopt;
}

bool Seminorm::exact() const {
  if (kind_ != SeminormKind::state_metric) return true;
  if (!algebra_.is_commutative() || !metric_->all_exact()) return false;
  const auto& probes = metric_->probes;
  if (probes.size() != static_cast<std::size_t>(algebra_.dim()) || !probes.has_all_point_masses()) return false;
  return std::all_of(probes.provenance.begin(), probes.provenance.end(),
                     [](Provenance p) { return p == Provenance::extreme; });
}

namespace {

struct Extreme {
  double value = 0.0;
  int block = -1;
  Vector vec;
};

// Eigenpair of a self-adjoint element with the lowest or highest eigenvalue, or the
// largest modulus.
enum class Pick { lowest, highest, modulus };
Extreme extreme_eigenpair(const Element& h, Pick pick) {
  Extreme best;
  bool first = true;
  for (int b = 0; b < h.algebra().block_count(); ++b) {
    const Matrix m = 0.5 * (h.block(b) + h.block(b).adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double v = es.eigenvalues()(k);
      const bool better = first || (pick == Pick::lowest && v < best.value) ||
                          (pick == Pick::highest && v > best.value) ||
                          (pick == Pick::modulus && std::abs(v) > std::abs(best.value));
      if (better) {
        best = {v, b, es.eigenvectors().col(k)};
        first = false;
      }
    }
  }
  return best;
}

// The functional x -> <v, x v> on the block holding v.
Functional vector_functional(const Algebra& alg, const Extreme& e) {
  Functional w = Functional::Zero(alg.dim());
  const int n = alg.block_size(e.block);
  const int off = alg.offset(e.block);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) w(off + r * n + c) = std::conj(e.vec(r)) * e.vec(c);
  }
  return w;
}

}  // namespace

std::optional<Functional> Seminorm::support(const Element& u) const {
  const int dim = algebra_.dim();
  Functional s = Functional::Zero(dim);
  switch (kind_) {
    case SeminormKind::lipschitz: {
      double best = 0.0;
      const int n = space_->size();
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          const double dxy = (*space_)(x, y);
          if (dxy == 0.0) continue;
          const double diff = u.value(x).real() - u.value(y).real();
          if (std::abs(diff) / dxy > best) {
            best = std::abs(diff) / dxy;
            s.setZero();
            s(x) = (diff > 0 ? 1.0 : -1.0) / dxy;
            s(y) = -s(x);
          }
        }
      }
      break;
    }
    case SeminormKind::state_metric: {
      if (pair_rows_->rows() == 0) break;
      const Eigen::VectorXd vals = (*pair_rows_ * u.coordinates()).real();
      Eigen::Index k = 0;
      vals.cwiseAbs().maxCoeff(&k);
      s = pair_rows_->row(k).transpose() * (vals(k) >= 0 ? 1.0 : -1.0);
      break;
    }
    case SeminormKind::group_action: {
      const Vector x = u.coordinates();
      double best = -1.0;
      for (const auto& m : *displacements_) {
        const Element h = Element::from_coordinates(algebra_, m * x);
        const Extreme e = extreme_eigenpair(h, Pick::modulus);
        if (std::abs(e.value) > best) {
          best = std::abs(e.value);
          s = m.transpose() * vector_functional(algebra_, e) * (e.value >= 0 ? 1.0 : -1.0);
        }
      }
      break;
    }
    case SeminormKind::quotient_of_norm: {
      if (norm_->kind != NormKind::operator_norm) return std::nullopt;
      const Extreme hi = extreme_eigenpair(u, Pick::highest);
      const Extreme lo = extreme_eigenpair(u, Pick::lowest);
      s = 0.5 * (vector_functional(algebra_, hi) - vector_functional(algebra_, lo));
      break;
    }
  }
  return s * scale_;
}

// ---------------------------------------------------------------------------
// Domain geometry and the radius certificate

Eigen::MatrixXd domain_directions(const Seminorm& seminorm) {
  const HermitianFrame frame(seminorm.algebra());
  return null_space(stacked_rows(frame, seminorm.domain_constraints()), frame.dim());
}

Eigen::MatrixXd quotient_domain_directions(const Seminorm& seminorm) {
  return quotient_directions(HermitianFrame(seminorm.algebra()), seminorm.domain_constraints());
}

int kernel_nullity(const Seminorm& seminorm) {
  const HermitianFrame frame(seminorm.algebra());
  std::vector<Functional> fs = seminorm.domain_constraints();
  const auto ker = seminorm.kernel_functionals();
  fs.insert(fs.end(), ker.begin(), ker.end());
  fs.push_back(trace_functional(seminorm.algebra()));
  return static_cast<int>(null_space(stacked_rows(frame, fs), frame.dim()).cols());
}

Element random_domain_element(const Seminorm& seminorm, std::mt19937_64& rng) {
  const HermitianFrame frame(seminorm.algebra());
  const Eigen::MatrixXd dirs = domain_directions(seminorm);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd re(dirs.cols()), im(dirs.cols());
  for (Eigen::Index k = 0; k < dirs.cols(); ++k) {
    re(k) = gauss(rng);
    im(k) = gauss(rng);
  }
  const Vector x = frame.embedding() * (dirs * re).cast<Complex>() +
                   Complex(0.0, 1.0) * (frame.embedding() * (dirs * im).cast<Complex>());
  return Element::from_coordinates(seminorm.algebra(), x);
}

RadiusResult seminorm_radius(const Seminorm& seminorm, const RatioOptions& options) {
  RadiusResult out;
  const int nullity = kernel_nullity(seminorm);
  if (nullity > 0) {
    out.value = kInf;
    out.diagnostic = "seminorm vanishes on " + std::to_string(nullity) +
                     " nonscalar domain direction(s); axiom (b) fails";
    return out;
  }
  const HermitianFrame frame(seminorm.algebra());
  const Eigen::MatrixXd q = quotient_domain_directions(seminorm);
  const int k = static_cast<int>(q.cols());
  out.certified = true;
  if (k == 0) {
    out.diagnostic = "domain is the scalars";
    return out;
  }
  const auto objective = [&](const Eigen::VectorXd& y) {
    const Element u = frame.element(q * y);
    const double l = seminorm(u);
    const double qn = quotient_operator_norm(u);
    if (!(l > 0.0)) return qn > 1e-12 ? kInf : 0.0;
    return qn / l;
  };
  const RatioSearch search = maximize_ratio(k, objective, options);
  out.value = search.value;
  out.witness = q * search.best;
  out.certified = !search.unbounded && std::isfinite(search.value);
  out.diagnostic = search.diagnostic;
  return out;
}

Report check_qsm_axioms(const Seminorm& seminorm, const QsmOptions& options, RadiusResult* radius) {
  Report report("qsm:" + to_string(seminorm.kind()));
  std::mt19937_64 rng(options.seed);
  const HermitianFrame frame(seminorm.algebra());
  const Eigen::MatrixXd dirs = domain_directions(seminorm);

  std::vector<Element> samples;
  for (Eigen::Index k = 0; k < dirs.cols(); ++k) samples.push_back(frame.element(dirs.col(k)));
  for (int s = 0; s < options.samples; ++s) samples.push_back(random_domain_element(seminorm, rng));
  double res_a = 0.0;
  for (const auto& a : samples) {
    const double la = seminorm(a);
    const double lb = seminorm(a.adjoint());
    if (std::isinf(la) || std::isinf(lb)) {
      if (la != lb) res_a = kInf;
      continue;
    }
    res_a = std::max(res_a, std::abs(la - lb) / std::max(1.0, la));
  }
  report.add("qsm.a", res_a, options.tolerance, samples.size(), "L(a) = L(a*)");

  const int nullity = kernel_nullity(seminorm);
  report.add("qsm.b", nullity, 0.0, 1, "nonscalar null directions of L on the domain");
  report.add("qsm.b.unit", seminorm(Element::unit(seminorm.algebra())), options.tolerance, 1, "L(1) = 0");

  RadiusResult r = seminorm_radius(seminorm, options.ratio);
  report.add_flag("qsm.c", r.certified,
                  r.certified ? "radius " + std::to_string(r.value) : r.diagnostic);
  if (radius) *radius = std::move(r);
  const bool qm = dirs.cols() == seminorm.algebra().dim();
  report.add_advisory("qm", qm, qm ? "domain spans the algebra" : "domain is a proper subspace");
  return report;
}

QsmStructure make_qsm(Seminorm seminorm, const QsmOptions& options) {
  RadiusResult r;
  Report rep = check_qsm_axioms(seminorm, options, &r);
  const bool qm = rep.find("qm")->passed;
  bool degenerate = false;
  if (seminorm.kind() == SeminormKind::state_metric) {
    degenerate = seminorm.metric()->degenerate();
  } else if (seminorm.kind() == SeminormKind::lipschitz) {
    degenerate = seminorm.space()->diameter() == 0.0;
  }
  return QsmStructure{std::move(seminorm), r.value, qm, degenerate, std::move(rep)};
}

}  // namespace qmetric
