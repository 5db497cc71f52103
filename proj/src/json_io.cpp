#include "qmetric/json_io.hpp"

#include <cmath>

namespace qmetric::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int to_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

double to_double(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

Eigen::MatrixXd parse_real_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + " must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = j.at(0).is_array() ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(std::string(what) + " rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = to_double(row.at(static_cast<std::size_t>(c)), what);
  }
  return m;
}

std::vector<double> parse_reals(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(to_double(x, what));
  return v;
}

// Rethrows library validation errors on malformed shapes as input errors.
template <class F>
auto shaped(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const AlgebraMismatch& e) {
    throw InputError(e.what());
  }
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Algebra parse_algebra(const json& j) {
  const json& b = field(j, "blocks");
  if (!b.is_array() || b.empty()) throw InputError("\"blocks\" must be a nonempty array");
  std::vector<int> blocks;
  for (const auto& n : b) {
    const int v = to_int(n, "block size");
    if (v < 1) throw InputError("block sizes must be positive");
    blocks.push_back(v);
  }
  return Algebra(std::move(blocks));
}

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j.at(0).is_number() && j.at(1).is_number()) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
  }
  throw InputError("complex scalar must be a number or [re, im]");
}

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = j.at(0).is_array() ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row.at(static_cast<std::size_t>(c)));
  }
  return m;
}

Element parse_element(const json& j, const Algebra& algebra) {
  if (!j.is_array()) throw InputError("element must be an array");
  if (algebra.is_commutative() && static_cast<int>(j.size()) == algebra.dim() &&
      (j.empty() || !j.at(0).is_array() || (j.at(0).size() == 2 && j.at(0).at(0).is_number()))) {
    Vector v(algebra.dim());
    for (int x = 0; x < algebra.dim(); ++x) v(x) = parse_complex(j.at(static_cast<std::size_t>(x)));
    return Element::from_coordinates(algebra, v);
  }
  if (static_cast<int>(j.size()) != algebra.block_count()) throw InputError("element needs one matrix per block");
  std::vector<Matrix> blocks;
  for (int b = 0; b < algebra.block_count(); ++b) {
    Matrix m = parse_matrix(j.at(static_cast<std::size_t>(b)));
    if (m.rows() != algebra.block_size(b) || m.cols() != algebra.block_size(b)) {
      throw InputError("element block " + std::to_string(b) + " has the wrong size");
    }
    blocks.push_back(std::move(m));
  }
  return Element(algebra, std::move(blocks));
}

State parse_state(const json& j, const Algebra& algebra) {
  if (!j.is_object()) throw InputError("state must be an object");
  try {
    if (j.contains("point")) {
      if (!algebra.is_commutative()) throw InputError("\"point\" states need a commutative algebra");
      const int x = to_int(j.at("point"), "point");
      if (x < 0 || x >= algebra.dim()) throw InputError("point index out of range");
      return point_mass(algebra, x);
    }
    if (j.contains("distribution")) {
      if (!algebra.is_commutative()) throw InputError("\"distribution\" states need a commutative algebra");
      const auto p = parse_reals(j.at("distribution"), "distribution");
      if (static_cast<int>(p.size()) != algebra.dim()) throw InputError("distribution has the wrong length");
      std::vector<Matrix> d;
      for (double v : p) d.push_back(Matrix::Constant(1, 1, v));
      return State(algebra, std::move(d));
    }
    if (j.contains("vector")) {
      const json& v = j.at("vector");
      const int b = to_int(field(v, "block"), "block");
      if (b < 0 || b >= algebra.block_count()) throw InputError("vector state block out of range");
      const json& psi = field(v, "psi");
      if (!psi.is_array() || static_cast<int>(psi.size()) != algebra.block_size(b)) {
        throw InputError("psi has the wrong length");
      }
      Vector x(algebra.block_size(b));
      for (int r = 0; r < x.size(); ++r) x(r) = parse_complex(psi.at(static_cast<std::size_t>(r)));
      if (x.norm() == 0.0) throw InputError("psi must be nonzero");
      return vector_state(algebra, b, x);
    }
    if (j.contains("densities")) {
      const json& d = j.at("densities");
      if (!d.is_array() || static_cast<int>(d.size()) != algebra.block_count()) {
        throw InputError("densities need one matrix per block");
      }
      std::vector<Matrix> ms;
      for (int b = 0; b < algebra.block_count(); ++b) {
        Matrix m = parse_matrix(d.at(static_cast<std::size_t>(b)));
        if (m.rows() != algebra.block_size(b) || m.cols() != algebra.block_size(b)) {
          throw InputError("density block " + std::to_string(b) + " has the wrong size");
        }
        ms.push_back(std::move(m));
      }
      return State(algebra, std::move(ms));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid state: ") + e.what());
  }
  throw InputError("state needs one of \"point\", \"distribution\", \"vector\", \"densities\"");
}

std::vector<State> parse_states(const json& j, const Algebra& algebra) {
  if (!j.is_array()) throw InputError("states must be an array");
  std::vector<State> out;
  for (const auto& s : j) out.push_back(parse_state(s, algebra));
  return out;
}

Seminorm parse_seminorm(const json& j, const Algebra& algebra) {
  const json& k = field(j, "kind");
  if (!k.is_string()) throw InputError("seminorm kind must be a string");
  const std::string kind = k.get<std::string>();
  if (kind == "lipschitz") {
    if (!algebra.is_commutative()) throw InputError("lipschitz seminorm needs a commutative algebra");
    const Eigen::MatrixXd d = parse_real_matrix(field(j, "d"), "d");
    if (d.rows() != algebra.dim() || d.cols() != algebra.dim()) throw InputError("d must be dim x dim");
    return Seminorm::lipschitz(SemiMetricSpace(d));
  }
  if (kind == "group_action") {
    const std::vector<double> lengths = parse_reals(field(j, "lengths"), "lengths");
    if (j.contains("unitaries")) {
      std::vector<Element> us;
      for (const auto& u : j.at("unitaries")) us.push_back(parse_element(u, algebra));
      return Seminorm::group_action(conjugation_action(algebra, us, lengths));
    }
    if (j.contains("permutations")) {
      if (!algebra.is_commutative()) throw InputError("permutation actions need a commutative algebra");
      std::vector<std::vector<int>> perms;
      for (const auto& p : j.at("permutations")) {
        std::vector<int> perm;
        if (!p.is_array()) throw InputError("permutation must be an array");
        for (const auto& x : p) perm.push_back(to_int(x, "permutation entry"));
        perms.push_back(std::move(perm));
      }
      return Seminorm::group_action(permutation_action(algebra.dim(), perms, lengths));
    }
    if (j.contains("automorphisms")) {
      std::vector<StarHomomorphism> gs;
      for (const auto& m : j.at("automorphisms")) {
        Matrix mat = parse_matrix(m);
        if (mat.rows() != algebra.dim() || mat.cols() != algebra.dim()) throw InputError("automorphism must be dim x dim");
        gs.emplace_back(algebra, algebra, std::move(mat));
      }
      return Seminorm::group_action(make_group_action(std::move(gs), lengths));
    }
    throw InputError("group action needs \"unitaries\", \"permutations\" or \"automorphisms\"");
  }
  if (kind == "quotient_norm") {
    NormDescriptor nd;
    const std::string norm = j.value("norm", std::string("operator"));
    if (norm == "operator") {
      nd.kind = NormKind::operator_norm;
    } else if (norm == "weighted_sup" || norm == "weighted_l1") {
      nd.kind = norm == "weighted_sup" ? NormKind::weighted_sup : NormKind::weighted_l1;
      const auto w = parse_reals(field(j, "weights"), "weights");
      if (static_cast<int>(w.size()) != algebra.dim()) throw InputError("weights must have length dim");
      nd.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    } else {
      throw InputError("unknown norm \"" + norm + "\"");
    }
    return Seminorm::quotient_of_norm(algebra, nd);
  }
  if (kind == "state_metric") {
    ProbeSet probes{algebra, parse_states(field(j, "probes"), algebra), {}, 0};
    probes.provenance.assign(probes.size(), Provenance::mixed);
    const Eigen::MatrixXd d = parse_real_matrix(field(j, "d"), "d");
    const auto n = static_cast<Eigen::Index>(probes.size());
    if (d.rows() != n || d.cols() != n) throw InputError("d must be probes x probes");
    return Seminorm::state_metric(StateSemiMetric{std::move(probes), d, Eigen::MatrixXi::Zero(n, n)});
  }
  throw InputError("unknown seminorm kind \"" + kind + "\"");
}

StarHomomorphism parse_homomorphism(const json& j) {
  const Algebra source = parse_algebra(field(j, "source"));
  const Algebra target = parse_algebra(field(j, "target"));
  Matrix m = parse_matrix(field(j, "matrix"));
  if (m.rows() != target.dim() || m.cols() != source.dim()) throw InputError("matrix must be dim(target) x dim(source)");
  return StarHomomorphism(source, target, std::move(m));
}

FamilyDescriptor parse_family(const json& j) {
  const std::string construction = j.value("construction", std::string("general"));
  auto finish = [&](QuantumFamily fam, const Algebra& base_algebra) {
    Seminorm base = parse_seminorm(field(j, "base"), base_algebra);
    std::optional<std::vector<State>> probes;
    if (j.contains("probes")) probes = parse_states(j.at("probes"), fam.parameter());
    return FamilyDescriptor{std::move(fam), std::move(base), std::move(probes)};
  };
  return shaped([&] {
    if (construction == "identity" || construction == "flip") {
      const Algebra a = parse_algebra(field(j, "A"));
      const Algebra c = parse_algebra(field(j, "C"));
      QuantumFamily fam = construction == "identity" ? identity_family(a, c) : flip_family(a, c);
      return finish(std::move(fam), tensor_algebra(a, c));
    }
    if (construction == "homomorphism") {
      const Algebra a = parse_algebra(field(j, "A"));
      const Algebra b = parse_algebra(field(j, "B"));
      Matrix m = parse_matrix(field(j, "phi"));
      if (m.rows() != b.dim() || m.cols() != a.dim()) throw InputError("phi must be dim(B) x dim(A)");
      return finish(homomorphism_family(StarHomomorphism(a, b, std::move(m)).checked()), a);
    }
    if (construction != "general") throw InputError("unknown family construction \"" + construction + "\"");
    const Algebra a = parse_algebra(field(j, "A"));
    const Algebra b = parse_algebra(field(j, "B"));
    const Algebra c = parse_algebra(field(j, "C"));
    const Algebra bc = tensor_algebra(b, c);
    Matrix m = parse_matrix(field(j, "phi"));
    if (m.rows() != bc.dim() || m.cols() != a.dim()) throw InputError("phi must be dim(B ⊗ C) x dim(A)");
    return finish(QuantumFamily(b, c, StarHomomorphism(a, bc, std::move(m))), a);
  });
}

ClassicalFamily parse_classical(const json& j) {
  const Eigen::MatrixXd d0 = parse_real_matrix(field(field(j, "X"), "d0"), "d0");
  if (d0.rows() != d0.cols()) throw InputError("d0 must be square");
  std::optional<SemiMetricSpace> x;
  try {
    x.emplace(d0);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("d0 is not a semi-metric: ") + e.what());
  }
  ClassicalFamily fam{0, 0, *x, {}};
  fam.y_size = to_int(field(j, "Y"), "Y");
  fam.z_size = to_int(field(j, "Z"), "Z");
  const json& f = field(j, "F");
  if (!f.is_array()) throw InputError("F must be an array of rows");
  for (const auto& row : f) {
    std::vector<int> r;
    if (!row.is_array()) throw InputError("F rows must be arrays");
    for (const auto& v : row) r.push_back(to_int(v, "F entry"));
    fam.f.push_back(std::move(r));
  }
  try {
    fam.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return fam;
}

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json to_json(const Complex& z) {
  if (z.imag() == 0.0) return number(z.real());
  return json::array({number(z.real()), number(z.imag())});
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Element& a) {
  json out = json::array();
  for (const auto& b : a.blocks()) out.push_back(to_json(b));
  return out;
}

json to_json(const State& s) {
  json d = json::array();
  for (const auto& m : s.densities()) d.push_back(to_json(m));
  return json{{"densities", std::move(d)}};
}

json to_json(const Check& c) {
  json out{{"id", c.id}, {"passed", c.passed}, {"residual", number(c.residual)},
           {"tolerance", number(c.tolerance)}, {"samples", c.samples}};
  if (!c.note.empty()) out["note"] = c.note;
  if (c.advisory) out["advisory"] = true;
  return out;
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks()) checks.push_back(to_json(c));
  return json{{"subject", r.subject()}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

json to_json(const DistanceResult& r) {
  json w = json::array();
  for (Eigen::Index k = 0; k < r.witness.size(); ++k) w.push_back(number(r.witness(k)));
  json out{{"value", number(r.value)},   {"exact", r.exact},         {"method", to_string(r.method)},
           {"witness", std::move(w)},    {"residual", number(r.residual)}, {"upper", number(r.upper)},
           {"iterations", r.iterations}};
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  return out;
}

}  // namespace qmetric::io
