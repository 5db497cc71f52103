#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmetric/classical.hpp"
#include "qmetric/duality.hpp"
#include "qmetric/family.hpp"
#include "qmetric/report.hpp"

namespace qmetric::io {

using json = nlohmann::json;

/// Malformed or schema-violating input (as opposed to a mathematically invalid object).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text; throws InputError with the parser message.
json parse(const std::string& text);

/// {"blocks": [n1, ...]}.
Algebra parse_algebra(const json& j);
/// Complex scalar: a number or [re, im].
Complex parse_complex(const json& j);
/// Rows of complex scalars.
Matrix parse_matrix(const json& j);
/// One matrix per block; a flat array of scalars is accepted for commutative algebras.
Element parse_element(const json& j, const Algebra& algebra);
/// {"point": x} | {"distribution": [p...]} | {"vector": {"block": i, "psi": [...]}} |
/// {"densities": [matrix per block]}.
State parse_state(const json& j, const Algebra& algebra);
std::vector<State> parse_states(const json& j, const Algebra& algebra);

/// {"kind": "lipschitz", "d": [[...]]}
/// {"kind": "group_action", "unitaries" | "permutations" | "automorphisms": [...], "lengths": [...]}
/// {"kind": "quotient_norm", "norm": "operator" | "weighted_sup" | "weighted_l1", "weights": [...]}
/// {"kind": "state_metric", "probes": [states], "d": [[...]]}
Seminorm parse_seminorm(const json& j, const Algebra& algebra);

/// {"source": algebra, "target": algebra, "matrix": dim(target) x dim(source)}. Not validated.
StarHomomorphism parse_homomorphism(const json& j);

struct FamilyDescriptor {
  QuantumFamily family;
  Seminorm base;
  std::optional<std::vector<State>> probes;
};

/// {"construction": "general", "A", "B", "C", "phi", "base"} or
/// {"construction": "identity" | "flip", "A", "C", "base" on A ⊗ C} or
/// {"construction": "homomorphism", "A", "B", "phi", "base"}; optional "probes" on C.
/// Throws std::invalid_argument when phi is not a *-homomorphism.
FamilyDescriptor parse_family(const json& j);

/// {"X": {"d0": [[...]]}, "Y": m, "Z": n, "F": [[x index per (y, z)]]}.
ClassicalFamily parse_classical(const json& j);

/// Finite numbers as numbers; +-inf and nan as strings.
json number(double v);
json to_json(const Complex& z);
json to_json(const Matrix& m);
json to_json(const Eigen::MatrixXd& m);
json to_json(const Element& a);
json to_json(const State& s);
json to_json(const Check& c);
json to_json(const Report& r);
json to_json(const DistanceResult& r);

}  // namespace qmetric::io
