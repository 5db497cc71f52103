#pragma once

#include <vector>

#include "qmetric/states.hpp"

namespace testing_support {

inline qmetric::State distribution(const qmetric::Algebra& algebra, const std::vector<double>& p) {
  std::vector<qmetric::Matrix> d;
  for (double w : p) d.push_back(qmetric::Matrix::Constant(1, 1, w));
  return qmetric::State(algebra, std::move(d));
}

inline qmetric::Matrix pauli(char which) {
  const qmetric::Complex i(0.0, 1.0);
  qmetric::Matrix m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -i, i, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1;
  }
  return m;
}

}  // namespace testing_support
