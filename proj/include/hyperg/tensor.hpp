#pragma once

#include <vector>

namespace hyperg {

/// Dense structure-constant tensor n[i][j][k] of a finite hypergroup:
/// delta_i * delta_j = sum_k n[i][j][k] delta_k. Entries are probabilities,
/// so every (i,j) row is nonnegative and sums to 1.
struct StructureTensor {
  int order = 0;                   // number of elements
  std::vector<double> constants;   // order^3, layout (i*order + j)*order + k

  StructureTensor() = default;
  explicit StructureTensor(int n) : order(n), constants(static_cast<std::size_t>(n) * n * n, 0.0) {}

  double& at(int i, int j, int k) {
    return constants[(static_cast<std::size_t>(i) * order + j) * order + k];
  }
  double at(int i, int j, int k) const {
    return constants[(static_cast<std::size_t>(i) * order + j) * order + k];
  }
};

/// Finitely additive measure on the element set; weights[x] = mu{x}.
struct Measure {
  std::vector<double> weights;

  Measure() = default;
  explicit Measure(int order) : weights(order, 0.0) {}

  static Measure delta(int order, int x) {
    Measure m(order);
    m.weights[x] = 1.0;
    return m;
  }

  double total() const;
  bool is_probability(double tol = 1e-9) const;
};

}  // namespace hyperg
