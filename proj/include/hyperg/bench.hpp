#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <ostream>
#include <vector>

namespace hyperg {

/// Applies a Kronecker product of factor matrices to a state vector by
/// contracting one mode at a time: O(N * sum n_i) instead of O(N^2).
Eigen::VectorXcd apply_factored(const std::vector<Eigen::MatrixXcd>& factors,
                                const Eigen::VectorXcd& state);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct BenchRow {
  int k = 0;          // number of tensor factors
  int dim = 0;        // state dimension
  double dense_us = 0.0;
  double factored_us = 0.0;
  double max_err = 0.0;  // |dense - factored| on the benchmark state
};

/// Times dense vs factored application of the transform of the k-fold product
/// of the theta=1/2 order-2 hypergroup, k = 1..max_k, on a seeded random unit
/// state. Reports medians over enough repeats to be stable.
std::vector<BenchRow> run_transform_bench(int max_k, std::uint64_t seed);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& os);

/// Smallest k where the factored path wins, or -1.
int crossover_k(const std::vector<BenchRow>& rows);

}  // namespace hyperg
