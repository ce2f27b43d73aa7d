#include "hyperg/bench.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "hyperg/constructions.hpp"
#include "hyperg/duality.hpp"
#include "hyperg/rng.hpp"

namespace hyperg {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd apply_factored(const std::vector<Eigen::MatrixXcd>& factors,
                                const Eigen::VectorXcd& state) {
  Eigen::VectorXcd cur = state;
  Eigen::Index right = state.size();
  Eigen::Index left = 1;
  for (const auto& f : factors) {
    const Eigen::Index n = f.rows();
    right /= n;
    // view as left x n x right, contract the middle index
    Eigen::VectorXcd next(state.size());
    for (Eigen::Index l = 0; l < left; ++l)
      for (Eigen::Index r = 0; r < right; ++r) {
        for (Eigen::Index a = 0; a < n; ++a) {
          std::complex<double> acc = 0.0;
          for (Eigen::Index b = 0; b < n; ++b) acc += f(a, b) * cur[(l * n + b) * right + r];
          next[(l * n + a) * right + r] = acc;
        }
      }
    cur.swap(next);
    left *= n;
  }
  return cur;
}

namespace {

double time_us(const std::function<void()>& fn) {
  using clock = std::chrono::steady_clock;
  // repeat until the total run is long enough to trust, report the mean
  int reps = 1;
  for (;;) {
    auto t0 = clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto dt = std::chrono::duration<double, std::micro>(clock::now() - t0).count();
    if (dt > 20000.0 || reps >= (1 << 20)) return dt / reps;
    reps *= 4;
  }
}

}  // namespace

std::vector<BenchRow> run_transform_bench(int max_k, std::uint64_t seed) {
  const FiniteHypergroup factor = z2_theta(0.5);
  const FourierMatrix f2 = fourier_matrix(factor, character_table(factor));

  std::vector<BenchRow> rows;
  Eigen::MatrixXcd dense = f2.entries;
  for (int k = 1; k <= max_k; ++k) {
    if (k > 1) dense = kron(dense, f2.entries);
    const Eigen::Index dim = dense.rows();

    RngStream rng(RngStream::derive(seed, static_cast<std::uint64_t>(k)));
    Eigen::VectorXcd state(dim);
    for (Eigen::Index i = 0; i < dim; ++i) state[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    state.normalize();

    std::vector<Eigen::MatrixXcd> factors(k, f2.entries);
    Eigen::VectorXcd out_dense, out_fact;
    BenchRow row;
    row.k = k;
    row.dim = static_cast<int>(dim);
    row.dense_us = time_us([&] { out_dense = dense * state; });
    row.factored_us = time_us([&] { out_fact = apply_factored(factors, state); });
    row.max_err = (out_dense - out_fact).cwiseAbs().maxCoeff();
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& os) {
  os << "k,dim,dense_us,factored_us,max_err\n";
  for (const auto& r : rows)
    os << r.k << "," << r.dim << "," << r.dense_us << "," << r.factored_us << "," << r.max_err
       << "\n";
}

int crossover_k(const std::vector<BenchRow>& rows) {
  for (const auto& r : rows)
    if (r.factored_us < r.dense_us) return r.k;
  return -1;
}

}  // namespace hyperg
