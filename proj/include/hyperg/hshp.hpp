#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hyperg/duality.hpp"
#include "hyperg/rng.hpp"
#include "hyperg/subobjects.hpp"

namespace hyperg {

/// Black box of the hidden-subhypergroup problem: constant on each coset
/// block, distinct across blocks. `hidden` is kept for post-hoc verification
/// only; the solver never reads it.
struct CosetOracle {
  std::vector<int> labels;  // element -> label id, contiguous from 0
  std::optional<Subhypergroup> hidden;

  int label_count() const;
  int operator()(int x) const { return labels[x]; }
};

CosetOracle make_coset_oracle(const FiniteHypergroup& k, const Subhypergroup& h);

/// Arbitrary label map (e.g. from a file); label ids are compacted.
CosetOracle oracle_from_labels(std::vector<int> labels);

enum class RegisterBasis { Element, Character };

/// Two registers: the first holds |x>' or |rho>' amplitudes (rows), the second
/// the oracle label (columns). Squared norm stays 1 through the run.
struct TwoRegisterState {
  Eigen::MatrixXcd amplitudes;
  RegisterBasis basis = RegisterBasis::Character;
  double norm() const { return amplitudes.norm(); }
};

struct ShotOutcome {
  int label;
  int character;
};

/// One iteration of the sampling circuit, simulated exactly:
///   1. |chi_0>'|0>;
///   2. F^dagger on register 1 (amplitudes sqrt(w{x}/w(K)) on |x>');
///   3. oracle entanglement, projective measurement of register 2
///      (Pr[label_c] = w(c*H)/w(K)), collapse onto the coset;
///   4. F on register 1;
///   5. projective measurement of register 1, returning a character index.
/// Throws NormDrift if any intermediate norm strays from 1 by more than 1e-8.
ShotOutcome run_iteration(const FiniteHypergroup& k, const FourierMatrix& f,
                          const CosetOracle& oracle, RngStream& rng);

/// Analytic step-5 law, no sampling. per_coset[b][r] is the probability of
/// character r given the oracle returned label b:
///   Pr[rho | c] = pi{rho} |sum_{m in c*H} w{m} rho(m)|^2 / w(c*H).
struct DistributionReport {
  std::vector<std::vector<double>> per_coset;
  std::vector<double> coset_probability;  // w(c*H)/w(K)
  std::vector<double> marginal;
  std::vector<bool> support;              // marginal above support_tol
  double off_annihilator_mass = 0.0;      // max per-coset mass outside H-perp
  double max_tv_distance = 0.0;           // max TV distance between coset laws
  double min_annihilator_marginal = 1.0;  // positivity floor over H-perp
};

DistributionReport exact_distribution(const FiniteHypergroup& k, const CharacterTable& table,
                                      const Subhypergroup& h, double support_tol = 1e-10);

/// H_est = { x : |rho(x) - 1| <= value_tol for every sampled rho }, certified
/// closed before return (NotClosed otherwise — retry with more samples).
Subhypergroup reconstruct(const FiniteHypergroup& k, const CharacterTable& table,
                          const std::vector<int>& sampled_characters, double value_tol = 1e-6);

/// Classical post-check: f constant on every block of cosets(K, H) and
/// distinct across blocks, using only the oracle's public evaluation.
bool verify_against_oracle(const FiniteHypergroup& k, const Subhypergroup& candidate,
                           const CosetOracle& oracle);

struct SolvePolicy {
  int batch_size = 0;    // 0 -> 4*ceil(log2 |K|) + 8
  int max_batches = 16;
};

int default_batch_size(int order);

struct HSHPRun {
  std::uint64_t seed = 0;
  SolvePolicy policy;
  int shots = 0;
  std::vector<ShotOutcome> trace;
  std::map<int, int> observed;  // character index -> count
  Subhypergroup reconstructed;
  bool verified = false;
};

/// Batch-and-verify loop: sample a batch (each shot on its own derived RNG
/// stream), reconstruct, stop when the candidate certifies and the oracle
/// check passes. Throws Unresolved after max_batches, carrying the last
/// candidate in the message.
HSHPRun solve_hshp(const FiniteHypergroup& k, const CharacterTable& table, const FourierMatrix& f,
                   const CosetOracle& oracle, std::uint64_t seed, SolvePolicy policy = {});

/// Diagnostic: smallest |rho(x) - 1| over pairs that the reconstruction
/// threshold treats as "not 1" — how much slack the 1e-6 cut has.
double reconstruction_gap(const FiniteHypergroup& k, const CharacterTable& table,
                          double threshold = 1e-6);

}  // namespace hyperg
