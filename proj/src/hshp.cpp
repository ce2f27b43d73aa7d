#include "hyperg/hshp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hyperg {

namespace {

using Cx = std::complex<double>;

constexpr double kNormDriftTol = 1e-8;

void check_norm(const TwoRegisterState& s, const char* stage) {
  const double drift = std::abs(s.norm() - 1.0);
  if (drift > kNormDriftTol)
    throw HyperError(Errc::NormDrift,
                     std::string(stage) + ": state norm drifted by " + std::to_string(drift));
}

}  // namespace

int CosetOracle::label_count() const {
  int m = 0;
  for (int l : labels) m = std::max(m, l + 1);
  return m;
}

CosetOracle make_coset_oracle(const FiniteHypergroup& k, const Subhypergroup& h) {
  CosetPartition part = cosets(k, h);
  CosetOracle o;
  o.labels = part.block_of;
  o.hidden = h;
  return o;
}

CosetOracle oracle_from_labels(std::vector<int> labels) {
  std::map<int, int> compact;
  for (int l : labels) compact.try_emplace(l, static_cast<int>(compact.size()));
  CosetOracle o;
  o.labels.reserve(labels.size());
  for (int l : labels) o.labels.push_back(compact[l]);
  return o;
}

ShotOutcome run_iteration(const FiniteHypergroup& k, const FourierMatrix& f,
                          const CosetOracle& oracle, RngStream& rng) {
  const int n = k.order();
  if (static_cast<int>(oracle.labels.size()) != n)
    throw std::invalid_argument("oracle must be defined on all of K");
  const int nlabels = oracle.label_count();

  // step 1: |chi_0>'|0>
  TwoRegisterState s;
  s.basis = RegisterBasis::Character;
  s.amplitudes = Eigen::MatrixXcd::Zero(n, nlabels);
  s.amplitudes(0, 0) = 1.0;
  check_norm(s, "prepare");

  // step 2: F^dagger on register 1
  s.amplitudes = f.entries.adjoint() * s.amplitudes;
  s.basis = RegisterBasis::Element;
  check_norm(s, "inverse transform");

  // step 3: oracle writes f(x) into register 2 (register 2 was |0>, so the
  // amplitude of |x>|0> moves to |x>|f(x)>), then register 2 is measured
  {
    Eigen::MatrixXcd entangled = Eigen::MatrixXcd::Zero(n, nlabels);
    for (int x = 0; x < n; ++x) entangled(x, oracle(x)) = s.amplitudes(x, 0);
    s.amplitudes = std::move(entangled);
  }
  check_norm(s, "oracle");

  std::vector<double> label_prob(nlabels, 0.0);
  for (int l = 0; l < nlabels; ++l)
    for (int x = 0; x < n; ++x) label_prob[l] += std::norm(s.amplitudes(x, l));
  const int label = sample_index(label_prob, rng);

  // collapse: keep the measured column, renormalize
  {
    Eigen::MatrixXcd collapsed = Eigen::MatrixXcd::Zero(n, 1);
    const double scale = 1.0 / std::sqrt(label_prob[label]);
    for (int x = 0; x < n; ++x) collapsed(x, 0) = s.amplitudes(x, label) * scale;
    s.amplitudes = std::move(collapsed);
  }
  check_norm(s, "collapse");

  // step 4: F on register 1
  s.amplitudes = f.entries * s.amplitudes;
  s.basis = RegisterBasis::Character;
  check_norm(s, "forward transform");

  // step 5: measure register 1
  std::vector<double> char_prob(n, 0.0);
  for (int r = 0; r < n; ++r) char_prob[r] = std::norm(s.amplitudes(r, 0));
  const int character = sample_index(char_prob, rng);
  return {label, character};
}

DistributionReport exact_distribution(const FiniteHypergroup& k, const CharacterTable& table,
                                      const Subhypergroup& h, double support_tol) {
  CosetPartition part = cosets(k, h);
  Annihilator ann = annihilator(k, table, h);
  std::set<int> in_ann(ann.characters.begin(), ann.characters.end());
  const int nblocks = static_cast<int>(part.blocks.size());
  const int nchar = table.order();

  DistributionReport rep;
  rep.per_coset.assign(nblocks, std::vector<double>(nchar, 0.0));
  rep.coset_probability.resize(nblocks);
  rep.marginal.assign(nchar, 0.0);
  for (int b = 0; b < nblocks; ++b) {
    rep.coset_probability[b] = part.block_mass[b] / k.haar_total();
    for (int r = 0; r < nchar; ++r) {
      Cx sum = 0.0;
      for (int m : part.blocks[b]) sum += k.haar(m) * table.value(r, m);
      rep.per_coset[b][r] = table.plancherel[r] * std::norm(sum) / part.block_mass[b];
      if (!in_ann.count(r)) rep.off_annihilator_mass = std::max(rep.off_annihilator_mass, rep.per_coset[b][r]);
      rep.marginal[r] += rep.coset_probability[b] * rep.per_coset[b][r];
    }
  }
  for (int a = 0; a < nblocks; ++a)
    for (int b = a + 1; b < nblocks; ++b) {
      double tv = 0.0;
      for (int r = 0; r < nchar; ++r) tv += std::abs(rep.per_coset[a][r] - rep.per_coset[b][r]);
      rep.max_tv_distance = std::max(rep.max_tv_distance, 0.5 * tv);
    }
  rep.support.resize(nchar);
  for (int r = 0; r < nchar; ++r) rep.support[r] = rep.marginal[r] > support_tol;
  for (int r : ann.characters) rep.min_annihilator_marginal = std::min(rep.min_annihilator_marginal, rep.marginal[r]);
  return rep;
}

Subhypergroup reconstruct(const FiniteHypergroup& k, const CharacterTable& table,
                          const std::vector<int>& sampled_characters, double value_tol) {
  if (sampled_characters.empty()) throw std::invalid_argument("no samples to reconstruct from");
  std::set<int> unique(sampled_characters.begin(), sampled_characters.end());
  std::vector<int> members;
  for (int x = 0; x < k.order(); ++x) {
    bool fixed = true;
    for (int r : unique)
      if (std::abs(table.value(r, x) - 1.0) > value_tol) {
        fixed = false;
        break;
      }
    if (fixed) members.push_back(x);
  }
  return certify_subhypergroup(k, std::move(members));
}

bool verify_against_oracle(const FiniteHypergroup& k, const Subhypergroup& candidate,
                           const CosetOracle& oracle) {
  CosetPartition part;
  try {
    part = cosets(k, candidate);
  } catch (const HyperError&) {
    return false;
  }
  std::set<int> block_labels;
  for (const auto& block : part.blocks) {
    const int l = oracle(block.front());
    for (int x : block)
      if (oracle(x) != l) return false;  // not constant on a coset
    if (!block_labels.insert(l).second) return false;  // repeated label across cosets
  }
  return true;
}

int default_batch_size(int order) {
  int bits = 0;
  while ((1 << bits) < order) ++bits;  // ceil(log2)
  return 4 * bits + 8;
}

HSHPRun solve_hshp(const FiniteHypergroup& k, const CharacterTable& table, const FourierMatrix& f,
                   const CosetOracle& oracle, std::uint64_t seed, SolvePolicy policy) {
  if (policy.batch_size <= 0) policy.batch_size = default_batch_size(k.order());
  HSHPRun run;
  run.seed = seed;
  run.policy = policy;

  std::vector<int> samples;
  for (int batch = 0; batch < policy.max_batches; ++batch) {
    for (int i = 0; i < policy.batch_size; ++i) {
      RngStream shot_rng(RngStream::derive(seed, static_cast<std::uint64_t>(run.shots)));
      ShotOutcome out = run_iteration(k, f, oracle, shot_rng);
      run.trace.push_back(out);
      run.observed[out.character]++;
      samples.push_back(out.character);
      run.shots++;
    }
    Subhypergroup candidate;
    try {
      candidate = reconstruct(k, table, samples);
    } catch (const HyperError& e) {
      if (e.code() == Errc::NotClosed) continue;  // not enough samples yet
      throw;
    }
    if (verify_against_oracle(k, candidate, oracle)) {
      run.reconstructed = std::move(candidate);
      run.verified = true;
      return run;
    }
    run.reconstructed = std::move(candidate);
  }
  std::string members = "{";
  for (std::size_t i = 0; i < run.reconstructed.members.size(); ++i)
    members += (i ? "," : "") + std::to_string(run.reconstructed.members[i]);
  members += "}";
  throw HyperError(Errc::Unresolved, "verification failed after " + std::to_string(run.shots) +
                                         " shots; last candidate " + members);
}

double reconstruction_gap(const FiniteHypergroup& k, const CharacterTable& table, double threshold) {
  double gap = 2.0;
  for (int r = 0; r < table.order(); ++r)
    for (int x = 0; x < k.order(); ++x) {
      const double d = std::abs(table.value(r, x) - 1.0);
      if (d > threshold) gap = std::min(gap, d);
    }
  return gap;
}

}  // namespace hyperg
