#include "hyperg/hypergroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace hyperg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::DegenerateHaar: return "DegenerateHaar";
    case Errc::NotCommutative: return "NotCommutative";
    case Errc::CharacterDefect: return "CharacterDefect";
    case Errc::NonOrthogonal: return "NonOrthogonal";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotStrong: return "NotStrong";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::NotClosed: return "NotClosed";
    case Errc::EquivalenceFailure: return "EquivalenceFailure";
    case Errc::ParamOutOfRange: return "ParamOutOfRange";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::NormDrift: return "NormDrift";
    case Errc::Unresolved: return "Unresolved";
    case Errc::BadDocument: return "BadDocument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Negativity: return "Negativity";
    case Axiom::RowSum: return "RowSum";
    case Axiom::Identity: return "Identity";
    case Axiom::InvolutionSupport: return "InvolutionSupport";
    case Axiom::InvolutionAntihomomorphism: return "InvolutionAntihomomorphism";
    case Axiom::Associativity: return "Associativity";
  }
  return "Unknown";
}

double Measure::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

bool Measure::is_probability(double tol) const {
  for (double w : weights)
    if (w < -tol) return false;
  return std::abs(total() - 1.0) <= tol;
}

std::string AxiomViolationReport::summary(std::size_t max_lines) const {
  std::string out;
  char buf[160];
  std::size_t shown = 0;
  for (const auto& v : violations) {
    if (shown++ == max_lines) {
      std::snprintf(buf, sizeof(buf), "... and %zu more", violations.size() - max_lines);
      out += buf;
      break;
    }
    std::snprintf(buf, sizeof(buf), "%s at (%d,%d,%d) residual=%.3e\n", axiom_name(v.kind),
                  v.where[0], v.where[1], v.where[2], v.residual);
    out += buf;
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

ValidationResult validate(const StructureTensor& tensor, const std::vector<int>& involution,
                          std::string name, const ValidateOptions& opts) {
  const int n = tensor.order;
  if (n <= 0 || tensor.constants.size() != static_cast<std::size_t>(n) * n * n)
    throw std::invalid_argument("structure tensor has inconsistent dimensions");
  if (involution.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("involution size does not match tensor order");
  {
    std::vector<char> seen(n, 0);
    for (int x : involution) {
      if (x < 0 || x >= n || seen[x]) throw std::invalid_argument("involution is not a permutation");
      seen[x] = 1;
    }
    for (int x = 0; x < n; ++x)
      if (involution[involution[x]] != x) throw std::invalid_argument("involution is not self-inverse");
  }

  const double tol = opts.tol;
  ValidationResult res;
  auto flag = [&](Axiom a, int i, int j, int k, double r) {
    res.report.violations.push_back({a, {i, j, k}, r});
  };

  StructureTensor t = tensor;  // clamped copy
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double& v = t.at(i, j, k);
        if (v < 0.0) {
          if (v > -tol)
            v = 0.0;
          else
            flag(Axiom::Negativity, i, j, k, -v);
        }
      }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += t.at(i, j, k);
      if (std::abs(s - 1.0) > tol) flag(Axiom::RowSum, i, j, -1, std::abs(s - 1.0));
    }

  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double want = (i == k) ? 1.0 : 0.0;
      double r = std::max(std::abs(t.at(0, i, k) - want), std::abs(t.at(i, 0, k) - want));
      if (r > tol) flag(Axiom::Identity, i, k, -1, r);
    }

  // n[i][j][0] != 0 exactly when j = ibar
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double m = t.at(i, j, 0);
      if (involution[i] == j) {
        if (m <= tol) flag(Axiom::InvolutionSupport, i, j, 0, m);
      } else if (m > tol) {
        flag(Axiom::InvolutionSupport, i, j, 0, m);
      }
    }

  // (delta_i * delta_j)bar = delta_jbar * delta_ibar
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double r = std::abs(t.at(i, j, k) - t.at(involution[j], involution[i], involution[k]));
        if (r > tol) {
          flag(Axiom::InvolutionAntihomomorphism, i, j, k, r);
          goto anti_done;  // one witness is enough; full scan would flood the report
        }
      }
anti_done:

  // (delta_i*delta_j)*delta_k == delta_i*(delta_j*delta_k); not part of the
  // short axiom list but required for the algebra to exist at all.
  {
    double worst = 0.0;
    std::array<int, 3> at = {-1, -1, -1};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int z = 0; z < n; ++z) {
            double lhs = 0.0, rhs = 0.0;
            for (int m = 0; m < n; ++m) {
              lhs += t.at(i, j, m) * t.at(m, k, z);
              rhs += t.at(j, k, m) * t.at(i, m, z);
            }
            double r = std::abs(lhs - rhs);
            if (r > worst) {
              worst = r;
              at = {i, j, k};
            }
          }
    if (worst > tol) flag(Axiom::Associativity, at[0], at[1], at[2], worst);
  }

  if (!res.report.ok()) return res;

  FiniteHypergroup k;
  k.tensor_ = std::move(t);
  k.involution_ = involution;
  k.name_ = std::move(name);
  k.haar_.resize(n);
  for (int x = 0; x < n; ++x) {
    const double p = k.tensor_.at(involution[x], x, 0);
    if (p <= tol)
      throw HyperError(Errc::DegenerateHaar, "(delta_xbar*delta_x){e} vanishes at x=" + std::to_string(x));
    k.haar_[x] = 1.0 / p;
  }
  k.haar_total_ = 0.0;
  for (double w : k.haar_) k.haar_total_ += w;
  res.hypergroup = std::move(k);
  return res;
}

FiniteHypergroup validate_or_throw(const StructureTensor& tensor, const std::vector<int>& involution,
                                   std::string name, const ValidateOptions& opts) {
  ValidationResult r = validate(tensor, involution, std::move(name), opts);
  if (!r.ok()) throw HyperError(Errc::AxiomViolation, r.report.summary());
  return *std::move(r.hypergroup);
}

Measure haar_measure(const FiniteHypergroup& k) {
  Measure m(k.order());
  m.weights = k.haar();
  return m;
}

Measure convolve(const FiniteHypergroup& k, const Measure& mu, const Measure& nu) {
  const int n = k.order();
  if (mu.weights.size() != static_cast<std::size_t>(n) || nu.weights.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("measure dimension mismatch");
  Measure out(n);
  for (int i = 0; i < n; ++i) {
    if (mu.weights[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double c = mu.weights[i] * nu.weights[j];
      if (c == 0.0) continue;
      for (int z = 0; z < n; ++z) out.weights[z] += c * k.n(i, j, z);
    }
  }
  return out;
}

std::vector<int> support(const Measure& m, double tol) {
  std::vector<int> s;
  for (int x = 0; x < static_cast<int>(m.weights.size()); ++x)
    if (m.weights[x] > tol) s.push_back(x);
  return s;
}

std::vector<int> support_product(const FiniteHypergroup& k, std::span<const int> a,
                                 std::span<const int> b, double tol) {
  std::set<int> s;
  for (int x : a)
    for (int y : b)
      for (int z = 0; z < k.order(); ++z)
        if (k.n(x, y, z) > tol) s.insert(z);
  return {s.begin(), s.end()};
}

bool is_commutative(const FiniteHypergroup& k, double tol) {
  const int n = k.order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int z = 0; z < n; ++z)
        if (std::abs(k.n(i, j, z) - k.n(j, i, z)) > tol) return false;
  return true;
}

bool is_hermitian(const FiniteHypergroup& k) {
  for (int x = 0; x < k.order(); ++x)
    if (k.involution(x) != x) return false;
  return true;
}

std::complex<double> eval_translated(const FiniteHypergroup& k,
                                     std::span<const std::complex<double>> f, int x, int y) {
  if (f.size() != static_cast<std::size_t>(k.order()))
    throw std::invalid_argument("function must be defined on all of K");
  std::complex<double> acc = 0.0;
  for (int z = 0; z < k.order(); ++z) acc += f[z] * k.n(x, y, z);
  return acc;
}

}  // namespace hyperg
