#include "hyperg/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperg/rng.hpp"

namespace hyperg {

namespace {

using Cx = std::complex<double>;

// T_i[y][z] = n[i][y][z]; characters satisfy T_i rho = rho(c_i) rho.
Eigen::MatrixXd action_matrix(const FiniteHypergroup& k, int i) {
  const int n = k.order();
  Eigen::MatrixXd t(n, n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) t(y, z) = k.n(i, y, z);
  return t;
}

// canonical order: lexicographic descending on (Re, Im); the all-ones
// character is the strict maximum since |rho(x)| <= 1
bool canonical_less(const Character& a, const Character& b, double tie_tol) {
  for (std::size_t x = 0; x < a.values.size(); ++x) {
    if (std::abs(a.values[x].real() - b.values[x].real()) > tie_tol)
      return a.values[x].real() > b.values[x].real();
    if (std::abs(a.values[x].imag() - b.values[x].imag()) > tie_tol)
      return a.values[x].imag() > b.values[x].imag();
  }
  return false;
}

double char_distance(const Character& a, const Character& b) {
  double d = 0.0;
  for (std::size_t x = 0; x < a.values.size(); ++x) d = std::max(d, std::abs(a.values[x] - b.values[x]));
  return d;
}

// max residual over the character axioms for one candidate
double character_residual(const FiniteHypergroup& k, const Character& c) {
  const int n = k.order();
  double r = std::abs(c.values[0] - 1.0);
  for (int x = 0; x < n; ++x) {
    r = std::max(r, std::abs(c.values[k.involution(x)] - std::conj(c.values[x])));
    r = std::max(r, std::abs(c.values[x]) - 1.0);
    for (int y = 0; y < n; ++y) {
      Cx lhs = eval_translated(k, c.values, x, y);
      r = std::max(r, std::abs(lhs - c.values[x] * c.values[y]));
    }
  }
  return r;
}

}  // namespace

int CharacterTable::conjugate_index(int rho, double tol) const {
  const auto& v = characters[rho].values;
  for (int s = 0; s < order(); ++s) {
    double d = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x)
      d = std::max(d, std::abs(characters[s].values[x] - std::conj(v[x])));
    if (d <= tol) return s;
  }
  throw HyperError(Errc::CharacterDefect, "conjugate character missing from table");
}

std::vector<Eigen::MatrixXd> translation_operators(const FiniteHypergroup& k, double tol) {
  const int n = k.order();
  std::vector<Eigen::MatrixXd> ops;
  ops.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd L(n, n);
    for (int kk = 0; kk < n; ++kk)
      for (int j = 0; j < n; ++j) L(kk, j) = k.n(i, j, kk);
    ops.push_back(std::move(L));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double comm = (ops[i] * ops[j] - ops[j] * ops[i]).cwiseAbs().maxCoeff();
      if (comm > tol)
        throw HyperError(Errc::NotCommutative, "translation operators " + std::to_string(i) + "," +
                                                   std::to_string(j) + " do not commute (residual " +
                                                   std::to_string(comm) + ")");
    }
  return ops;
}

CharacterTable character_table(const FiniteHypergroup& k, const DualityOptions& opts) {
  const int n = k.order();
  if (!is_commutative(k, opts.tol))
    throw HyperError(Errc::NotCommutative, "character table requires a commutative hypergroup");

  std::vector<Eigen::MatrixXd> action(n);
  for (int i = 0; i < n; ++i) action[i] = action_matrix(k, i);

  RngStream rng(opts.seed);
  std::string last_failure = "no attempt";
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m += rng.uniform(-1.0, 1.0) * action[i];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
      last_failure = "eigensolver did not converge";
      continue;
    }
    const Eigen::MatrixXcd vecs = solver.eigenvectors();

    std::vector<Character> chars;
    chars.reserve(n);
    bool bad = false;
    for (int c = 0; c < n && !bad; ++c) {
      Eigen::VectorXcd v = vecs.col(c);
      // Haar-weighted Rayleigh quotients: the action matrices are normal in
      // l2(K, w), which makes the quotient second-order accurate.
      double wnorm = 0.0;
      for (int x = 0; x < n; ++x) wnorm += k.haar(x) * std::norm(v[x]);
      Character ch;
      ch.values.resize(n);
      for (int i = 0; i < n; ++i) {
        Cx num = 0.0;
        for (int y = 0; y < n; ++y) {
          Cx row = 0.0;
          for (int z = 0; z < n; ++z) row += action[i](y, z) * v[z];
          num += k.haar(y) * std::conj(v[y]) * row;
        }
        ch.values[i] = num / wnorm;
      }
      if (std::abs(ch.values[0]) < 0.5) {  // rho(e) must be 1; a tiny value means a garbage vector
        bad = true;
        last_failure = "candidate with vanishing value at the identity";
        break;
      }
      const Cx scale = ch.values[0];
      for (auto& val : ch.values) val /= scale;
      if (character_residual(k, ch) > opts.char_residual_tol) {
        bad = true;
        last_failure = "character axioms violated beyond tolerance";
        break;
      }
      chars.push_back(std::move(ch));
    }
    if (bad) continue;

    // a degenerate split shows up as duplicates after normalization
    std::sort(chars.begin(), chars.end(),
              [&](const Character& a, const Character& b) { return canonical_less(a, b, opts.tol); });
    bool dup = false;
    for (int c = 0; c + 1 < n; ++c)
      if (char_distance(chars[c], chars[c + 1]) < 1e-7) dup = true;
    if (dup) {
      last_failure = "degenerate eigenvalue split";
      continue;
    }
    // the all-ones character is the lexicographic maximum, so it sorts first;
    // anything else indicates a defective extraction
    double triv = 0.0;
    for (int x = 0; x < n; ++x) triv = std::max(triv, std::abs(chars[0].values[x] - 1.0));
    if (triv > 1e-8) {
      last_failure = "trivial character missing from the extracted set";
      continue;
    }

    CharacterTable table;
    table.characters = std::move(chars);
    table.plancherel = plancherel(k, table.characters, opts.tol);
    return table;
  }
  throw HyperError(Errc::CharacterDefect,
                   std::string("could not extract |K| distinct characters: ") + last_failure);
}

std::vector<double> plancherel(const FiniteHypergroup& k, const std::vector<Character>& chars,
                               double tol) {
  const int m = static_cast<int>(chars.size());
  const int n = k.order();
  auto gram = [&](int a, int b) {
    Cx g = 0.0;
    for (int x = 0; x < n; ++x) g += k.haar(x) * chars[a].values[x] * std::conj(chars[b].values[x]);
    return g;
  };
  std::vector<double> pi(m);
  for (int a = 0; a < m; ++a) {
    const double diag = gram(a, a).real();
    if (diag <= tol) throw HyperError(Errc::NonOrthogonal, "character has nonpositive l2(K,w) norm");
    pi[a] = 1.0 / diag;
  }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Cx g = gram(a, b);
      // relative to the diagonal scale, which is ~1/pi
      if (std::abs(g) > 1e-6 / std::sqrt(pi[a] * pi[b]))
        throw HyperError(Errc::NonOrthogonal, "characters " + std::to_string(a) + " and " +
                                                  std::to_string(b) + " are not orthogonal (|<.,.>| = " +
                                                  std::to_string(std::abs(g)) + ")");
    }
  return pi;
}

FourierMatrix fourier_matrix(const FiniteHypergroup& k, const CharacterTable& table,
                             const DualityOptions& opts) {
  const int n = k.order();
  if (table.order() != n) throw HyperError(Errc::CharacterDefect, "table size mismatch");
  FourierMatrix f;
  f.entries.resize(n, n);
  for (int r = 0; r < n; ++r)
    for (int x = 0; x < n; ++x)
      f.entries(r, x) = std::sqrt(k.haar(x) * table.plancherel[r]) * table.value(r, x);
  Eigen::MatrixXcd gram = f.entries * f.entries.adjoint() - Eigen::MatrixXcd::Identity(n, n);
  f.unitarity_residual = gram.cwiseAbs().maxCoeff();
  if (f.unitarity_residual > opts.unitarity_tol)
    throw HyperError(Errc::NotUnitary,
                     "F F^dagger deviates from identity by " + std::to_string(f.unitarity_residual));
  return f;
}

double tau(const FiniteHypergroup& k, const CharacterTable& table, int x) {
  (void)k;
  double s = 0.0;
  for (int r = 0; r < table.order(); ++r)
    s += std::norm(table.value(r, x)) * table.plancherel[r] * table.plancherel[r];
  return std::sqrt(s);
}

Eigen::MatrixXcd unprimed_transform_matrix(const FiniteHypergroup& k, const CharacterTable& table) {
  const int n = k.order();
  Eigen::MatrixXcd u(n, n);
  for (int x = 0; x < n; ++x) {
    const double t = tau(k, table, x);
    for (int r = 0; r < n; ++r) u(r, x) = table.value(r, x) * table.plancherel[r] / t;
  }
  return u;
}

std::vector<Cx> fourier_of_measure(const FiniteHypergroup& k, const CharacterTable& table,
                                   const Measure& mu) {
  const int n = k.order();
  std::vector<Cx> out(table.order(), 0.0);
  for (int r = 0; r < table.order(); ++r)
    for (int x = 0; x < n; ++x) out[r] += table.value(r, x) * mu.weights[x];
  return out;
}

std::vector<Cx> fourier_of_function(const FiniteHypergroup& k, const CharacterTable& table,
                                    std::span<const Cx> f) {
  const int n = k.order();
  if (f.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("function dimension mismatch");
  std::vector<Cx> out(table.order(), 0.0);
  for (int r = 0; r < table.order(); ++r)
    for (int x = 0; x < n; ++x) out[r] += f[x] * table.value(r, x) * k.haar(x);
  return out;
}

std::vector<Cx> inverse_fourier(const FiniteHypergroup& k, const CharacterTable& table,
                                std::span<const Cx> kvec) {
  const int n = k.order();
  if (kvec.size() != static_cast<std::size_t>(table.order()))
    throw std::invalid_argument("dual function dimension mismatch");
  std::vector<Cx> out(n, 0.0);
  for (int x = 0; x < n; ++x)
    for (int r = 0; r < table.order(); ++r)
      out[x] += kvec[r] * std::conj(table.value(r, x)) * table.plancherel[r];
  return out;
}

StructureTensor dual_structure_constants(const FiniteHypergroup& k, const CharacterTable& table) {
  const int n = table.order();
  StructureTensor c(n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        Cx acc = 0.0;
        for (int x = 0; x < k.order(); ++x)
          acc += k.haar(x) * table.value(r, x) * table.value(s, x) * std::conj(table.value(t, x));
        // imaginary parts cancel in exact arithmetic (pi{rho} = pi{rhobar})
        c.at(r, s, t) = (table.plancherel[t] * acc).real();
      }
  return c;
}

FiniteHypergroup dual_hypergroup(const FiniteHypergroup& k, const CharacterTable& table, double tol) {
  StructureTensor c = dual_structure_constants(k, table);
  const int n = c.order;
  double most_negative = 0.0;
  std::array<int, 3> at = {-1, -1, -1};
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (c.at(r, s, t) < most_negative) {
          most_negative = c.at(r, s, t);
          at = {r, s, t};
        }
  if (most_negative < -tol)
    throw HyperError(Errc::NotStrong, "dual constant c[" + std::to_string(at[0]) + "][" +
                                          std::to_string(at[1]) + "][" + std::to_string(at[2]) +
                                          "] = " + std::to_string(most_negative));
  for (double& v : c.constants)
    if (v < 0.0) v = 0.0;
  std::vector<int> inv(n);
  for (int r = 0; r < n; ++r) inv[r] = table.conjugate_index(r);
  return validate_or_throw(c, inv, k.name().empty() ? "dual" : k.name() + "^", ValidateOptions{tol});
}

bool is_strong(const FiniteHypergroup& k, const CharacterTable& table, double tol) {
  try {
    dual_hypergroup(k, table, tol);
    return true;
  } catch (const HyperError& e) {
    if (e.code() == Errc::NotStrong) return false;
    throw;
  }
}

bool is_strong(const FiniteHypergroup& k, double tol) {
  return is_strong(k, character_table(k), tol);
}

bool double_dual_check(const FiniteHypergroup& k, double match_tol) {
  CharacterTable table = character_table(k);
  FiniteHypergroup dual = dual_hypergroup(k, table);
  CharacterTable dual_table = character_table(dual);
  FiniteHypergroup ddual = dual_hypergroup(dual, dual_table);

  const int n = k.order();
  // evaluation map: x -> (rho -> rho(x)) must pick out one dual character each
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int m = 0; m < n; ++m) {
      if (used[m]) continue;
      double d = 0.0;
      for (int r = 0; r < n; ++r)
        d = std::max(d, std::abs(dual_table.value(m, r) - table.value(r, x)));
      if (d <= match_tol) {
        map[x] = m;
        used[m] = 1;
        break;
      }
    }
    if (map[x] < 0) return false;
  }
  if (map[0] != 0) return false;
  for (int i = 0; i < n; ++i) {
    if (map[k.involution(i)] != ddual.involution(map[i])) return false;
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < n; ++t)
        if (std::abs(k.n(i, j, t) - ddual.n(map[i], map[j], map[t])) > match_tol) return false;
  }
  return true;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteHypergroup& a, const FiniteHypergroup& b,
                                                 double tol) {
  const int n = a.order();
  if (b.order() != n) return std::nullopt;

  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  perm[0] = 0;
  used[0] = 1;

  auto compatible = [&](int x, int y) {
    if (std::abs(a.haar(x) - b.haar(y)) > 1e-6) return false;
    return true;
  };
  // depth-first over assignments, checking tensor rows as soon as both
  // endpoints are mapped
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == n) {
      for (int i = 0; i < n; ++i) {
        if (perm[a.involution(i)] != b.involution(perm[i])) return false;
        for (int j = 0; j < n; ++j)
          for (int t = 0; t < n; ++t)
            if (std::abs(a.n(i, j, t) - b.n(perm[i], perm[j], perm[t])) > tol) return false;
      }
      return true;
    }
    for (int y = 1; y < n; ++y) {
      if (used[y] || !compatible(x, y)) continue;
      perm[x] = y;
      used[y] = 1;
      bool ok = true;
      // partial pruning: rows among already-assigned indices must match
      for (int i = 0; i <= x && ok; ++i)
        for (int j = 0; j <= x && ok; ++j)
          for (int t = 0; t <= x && ok; ++t)
            if (std::abs(a.n(i, j, t) - b.n(perm[i], perm[j], perm[t])) > tol) ok = false;
      if (ok && rec(x + 1)) return true;
      used[y] = 0;
      perm[x] = -1;
    }
    return false;
  };
  if (rec(1)) return perm;
  return std::nullopt;
}

}  // namespace hyperg
