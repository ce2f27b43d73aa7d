#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hyperg/hypergroup.hpp"

namespace hyperg {

/// A character: multiplicative complex function with rho(e) = 1,
/// rho(x*y) = rho(x)rho(y), rho(xbar) = conj(rho(x)).
struct Character {
  std::vector<std::complex<double>> values;  // indexed by element
};

/// All |K| characters of a commutative hypergroup in canonical order (trivial
/// character first, then lexicographic descending on (Re, Im) value vectors),
/// with the Plancherel weights pi{rho} = 1 / sum_x w{x}|rho(x)|^2.
struct CharacterTable {
  std::vector<Character> characters;
  std::vector<double> plancherel;

  int order() const { return static_cast<int>(characters.size()); }
  std::complex<double> value(int rho, int x) const { return characters[rho].values[x]; }
  /// Index of the conjugate character rho-bar.
  int conjugate_index(int rho, double tol = 1e-7) const;
};

struct DualityOptions {
  double tol = 1e-9;
  double char_residual_tol = 1e-8;  // multiplicativity residual per emitted character
  double unitarity_tol = 1e-10;
  std::uint64_t seed = 0x7a9c0f5b2d4e6a1bULL;  // fixed stream for the combination draws
  int max_retries = 8;
};

/// Left-translation matrices (L_i)[k][j] = n[i][j][k], so L_i mu = delta_i * mu.
/// Throws NotCommutative when any commutator exceeds tol.
std::vector<Eigen::MatrixXd> translation_operators(const FiniteHypergroup& k, double tol = 1e-9);

/// Characters are the joint eigenvectors of the translation operators. A
/// seeded random real combination splits the joint eigenspaces generically;
/// each value rho(c_i) is then read off as a Haar-weighted Rayleigh quotient.
/// Degenerate splits are retried with a fresh draw, then CharacterDefect.
CharacterTable character_table(const FiniteHypergroup& k, const DualityOptions& opts = {});

/// Plancherel weights for an externally supplied character list. Checks the
/// Gram matrix in l2(K, w) is diagonal (NonOrthogonal otherwise).
std::vector<double> plancherel(const FiniteHypergroup& k, const std::vector<Character>& chars,
                               double tol = 1e-9);

/// Unitary transform in the primed bases |x>' = w{x}^{1/2}|x>,
/// |rho>' = pi{rho}^{1/2}|rho>: F[rho,x] = sqrt(w{x} pi{rho}) rho(x).
struct FourierMatrix {
  Eigen::MatrixXcd entries;  // rows: characters in table order; columns: elements
  double unitarity_residual = 0.0;
};

FourierMatrix fourier_matrix(const FiniteHypergroup& k, const CharacterTable& table,
                             const DualityOptions& opts = {});

/// tau(x) = (sum_rho |rho(x)|^2 pi{rho}^2)^{1/2}, the column normalization of
/// the unprimed transform. Constant on group hypergroups.
double tau(const FiniteHypergroup& k, const CharacterTable& table, int x);

/// Unprimed map |x> -> (1/tau(x)) sum_rho rho(x) pi{rho} |rho>; columns have
/// unit norm by construction of tau, but the matrix is not unitary in general.
Eigen::MatrixXcd unprimed_transform_matrix(const FiniteHypergroup& k, const CharacterTable& table);

/// muhat(rho) = sum_x rho(x) mu{x}.
std::vector<std::complex<double>> fourier_of_measure(const FiniteHypergroup& k,
                                                     const CharacterTable& table, const Measure& mu);

/// fhat(rho) = sum_x f(x) rho(x) w{x}; i.e. fhat = (f w)^.
std::vector<std::complex<double>> fourier_of_function(const FiniteHypergroup& k,
                                                      const CharacterTable& table,
                                                      std::span<const std::complex<double>> f);

/// kcheck(x) = sum_rho k(rho) conj(rho(x)) pi{rho}. The conjugate makes the
/// round trip with fourier_of_function the identity on l2(K, w); the variant
/// without it returns the involution-translate f(xbar) instead.
std::vector<std::complex<double>> inverse_fourier(const FiniteHypergroup& k,
                                                  const CharacterTable& table,
                                                  std::span<const std::complex<double>> kvec);

/// Expansion coefficients of pointwise products of characters:
/// c[rho][sigma][tau] = pi{tau} sum_x w{x} rho(x) sigma(x) conj(tau(x)).
/// K is strong exactly when all of them are (numerically) nonnegative.
StructureTensor dual_structure_constants(const FiniteHypergroup& k, const CharacterTable& table);

/// Validated hypergroup structure on the character set, involution rho -> rhobar.
/// Throws NotStrong carrying the most negative coefficient and its triple.
FiniteHypergroup dual_hypergroup(const FiniteHypergroup& k, const CharacterTable& table,
                                 double tol = 1e-9);

bool is_strong(const FiniteHypergroup& k, double tol = 1e-9);
bool is_strong(const FiniteHypergroup& k, const CharacterTable& table, double tol = 1e-9);

/// True when the double dual, built through two strong duals, is isomorphic to
/// K via the evaluation map x -> (rho -> rho(x)).
bool double_dual_check(const FiniteHypergroup& k, double match_tol = 1e-8);

/// Brute-force isomorphism search (identity-preserving permutations, pruned by
/// Haar weights and involution). Intended for the small instances in tests.
std::optional<std::vector<int>> find_isomorphism(const FiniteHypergroup& a,
                                                 const FiniteHypergroup& b, double tol = 1e-8);

}  // namespace hyperg
