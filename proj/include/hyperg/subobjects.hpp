#pragma once

#include <vector>

#include "hyperg/duality.hpp"
#include "hyperg/hypergroup.hpp"

namespace hyperg {

/// A certified closed subset: e in H, involution(H) = H, H*H subset of H.
struct Subhypergroup {
  std::vector<int> members;  // sorted ascending
};

bool is_closed_subset(const FiniteHypergroup& k, const std::vector<int>& members, double tol = 1e-9);

/// Throws NotClosed when the subset fails any closure condition.
Subhypergroup certify_subhypergroup(const FiniteHypergroup& k, std::vector<int> members,
                                    double tol = 1e-9);

/// Smallest closed subset containing the seeds (and e).
std::vector<int> closure(const FiniteHypergroup& k, std::vector<int> seeds, double tol = 1e-9);

struct EnumerateOptions {
  int cap = 20;  // exhaustive closure search is meant for desk-scale orders
  double tol = 1e-9;
};

/// All subhypergroups, found by growing closed sets one generator at a time;
/// sorted by (size, members). Throws CapExceeded when |K| > cap.
std::vector<Subhypergroup> enumerate_subhypergroups(const FiniteHypergroup& k,
                                                    const EnumerateOptions& opts = {});

struct CosetPartition {
  std::vector<std::vector<int>> blocks;  // block 0 = H itself
  std::vector<int> representative;       // smallest element per block
  std::vector<double> block_mass;        // w(c*H)
  std::vector<int> block_of;             // element -> block index
};

/// Blocks c*H = supp(delta_c * omega_H) for all c; verifies they partition K
/// (NotAPartition otherwise, which signals an invalid H or tensor).
CosetPartition cosets(const FiniteHypergroup& k, const Subhypergroup& h, double tol = 1e-9);

struct Annihilator {
  std::vector<int> characters;  // indices into the parent's CharacterTable
};

/// H-perp = { rho : rho(x) = 1 on H }.
Annihilator annihilator(const FiniteHypergroup& k, const CharacterTable& table,
                        const Subhypergroup& h, double tol = 1e-9);

/// Coset hypergroup K/H: elements are the blocks, convolution pushes forward
/// the Haar-normalized indicator measures p_A = w|_A / w(A).
FiniteHypergroup quotient(const FiniteHypergroup& k, const Subhypergroup& h, double tol = 1e-9);

/// Per-character evaluation of the three conditions tied to the annihilator:
///   (i)   rho in H-perp;
///   (ii)  sum_{m in c*H} w{m} rho(mbar) != 0 for every coset;
///   (iii) sum_{m in c*H} w{m} rho(m) != 0 for some coset.
/// "Nonzero" uses the scale-free threshold tol * w(c*H). The three conditions
/// coincide for groups; for hypergroups whose characters vanish somewhere,
/// (ii) can fail while (i) holds, and the offenders record where.
struct AnnihilatorEquivalenceReport {
  std::vector<bool> in_annihilator;
  std::vector<bool> all_cosets_nonzero;
  std::vector<bool> some_coset_nonzero;
  struct Offender {
    int character;
    int block;  // block witnessing the (ii) failure, or -1
  };
  std::vector<Offender> offenders;
  bool equivalent() const { return offenders.empty(); }
};

AnnihilatorEquivalenceReport annihilator_equivalence_check(const FiniteHypergroup& k, const CharacterTable& table,
                            const Subhypergroup& h, double tol = 1e-9);

/// Throws EquivalenceFailure listing the first offending (rho, block).
void annihilator_equivalence_or_throw(const FiniteHypergroup& k, const CharacterTable& table,
                            const Subhypergroup& h, double tol = 1e-9);

/// Normalized transform of the Haar measure of H: for each rho,
/// sum_{x in H} w{x} rho(x) / w(H). Equals the indicator of H-perp.
std::vector<std::complex<double>> subgroup_haar_transform(const FiniteHypergroup& k,
                                                          const CharacterTable& table,
                                                          const Subhypergroup& h);

/// H with the restricted tensor as a hypergroup of its own (closure makes the
/// restricted rows stochastic; NotClosed otherwise). Member order is ascending.
FiniteHypergroup sub_hypergroup(const FiniteHypergroup& k, const Subhypergroup& h, double tol = 1e-9);

/// Values of character rho on H, certified to satisfy the character axioms of
/// the restricted hypergroup.
std::vector<std::complex<double>> restrict_character(const FiniteHypergroup& k,
                                                     const CharacterTable& table, int rho,
                                                     const Subhypergroup& h, double tol = 1e-9);

}  // namespace hyperg
