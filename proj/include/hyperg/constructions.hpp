#pragma once

#include <array>
#include <string>
#include <vector>

#include "hyperg/hypergroup.hpp"

namespace hyperg {

/// Cayley table of a finite group; identity must sit at index 0.
struct GroupTable {
  int order = 0;
  std::vector<int> cayley;   // row-major, cayley[i*order+j] = index of g_i g_j
  std::vector<int> inverse;  // derived during validation

  int mul(int a, int b) const { return cayley[static_cast<std::size_t>(a) * order + b]; }
};

/// Validates Latin-square property, identity at 0, associativity and two-sided
/// inverses (groups up to order 48; inputs arrive from untrusted files).
GroupTable make_group_table(const std::vector<std::vector<int>>& cayley);

GroupTable cyclic_group(int n);
GroupTable symmetric_group_s3();
GroupTable dihedral_group_d4();
GroupTable quaternion_group_q8();

/// Order-2 family: delta_1*delta_1 = theta delta_0 + (1-theta) delta_1, 0 < theta <= 1.
/// theta = 1 is the two-element group.
FiniteHypergroup z2_theta(double theta);

/// Hermitian order-3 family with parameters (gamma1, w1, w2); w1, w2 are the
/// Haar weights of elements 1 and 2. Constraints: 0 <= gamma1 <= 1, w1,w2 >= 1,
/// 1 + gamma1*w2 <= w1 and 1 + (1-gamma1)*w1 <= w2.
FiniteHypergroup order3_hermitian(double gamma1, double w1, double w2);

/// Non-hermitian order-3 family (involution swaps 1 and 2), 0 < alpha <= 1.
/// alpha = 1 is the cyclic group of order 3.
FiniteHypergroup order3_nonhermitian(double alpha);

/// Closed-form character values of the hermitian order-3 family. `x,y` are the
/// two nontrivial values at element 1, `z,v` at element 2; characters pair as
/// (1,x,z) and (1,y,v).
struct Order3CharacterValues {
  double D, x, y, z, v;
};

/// Values consistent with the defining equations: x,y = (a1-g1)/2 +- D/(2*w1).
Order3CharacterValues order3_hermitian_characters(double gamma1, double w1, double w2);

/// The widely printed closed form divides all four offsets by 2*w2. It agrees
/// with the one above only when w1 == w2; kept so regressions can pin the
/// discrepancy explicitly.
Order3CharacterValues order3_hermitian_characters_as_printed(double gamma1, double w1, double w2);

/// Plancherel weights (pi0, pi1, pi2) of the non-hermitian family via the
/// closed forms s1 = 2 - w1(a^2+a), s2 = w1 - 1, t = w1(2 - a^2 - a).
std::array<double, 3> order3_nonhermitian_plancherel_st(double alpha);

/// Groups are hypergroups with a 0/1 tensor and Haar weight 1 everywhere.
FiniteHypergroup group_hypergroup(const GroupTable& g);

/// Conjugacy-class hypergroup: elements are the classes (ordered by size then
/// smallest member), convolution pushes forward the uniform measures on
/// classes. Always commutative.
FiniteHypergroup class_hypergroup(const GroupTable& g);

/// Double-coset hypergroup G//H for a subgroup H; commutativity depends on H
/// and is reported by is_commutative, not required here.
FiniteHypergroup double_coset(const GroupTable& g, const std::vector<int>& subgroup);

/// Tensor product of hypergroups; index (i1,i2) -> i1*|K2| + i2.
FiniteHypergroup direct_product(const FiniteHypergroup& k1, const FiniteHypergroup& k2);

std::vector<std::string> preset_names();
bool has_preset(const std::string& name);
const FiniteHypergroup& preset(const std::string& name);

}  // namespace hyperg
