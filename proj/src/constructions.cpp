#include "hyperg/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace hyperg {

namespace {

constexpr int kGroupCap = 48;

void require(bool cond, const char* constraint) {
  if (!cond) throw HyperError(Errc::ParamOutOfRange, constraint);
}

}  // namespace

GroupTable make_group_table(const std::vector<std::vector<int>>& cayley) {
  const int n = static_cast<int>(cayley.size());
  if (n == 0) throw HyperError(Errc::BadDocument, "empty group table");
  if (n > kGroupCap)
    throw HyperError(Errc::CapExceeded, "group order " + std::to_string(n) + " exceeds cap " +
                                            std::to_string(kGroupCap));
  GroupTable g;
  g.order = n;
  g.cayley.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : cayley) {
    if (static_cast<int>(row.size()) != n)
      throw HyperError(Errc::BadDocument, "group table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw HyperError(Errc::BadDocument, "group table entry out of range");
      g.cayley.push_back(v);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int j = 0; j < n; ++j) {
      if (seen_row[g.mul(i, j)]++)
        throw HyperError(Errc::BadDocument, "not a Latin square: repeated entry in row " + std::to_string(i));
      if (seen_col[g.mul(j, i)]++)
        throw HyperError(Errc::BadDocument, "not a Latin square: repeated entry in column " + std::to_string(i));
    }
  }
  for (int i = 0; i < n; ++i)
    if (g.mul(0, i) != i || g.mul(i, 0) != i)
      throw HyperError(Errc::BadDocument, "element 0 is not a two-sided identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw HyperError(Errc::BadDocument, "not associative at (" + std::to_string(a) + "," +
                                                  std::to_string(b) + "," + std::to_string(c) + ")");
  g.inverse.resize(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
        g.inverse[a] = b;
        break;
      }
    if (g.inverse[a] < 0)
      throw HyperError(Errc::BadDocument, "element " + std::to_string(a) + " has no two-sided inverse");
  }
  return g;
}

GroupTable cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return make_group_table(t);
}

namespace {

// permutations of {0,1,2} in lexicographic order; index 0 is the identity
std::vector<std::array<int, 3>> s3_elements() {
  std::array<int, 3> p = {0, 1, 2};
  std::vector<std::array<int, 3>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

}  // namespace

GroupTable symmetric_group_s3() {
  auto elems = s3_elements();
  const int n = 6;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::array<int, 3> c;  // composition: (pi_i . pi_j)(x) = pi_i(pi_j(x))
      for (int x = 0; x < 3; ++x) c[x] = elems[i][elems[j][x]];
      t[i][j] = static_cast<int>(std::find(elems.begin(), elems.end(), c) - elems.begin());
    }
  return make_group_table(t);
}

GroupTable dihedral_group_d4() {
  // elements r^a s^b encoded as a + 4*b; s r^a = r^{-a} s
  auto idx = [](int a, int b) { return ((a % 4) + 4) % 4 + 4 * b; };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 2; ++d)
          t[idx(a, b)][idx(c, d)] = b == 0 ? idx(a + c, d) : idx(a - c, 1 - d);
  return make_group_table(t);
}

GroupTable quaternion_group_q8() {
  // units 1,i,j,k with signs; encoded as unit + 4*sign
  auto mul = [](int x, int y) {
    int ux = x % 4, sx = x / 4, uy = y % 4, sy = y / 4;
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    // sign[a][b] = 1 when e_a e_b = -e_{unit[a][b]}: i^2=j^2=k^2=-1, ij=k, ji=-k, ...
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    int s = (sx + sy + sign[ux][uy]) % 2;
    return unit[ux][uy] + 4 * s;
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) t[x][y] = mul(x, y);
  return make_group_table(t);
}

FiniteHypergroup z2_theta(double theta) {
  require(theta > 0.0 && theta <= 1.0, "z2_theta requires 0 < theta <= 1");
  StructureTensor t(2);
  t.at(0, 0, 0) = 1.0;
  t.at(0, 1, 1) = 1.0;
  t.at(1, 0, 1) = 1.0;
  t.at(1, 1, 0) = theta;
  t.at(1, 1, 1) = 1.0 - theta;
  return validate_or_throw(t, {0, 1}, "z2_theta");
}

FiniteHypergroup order3_hermitian(double g1, double w1, double w2) {
  require(g1 >= 0.0 && g1 <= 1.0, "order3_hermitian requires 0 <= gamma1 <= 1");
  require(w1 >= 1.0, "order3_hermitian requires w1 >= 1");
  require(w2 >= 1.0, "order3_hermitian requires w2 >= 1");
  require(1.0 + g1 * w2 <= w1 + 1e-12, "order3_hermitian requires 1 + gamma1*w2 <= w1");
  require(1.0 + (1.0 - g1) * w1 <= w2 + 1e-12, "order3_hermitian requires 1 + (1-gamma1)*w1 <= w2");
  const double g2 = 1.0 - g1;
  const double b1 = g1 * w2 / w1;
  const double b2 = g2 * w1 / w2;
  const double a1 = 1.0 - (1.0 + g1 * w2) / w1;
  const double a2 = 1.0 - (1.0 + g2 * w1) / w2;
  StructureTensor t(3);
  t.at(0, 0, 0) = 1.0;
  t.at(0, 1, 1) = t.at(1, 0, 1) = 1.0;
  t.at(0, 2, 2) = t.at(2, 0, 2) = 1.0;
  t.at(1, 1, 0) = 1.0 / w1;
  t.at(1, 1, 1) = a1;
  t.at(1, 1, 2) = b1;
  t.at(1, 2, 1) = t.at(2, 1, 1) = g1;
  t.at(1, 2, 2) = t.at(2, 1, 2) = g2;
  t.at(2, 2, 0) = 1.0 / w2;
  t.at(2, 2, 1) = b2;
  t.at(2, 2, 2) = a2;
  return validate_or_throw(t, {0, 1, 2}, "order3_hermitian");
}

FiniteHypergroup order3_nonhermitian(double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, "order3_nonhermitian requires 0 < alpha <= 1");
  const double g = (1.0 - alpha) / 2.0;
  StructureTensor t(3);
  t.at(0, 0, 0) = 1.0;
  t.at(0, 1, 1) = t.at(1, 0, 1) = 1.0;
  t.at(0, 2, 2) = t.at(2, 0, 2) = 1.0;
  t.at(1, 1, 1) = g;
  t.at(1, 1, 2) = 1.0 - g;
  t.at(1, 2, 0) = t.at(2, 1, 0) = alpha;
  t.at(1, 2, 1) = t.at(2, 1, 1) = g;
  t.at(1, 2, 2) = t.at(2, 1, 2) = g;
  t.at(2, 2, 1) = 1.0 - g;
  t.at(2, 2, 2) = g;
  return validate_or_throw(t, {0, 2, 1}, "order3_nonhermitian");
}

Order3CharacterValues order3_hermitian_characters(double g1, double w1, double w2) {
  const double g2 = 1.0 - g1;
  const double a1 = 1.0 - (1.0 + g1 * w2) / w1;
  const double a2 = 1.0 - (1.0 + g2 * w1) / w2;
  const double D = std::sqrt((1.0 + g1 * w2 - g2 * w1) * (1.0 + g1 * w2 - g2 * w1) + 4.0 * g2 * w1);
  Order3CharacterValues c;
  c.D = D;
  c.x = (a1 - g1) / 2.0 + D / (2.0 * w1);
  c.y = (a1 - g1) / 2.0 - D / (2.0 * w1);
  c.z = (a2 - g2) / 2.0 - D / (2.0 * w2);
  c.v = (a2 - g2) / 2.0 + D / (2.0 * w2);
  return c;
}

Order3CharacterValues order3_hermitian_characters_as_printed(double g1, double w1, double w2) {
  Order3CharacterValues c = order3_hermitian_characters(g1, w1, w2);
  const double a1 = 1.0 - (1.0 + g1 * w2) / w1;
  c.x = (a1 - g1) / 2.0 + c.D / (2.0 * w2);
  c.y = (a1 - g1) / 2.0 - c.D / (2.0 * w2);
  return c;
}

std::array<double, 3> order3_nonhermitian_plancherel_st(double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, "order3_nonhermitian requires 0 < alpha <= 1");
  const double w1 = 1.0 / alpha;
  const double s1 = 2.0 - w1 * (alpha * alpha + alpha);
  const double s2 = w1 - 1.0;
  const double t = w1 * (2.0 - alpha * alpha - alpha);
  return {s1 / t, s2 / t, s2 / t};
}

FiniteHypergroup group_hypergroup(const GroupTable& g) {
  StructureTensor t(g.order);
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j) t.at(i, j, g.mul(i, j)) = 1.0;
  return validate_or_throw(t, g.inverse, "group");
}

namespace {

// classes/blocks ordered by (size, smallest member); the identity's block,
// being smallest with member 0, always lands first
std::vector<std::vector<int>> sort_blocks(std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a[0] < b[0];
  });
  return blocks;
}

// pushforward hypergroup: convolve uniform probability measures on blocks of a
// partition of G, aggregate mass per block
FiniteHypergroup block_hypergroup(const GroupTable& g, std::vector<std::vector<int>> blocks,
                                  const std::string& name) {
  blocks = sort_blocks(std::move(blocks));
  const int m = static_cast<int>(blocks.size());
  std::vector<int> block_of(g.order, -1);
  for (int b = 0; b < m; ++b)
    for (int x : blocks[b]) block_of[x] = b;

  StructureTensor t(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double w = 1.0 / (static_cast<double>(blocks[a].size()) * blocks[b].size());
      for (int x : blocks[a])
        for (int y : blocks[b]) t.at(a, b, block_of[g.mul(x, y)]) += w;
    }
  std::vector<int> inv(m);
  for (int b = 0; b < m; ++b) inv[b] = block_of[g.inverse[blocks[b][0]]];
  return validate_or_throw(t, inv, name);
}

}  // namespace

FiniteHypergroup class_hypergroup(const GroupTable& g) {
  std::vector<int> cls(g.order, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < g.order; ++x) {
    if (cls[x] >= 0) continue;
    std::vector<int> c;
    for (int h = 0; h < g.order; ++h) {
      int y = g.mul(g.mul(h, x), g.inverse[h]);
      if (cls[y] < 0) {
        cls[y] = static_cast<int>(classes.size());
        c.push_back(y);
      }
    }
    classes.push_back(std::move(c));
  }
  return block_hypergroup(g, std::move(classes), "class_hypergroup");
}

FiniteHypergroup double_coset(const GroupTable& g, const std::vector<int>& subgroup) {
  std::set<int> h(subgroup.begin(), subgroup.end());
  if (!h.count(0)) throw HyperError(Errc::NotASubgroup, "subgroup must contain the identity");
  for (int a : h) {
    if (a < 0 || a >= g.order) throw HyperError(Errc::NotASubgroup, "element out of range");
    if (!h.count(g.inverse[a])) throw HyperError(Errc::NotASubgroup, "not closed under inverses");
    for (int b : h)
      if (!h.count(g.mul(a, b))) throw HyperError(Errc::NotASubgroup, "not closed under products");
  }
  std::vector<int> seen(g.order, 0);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < g.order; ++x) {
    if (seen[x]) continue;
    std::vector<int> blk;
    for (int a : h)
      for (int b : h) {
        int y = g.mul(g.mul(a, x), b);
        if (!seen[y]) {
          seen[y] = 1;
          blk.push_back(y);
        }
      }
    blocks.push_back(std::move(blk));
  }
  return block_hypergroup(g, std::move(blocks), "double_coset");
}

FiniteHypergroup direct_product(const FiniteHypergroup& k1, const FiniteHypergroup& k2) {
  const int n1 = k1.order(), n2 = k2.order(), n = n1 * n2;
  StructureTensor t(n);
  auto id = [n2](int a, int b) { return a * n2 + b; };
  for (int i1 = 0; i1 < n1; ++i1)
    for (int j1 = 0; j1 < n1; ++j1)
      for (int k1i = 0; k1i < n1; ++k1i) {
        const double c1 = k1.n(i1, j1, k1i);
        if (c1 == 0.0) continue;
        for (int i2 = 0; i2 < n2; ++i2)
          for (int j2 = 0; j2 < n2; ++j2)
            for (int k2i = 0; k2i < n2; ++k2i) {
              const double c2 = k2.n(i2, j2, k2i);
              if (c2 != 0.0) t.at(id(i1, i2), id(j1, j2), id(k1i, k2i)) = c1 * c2;
            }
      }
  std::vector<int> inv(n);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) inv[id(a, b)] = id(k1.involution(a), k2.involution(b));
  return validate_or_throw(t, inv, k1.name() + "*" + k2.name());
}

namespace {

std::map<std::string, FiniteHypergroup> build_presets() {
  std::map<std::string, FiniteHypergroup> reg;
  auto add = [&reg](const std::string& name, FiniteHypergroup k) {
    reg.emplace(name, k.withName(name));
  };

  add("z2_theta_1", z2_theta(1.0));
  add("z2_theta_1_2", z2_theta(0.5));
  add("z2_theta_1_4", z2_theta(0.25));
  add("bose_mesner_square", order3_hermitian(0.0, 1.0, 2.0));
  add("nonhermitian_alpha_1_2", order3_nonhermitian(0.5));

  for (int n = 2; n <= 8; ++n) add("z" + std::to_string(n), group_hypergroup(cyclic_group(n)));

  GroupTable s3 = symmetric_group_s3();
  GroupTable d4 = dihedral_group_d4();
  GroupTable q8 = quaternion_group_q8();
  add("s3_group", group_hypergroup(s3));
  add("d4_group", group_hypergroup(d4));
  add("q8_group", group_hypergroup(q8));
  add("class_s3", class_hypergroup(s3));
  add("class_d4", class_hypergroup(d4));
  add("class_q8", class_hypergroup(q8));
  add("double_coset_s3_12", double_coset(s3, {0, 1}));  // H = {id, (12)} in lexicographic indexing

  const FiniteHypergroup z2h = z2_theta(0.5);
  const FiniteHypergroup z2q = z2_theta(0.25);
  const FiniteHypergroup bm = order3_hermitian(0.0, 1.0, 2.0);
  add("prod_z2h_z2q", direct_product(z2h, z2q));
  add("prod_bm_z2h", direct_product(bm, z2h));
  add("prod_z3_bm", direct_product(group_hypergroup(cyclic_group(3)), bm));
  add("prod_z4_z2h", direct_product(group_hypergroup(cyclic_group(4)), z2h));
  add("prod_z2h_pow4", direct_product(direct_product(z2h, z2h), direct_product(z2h, z2h)));
  return reg;
}

const std::map<std::string, FiniteHypergroup>& registry() {
  static const std::map<std::string, FiniteHypergroup> reg = build_presets();
  return reg;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

bool has_preset(const std::string& name) { return registry().count(name) > 0; }

const FiniteHypergroup& preset(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw HyperError(Errc::BadDocument, "unknown preset '" + name + "'");
  return it->second;
}

}  // namespace hyperg
