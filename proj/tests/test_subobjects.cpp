#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hyperg/constructions.hpp"
#include "hyperg/subobjects.hpp"

using namespace hyperg;
using Cx = std::complex<double>;

TEST_CASE("closure and certification") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  CHECK(closure(bm, {1}) == std::vector<int>{0, 1});
  CHECK(closure(bm, {2}) == std::vector<int>{0, 1, 2});
  CHECK(is_closed_subset(bm, {0, 1}));
  CHECK_FALSE(is_closed_subset(bm, {0, 2}));
  CHECK_THROWS_AS(certify_subhypergroup(bm, {0, 2}), HyperError);
}

TEST_CASE("enumeration") {
  auto z2_subs = enumerate_subhypergroups(z2_theta(0.5));
  REQUIRE(z2_subs.size() == 2);
  CHECK(z2_subs[0].members == std::vector<int>{0});
  CHECK(z2_subs[1].members == (std::vector<int>{0, 1}));

  auto bm_subs = enumerate_subhypergroups(preset("bose_mesner_square"));
  REQUIRE(bm_subs.size() == 3);
  CHECK(bm_subs[1].members == (std::vector<int>{0, 1}));

  auto z6_subs = enumerate_subhypergroups(preset("z6"));
  std::vector<std::size_t> sizes;
  for (const auto& h : z6_subs) sizes.push_back(h.members.size());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3, 6});

  FiniteHypergroup z32 = group_hypergroup(cyclic_group(32));
  CHECK_THROWS_AS(enumerate_subhypergroups(z32), HyperError);
  CHECK_NOTHROW(enumerate_subhypergroups(z32, EnumerateOptions{32, 1e-9}));
}

TEST_CASE("coset partitions") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  CosetPartition part = cosets(bm, Subhypergroup{{0, 1}});
  REQUIRE(part.blocks.size() == 2);
  CHECK(part.blocks[0] == (std::vector<int>{0, 1}));
  CHECK(part.blocks[1] == std::vector<int>{2});
  CHECK(part.block_mass[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(part.block_mass[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(part.block_of == (std::vector<int>{0, 0, 1}));

  // H = K: one block
  CHECK(cosets(bm, Subhypergroup{{0, 1, 2}}).blocks.size() == 1);

  // group case, H = {e}: singletons
  CosetPartition singles = cosets(preset("z4"), Subhypergroup{{0}});
  CHECK(singles.blocks.size() == 4);

  CosetPartition z6part = cosets(preset("z6"), Subhypergroup{{0, 3}});
  REQUIRE(z6part.blocks.size() == 3);
  CHECK(z6part.blocks[1] == (std::vector<int>{1, 4}));

  // blocks partition K on every preset and subhypergroup
  for (const auto& name : preset_names()) {
    const FiniteHypergroup& k = preset(name);
    for (const auto& h : enumerate_subhypergroups(k)) {
      CosetPartition p = cosets(k, h);
      std::set<int> seen;
      for (const auto& b : p.blocks) seen.insert(b.begin(), b.end());
      CHECK(static_cast<int>(seen.size()) == k.order());
    }
  }
}

TEST_CASE("annihilators") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  CharacterTable t = character_table(bm);
  CHECK(annihilator(bm, t, Subhypergroup{{0}}).characters == (std::vector<int>{0, 1, 2}));
  CHECK(annihilator(bm, t, Subhypergroup{{0, 1, 2}}).characters == std::vector<int>{0});
  // chi_1 = (1, 1, -1) is trivial on {0,1}
  CHECK(annihilator(bm, t, Subhypergroup{{0, 1}}).characters == (std::vector<int>{0, 1}));
}

TEST_CASE("quotients") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  // K / {e} is K itself (singleton blocks in element order)
  FiniteHypergroup q0 = quotient(bm, Subhypergroup{{0}});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int z = 0; z < 3; ++z) CHECK(std::abs(q0.n(i, j, z) - bm.n(i, j, z)) <= 1e-10);

  CHECK(quotient(bm, Subhypergroup{{0, 1, 2}}).order() == 1);

  // the square scheme modulo {0,1} collapses to the two-element group
  FiniteHypergroup q = quotient(bm, Subhypergroup{{0, 1}});
  REQUIRE(q.order() == 2);
  CHECK(std::abs(q.n(1, 1, 0) - 1.0) <= 1e-12);

  // cyclic quotients
  CHECK(find_isomorphism(quotient(preset("z6"), Subhypergroup{{0, 3}}),
                         group_hypergroup(cyclic_group(3)))
            .has_value());
  CHECK(find_isomorphism(quotient(preset("z6"), Subhypergroup{{0, 2, 4}}),
                         group_hypergroup(cyclic_group(2)))
            .has_value());
}

TEST_CASE("quotient Haar weights are block masses over w(H)") {
  for (const auto& name : preset_names()) {
    const FiniteHypergroup& k = preset(name);
    if (!is_commutative(k)) continue;
    for (const auto& h : enumerate_subhypergroups(k)) {
      CosetPartition part = cosets(k, h);
      FiniteHypergroup q = quotient(k, h);
      for (int b = 0; b < q.order(); ++b)
        CHECK(std::abs(q.haar(b) - part.block_mass[b] / part.block_mass[0]) <= 1e-9);
    }
  }
}

TEST_CASE("annihilator equivalence report") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  CharacterTable t = character_table(bm);

  // H = {0,1}: chi_2 = (1,-1,0) fails all three conditions, chi_0/chi_1 satisfy all
  AnnihilatorEquivalenceReport rep = annihilator_equivalence_check(bm, t, Subhypergroup{{0, 1}});
  CHECK(rep.equivalent());
  CHECK(rep.in_annihilator == (std::vector<bool>{true, true, false}));
  CHECK(rep.all_cosets_nonzero == (std::vector<bool>{true, true, false}));
  CHECK(rep.some_coset_nonzero == (std::vector<bool>{true, true, false}));
  CHECK_NOTHROW(annihilator_equivalence_or_throw(bm, t, Subhypergroup{{0, 1}}));

  // H = {e}: chi_2 vanishes at element 2, so the all-cosets condition fails
  // while membership holds -- the equivalence genuinely breaks here
  AnnihilatorEquivalenceReport broken = annihilator_equivalence_check(bm, t, Subhypergroup{{0}});
  CHECK_FALSE(broken.equivalent());
  REQUIRE(broken.offenders.size() == 1);
  CHECK(broken.offenders[0].character == 2);
  CHECK(broken.offenders[0].block == 2);
  CHECK(broken.in_annihilator[2]);
  CHECK_FALSE(broken.all_cosets_nonzero[2]);
  CHECK(broken.some_coset_nonzero[2]);
  CHECK_THROWS_AS(annihilator_equivalence_or_throw(bm, t, Subhypergroup{{0}}), HyperError);

  // groups: the equivalence holds for every subgroup
  for (const char* name : {"z4", "z6", "z8"}) {
    const FiniteHypergroup& k = preset(name);
    CharacterTable tk = character_table(k);
    for (const auto& h : enumerate_subhypergroups(k))
      CHECK(annihilator_equivalence_check(k, tk, h).equivalent());
  }
}

TEST_CASE("transform of the sub-Haar measure is the annihilator indicator") {
  for (const char* name : {"bose_mesner_square", "z6", "class_s3", "prod_z2h_z2q"}) {
    const FiniteHypergroup& k = preset(name);
    CharacterTable t = character_table(k);
    for (const auto& h : enumerate_subhypergroups(k)) {
      Annihilator ann = annihilator(k, t, h);
      std::set<int> in(ann.characters.begin(), ann.characters.end());
      auto hat = subgroup_haar_transform(k, t, h);
      for (int r = 0; r < t.order(); ++r)
        CHECK(std::abs(hat[r] - (in.count(r) ? 1.0 : 0.0)) <= 1e-9);
    }
  }
}

TEST_CASE("restriction") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  CharacterTable t = character_table(bm);
  Subhypergroup h{{0, 1}};

  auto r0 = restrict_character(bm, t, 0, h);
  auto r1 = restrict_character(bm, t, 1, h);
  for (std::size_t i = 0; i < r0.size(); ++i) {
    CHECK(std::abs(r0[i] - 1.0) <= 1e-10);
    CHECK(std::abs(r1[i] - r0[i]) <= 1e-10);  // chi0 and chi1 restrict identically
  }
  CHECK_THROWS_AS(restrict_character(bm, t, 0, Subhypergroup{{0, 2}}), HyperError);

  // cyclic group of order 4, H = {0,2}: restrictions agree exactly in pairs
  const FiniteHypergroup& z4 = preset("z4");
  CharacterTable t4 = character_table(z4);
  Subhypergroup h4{{0, 2}};
  std::vector<std::vector<Cx>> rs;
  for (int r = 0; r < 4; ++r) rs.push_back(restrict_character(z4, t4, r, h4));
  int pairs = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      double d = 0;
      for (std::size_t i = 0; i < rs[a].size(); ++i) d = std::max(d, std::abs(rs[a][i] - rs[b][i]));
      if (d <= 1e-10) ++pairs;
    }
  CHECK(pairs == 2);
}

TEST_CASE("strong case: equal restrictions match annihilator cosets in the dual") {
  for (const char* name : {"z4", "bose_mesner_square", "prod_z2h_z2q"}) {
    const FiniteHypergroup& k = preset(name);
    CharacterTable t = character_table(k);
    FiniteHypergroup dual = dual_hypergroup(k, t);
    for (const auto& h : enumerate_subhypergroups(k)) {
      std::vector<int> hperp = annihilator(k, t, h).characters;
      for (int rho = 0; rho < t.order(); ++rho) {
        auto res_rho = restrict_character(k, t, rho, h);
        for (int sigma = 0; sigma < t.order(); ++sigma) {
          auto res_sigma = restrict_character(k, t, sigma, h);
          double d = 0;
          for (std::size_t i = 0; i < res_rho.size(); ++i)
            d = std::max(d, std::abs(res_rho[i] - res_sigma[i]));
          const bool equal_res = d <= 1e-8;
          auto blk = support_product(dual, std::vector<int>{sigma}, hperp);
          const bool in_coset = std::find(blk.begin(), blk.end(), rho) != blk.end();
          CHECK(equal_res == in_coset);
        }
      }
    }
  }
}

TEST_CASE("sub-hypergroup restriction as its own instance") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  FiniteHypergroup sub = sub_hypergroup(bm, Subhypergroup{{0, 1}});
  REQUIRE(sub.order() == 2);
  // delta_1 * delta_1 = delta_0 inside {0,1}: the two-element group
  CHECK(std::abs(sub.n(1, 1, 0) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(sub_hypergroup(bm, Subhypergroup{{0, 2}}), HyperError);
}
