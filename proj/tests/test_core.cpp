#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "hyperg/constructions.hpp"
#include "hyperg/hypergroup.hpp"
#include "hyperg/rng.hpp"

using namespace hyperg;
using Cx = std::complex<double>;

namespace {

bool has_kind(const AxiomViolationReport& r, Axiom a) {
  for (const auto& v : r.violations)
    if (v.kind == a) return true;
  return false;
}

StructureTensor z2_tensor(double theta) {
  StructureTensor t(2);
  t.at(0, 0, 0) = 1;
  t.at(0, 1, 1) = 1;
  t.at(1, 0, 1) = 1;
  t.at(1, 1, 0) = theta;
  t.at(1, 1, 1) = 1 - theta;
  return t;
}

}  // namespace

TEST_CASE("group Cayley tensor validates with unit Haar weights") {
  GroupTable z4 = cyclic_group(4);
  StructureTensor t(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.at(i, j, z4.mul(i, j)) = 1.0;
  ValidationResult r = validate(t, z4.inverse, "z4");
  REQUIRE(r.ok());
  for (int x = 0; x < 4; ++x) CHECK(r.hypergroup->haar(x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("order-2 family table from the multiplication rule") {
  FiniteHypergroup k = validate_or_throw(z2_tensor(0.5), {0, 1});
  Measure d1 = Measure::delta(2, 1);
  Measure conv = convolve(k, d1, d1);
  CHECK(conv.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(conv.weights[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k.haar(1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("identity axiom: delta_0 is a two-sided unit") {
  for (const auto& name : preset_names()) {
    const FiniteHypergroup& k = preset(name);
    for (int i = 0; i < k.order(); ++i)
      for (int z = 0; z < k.order(); ++z) {
        const double want = i == z ? 1.0 : 0.0;
        CHECK(std::abs(k.n(0, i, z) - want) <= 1e-12);
        CHECK(std::abs(k.n(i, 0, z) - want) <= 1e-12);
      }
  }
}

TEST_CASE("involution-support violation: vanishing mass at the identity") {
  // theta = 0 forces (delta_1 * delta_1){e} = 0 while involution fixes 1
  ValidationResult r = validate(z2_tensor(0.0), {0, 1});
  REQUIRE_FALSE(r.ok());
  CHECK(has_kind(r.report, Axiom::InvolutionSupport));
}

TEST_CASE("row-sum violation is reported with its indices") {
  StructureTensor t = z2_tensor(0.5);
  t.at(1, 1, 0) = 0.4;  // row (1,1) now sums to 0.9
  ValidationResult r = validate(t, {0, 1});
  REQUIRE_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.report.violations)
    if (v.kind == Axiom::RowSum && v.where[0] == 1 && v.where[1] == 1) found = true;
  CHECK(found);
  CHECK_THROWS_AS(validate_or_throw(t, {0, 1}), HyperError);
}

TEST_CASE("tiny negative entries are clamped, large ones rejected") {
  StructureTensor t = z2_tensor(1.0);
  t.at(1, 1, 1) = -1e-12;
  ValidationResult ok = validate(t, {0, 1});
  REQUIRE(ok.ok());
  CHECK(ok.hypergroup->n(1, 1, 1) == 0.0);

  StructureTensor bad = z2_tensor(1.0);
  bad.at(1, 1, 1) = -1e-3;
  bad.at(1, 1, 0) = 1.0 + 1e-3;  // keep the row sum at 1
  ValidationResult r = validate(bad, {0, 1});
  REQUIRE_FALSE(r.ok());
  CHECK(has_kind(r.report, Axiom::Negativity));
}

TEST_CASE("associativity is validated even when the short axioms hold") {
  // start from a valid commutative instance and trade mass between two rows
  FiniteHypergroup base = order3_hermitian(0.5, 3.0, 3.0);
  StructureTensor t = base.tensor();
  t.at(1, 2, 1) += 0.1;
  t.at(1, 2, 2) -= 0.1;
  t.at(2, 1, 1) += 0.1;
  t.at(2, 1, 2) -= 0.1;

  // independent witness: brute-force the associator on the perturbed tensor
  double worst = 0.0;
  const int n = 3;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        for (int z = 0; z < n; ++z) {
          double lhs = 0, rhs = 0;
          for (int m = 0; m < n; ++m) {
            lhs += t.at(i, j, m) * t.at(m, kk, z);
            rhs += t.at(j, kk, m) * t.at(i, m, z);
          }
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  REQUIRE(worst > 1e-6);

  ValidationResult r = validate(t, {0, 1, 2});
  REQUIRE_FALSE(r.ok());
  CHECK(has_kind(r.report, Axiom::Associativity));
}

TEST_CASE("Haar weights of the worked examples") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  CHECK(bm.haar(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bm.haar(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bm.haar(2) == doctest::Approx(2.0).epsilon(1e-12));
  const FiniteHypergroup z2q = z2_theta(0.25);
  CHECK(z2q.haar(1) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Haar translation invariance: sum_j w{j} n[i][j][k] = w{k}") {
  for (const auto& name : preset_names()) {
    const FiniteHypergroup& k = preset(name);
    for (int i = 0; i < k.order(); ++i)
      for (int kk = 0; kk < k.order(); ++kk) {
        double s = 0.0;
        for (int j = 0; j < k.order(); ++j) s += k.haar(j) * k.n(i, j, kk);
        CHECK(std::abs(s - k.haar(kk)) <= 1e-9);
      }
  }
}

TEST_CASE("support products") {
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  std::vector<int> all = {0, 1, 2};
  CHECK(support_product(bm, std::vector<int>{0}, all) == all);
  // gamma_1 = 0 in the square scheme: delta_2 * delta_1 = delta_2
  CHECK(support_product(bm, std::vector<int>{2}, std::vector<int>{0, 1}) == std::vector<int>{2});
  const FiniteHypergroup z2h = z2_theta(0.5);
  CHECK(support_product(z2h, std::vector<int>{1}, std::vector<int>{1}) == std::vector<int>{0, 1});
  // at theta = 1 the pair is a group and 1*1 collapses to the identity
  const FiniteHypergroup z2 = z2_theta(1.0);
  CHECK(support_product(z2, std::vector<int>{1}, std::vector<int>{1}) == std::vector<int>{0});
}

TEST_CASE("commutativity and hermiticity predicates") {
  CHECK(is_hermitian(preset("bose_mesner_square")));
  CHECK(is_commutative(preset("bose_mesner_square")));
  CHECK_FALSE(is_hermitian(preset("nonhermitian_alpha_1_2")));
  CHECK(is_commutative(preset("nonhermitian_alpha_1_2")));
  CHECK_FALSE(is_commutative(preset("s3_group")));
  CHECK_FALSE(is_hermitian(preset("s3_group")));
  CHECK(is_commutative(preset("class_s3")));
  // hermitian implies commutative on every validated instance
  for (const auto& name : preset_names()) {
    const FiniteHypergroup& k = preset(name);
    if (is_hermitian(k)) CHECK(is_commutative(k));
  }
}

TEST_CASE("eval_translated") {
  const FiniteHypergroup z2h = z2_theta(0.5);
  std::vector<Cx> ones = {1.0, 1.0};
  CHECK(std::abs(eval_translated(z2h, ones, 1, 1) - 1.0) <= 1e-15);

  // chi_1 = (1, -theta) is multiplicative: chi(1*1) = chi(1)^2 = theta^2
  for (double theta : {0.25, 0.5, 0.9}) {
    const FiniteHypergroup k = z2_theta(theta);
    std::vector<Cx> chi = {1.0, -theta};
    CHECK(std::abs(eval_translated(k, chi, 1, 1) - chi[1] * chi[1]) <= 1e-15);
  }

  // group case: the identity-indicator detects inverses
  const FiniteHypergroup& z4 = preset("z4");
  std::vector<Cx> ind = {1.0, 0.0, 0.0, 0.0};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const double want = (x + y) % 4 == 0 ? 1.0 : 0.0;
      CHECK(std::abs(eval_translated(z4, ind, x, y) - want) <= 1e-15);
    }
}

TEST_CASE("convolution maps probabilities to probabilities") {
  RngStream rng(914);
  auto names = preset_names();
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteHypergroup& k = preset(names[rng.next_u64() % names.size()]);
    Measure mu(k.order()), nu(k.order());
    double smu = 0, snu = 0;
    for (int x = 0; x < k.order(); ++x) {
      mu.weights[x] = rng.uniform01();
      nu.weights[x] = rng.uniform01();
      smu += mu.weights[x];
      snu += nu.weights[x];
    }
    for (int x = 0; x < k.order(); ++x) {
      mu.weights[x] /= smu;
      nu.weights[x] /= snu;
    }
    CHECK(convolve(k, mu, nu).is_probability(1e-9));
  }
}

TEST_CASE("identity convolution is exact") {
  for (const auto& name : {"bose_mesner_square", "nonhermitian_alpha_1_2", "class_d4"}) {
    const FiniteHypergroup& k = preset(name);
    Measure d0 = Measure::delta(k.order(), 0);
    for (int x = 0; x < k.order(); ++x) {
      Measure dx = Measure::delta(k.order(), x);
      Measure left = convolve(k, d0, dx);
      Measure right = convolve(k, dx, d0);
      for (int z = 0; z < k.order(); ++z) {
        CHECK(std::abs(left.weights[z] - dx.weights[z]) <= 1e-12);
        CHECK(std::abs(right.weights[z] - dx.weights[z]) <= 1e-12);
      }
    }
  }
}
