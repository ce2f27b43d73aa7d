#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "hyperg/bench.hpp"
#include "hyperg/constructions.hpp"
#include "hyperg/duality.hpp"
#include "hyperg/io.hpp"
#include "hyperg/rng.hpp"

using namespace hyperg;

namespace {

const char* kZ2HalfDoc = R"({
  "name": "pair",
  "order": 2,
  "involution": [0, 1],
  "constants": [
    [[1, 0], [0, 1]],
    [[0, 1], ["1/2", "1/2"]]
  ]
})";

}  // namespace

TEST_CASE("documents with exact rationals") {
  FiniteHypergroup k = parse_hypergroup(kZ2HalfDoc);
  CHECK(k.order() == 2);
  CHECK(k.n(1, 1, 0) == 0.5);  // "1/2" evaluates exactly
  CHECK(k.haar(1) == 2.0);
  CHECK(k.name() == "pair");

  std::string third = R"({"order":2,"involution":[0,1],
    "constants":[[[1,0],[0,1]],[[0,1],["1/3","2/3"]]]})";
  FiniteHypergroup k3 = parse_hypergroup(third);
  CHECK(k3.n(1, 1, 0) == 1.0 / 3.0);

  CHECK_THROWS_AS(parse_hypergroup(R"({"order":1,"involution":[0],"constants":[[["1/0"]]]})"),
                  HyperError);
}

TEST_CASE("emit/load round trip is exact") {
  for (const char* name : {"bose_mesner_square", "nonhermitian_alpha_1_2", "class_d4"}) {
    const FiniteHypergroup& k = preset(name);
    FiniteHypergroup back = parse_hypergroup(emit_hypergroup(k));
    REQUIRE(back.order() == k.order());
    for (std::size_t i = 0; i < k.tensor().constants.size(); ++i)
      CHECK(back.tensor().constants[i] == k.tensor().constants[i]);  // bit-exact
    CHECK(back.involution() == k.involution());
    CHECK(tensor_digest(back) == tensor_digest(k));
  }
}

TEST_CASE("axiom failures surface the report") {
  std::string bad = R"({"order":2,"involution":[0,1],
    "constants":[[[1,0],[0,1]],[[0,1],[0.4,0.5]]]})";
  try {
    parse_hypergroup(bad);
    FAIL("expected AxiomViolation");
  } catch (const HyperError& e) {
    CHECK(e.code() == Errc::AxiomViolation);
    CHECK(std::string(e.what()).find("RowSum") != std::string::npos);
  }
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_hypergroup("not json"), HyperError);
  CHECK_THROWS_AS(parse_hypergroup(R"({"order":2})"), HyperError);
  CHECK_THROWS_AS(load_hypergroup("/no/such/file.json"), HyperError);
  try {
    load_hypergroup("/no/such/file.json");
  } catch (const HyperError& e) {
    CHECK(e.code() == Errc::Io);
  }
}

TEST_CASE("preset references") {
  FiniteHypergroup k = load_hypergroup("preset:bose_mesner_square");
  CHECK(k.order() == 3);
  CHECK_THROWS_AS(load_hypergroup("preset:missing"), HyperError);
}

TEST_CASE("digest is canonical") {
  // same tensor via different construction routes hashes identically
  CHECK(tensor_digest(z2_theta(1.0)) == tensor_digest(group_hypergroup(cyclic_group(2))));
  CHECK(tensor_digest(z2_theta(0.5)) != tensor_digest(z2_theta(0.25)));
  // emission is stable
  CHECK(emit_hypergroup(preset("z6")) == emit_hypergroup(preset("z6")));
}

TEST_CASE("factored transform application agrees with the dense kronecker matrix") {
  const FiniteHypergroup z2h = z2_theta(0.5);
  FourierMatrix f = fourier_matrix(z2h, character_table(z2h));
  std::vector<Eigen::MatrixXcd> factors(3, f.entries);
  Eigen::MatrixXcd dense = kron(kron(f.entries, f.entries), f.entries);
  RngStream rng(11);
  Eigen::VectorXcd v(8);
  for (int i = 0; i < 8; ++i) v[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  Eigen::VectorXcd got = apply_factored(factors, v);
  CHECK((dense * v - got).cwiseAbs().maxCoeff() <= 1e-12);

  // mixed factor sizes
  const FiniteHypergroup& bm = preset("bose_mesner_square");
  FourierMatrix f3 = fourier_matrix(bm, character_table(bm));
  std::vector<Eigen::MatrixXcd> mixed = {f.entries, f3.entries};
  Eigen::MatrixXcd dense23 = kron(f.entries, f3.entries);
  Eigen::VectorXcd w(6);
  for (int i = 0; i < 6; ++i) w[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  CHECK((dense23 * w - apply_factored(mixed, w)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("bench rows are well-formed") {
  auto rows = run_transform_bench(4, 1);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.dim == (1 << r.k));
    CHECK(r.max_err <= 1e-10);
    CHECK(r.dense_us > 0.0);
    CHECK(r.factored_us > 0.0);
  }
}
