#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperg/bench.hpp"
#include "hyperg/constructions.hpp"
#include "hyperg/duality.hpp"
#include "hyperg/hshp.hpp"
#include "hyperg/io.hpp"
#include "hyperg/subobjects.hpp"

namespace py = pybind11;
using namespace hyperg;

namespace {

using CxVec = std::vector<std::complex<double>>;
using CxMat = std::vector<CxVec>;

CxMat to_rows(const Eigen::MatrixXcd& m) {
  CxMat rows(m.rows(), CxVec(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

StructureTensor tensor_from_nested(const std::vector<std::vector<std::vector<double>>>& c) {
  const int n = static_cast<int>(c.size());
  StructureTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t.at(i, j, k) = c.at(i).at(j).at(k);
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite commutative hypergroups: validation, harmonic analysis, and an exact "
            "simulator for the hidden-subhypergroup algorithm";

  py::register_exception<HyperError>(m, "HyperError", PyExc_RuntimeError);

  py::class_<FiniteHypergroup>(m, "Hypergroup")
      .def_property_readonly("order", &FiniteHypergroup::order)
      .def_property_readonly("name", [](const FiniteHypergroup& k) { return k.name(); })
      .def_property_readonly("haar",
                             [](const FiniteHypergroup& k) { return k.haar(); })
      .def_property_readonly("haar_total", &FiniteHypergroup::haar_total)
      .def_property_readonly("involution",
                             [](const FiniteHypergroup& k) { return k.involution(); })
      .def("n", [](const FiniteHypergroup& k, int i, int j, int kk) { return k.n(i, j, kk); })
      .def_property_readonly("constants",
                             [](const FiniteHypergroup& k) {
                               const int n = k.order();
                               std::vector<std::vector<std::vector<double>>> c(
                                   n, std::vector<std::vector<double>>(n, std::vector<double>(n)));
                               for (int i = 0; i < n; ++i)
                                 for (int j = 0; j < n; ++j)
                                   for (int z = 0; z < n; ++z) c[i][j][z] = k.n(i, j, z);
                               return c;
                             })
      .def_property_readonly("is_commutative",
                             [](const FiniteHypergroup& k) { return is_commutative(k); })
      .def_property_readonly("is_hermitian",
                             [](const FiniteHypergroup& k) { return is_hermitian(k); })
      .def("__repr__", [](const FiniteHypergroup& k) {
        return "<Hypergroup '" + k.name() + "' order " + std::to_string(k.order()) + ">";
      });

  py::class_<CharacterTable>(m, "CharacterTable")
      .def_property_readonly("order", &CharacterTable::order)
      .def_property_readonly("plancherel", [](const CharacterTable& t) { return t.plancherel; })
      .def_property_readonly("characters",
                             [](const CharacterTable& t) {
                               CxMat rows;
                               for (const auto& c : t.characters) rows.push_back(c.values);
                               return rows;
                             })
      .def("value", &CharacterTable::value)
      .def("conjugate_index", &CharacterTable::conjugate_index, py::arg("rho"),
           py::arg("tol") = 1e-7);

  py::class_<FourierMatrix>(m, "FourierMatrix")
      .def_property_readonly("matrix", [](const FourierMatrix& f) { return to_rows(f.entries); })
      .def_property_readonly("unitarity_residual",
                             [](const FourierMatrix& f) { return f.unitarity_residual; });

  py::class_<Subhypergroup>(m, "Subhypergroup")
      .def_property_readonly("members", [](const Subhypergroup& h) { return h.members; })
      .def("__repr__", [](const Subhypergroup& h) {
        std::string s = "<Subhypergroup {";
        for (std::size_t i = 0; i < h.members.size(); ++i)
          s += (i ? "," : "") + std::to_string(h.members[i]);
        return s + "}>";
      });

  py::class_<CosetPartition>(m, "CosetPartition")
      .def_readonly("blocks", &CosetPartition::blocks)
      .def_readonly("representative", &CosetPartition::representative)
      .def_readonly("block_mass", &CosetPartition::block_mass)
      .def_readonly("block_of", &CosetPartition::block_of);

  py::class_<Annihilator>(m, "Annihilator")
      .def_readonly("characters", &Annihilator::characters);

  py::class_<AnnihilatorEquivalenceReport>(m, "AnnihilatorEquivalenceReport")
      .def_readonly("in_annihilator", &AnnihilatorEquivalenceReport::in_annihilator)
      .def_readonly("all_cosets_nonzero", &AnnihilatorEquivalenceReport::all_cosets_nonzero)
      .def_readonly("some_coset_nonzero", &AnnihilatorEquivalenceReport::some_coset_nonzero)
      .def_property_readonly("equivalent", &AnnihilatorEquivalenceReport::equivalent)
      .def_property_readonly("offenders", [](const AnnihilatorEquivalenceReport& r) {
        std::vector<std::pair<int, int>> out;
        for (const auto& o : r.offenders) out.emplace_back(o.character, o.block);
        return out;
      });

  py::class_<CosetOracle>(m, "CosetOracle")
      .def_property_readonly("labels", [](const CosetOracle& o) { return o.labels; })
      .def("__call__", [](const CosetOracle& o, int x) { return o(x); });

  py::class_<DistributionReport>(m, "DistributionReport")
      .def_readonly("per_coset", &DistributionReport::per_coset)
      .def_readonly("coset_probability", &DistributionReport::coset_probability)
      .def_readonly("marginal", &DistributionReport::marginal)
      .def_readonly("support", &DistributionReport::support)
      .def_readonly("off_annihilator_mass", &DistributionReport::off_annihilator_mass)
      .def_readonly("max_tv_distance", &DistributionReport::max_tv_distance);

  py::class_<HSHPRun>(m, "HSHPRun")
      .def_readonly("seed", &HSHPRun::seed)
      .def_readonly("shots", &HSHPRun::shots)
      .def_readonly("verified", &HSHPRun::verified)
      .def_property_readonly("reconstructed", [](const HSHPRun& r) { return r.reconstructed.members; })
      .def_property_readonly("observed", [](const HSHPRun& r) { return r.observed; })
      .def_property_readonly("trace", [](const HSHPRun& r) {
        std::vector<std::pair<int, int>> t;
        for (const auto& s : r.trace) t.emplace_back(s.label, s.character);
        return t;
      });

  // construction and validation
  m.def(
      "validate",
      [](const std::vector<std::vector<std::vector<double>>>& constants,
         const std::vector<int>& involution, const std::string& name, double tol) {
        return validate_or_throw(tensor_from_nested(constants), involution, name,
                                 ValidateOptions{tol});
      },
      py::arg("constants"), py::arg("involution"), py::arg("name") = "", py::arg("tol") = 1e-9);
  m.def("z2_theta", &z2_theta);
  m.def("order3_hermitian", &order3_hermitian);
  m.def("order3_nonhermitian", &order3_nonhermitian);
  m.def("cyclic_group_hypergroup", [](int n) { return group_hypergroup(cyclic_group(n)); });
  m.def("group_hypergroup", [](const std::vector<std::vector<int>>& cayley) {
    return group_hypergroup(make_group_table(cayley));
  });
  m.def("class_hypergroup", [](const std::vector<std::vector<int>>& cayley) {
    return class_hypergroup(make_group_table(cayley));
  });
  m.def("double_coset", [](const std::vector<std::vector<int>>& cayley, const std::vector<int>& h) {
    return double_coset(make_group_table(cayley), h);
  });
  m.def("direct_product", &direct_product);
  m.def("preset", [](const std::string& name) { return preset(name); });
  m.def("preset_names", &preset_names);

  // core operations
  m.def(
      "convolve",
      [](const FiniteHypergroup& k, const std::vector<double>& mu, const std::vector<double>& nu) {
        Measure a, b;
        a.weights = mu;
        b.weights = nu;
        return convolve(k, a, b).weights;
      },
      py::arg("k"), py::arg("mu"), py::arg("nu"));
  m.def(
      "support_product",
      [](const FiniteHypergroup& k, const std::vector<int>& a, const std::vector<int>& b,
         double tol) { return support_product(k, a, b, tol); },
      py::arg("k"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
  m.def(
      "eval_translated",
      [](const FiniteHypergroup& k, const CxVec& f, int x, int y) {
        return eval_translated(k, f, x, y);
      },
      py::arg("k"), py::arg("f"), py::arg("x"), py::arg("y"));

  // duality
  m.def("character_table", [](const FiniteHypergroup& k) { return character_table(k); });
  m.def("fourier_matrix",
        [](const FiniteHypergroup& k, const CharacterTable& t) { return fourier_matrix(k, t); });
  m.def("tau", &tau);
  m.def("fourier_of_measure", [](const FiniteHypergroup& k, const CharacterTable& t,
                                 const std::vector<double>& mu) {
    Measure m2;
    m2.weights = mu;
    return fourier_of_measure(k, t, m2);
  });
  m.def("fourier_of_function",
        [](const FiniteHypergroup& k, const CharacterTable& t, const CxVec& f) {
          return fourier_of_function(k, t, f);
        });
  m.def("inverse_fourier", [](const FiniteHypergroup& k, const CharacterTable& t, const CxVec& kv) {
    return inverse_fourier(k, t, kv);
  });
  m.def("dual_hypergroup", [](const FiniteHypergroup& k) {
    return dual_hypergroup(k, character_table(k));
  });
  m.def("is_strong", [](const FiniteHypergroup& k) { return is_strong(k); });
  m.def("double_dual_check", [](const FiniteHypergroup& k) { return double_dual_check(k); });

  // subobjects
  m.def(
      "enumerate_subhypergroups",
      [](const FiniteHypergroup& k, int cap) {
        return enumerate_subhypergroups(k, EnumerateOptions{cap, 1e-9});
      },
      py::arg("k"), py::arg("cap") = 20);
  m.def("certify_subhypergroup", [](const FiniteHypergroup& k, const std::vector<int>& members) {
    return certify_subhypergroup(k, members);
  });
  m.def("cosets",
        [](const FiniteHypergroup& k, const Subhypergroup& h) { return cosets(k, h); });
  m.def("annihilator", [](const FiniteHypergroup& k, const CharacterTable& t,
                          const Subhypergroup& h) { return annihilator(k, t, h); });
  m.def("quotient",
        [](const FiniteHypergroup& k, const Subhypergroup& h) { return quotient(k, h); });
  m.def("annihilator_equivalence_check", [](const FiniteHypergroup& k, const CharacterTable& t,
                            const Subhypergroup& h) { return annihilator_equivalence_check(k, t, h); });
  m.def("restrict_character",
        [](const FiniteHypergroup& k, const CharacterTable& t, int rho, const Subhypergroup& h) {
          return restrict_character(k, t, rho, h);
        });

  // hidden-subhypergroup pipeline
  m.def("make_coset_oracle", &make_coset_oracle);
  m.def("oracle_from_labels", &oracle_from_labels);
  m.def("exact_distribution",
        [](const FiniteHypergroup& k, const CharacterTable& t, const Subhypergroup& h) {
          return exact_distribution(k, t, h);
        });
  m.def(
      "solve_hshp",
      [](const FiniteHypergroup& k, const CosetOracle& oracle, std::uint64_t seed, int batch_size,
         int max_batches) {
        CharacterTable t = character_table(k);
        FourierMatrix f = fourier_matrix(k, t);
        SolvePolicy policy;
        if (batch_size > 0) policy.batch_size = batch_size;
        if (max_batches > 0) policy.max_batches = max_batches;
        return solve_hshp(k, t, f, oracle, seed, policy);
      },
      py::arg("k"), py::arg("oracle"), py::arg("seed") = 0, py::arg("batch_size") = 0,
      py::arg("max_batches") = 0);
  m.def("reconstruct", [](const FiniteHypergroup& k, const CharacterTable& t,
                          const std::vector<int>& samples) { return reconstruct(k, t, samples); });
  m.def("verify_against_oracle", &verify_against_oracle);

  // documents
  m.def("load", [](const std::string& path) { return load_hypergroup(path); });
  m.def("loads", [](const std::string& text) { return parse_hypergroup(text); });
  m.def("emit", &emit_hypergroup);
  m.def("tensor_digest", &tensor_digest);
}
