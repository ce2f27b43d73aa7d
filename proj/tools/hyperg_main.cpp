#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperg/bench.hpp"
#include "hyperg/constructions.hpp"
#include "hyperg/duality.hpp"
#include "hyperg/hshp.hpp"
#include "hyperg/io.hpp"
#include "hyperg/selftest.hpp"
#include "hyperg/subobjects.hpp"

namespace {

using json = nlohmann::json;
using namespace hyperg;

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::Io:
    case Errc::BadDocument:
      return 4;
    case Errc::Unresolved:
      return 3;
    default:
      return 2;
  }
}

json cx_json(std::complex<double> v) { return json::array({v.real(), v.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cx_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

struct CommonOpts {
  std::string input = "preset:bose_mesner_square";
  std::string format = "table";
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool timings = false;
  bool selftest = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
  if (with_input) cmd->add_option("--input", o.input, "JSON document path or preset:NAME");
  cmd->add_option("--format", o.format, "table|json|tsv")
      ->check(CLI::IsMember({"table", "json", "tsv"}));
  cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
  cmd->add_option("--seed", o.seed, "RNG seed (default 0)");
  cmd->add_option("--tol", o.tol, "validation tolerance override");
  cmd->add_flag("--timings", o.timings, "include wall times in the report (breaks byte-identity)");
  cmd->add_flag("--selftest", o.selftest, "run the release criteria relevant to this command");
}

struct Report {
  json doc;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Report(const std::string& command, const CommonOpts& o) {
    doc["command"] = command;
    doc["seed"] = o.seed;
  }
  void attach_instance(const FiniteHypergroup& k, const std::string& input) {
    doc["input"] = input;
    doc["instance"] = {{"name", k.name()}, {"order", k.order()}, {"digest", tensor_digest(k)}};
  }
  void finish(const CommonOpts& o, const std::string& table_text, const std::string& tsv_text) {
    if (o.timings)
      doc["wall_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw HyperError(Errc::Io, "cannot write '" + o.out + "'");
      os = &file;
    }
    if (o.format == "json")
      *os << doc.dump(2) << "\n";
    else if (o.format == "tsv")
      *os << tsv_text;
    else
      *os << table_text;
  }
};

std::string fmt_cx(std::complex<double> v) {
  char buf[64];
  if (std::abs(v.imag()) < 1e-14)
    std::snprintf(buf, sizeof(buf), "%.10g", v.real());
  else
    std::snprintf(buf, sizeof(buf), "%.10g%+.10gi", v.real(), v.imag());
  return buf;
}

int run_selftest_for(const std::string& command) {
  int failed = run_criteria(criteria_for_command(command), std::cout);
  return failed == 0 ? 0 : 1;
}

int cmd_validate(const CommonOpts& o) {
  if (o.selftest) return run_selftest_for("validate");
  Report rep("validate", o);
  // surface the full report instead of the exception path
  std::string text;
  if (o.input.rfind("preset:", 0) != 0) {
    std::ifstream in(o.input);
    if (!in) throw HyperError(Errc::Io, "cannot open '" + o.input + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  FiniteHypergroup k = text.empty() ? load_hypergroup(o.input, o.tol) : parse_hypergroup(text, o.tol);
  rep.attach_instance(k, o.input);
  rep.doc["results"] = {{"valid", true},
                        {"commutative", is_commutative(k, o.tol)},
                        {"hermitian", is_hermitian(k)},
                        {"haar", k.haar()},
                        {"haar_total", k.haar_total()}};
  std::ostringstream tbl, tsv;
  tbl << "instance " << k.name() << " (order " << k.order() << ", digest " << tensor_digest(k)
      << ")\n  valid: yes\n  commutative: " << (is_commutative(k, o.tol) ? "yes" : "no")
      << "\n  hermitian: " << (is_hermitian(k) ? "yes" : "no") << "\n  haar:";
  tsv << "x\thaar\n";
  for (int x = 0; x < k.order(); ++x) {
    tbl << " " << k.haar(x);
    tsv << x << "\t" << k.haar(x) << "\n";
  }
  tbl << "  (total " << k.haar_total() << ")\n";
  rep.finish(o, tbl.str(), tsv.str());
  return 0;
}

int cmd_chartable(const CommonOpts& o, const std::string& expected_path) {
  if (o.selftest) return run_selftest_for("chartable");
  Report rep("chartable", o);
  FiniteHypergroup k = load_hypergroup(o.input, o.tol);
  rep.attach_instance(k, o.input);
  CharacterTable t = character_table(k);

  json chars = json::array();
  for (const auto& ch : t.characters) {
    json row = json::array();
    for (auto v : ch.values) row.push_back(cx_json(v));
    chars.push_back(row);
  }
  rep.doc["results"] = {{"characters", chars}, {"plancherel", t.plancherel}, {"haar", k.haar()}};

  if (!expected_path.empty()) {
    // permutation from the user's rows onto the canonical order
    std::ifstream in(expected_path);
    if (!in) throw HyperError(Errc::Io, "cannot open '" + expected_path + "'");
    json exp = json::parse(in, nullptr, false);
    if (exp.is_discarded() || !exp.contains("characters"))
      throw HyperError(Errc::BadDocument, "expected-table file needs a characters array");
    json perm = json::array();
    for (const auto& row : exp["characters"]) {
      int match = -1;
      for (int r = 0; r < t.order() && match < 0; ++r) {
        double d = 0.0;
        for (int x = 0; x < k.order(); ++x) {
          std::complex<double> want(row[x][0].get<double>(), row[x][1].get<double>());
          d = std::max(d, std::abs(t.value(r, x) - want));
        }
        if (d <= 1e-8) match = r;
      }
      perm.push_back(match < 0 ? json(nullptr) : json(match));
    }
    rep.doc["results"]["expected_permutation"] = perm;
  }

  std::ostringstream tbl, tsv;
  tbl << "character table of " << k.name() << " (order " << k.order() << ")\n";
  tbl << "  omega:";
  for (int x = 0; x < k.order(); ++x) tbl << " " << k.haar(x);
  tbl << "\n";
  tsv << "character\tpi";
  for (int x = 0; x < k.order(); ++x) tsv << "\tx" << x;
  tsv << "\n";
  for (int r = 0; r < t.order(); ++r) {
    tbl << "  chi" << r << "  pi=" << t.plancherel[r] << "  [";
    tsv << r << "\t" << t.plancherel[r];
    for (int x = 0; x < k.order(); ++x) {
      tbl << (x ? ", " : "") << fmt_cx(t.value(r, x));
      tsv << "\t" << fmt_cx(t.value(r, x));
    }
    tbl << "]\n";
    tsv << "\n";
  }
  rep.finish(o, tbl.str(), tsv.str());
  return 0;
}

int cmd_qft(const CommonOpts& o) {
  if (o.selftest) return run_selftest_for("qft");
  Report rep("qft", o);
  FiniteHypergroup k = load_hypergroup(o.input, o.tol);
  rep.attach_instance(k, o.input);
  CharacterTable t = character_table(k);
  FourierMatrix f = fourier_matrix(k, t);
  std::vector<double> taus(k.order());
  for (int x = 0; x < k.order(); ++x) taus[x] = tau(k, t, x);
  rep.doc["results"] = {{"matrix", matrix_json(f.entries)},
                        {"unitarity_residual", f.unitarity_residual},
                        {"tau", taus}};
  std::ostringstream tbl, tsv;
  tbl << "unitary transform of " << k.name() << " (rows = characters, columns = elements)\n";
  for (int r = 0; r < k.order(); ++r) {
    tbl << "  [";
    for (int x = 0; x < k.order(); ++x) {
      tbl << (x ? ", " : "") << fmt_cx(f.entries(r, x));
      tsv << (x ? "\t" : "") << fmt_cx(f.entries(r, x));
    }
    tbl << "]\n";
    tsv << "\n";
  }
  tbl << "  unitarity residual: " << f.unitarity_residual << "\n";
  rep.finish(o, tbl.str(), tsv.str());
  return 0;
}

int cmd_subs(const CommonOpts& o) {
  if (o.selftest) return run_selftest_for("subs");
  Report rep("subs", o);
  FiniteHypergroup k = load_hypergroup(o.input, o.tol);
  rep.attach_instance(k, o.input);
  CharacterTable t = character_table(k);
  auto subs = enumerate_subhypergroups(k);

  json list = json::array();
  std::ostringstream tbl, tsv;
  tbl << k.name() << " has " << subs.size() << " subhypergroups\n";
  tsv << "members\tannihilator\tequivalence\n";
  for (const auto& h : subs) {
    CosetPartition part = cosets(k, h, o.tol);
    Annihilator ann = annihilator(k, t, h, o.tol);
    AnnihilatorEquivalenceReport lem = annihilator_equivalence_check(k, t, h, o.tol);
    json offenders = json::array();
    for (const auto& off : lem.offenders)
      offenders.push_back({{"character", off.character}, {"block", off.block}});
    json entry = {{"members", h.members},
                  {"cosets", part.blocks},
                  {"block_mass", part.block_mass},
                  {"annihilator", ann.characters},
                  {"equivalence",
                   {{"in_annihilator", lem.in_annihilator},
                    {"all_cosets_nonzero", lem.all_cosets_nonzero},
                    {"some_coset_nonzero", lem.some_coset_nonzero},
                    {"equivalent", lem.equivalent()},
                    {"offenders", offenders}}}};
    list.push_back(entry);

    tbl << "  H = {";
    for (std::size_t i = 0; i < h.members.size(); ++i) tbl << (i ? "," : "") << h.members[i];
    tbl << "}  cosets:";
    for (const auto& b : part.blocks) {
      tbl << " {";
      for (std::size_t i = 0; i < b.size(); ++i) tbl << (i ? "," : "") << b[i];
      tbl << "}";
    }
    tbl << "  annihilator: {";
    for (std::size_t i = 0; i < ann.characters.size(); ++i)
      tbl << (i ? "," : "") << "chi" << ann.characters[i];
    tbl << "}  equivalence: " << (lem.equivalent() ? "holds" : "BREAKS") << "\n";
    tsv << "{";
    for (std::size_t i = 0; i < h.members.size(); ++i) tsv << (i ? "," : "") << h.members[i];
    tsv << "}\t{";
    for (std::size_t i = 0; i < ann.characters.size(); ++i) tsv << (i ? "," : "") << ann.characters[i];
    tsv << "}\t" << (lem.equivalent() ? 1 : 0) << "\n";
  }
  rep.doc["results"] = {{"subhypergroups", list}};
  rep.finish(o, tbl.str(), tsv.str());
  return 0;
}

int cmd_hshp(const CommonOpts& o, const std::string& hidden_csv, const std::string& oracle_path,
             int shots_per_batch, int max_batches) {
  if (o.selftest) return run_selftest_for("hshp");
  Report rep("hshp", o);
  FiniteHypergroup k = load_hypergroup(o.input, o.tol);
  rep.attach_instance(k, o.input);
  CharacterTable t = character_table(k);
  FourierMatrix f = fourier_matrix(k, t);

  CosetOracle oracle;
  if (!oracle_path.empty()) {
    std::ifstream in(oracle_path);
    if (!in) throw HyperError(Errc::Io, "cannot open '" + oracle_path + "'");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.contains("labels"))
      throw HyperError(Errc::BadDocument, "oracle file needs a labels array");
    std::vector<int> labels = doc["labels"].get<std::vector<int>>();
    if (static_cast<int>(labels.size()) != k.order())
      throw HyperError(Errc::BadDocument, "oracle labels must cover all of K");
    oracle = oracle_from_labels(std::move(labels));
  } else {
    std::vector<int> members;
    std::stringstream ss(hidden_csv);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) members.push_back(std::stoi(item));
    if (members.empty()) members.push_back(0);
    oracle = make_coset_oracle(k, certify_subhypergroup(k, members, o.tol));
  }

  SolvePolicy policy;
  if (shots_per_batch > 0) policy.batch_size = shots_per_batch;
  if (max_batches > 0) policy.max_batches = max_batches;
  HSHPRun run = solve_hshp(k, t, f, oracle, o.seed, policy);

  json observed = json::object();
  for (const auto& [ch, count] : run.observed) observed[std::to_string(ch)] = count;
  json trace = json::array();
  for (const auto& s : run.trace) trace.push_back(json::array({s.label, s.character}));
  json exact = json::object();
  if (oracle.hidden) {
    DistributionReport dist = exact_distribution(k, t, *oracle.hidden);
    exact = {{"marginal", dist.marginal},
             {"per_coset", dist.per_coset},
             {"support", dist.support},
             {"off_annihilator_mass", dist.off_annihilator_mass},
             {"max_tv_distance", dist.max_tv_distance}};
  }
  rep.doc["results"] = {{"verified", run.verified},
                        {"reconstructed", run.reconstructed.members},
                        {"shots", run.shots},
                        {"policy", {{"batch_size", run.policy.batch_size}, {"max_batches", run.policy.max_batches}}},
                        {"observed", observed},
                        {"trace", trace},
                        {"reconstruction_gap", reconstruction_gap(k, t)},
                        {"exact", exact}};

  std::ostringstream tbl, tsv;
  tbl << "hidden-subhypergroup run on " << k.name() << " (seed " << o.seed << ")\n  reconstructed: {";
  for (std::size_t i = 0; i < run.reconstructed.members.size(); ++i)
    tbl << (i ? "," : "") << run.reconstructed.members[i];
  tbl << "}  verified: " << (run.verified ? "yes" : "no") << "  shots: " << run.shots << "\n";
  tbl << "  observed characters:";
  for (const auto& [ch, count] : run.observed) tbl << " chi" << ch << " x" << count;
  tbl << "\n  reconstruction gap: " << reconstruction_gap(k, t) << "\n";
  tsv << "shot\tlabel\tcharacter\n";
  for (std::size_t i = 0; i < run.trace.size(); ++i)
    tsv << i << "\t" << run.trace[i].label << "\t" << run.trace[i].character << "\n";
  rep.finish(o, tbl.str(), tsv.str());
  return 0;
}

int cmd_bench(const CommonOpts& o, int max_k) {
  if (o.selftest) {
    // correctness gate for the factored path; timings are reported, not asserted
    auto rows = run_transform_bench(std::min(max_k, 6), o.seed);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.max_err);
    std::cout << "bench selftest: factored vs dense max error " << worst
              << (worst <= 1e-10 ? " PASS" : " FAIL") << "\n";
    return worst <= 1e-10 ? 0 : 1;
  }
  Report rep("bench", o);
  auto rows = run_transform_bench(max_k, o.seed);
  json jrows = json::array();
  for (const auto& r : rows)
    jrows.push_back({{"k", r.k},
                     {"dim", r.dim},
                     {"dense_us", r.dense_us},
                     {"factored_us", r.factored_us},
                     {"max_err", r.max_err}});
  rep.doc["results"] = {{"rows", jrows}, {"crossover_k", crossover_k(rows)}};
  std::ostringstream tbl, tsv;
  tbl << "dense vs factored transform application (k-fold product of the theta=1/2 pair)\n";
  char line[160];
  std::snprintf(line, sizeof(line), "  %2s %6s %12s %12s %10s\n", "k", "dim", "dense_us",
                "factored_us", "max_err");
  tbl << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "  %2d %6d %12.2f %12.2f %10.2e\n", r.k, r.dim, r.dense_us,
                  r.factored_us, r.max_err);
    tbl << line;
  }
  int cross = crossover_k(rows);
  tbl << (cross > 0 ? "  factored wins from k = " + std::to_string(cross) + "\n"
                    : "  no crossover in the measured range\n");
  std::ostringstream csv;
  write_bench_csv(rows, csv);
  rep.finish(o, tbl.str(), csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite commutative hypergroups: harmonic analysis and a hidden-subhypergroup solver"};
  app.require_subcommand(1);

  CommonOpts v_opts, c_opts, q_opts, s_opts, h_opts, b_opts;
  std::string expected_path, hidden_csv = "0", oracle_path;
  int shots_per_batch = 0, max_batches = 0, max_k = 8;
  std::vector<int> criteria;

  add_common(app.add_subcommand("validate", "validate a document and print Haar data"), v_opts);
  auto* chart = app.add_subcommand("chartable", "characters and Plancherel weights");
  add_common(chart, c_opts);
  chart->add_option("--expected", expected_path, "JSON table to match against the canonical order");
  add_common(app.add_subcommand("qft", "unitary transform matrix and diagnostics"), q_opts);
  add_common(app.add_subcommand("subs", "subhypergroups, cosets, annihilators, equivalence report"),
             s_opts);
  auto* hshp_cmd = app.add_subcommand("hshp", "simulate the hidden-subhypergroup algorithm");
  add_common(hshp_cmd, h_opts);
  hshp_cmd->add_option("--hidden", hidden_csv, "hidden subhypergroup members, e.g. 0,1");
  hshp_cmd->add_option("--oracle", oracle_path, "JSON label map file instead of --hidden");
  hshp_cmd->add_option("--shots", shots_per_batch, "shots per batch (default 4*ceil(log2|K|)+8)");
  hshp_cmd->add_option("--batches", max_batches, "maximum batches (default 16)");
  auto* bench_cmd = app.add_subcommand("bench", "dense vs factored transform timing");
  add_common(bench_cmd, b_opts, false);
  bench_cmd->add_option("--max-k", max_k, "largest tensor power to time (default 8)");
  auto* self_cmd = app.add_subcommand("selftest", "run the release criteria");
  self_cmd->add_option("--criterion", criteria, "criterion ids (default: all nine)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("validate")) return cmd_validate(v_opts);
    if (app.got_subcommand("chartable")) return cmd_chartable(c_opts, expected_path);
    if (app.got_subcommand("qft")) return cmd_qft(q_opts);
    if (app.got_subcommand("subs")) return cmd_subs(s_opts);
    if (app.got_subcommand("hshp"))
      return cmd_hshp(h_opts, hidden_csv, oracle_path, shots_per_batch, max_batches);
    if (app.got_subcommand("bench")) return cmd_bench(b_opts, max_k);
    if (app.got_subcommand("selftest")) return run_criteria(criteria, std::cout) == 0 ? 0 : 1;
  } catch (const HyperError& e) {
    json err = {{"error", {{"kind", errc_name(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    json err = {{"error", {{"kind", "Internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
