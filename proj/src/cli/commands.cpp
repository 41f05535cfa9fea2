#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdist/cli.hpp"
#include "fdist/error.hpp"
#include "fdist/lemmas.hpp"
#include "fdist/search.hpp"

namespace fdist {

namespace {

using nlohmann::json;

constexpr int kSchema = 1;

// ---------------------------------------------------------------- json

json cplx_json(cplx c) { return json::array({c.real(), c.imag()}); }

// Row-major list of [re, im] pairs.
json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(cplx_json(m(r, c)));
  return out;
}

json cplx_vector_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (cplx c : v) out.push_back(cplx_json(c));
  return out;
}

std::vector<cplx> parse_values(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_array()) fail(ErrorKind::InvalidArgument, "--values must be a JSON array");
  std::vector<cplx> out;
  for (const auto& e : j) {
    if (e.is_number()) out.emplace_back(e.get<double>(), 0.0);
    else if (e.is_array() && e.size() == 2) out.emplace_back(e[0].get<double>(), e[1].get<double>());
    else fail(ErrorKind::InvalidArgument, "--values entries must be numbers or [re, im] pairs");
  }
  return out;
}

json optimizer_json(const OptimizerMeta& m) {
  return {{"restarts", m.restarts},           {"total_iterations", m.total_iterations},
          {"converged_restarts", m.converged_restarts}, {"samples", m.samples},
          {"ascent_value", m.ascent_value},   {"sampling_value", m.sampling_value},
          {"source", m.source}};
}

json norm_json(const NormResult& r, bool with_witness) {
  json out{{"level", r.level}, {"value", r.value}, {"optimizer", optimizer_json(r.meta)}};
  if (with_witness) {
    json w = json::array();
    for (const auto& c : r.witness) w.push_back(matrix_json(c));
    out["witness"] = w;
  }
  return out;
}

json report_json(const HomNormReport& r, bool with_witness) {
  json levels = json::array();
  for (const auto& [k, lp] : r.levels)
    levels.push_back({{"level", k}, {"T", norm_json(lp.forward, with_witness)},
                      {"Tinv", norm_json(lp.inverse, with_witness)}});
  return {{"bijection", r.bijection},
          {"norm_T", r.norm_T},
          {"norm_Tinv", r.norm_Tinv},
          {"distortion", r.distortion},
          {"levels", levels}};
}

json verdict_json(const ThresholdVerdict& v) {
  return {{"name", v.name},     {"threshold", v.threshold}, {"pass", v.pass},
          {"advisory", v.advisory}, {"margin", v.margin},  {"detail", v.detail}};
}

json lemma_json(const LemmaReport& r) {
  json out{{"lemma", lemma_name(r.id)},  {"scope", r.scope},         {"trials", r.trials},
           {"discarded", r.discarded},   {"tolerance", r.tolerance}, {"worst_margin", r.worst_margin},
           {"passed", r.passed()}};
  out["adversarial_margin"] = r.adversarial_margin ? json(*r.adversarial_margin) : json(nullptr);
  if (r.min_nonzero_four_term) out["min_nonzero_four_term"] = *r.min_nonzero_four_term;
  if (r.counterexample) {
    json c = json::array();
    for (const auto& m : *r.counterexample) c.push_back({{"rows", m.rows()}, {"cols", m.cols()}, {"entries", matrix_json(m)}});
    out["counterexample"] = c;
  }
  return out;
}

// ---------------------------------------------------------------- text

std::string fmt(double v, int precision = 10) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string list_text(const json& arr) {
  std::string s;
  for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? "," : "") + arr[i].dump();
  return s;
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::string opt_text(const json& v) { return v.is_null() ? "-" : fmt(v.get<double>(), 12); }
std::string opt_sci(const json& v) { return v.is_null() ? "-" : sci(v.get<double>()); }

// Six decimals, with values that round to zero printed unsigned.
std::string cplx_text(double re, double im) {
  auto clean = [](double v) { return std::abs(v) < 5e-7 ? 0.0 : v; };
  re = clean(re);
  im = clean(im);
  return fmt(re, 6) + (im < 0 ? "-" : "+") + fmt(std::abs(im), 6) + "i";
}

void irreps_text(const json& j, std::ostream& os) {
  os << "group " << j["group"].get<std::string>() << " (order " << j["order"] << ")\n";
  os << "dims [" << list_text(j["dims"]) << "]\n";
  os << "character table (rows irreps, columns conjugacy classes " << j["classes"].dump() << ")\n";
  for (const auto& row : j["characters"]) {
    for (const auto& c : row) os << "  " << std::setw(20) << cplx_text(c[0].get<double>(), c[1].get<double>());
    os << "\n";
  }
}

void norm_text(const json& j, std::ostream& os) {
  os << "||f||_A(" << j["group"].get<std::string>() << ") = " << fmt(j["a_norm"].get<double>(), 12) << "\n";
  for (const auto& b : j["blocks"])
    os << "  irrep " << b["irrep"] << " (dim " << b["dim"] << "): " << fmt(b["contribution"].get<double>(), 12) << "\n";
}

void homnorm_text(const json& j, std::ostream& os) {
  os << "T: A(" << j["source"].get<std::string>() << ") -> A(" << j["target"].get<std::string>() << "), t = ["
     << list_text(j["bijection"]) << "]\n";
  os << "||T||        " << fmt(j["norm_T"].get<double>()) << "\n";
  os << "||T^-1||     " << fmt(j["norm_Tinv"].get<double>()) << "\n";
  os << "distortion   " << fmt(j["distortion"].get<double>()) << "\n";
  for (const auto& l : j["levels"])
    os << "level " << l["level"] << "      T " << fmt(l["T"]["value"].get<double>()) << " ("
       << l["T"]["optimizer"]["source"].get<std::string>() << ")  T^-1 " << fmt(l["Tinv"]["value"].get<double>()) << " ("
       << l["Tinv"]["optimizer"]["source"].get<std::string>() << ")\n";
  if (j.contains("cb")) {
    os << "cb (level " << j["cb"]["level"] << ")  " << fmt(j["cb"]["value"].get<double>()) << "  sequence";
    for (const auto& v : j["cb"]["sequence"]) os << " " << fmt(v.get<double>(), 6);
    os << "\n";
  }
  if (j.contains("jordan"))
    os << "jordan defect " << fmt(j["jordan"]["value"].get<double>()) << " (basis pairs "
       << fmt(j["jordan"]["basis_value"].get<double>()) << " at (" << j["jordan"]["basis_h"] << ","
       << j["jordan"]["basis_k"] << "))\n";
}

void scan_text(const json& j, std::ostream& os) {
  os << "scan " << j["source"].get<std::string>() << " vs " << j["target"].get<std::string>() << ": "
     << j["records"].size() << " bijections" << (j["exhaustive"].get<bool>() ? " (exhaustive)" : " (sampled)")
     << ", isomorphic " << (j["isomorphic"].get<bool>() ? "yes" : "no") << "\n";
  os << "min distortion " << fmt(j["min_distortion"].get<double>()) << " at [" << list_text(j["argmin_distortion"])
     << "]\n";
  if (j.contains("min_level2")) {
    os << "min level-" << j["gap_level"] << " norm " << fmt(j["min_level2"].get<double>()) << " at ["
       << list_text(j["argmin_level2"]) << "]\n";
    const auto& h = j["histogram"];
    os << "histogram: isometric " << h["isometric"] << ", (1, sqrt5/2) " << h["below_gap"] << ", [sqrt5/2, sqrt(3/2)) "
       << h["between"] << ", >= sqrt(3/2) " << h["above"] << "\n";
  }
  for (const auto& v : j["verdicts"])
    os << (v["pass"].get<bool>() ? "PASS" : "FAIL") << (v["advisory"].get<bool>() ? " (advisory) " : " ")
       << v["name"].get<std::string>() << " margin " << sci(v["margin"].get<double>()) << ": "
       << v["detail"].get<std::string>() << "\n";
}

void lemmas_text(const json& j, std::ostream& os) {
  for (const auto& r : j["reports"]) {
    os << (r["passed"].get<bool>() ? "PASS " : "FAIL ") << r["lemma"].get<std::string>() << " ["
       << r["scope"].get<std::string>() << "] trials " << r["trials"] << ", discarded " << r["discarded"]
       << ", worst margin " << sci(r["worst_margin"].get<double>()) << ", adversarial "
       << opt_sci(r["adversarial_margin"]);
    if (r.contains("min_nonzero_four_term"))
      os << ", min nonzero four-term " << fmt(r["min_nonzero_four_term"].get<double>(), 12);
    os << "\n";
  }
  if (j.contains("jordan_rho")) {
    os << "jordan rho (" << j["jordan_rho"]["points"].size() << " homs)\n";
    os << "  eta        count  min_excess      max_excess\n";
    for (const auto& r : j["jordan_rho"]["rows"])
      os << "  " << std::left << std::setw(10) << fmt(r["eta"].get<double>(), 4) << std::right << std::setw(6)
         << r["count"] << "  " << std::setw(14) << opt_text(r["min_excess"]) << "  " << std::setw(14)
         << opt_text(r["max_excess"]) << "\n";
  }
}

void paper_text(const json& j, std::ostream& os) {
  os << std::left << std::setw(9) << "section" << std::setw(68) << "claim" << std::setw(3) << "" << std::setw(16)
     << "expected" << std::setw(16) << "computed" << std::setw(10) << "tol"
     << "result\n";
  for (const auto& r : j["rows"]) {
    os << std::left << std::setw(9) << r["section"].get<std::string>() << std::setw(68) << r["claim"].get<std::string>()
       << std::setw(3) << r["relation"].get<std::string>() << std::setw(16) << fmt(r["expected"].get<double>(), 10)
       << std::setw(16) << fmt(r["computed"].get<double>(), 10) << std::setw(10) << std::scientific
       << std::setprecision(0) << r["tolerance"].get<double>() << std::defaultfloat
       << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  os << std::right << (j["all_pass"].get<bool>() ? "all rows pass\n" : "FAILED rows present\n");
}

// ---------------------------------------------------------------- commands

struct Common {
  std::uint64_t seed = 0;
  std::string effort;
  int jobs = 0;
  std::string format = "text";
  std::string out;
};

Effort resolve_effort(const std::string& flag) {
  if (!flag.empty()) return Effort::from_name(flag);
  if (const char* env = std::getenv("FD_EFFORT"); env && *env) return Effort::from_name(env);
  return Effort::standard();
}

FiniteGroup resolve_group(const std::string& literal, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot read group file " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return group_from_json(buf.str());
  }
  if (literal.empty()) fail(ErrorKind::InvalidArgument, "a group is required");
  return parse_group(literal);
}

void add_common(CLI::App* cmd, Common& c, bool with_effort, std::vector<std::string> formats = {"text", "json"}) {
  cmd->add_option("--seed", c.seed, "random seed");
  if (with_effort) cmd->add_option("--effort", c.effort, "optimizer effort: low, default, high (env FD_EFFORT)");
  cmd->add_option("--jobs", c.jobs, "parallel work items (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
}

json cmd_irreps(const FiniteGroup& g, std::uint64_t seed) {
  const IrrepTable t = irreps_of(g, seed);
  json mats = json::array();
  for (const auto& ir : t.irreps()) {
    json per = json::array();
    for (const auto& m : ir.matrices) per.push_back(matrix_json(m));
    mats.push_back(per);
  }
  const Matrix chars = character_table(t);
  json ct = json::array();
  for (Eigen::Index r = 0; r < chars.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < chars.cols(); ++c) row.push_back(cplx_json(chars(r, c)));
    ct.push_back(row);
  }
  return {{"schema", kSchema},      {"group", g.label()},          {"order", g.order()}, {"dims", t.dims()},
          {"matrices", mats},       {"classes", g.conjugacy_classes()}, {"characters", ct}};
}

json cmd_norm(const FiniteGroup& g, const std::vector<cplx>& values, std::uint64_t seed) {
  const IrrepTable t = irreps_of(g, seed);
  const AFunction f(g, values);
  const auto contrib = a_norm_contributions(f, t);
  json blocks = json::array();
  for (int i = 0; i < t.size(); ++i)
    blocks.push_back({{"irrep", i}, {"dim", t.irreps()[i].dim}, {"contribution", contrib[i]}});
  return {{"schema", kSchema}, {"group", g.label()}, {"values", cplx_vector_json(values)},
          {"a_norm", a_norm(f, t)}, {"blocks", blocks}};
}

void write_output(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + c.out);
  f << text;
}

std::string render(const json& j, const std::string& format, void (*text)(const json&, std::ostream&)) {
  if (format == "json") return j.dump(2) + "\n";
  std::ostringstream os;
  text(j, os);
  return os.str();
}

std::string scan_csv(const SearchResult& r, int gap_level) {
  std::ostringstream os;
  os << "bijection,norm_T,norm_Tinv,level2_T,level2_Tinv,distortion\n";
  os << std::setprecision(17);
  for (const auto& rec : r.records) {
    os << '"';
    for (std::size_t i = 0; i < rec.bijection.size(); ++i) os << (i ? "," : "") << rec.bijection[i];
    os << "\"," << rec.norm_T << "," << rec.norm_Tinv << ",";
    if (gap_level) os << rec.levels.at(gap_level).forward.value << "," << rec.levels.at(gap_level).inverse.value;
    else os << ",";
    os << "," << rec.distortion << "\n";
  }
  return os.str();
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::SizeLimit: return kExitSizeLimit;
    case ErrorKind::Numeric:
    case ErrorKind::DegenerateSpectrum: return kExitNumeric;
  }
  return kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier-algebra norms, homomorphism norms and distortion for finite groups", "fdist"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  Common common;
  int result = kExitOk;

  // irreps
  std::string group, group_file;
  auto* irreps = app.add_subcommand("irreps", "irreducible unitary representations and character table");
  irreps->add_option("--group", group, "group literal, e.g. S3, Z2xZ2, D4, Q8");
  irreps->add_option("--group-file", group_file, "group as JSON {order, table, label}");
  add_common(irreps, common, false);

  // norm
  std::string values;
  std::vector<double> fourier_coeffs;
  auto* norm = app.add_subcommand("norm", "Fourier algebra norm of a function");
  norm->add_option("--group", group, "group literal");
  norm->add_option("--group-file", group_file, "group as JSON");
  auto* values_opt = norm->add_option("--values", values, "JSON array of values f(g), numbers or [re, im]");
  norm->add_option("--fourier-coeffs", fourier_coeffs,
                   "real expansion coefficients a_j of f(k) = sum_j a_j exp(2 pi i j k / n)")
      ->delimiter(',')
      ->excludes(values_opt);
  add_common(norm, common, false);

  // homnorm
  std::string source, target;
  std::vector<int> bijection, levels{1};
  bool with_cb = false;
  long jordan_samples = 0;
  auto* homnorm = app.add_subcommand("homnorm", "norms, level-k norms and distortion of T f = f o t");
  homnorm->add_option("--source", source, "G, the domain of T: A(G) -> A(H)")->required();
  homnorm->add_option("--target", target, "H")->required();
  homnorm->add_option("--bijection", bijection, "t: H -> G as t(0),...,t(n-1) (default identity)")->delimiter(',');
  homnorm->add_option("--levels", levels, "matrix levels")->delimiter(',');
  homnorm->add_flag("--cb", with_cb, "also report the cb-norm (level sum of irrep dims of G)");
  homnorm->add_option("--jordan-samples", jordan_samples, "also estimate the Jordan defect with this many samples")
      ->check(CLI::NonNegativeNumber);
  add_common(homnorm, common, true);

  // scan
  int level = 2;
  bool reduce_aut = false;
  long samples = kDefaultBijectionSamples;
  auto* scan = app.add_subcommand("scan", "all canonical bijections: distortion and level-k threshold verdicts");
  scan->add_option("--source", source, "G")->required();
  scan->add_option("--target", target, "H")->required();
  scan->add_option("--level", level, "matrix level for the threshold scan (1 = distortion only)")
      ->check(CLI::PositiveNumber);
  scan->add_flag("--reduce-automorphisms", reduce_aut, "one bijection per Aut(G) x Aut(H) orbit");
  scan->add_option("--samples", samples, "bijections sampled when the order exceeds " +
                                             std::to_string(kMaxExhaustiveOrder))
      ->check(CLI::PositiveNumber);
  add_common(scan, common, true, {"text", "json", "csv"});

  // verify-lemmas
  std::string lemma = "all";
  int dim = 4;
  long trials = 10000;
  std::vector<std::string> gap_groups{"Z6", "S3", "D4"};
  std::vector<std::string> rho_pairs{"Z4:Z2xZ2", "Z6:S3"};
  std::vector<double> eta_grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  auto* lemmas = app.add_subcommand("verify-lemmas", "randomized and exhaustive checks of the block and gap lemmas");
  lemmas->add_option("--lemma", lemma, "invmult, unitmult, norm_gap, jordan_rho or all")
      ->check(CLI::IsMember({"all", "invmult", "unitmult", "norm_gap", "jordan_rho"}));
  lemmas->add_option("--dim", dim, "matrix dimension for the block lemmas");
  lemmas->add_option("--trials", trials, "random trials per lemma")->check(CLI::NonNegativeNumber);
  lemmas->add_option("--groups", gap_groups, "groups for the norm-gap lemma")->delimiter(',');
  lemmas->add_option("--pairs", rho_pairs, "G:H pairs whose bijections feed the rho table")->delimiter(',');
  lemmas->add_option("--eta", eta_grid, "eta grid for the rho table")->delimiter(',');
  add_common(lemmas, common, true);

  // epsilon
  std::vector<std::string> eps_pairs{"Z4:Z2xZ2"};
  auto* epsilon = app.add_subcommand("epsilon", "empirical upper bound min(distortion) - 1 over non-isomorphic pairs");
  epsilon->add_option("--pairs", eps_pairs, "G:H pairs")->delimiter(',');
  add_common(epsilon, common, true);

  // reproduce-paper
  auto* paper = app.add_subcommand("reproduce-paper", "expected vs computed table of the published values");
  add_common(paper, common, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (common.jobs > 0) set_thread_count(common.jobs);
    std::string text;
    auto split_pairs = [](const std::vector<std::string>& specs) {
      std::vector<std::pair<FiniteGroup, FiniteGroup>> pairs;
      for (const auto& s : specs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos) fail(ErrorKind::InvalidArgument, "pair '" + s + "' must be G:H");
        pairs.emplace_back(parse_group(s.substr(0, colon)), parse_group(s.substr(colon + 1)));
      }
      return pairs;
    };

    if (irreps->parsed()) {
      text = render(cmd_irreps(resolve_group(group, group_file), common.seed), common.format, irreps_text);
    } else if (norm->parsed()) {
      const FiniteGroup g = resolve_group(group, group_file);
      std::vector<cplx> f;
      if (!values.empty()) {
        f = parse_values(values);
      } else if (!fourier_coeffs.empty()) {
        if (static_cast<int>(fourier_coeffs.size()) != g.order())
          fail(ErrorKind::InvalidArgument, "--fourier-coeffs needs one coefficient per group element");
        const std::vector<cplx> a(fourier_coeffs.begin(), fourier_coeffs.end());
        f = from_cyclic_expansion(g, a).values;
      } else {
        fail(ErrorKind::InvalidArgument, "norm needs --values or --fourier-coeffs");
      }
      text = render(cmd_norm(g, f, common.seed), common.format, norm_text);
    } else if (homnorm->parsed()) {
      const FiniteGroup g = parse_group(source), h = parse_group(target);
      if (bijection.empty()) {
        bijection.resize(h.order());
        std::iota(bijection.begin(), bijection.end(), 0);
      }
      const Effort effort = resolve_effort(common.effort);
      const InducedHom hom(GroupBijection(h, g, bijection), irreps_of(g, common.seed), irreps_of(h, common.seed));
      const HomNormReport rep = hom_norm_report(hom, levels, effort, common.seed);
      json j = report_json(rep, true);
      j["schema"] = kSchema;
      j["source"] = g.label();
      j["target"] = h.label();
      j["effort"] = {{"restarts", effort.restarts}, {"iterations", effort.iterations}, {"samples", effort.samples},
                     {"level_samples", effort.level_samples}};
      j["seed"] = common.seed;
      if (with_cb) {
        const CbResult cb = cb_norm(hom, effort, derive_seed(common.seed, 0xCB));
        json seq = json::array();
        for (const auto& l : cb.levels) seq.push_back(l.value);
        j["cb"] = {{"value", cb.value}, {"level", cb.level}, {"sequence", seq}};
      }
      if (jordan_samples > 0) {
        const JordanResult jd = jordan_defect(hom, jordan_samples, derive_seed(common.seed, 0x4A));
        j["jordan"] = {{"value", jd.value},
                       {"basis_value", jd.basis_value},
                       {"basis_h", jd.basis_h},
                       {"basis_k", jd.basis_k},
                       {"witness_a", cplx_vector_json(jd.witness_a)},
                       {"witness_b", cplx_vector_json(jd.witness_b)}};
      }
      text = render(j, common.format, homnorm_text);
    } else if (scan->parsed()) {
      const FiniteGroup g = parse_group(source), h = parse_group(target);
      ScanOptions o;
      o.levels = level >= 2 ? std::vector<int>{1, level} : std::vector<int>{1};
      o.effort = resolve_effort(common.effort);
      o.seed = common.seed;
      o.reduce_automorphisms = reduce_aut;
      o.sample_size = samples;
      const SearchResult r = scan_bijections(g, h, o);
      const int gap_level = level >= 2 ? level : 0;
      if (common.format == "csv") {
        text = scan_csv(r, gap_level);
      } else {
        json recs = json::array();
        for (const auto& rec : r.records) recs.push_back(report_json(rec, false));
        json verdicts = json::array();
        for (const auto& v : r.verdicts) verdicts.push_back(verdict_json(v));
        json j{{"schema", kSchema},
               {"source", g.label()},
               {"target", h.label()},
               {"seed", common.seed},
               {"isomorphic", r.isomorphic},
               {"exhaustive", r.exhaustive},
               {"sample_size", r.sample_size},
               {"min_distortion", r.min_distortion},
               {"argmin_distortion", r.argmin_distortion},
               {"records", recs},
               {"verdicts", verdicts}};
        if (gap_level) {
          j["gap_level"] = gap_level;
          j["min_level2"] = r.min_level2;
          j["argmin_level2"] = r.argmin_level2;
          j["histogram"] = {{"isometric", r.histogram.isometric},
                            {"below_gap", r.histogram.below_gap},
                            {"between", r.histogram.between},
                            {"above", r.histogram.above}};
        }
        text = render(j, common.format, scan_text);
      }
      for (const auto& v : r.verdicts)
        if (!v.pass && !v.advisory) result = kExitFailure;
    } else if (lemmas->parsed()) {
      json reports = json::array();
      json j{{"schema", kSchema}, {"seed", common.seed}};
      BlockLemmaOptions bo;
      bo.dim = dim;
      bo.trials = trials;
      bo.seed = common.seed;
      const bool all = lemma == "all";
      std::vector<LemmaReport> reps;
      if (all || lemma == "invmult") reps.push_back(verify_invmult(bo));
      if (all || lemma == "unitmult") reps.push_back(verify_unitmult(bo));
      if (all || lemma == "norm_gap")
        for (const auto& name : gap_groups) {
          const FiniteGroup g = parse_group(name);
          reps.push_back(verify_norm_gap(irreps_of(g, common.seed), trials, common.seed));
        }
      for (const auto& r : reps) {
        reports.push_back(lemma_json(r));
        if (!r.passed()) result = kExitFailure;
      }
      j["reports"] = reports;
      if (all || lemma == "jordan_rho") {
        std::vector<InducedHom> homs;
        for (const auto& [g, h] : split_pairs(rho_pairs)) {
          const IrrepTable tg = irreps_of(g, common.seed), th = irreps_of(h, common.seed);
          EnumerateOptions eo;
          eo.reduce_automorphisms = g.order() <= kMaxExhaustiveOrder;
          eo.seed = common.seed;
          for (const auto& m : enumerate_bijections(g, h, eo).maps) homs.emplace_back(GroupBijection(h, g, m), tg, th);
        }
        const auto pts = rho_points(homs, resolve_effort(common.effort), 1000, common.seed);
        json points = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i)
          points.push_back({{"pair", homs[i].source_table().group().label() + "/" + homs[i].target_table().group().label()},
                            {"bijection", pts[i].bijection},
                            {"distortion_excess", pts[i].distortion_excess},
                            {"jordan_defect", pts[i].jordan_defect}});
        json rows = json::array();
        for (const auto& r : estimate_jordan_rho(eta_grid, pts))
          rows.push_back({{"eta", r.eta},
                          {"count", r.count},
                          {"min_excess", r.min_excess ? json(*r.min_excess) : json(nullptr)},
                          {"max_excess", r.max_excess ? json(*r.max_excess) : json(nullptr)}});
        j["jordan_rho"] = {{"points", points}, {"rows", rows}};
      }
      text = render(j, common.format, lemmas_text);
    } else if (epsilon->parsed()) {
      const EpsilonBound b = epsilon_zero_bound(split_pairs(eps_pairs), resolve_effort(common.effort), common.seed);
      json minima = json::array();
      for (const auto& [name, v] : b.pair_minima) minima.push_back({{"pair", name}, {"min_distortion_minus_one", v}});
      const json j{{"schema", kSchema}, {"seed", common.seed}, {"bound", b.bound}, {"pairs", minima}};
      text = render(j, common.format, [](const json& j, std::ostream& os) {
        for (const auto& p : j["pairs"])
          os << p["pair"].get<std::string>() << "  min distortion - 1 = "
             << fmt(p["min_distortion_minus_one"].get<double>()) << "\n";
        os << "epsilon_0 <= " << fmt(j["bound"].get<double>()) << "\n";
      });
    } else if (paper->parsed()) {
      PaperOptions po;
      po.effort = resolve_effort(common.effort);
      po.seed = common.seed;
      const PaperReport rep = reproduce_paper(po);
      json rows = json::array();
      for (const auto& r : rep.rows)
        rows.push_back({{"section", r.section},
                        {"claim", r.claim},
                        {"relation", r.relation},
                        {"expected", r.expected},
                        {"computed", r.computed},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}});
      const json j{{"schema", kSchema}, {"seed", common.seed}, {"rows", rows}, {"all_pass", rep.all_pass()}};
      text = render(j, common.format, paper_text);
      if (!rep.all_pass()) result = kExitFailure;
    }
    write_output(common, text, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return result;
}

}  // namespace fdist
