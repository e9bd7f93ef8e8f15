#include "bisector_lab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "bisector_lab/exponents.hpp"
#include "bisector_lab/io.hpp"
#include "bisector_lab/parallel.hpp"
#include "bisector_lab/verify.hpp"

namespace bisector_lab {

namespace {

struct Input {
  GeneratedSet set;
  std::string source;
};

Input load_input(const RunConfig& cfg) {
  if (!cfg.gen.empty()) {
    GenSpec spec = parse_genspec(cfg.gen);
    if (cfg.seed) spec.seed = *cfg.seed;
    if (cfg.p && *cfg.p != spec.p)
      throw LabError(ErrorCode::ModulusMismatch,
                     "--p " + std::to_string(*cfg.p) + " disagrees with generator p " + std::to_string(spec.p));
    return {generate(spec), to_string(spec)};
  }
  if (cfg.input.empty()) throw LabError(ErrorCode::InvalidArgument, "need --input or --gen");
  if (!cfg.p) throw LabError(ErrorCode::InvalidArgument, "--p is required with --input");
  return {read_set_file(cfg.input, make_modulus(*cfg.p)), cfg.input};
}

/// A flat record rendered either as a JSON object or as one CSV row.
using Row = std::vector<std::pair<std::string, Json>>;

Json row_object(const Row& row) {
  Json j = Json::object();
  for (const auto& [k, v] : row) j[k] = v;
  return j;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  if (rows.empty()) return;
  for (std::size_t i = 0; i < rows[0].size(); ++i) out << (i ? "," : "") << rows[0][i].first;
  out << '\n';
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i].second);
    out << '\n';
  }
}

Json json_double(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Row plane_counts_row(const PlaneSet& e, unsigned threads) {
  const PlaneCounts c = plane_counts(e, threads);
  const DistanceHistogram h = distance_histogram(e, threads);
  Count nu_max = 0;
  for (const auto& [t, v] : h.counts) nu_max = std::max(nu_max, v);
  return {
      {"kind", "plane"},
      {"p", e.modulus().p()},
      {"n", e.size()},
      {"delta_size", c.delta},
      {"nonzero_delta_size", nonzero_distance_count(e)},
      {"nu_distinct", h.counts.size()},
      {"nu_max", json_count(nu_max)},
      {"nu_total", json_count(h.total())},
      {"second_moment", json_count(c.second_moment)},
      {"t_count", json_count(c.t)},
      {"rect_count", json_count(c.rect)},
      {"q_count", json_count(c.q)},
      {"para_count", json_count(c.para)},
      {"bisector_incidences", json_count(c.incidences)},
  };
}

Row residue_counts_row(const ResidueSet& a) {
  const PopularData d = popular_data(a);
  const std::string m_ratio = a.empty() ? "0" : to_string(mk_profile(a).m);
  const std::string k_ratio = a.empty() ? "0" : to_string(mk_profile(a).k);
  return {
      {"kind", "residue"},
      {"p", a.modulus().p()},
      {"n", a.size()},
      {"diff_size", difference_set(a, a).size()},
      {"squares_size", d.squares.size()},
      {"square_diff_size", d.differences.size()},
      {"M", m_ratio},
      {"K", k_ratio},
      {"e4", json_count(e4_energy(a))},
      {"popular_threshold", to_string(d.threshold)},
      {"popular_size", d.popular.size()},
      {"chi", json_count(chi(d))},
      {"shifted_square_mass", json_count(shifted_square_mass(d))},
      {"popular_pairs", json_count(popular_pair_count(a))},
  };
}

int emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw LabError(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
  file << text;
  return kExitOk;
}

std::string render(const RunConfig& cfg, const Json& doc, const std::vector<Row>& csv_rows) {
  std::ostringstream s;
  if (cfg.format == OutputFormat::Json)
    s << doc.dump(2) << '\n';
  else
    write_csv(s, csv_rows);
  return s.str();
}

Row report_row(const CheckReport& r) {
  const Json j = to_json(r);
  auto field = [&](const char* k) -> Json { return j.contains(k) ? j[k] : Json(nullptr); };
  return {{"name", r.name}, {"mode", j["mode"]},         {"status", j["status"]},   {"relation", field("relation")},
          {"lhs", field("lhs")}, {"rhs", field("rhs")}, {"ratio", field("ratio")}, {"context", r.context},
          {"note", r.note}};
}

bool failed(const CheckReport& r) { return r.mode == CheckMode::Assert && !r.skipped && !r.pass; }

int cmd_counts(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  Row row = std::holds_alternative<PlaneSet>(in.set) ? plane_counts_row(std::get<PlaneSet>(in.set), cfg.threads)
                                                     : residue_counts_row(std::get<ResidueSet>(in.set));
  row.insert(row.begin(), {"source", in.source});
  Json doc = {{"command", "counts"}};
  for (const auto& [k, v] : row) doc[k] = v;
  return emit(cfg, out, render(cfg, doc, {row}));
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  std::vector<CheckReport> reports;
  std::size_t n = 0;
  std::uint32_t p = 0;
  const bool want_asserts = cfg.suite != Suite::Dashboards;
  const bool want_reports = cfg.suite != Suite::Exact;
  if (const auto* e = std::get_if<PlaneSet>(&in.set)) {
    n = e->size();
    p = e->modulus().p();
    const PlaneCounts c = plane_counts(*e, cfg.threads);
    if (want_asserts)
      for (auto& r : plane_assert_suite(*e, c)) reports.push_back(std::move(r));
    if (want_reports)
      for (auto& r : plane_report_suite(*e, c)) reports.push_back(std::move(r));
  } else {
    const auto& a = std::get<ResidueSet>(in.set);
    n = a.size();
    p = a.modulus().p();
    for (auto& r : report_sumprod_suite(a))
      if ((r.mode == CheckMode::Assert) ? want_asserts : want_reports) reports.push_back(std::move(r));
  }
  for (auto& r : reports) r.context += " source=" + in.source;
  sort_reports(reports);

  std::size_t failures = 0;
  Json checks = Json::array();
  std::vector<Row> rows;
  for (const auto& r : reports) {
    failures += failed(r);
    checks.push_back(to_json(r));
    rows.push_back(report_row(r));
  }
  const char* suite = cfg.suite == Suite::Exact ? "exact" : cfg.suite == Suite::Dashboards ? "dashboards" : "all";
  Json doc = {{"command", "verify"}, {"source", in.source}, {"kind", std::holds_alternative<PlaneSet>(in.set) ? "plane" : "residue"},
              {"p", p}, {"n", n}, {"suite", suite}, {"checks", checks}, {"assert_failures", failures}};
  emit(cfg, out, render(cfg, doc, rows));
  return failures == 0 ? kExitOk : kExitAssertionFailed;
}

int cmd_exhaustive(const RunConfig& cfg, std::ostream& out) {
  const PrimeModulus m = make_modulus(cfg.p.value_or(3));
  std::vector<PlaneSet> subsets;
  enumerate_subsets(m, cfg.k, [&](const PlaneSet& e) { subsets.push_back(e); });

  std::vector<std::vector<CheckReport>> results(subsets.size());
  parallel_strided(subsets.size(), cfg.threads, [&](unsigned, std::size_t i) {
    results[i] = plane_assert_suite(subsets[i], plane_counts(subsets[i]));
  });

  struct Tally {
    std::uint64_t pass = 0, fail = 0, skipped = 0;
  };
  std::map<std::string, Tally> tally;
  Json failures = Json::array();
  std::uint64_t total_failures = 0;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (const CheckReport& r : results[i]) {
      Tally& t = tally[r.name];
      if (r.skipped) {
        ++t.skipped;
      } else if (r.pass) {
        ++t.pass;
      } else {
        ++t.fail;
        ++total_failures;
        if (failures.size() < 20) {
          std::ostringstream pts;
          write_set(pts, subsets[i]);
          Json f = to_json(r);
          f["subset"] = pts.str();
          failures.push_back(f);
        }
      }
    }
  }

  Json by_check = Json::object();
  std::vector<Row> rows;
  for (const auto& [name, t] : tally) {
    by_check[name] = {{"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}};
    rows.push_back({{"name", name}, {"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}});
  }
  Json doc = {{"command", "exhaustive"}, {"p", m.p()}, {"k", cfg.k ? Json(*cfg.k) : Json(nullptr)},
              {"subsets", subsets.size()}, {"checks", by_check}, {"assert_failures", total_failures},
              {"failures", failures}};
  emit(cfg, out, render(cfg, doc, rows));
  return total_failures == 0 ? kExitOk : kExitAssertionFailed;
}

Row plane_sweep_row(const GenSpec& spec, const PlaneSet& e, unsigned threads) {
  const PlaneCounts c = plane_counts(e, threads);
  const bool gated = e.modulus().anisotropic();
  Json hay = nullptr, thm1 = nullptr, log_ratio = nullptr;
  if (gated) {
    hay = json_double(to_double(check_hay(e, c).ratio));
    thm1 = json_double(to_double(report_thm1_chain(e, c)[1].ratio));
  }
  if (c.n >= 2) log_ratio = json_double(std::log(static_cast<double>(c.delta)) / std::log(static_cast<double>(c.n)));
  return {
      {"p", spec.p},
      {"family", to_string(spec.family)},
      {"seed", spec.seed},
      {"n", c.n},
      {"delta", c.delta},
      {"t", json_count(c.t)},
      {"rect", json_count(c.rect)},
      {"q", json_count(c.q)},
      {"para", json_count(c.para)},
      {"ratio_hay", hay},
      {"ratio_ben", json_double(to_double(report_ben(e, c).ratio))},
      {"ratio_thm1", thm1},
      {"log_delta_over_log_n", log_ratio},
  };
}

Row residue_sweep_row(const GenSpec& spec, const ResidueSet& a) {
  const DistLikeSets sets = dist_like_sets(a);
  const PopularData d = popular_data(a);
  const double n = static_cast<double>(a.size());
  const Count e4 = e4_energy(a);
  Json m_ratio = nullptr, k_ratio = nullptr, e4_ratio = nullptr, growth = nullptr, log_ratio = nullptr;
  if (!a.empty()) {
    const MKProfile mk = mk_profile(a);
    m_ratio = to_string(mk.m);
    k_ratio = to_string(mk.k);
    e4_ratio = json_double(static_cast<double>(e4) / (std::pow(n, 4) * std::pow(mk.m.convert_to<double>(), 3)));
    growth = json_double(std::pow(n, 1.5 + 1.0 / 142) / static_cast<double>(sets.difference_of_squares.size()));
  }
  if (a.size() >= 2)
    log_ratio = json_double(std::log(static_cast<double>(sets.difference_of_squares.size())) / std::log(n));
  return {
      {"p", spec.p},
      {"family", to_string(spec.family)},
      {"seed", spec.seed},
      {"n", a.size()},
      {"diff", difference_set(a, a).size()},
      {"square_diff", d.differences.size()},
      {"dd", sets.difference_of_squares.size()},
      {"ss", sets.sum_of_squares.size()},
      {"M", m_ratio},
      {"K", k_ratio},
      {"e4", json_count(e4)},
      {"popular", d.popular.size()},
      {"chi", json_count(chi(d))},
      {"ratio_e4", e4_ratio},
      {"ratio_growth", growth},
      {"log_dd_over_log_n", log_ratio},
  };
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.gen.empty()) throw LabError(ErrorCode::InvalidArgument, "sweep needs --gen");
  const GenSpec base = parse_genspec(cfg.gen);
  if (cfg.p && *cfg.p != base.p)
    throw LabError(ErrorCode::ModulusMismatch,
                   "--p " + std::to_string(*cfg.p) + " disagrees with generator p " + std::to_string(base.p));
  const std::uint64_t base_seed = cfg.seed.value_or(base.seed);
  const auto outer = static_cast<unsigned>(std::min<std::uint64_t>(cfg.trials, cfg.threads));
  const unsigned inner = std::max(1u, cfg.threads / outer);

  std::vector<Row> rows(cfg.trials);
  parallel_strided(cfg.trials, outer, [&](unsigned, std::size_t i) {
    GenSpec spec = base;
    spec.seed = base_seed + i;
    const GeneratedSet set = generate(spec);
    rows[i] = std::holds_alternative<PlaneSet>(set) ? plane_sweep_row(spec, std::get<PlaneSet>(set), inner)
                                                    : residue_sweep_row(spec, std::get<ResidueSet>(set));
  });

  Json doc_rows = Json::array();
  for (const Row& r : rows) doc_rows.push_back(row_object(r));
  GenSpec shown = base;
  shown.seed = base_seed;
  Json doc = {{"command", "sweep"}, {"gen", to_string(shown)}, {"trials", cfg.trials}, {"rows", doc_rows}};
  return emit(cfg, out, render(cfg, doc, rows));
}

int cmd_exponents(const RunConfig& cfg, std::ostream& out) {
  const auto table = exponent_table();
  auto value = [&](const std::string& name) {
    for (const auto& row : table)
      if (row.name == name) return row.value;
    throw LabError(ErrorCode::InvalidArgument, "missing exponent row " + name);
  };
  std::vector<CheckReport> checks;
  auto expect = [&](const std::string& name, const Rational& got, const Rational& want) {
    checks.push_back(make_assert(name, got, want, Relation::Equal, "exact"));
  };
  expect("rect_free_exponent", value("delta_exponent_rect_free"), Rational(12, 19));
  expect("rect_slope", value("delta_exponent_rect_slope"), Rational(-4, 19));
  expect("rect_constant", value("delta_exponent_rect_constant"), Rational(20, 19));
  expect("rect_99_41", value("delta_exponent_rect_99_41"), Rational(424, 779));
  expect("rect_99_41_excess", value("delta_exponent_minus_half"), Rational(69, 1558));
  expect("rect_2", value("delta_exponent_rect_2"), Rational(12, 19));
  expect("conjectured", value("delta_exponent_conjectured"), Rational(3, 4));
  expect("epsilon", value("epsilon"), Rational(1, 71));
  expect("square_difference_exponent", value("square_difference_exponent"), Rational(3, 2) + Rational(1, 142));
  expect("size_condition", value("size_condition_exponent"), Rational(71, 125));
  expect("size_range", value("size_range_exponent"), Rational(1558, 1489));
  {
    // The rectangle-dependent term dominates at 99/41 and balances exactly.
    const ExponentExpr chain = isosceles_chain(Rational(5, 3), Rational(4, 15));
    const bool ok = resubstitutes(chain.lhs_power, chain.terms[2], value("delta_exponent_rect_99_41"), Rational(99, 41));
    expect("resubstitution", Rational(ok ? 1 : 0), Rational(1));
  }

  Json rows = Json::array();
  std::vector<Row> csv;
  for (const auto& row : table) {
    const double decimal = row.value.convert_to<double>();
    rows.push_back({{"name", row.name}, {"value", to_string(row.value)}, {"decimal", decimal},
                    {"derivation", row.derivation}});
    csv.push_back({{"name", row.name}, {"value", to_string(row.value)}, {"decimal", decimal},
                   {"derivation", row.derivation}});
  }
  std::size_t failures = 0;
  Json check_json = Json::array();
  for (const auto& c : checks) {
    failures += failed(c);
    check_json.push_back(to_json(c));
  }
  Json doc = {{"command", "exponents"}, {"rows", rows}, {"checks", check_json}, {"assert_failures", failures}};
  emit(cfg, out, render(cfg, doc, csv));
  return failures == 0 ? kExitOk : kExitAssertionFailed;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.threads == 0) throw LabError(ErrorCode::InvalidArgument, "threads must be at least 1");
    if (cfg.trials == 0) throw LabError(ErrorCode::InvalidArgument, "trials must be at least 1");
    switch (cfg.command) {
      case Command::Counts: return cmd_counts(cfg, out);
      case Command::Verify: return cmd_verify(cfg, out);
      case Command::Sweep: return cmd_sweep(cfg, out);
      case Command::Exhaustive: return cmd_exhaustive(cfg, out);
      case Command::Exponents: return cmd_exponents(cfg, out);
    }
  } catch (const LabError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("BISECTOR_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) cfg.threads = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      err << "warning: ignoring BISECTOR_LAB_THREADS=" << env << '\n';
    }
  }

  CLI::App app{"Exact distance, bisector and sum-product counting over prime fields", "bisector_lab"};
  const std::map<std::string, Command> commands{{"counts", Command::Counts},
                                                {"verify", Command::Verify},
                                                {"sweep", Command::Sweep},
                                                {"exhaustive", Command::Exhaustive},
                                                {"exponents", Command::Exponents}};
  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};
  const std::map<std::string, Suite> suites{{"exact", Suite::Exact}, {"dashboards", Suite::Dashboards}, {"all", Suite::All}};

  app.add_option("command", cfg.command, "counts, verify, sweep, exhaustive or exponents")
      ->required()
      ->transform(CLI::CheckedTransformer(commands));
  app.add_option("--p", cfg.p, "prime modulus");
  app.add_option("--input", cfg.input, "point or residue set file");
  app.add_option("--gen", cfg.gen, "generator spec family:p:size:seed[:k=v,...]");
  app.add_option("--trials", cfg.trials, "sweep trials")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "overrides the generator seed");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "report path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->transform(CLI::CheckedTransformer(formats));
  app.add_option("--suite", cfg.suite, "exact, dashboards or all")->transform(CLI::CheckedTransformer(suites));
  app.add_option("--k", cfg.k, "subset size for exhaustive enumeration");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return run(cfg, out, err);
}

}  // namespace bisector_lab
