// recor: rearrangement correlation and comparator measures from the command line.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "recor/accuracy.hpp"
#include "recor/error.hpp"
#include "recor/measures.hpp"
#include "recor/nist.hpp"
#include "recor/rng.hpp"
#include "recor/scenario.hpp"
#include "recor/simulation.hpp"
#include "recor/table_io.hpp"

#ifndef RECOR_DATA_DIR
#define RECOR_DATA_DIR "data"
#endif

namespace {

using namespace recor;
using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kData = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<MeasureId> parse_measure_list(const std::string& text) {
  if (text == "all") return {kAllMeasures.begin(), kAllMeasures.end()};
  std::vector<MeasureId> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    const auto id = parse_measure(item);
    if (!id) {
      std::string known;
      for (MeasureId m : kAllMeasures) known += (known.empty() ? "" : ", ") + std::string(measure_name(m));
      throw UsageError("unknown measure '" + item + "' (known: " + known + ", or all)");
    }
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
  }
  if (out.empty()) throw UsageError("--measures selects nothing");
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << body;
}

void emit(const std::string& output, const std::string& body) {
  if (output.empty() || output == "-") {
    std::cout << body;
  } else {
    write_file(output, body);
  }
}

std::string pad(std::string s, std::size_t w) {
  s.append(s.size() < w ? w - s.size() : 1, ' ');
  return s;
}

std::string ranking_text(const AccuracyReport& rep, const std::string& format,
                         const std::string& context_json) {
  if (format == "json") return accuracy_json(rep, context_json);
  std::string out;
  if (format == "csv") {
    out = "rank,measure,mae\n";
  } else {
    out = pad("rank", 6) + pad("measure", 16) + "mae\n";
  }
  std::size_t rank = 0;
  for (MeasureId m : rep.ranking) {
    ++rank;
    const std::string mae = format_number(*rep.mae_of(m));
    out += format == "csv" ? std::to_string(rank) + "," + std::string(measure_name(m)) + "," + mae + "\n"
                           : pad(std::to_string(rank), 6) + pad(std::string(measure_name(m)), 16) + mae + "\n";
  }
  for (MeasureId m : rep.unranked) {
    const std::string mae = format_number(*rep.mae_of(m));
    out += format == "csv" ? std::string(",") + std::string(measure_name(m)) + "," + mae + "\n"
                           : pad("-", 6) + pad(std::string(measure_name(m)), 16) + mae + "  (unranked)\n";
  }
  return out;
}

// compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string input;
  std::string x = "x";
  std::string y = "y";
  std::string measures = "all";
  std::string missing = "drop-row";
  std::string format = "table";
  std::string output;
  std::uint64_t seed = 0;
};

int run_compute(const ComputeArgs& a) {
  const auto ids = parse_measure_list(a.measures);
  MissingPolicy policy;
  if (a.missing == "drop-row") {
    policy = MissingPolicy::drop_row;
  } else if (a.missing == "error") {
    policy = MissingPolicy::error;
  } else {
    throw UsageError("--missing must be drop-row or error");
  }

  ColumnPair cols;
  try {
    cols = select_columns(read_delimited_file(a.input), a.x, a.y, policy);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
  if (cols.x.size() < 2) {
    throw DataError(a.input + ": fewer than two complete rows after dropping " +
                    std::to_string(cols.dropped));
  }
  const PairedSample p(cols.x, cols.y);

  std::vector<MeasureScore> scores;
  try {
    scores = compute_all(p, ids, {a.seed});
  } catch (const MeasureFailure& e) {
    throw DataError(e.what());
  }

  std::string body;
  if (a.format == "json") {
    ojson doc = {{"tool", kToolName},
                 {"tool_version", kToolVersion},
                 {"rng", kRngIdentity},
                 {"input", a.input},
                 {"x", a.x},
                 {"y", a.y},
                 {"n", p.size()},
                 {"dropped_rows", cols.dropped},
                 {"xi_seed", a.seed},
                 {"scores", ojson::array()}};
    for (const auto& s : scores) {
      doc["scores"].push_back(
          {{"measure", measure_name(s.measure)}, {"value", s.value}, {"signed", s.is_signed}});
    }
    body = doc.dump(2) + "\n";
  } else if (a.format == "csv") {
    body = "measure,value\n";
    for (const auto& s : scores) body += std::string(measure_name(s.measure)) + "," + format_number(s.value) + "\n";
  } else {
    for (const auto& s : scores) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", s.value);
      body += pad(std::string(measure_name(s.measure)), 16) + buf + "\n";
    }
    if (cols.dropped) body += "# dropped " + std::to_string(cols.dropped) + " incomplete row(s)\n";
  }
  emit(a.output, body);
  return kOk;
}

// bench -----------------------------------------------------------------

struct BenchArgs {
  std::string family = "monotone";
  std::string scenario_file;
  std::size_t n = 512;
  std::size_t reps = 10;
  std::string r_grid = "0:1:0.05";
  std::uint64_t seed = 42;
  std::string measures = "all";
  bool include_hsic = false;
  unsigned threads = 0;
  std::string output = "bench_out";
  std::string format = "table";
};

int run_bench(const BenchArgs& a) {
  SimConfig cfg;
  try {
    cfg.n = a.n;
    cfg.reps = a.reps;
    cfg.r_levels = SimConfig::parse_r_grid(a.r_grid);
    cfg.seed = a.seed;
    cfg.measures = parse_measure_list(a.measures);
    cfg.threads = a.threads;
    cfg.validate();
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }

  std::vector<Scenario> scenarios;
  std::string source;
  if (!a.scenario_file.empty()) {
    try {
      scenarios = load_scenario_file(a.scenario_file);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
    source = "file:" + std::filesystem::path(a.scenario_file).filename().string();
    if (scenarios.empty()) throw UsageError(a.scenario_file + ": no scenarios");
  } else {
    const auto fam = parse_family(a.family);
    if (!fam) throw UsageError("--family must be monotone or non_monotone");
    scenarios = scenario_registry(*fam);
    source = "registry:" + std::string(family_name(*fam));
  }

  const ScoreTable table = run_grid(cfg, scenarios);
  const AccuracyReport rep = build_report(table, {a.include_hsic});

  const std::filesystem::path dir(a.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  const std::string context = ojson{{"kind", "simulation"}, {"scenario_source", source}}.dump();
  write_file(dir / "scores.csv", score_table_csv(table));
  write_file(dir / "scores.json", score_table_json(table, source));
  write_file(dir / "accuracy.csv", accuracy_csv(rep));
  write_file(dir / "accuracy.json", accuracy_json(rep, context));

  if (a.format == "table") {
    std::cout << "# " << scenarios.size() << " scenarios, " << cfg.r_levels.size() << " levels, "
              << cfg.reps << " reps, n=" << cfg.n << ", seed " << cfg.seed << "\n";
  }
  std::cout << ranking_text(rep, a.format, context);
  if (table.missing() > 0) {
    std::cerr << "warning: " << table.missing() << " missing score(s); see "
              << (dir / "scores.json").string() << "\n";
  }
  return kOk;
}

// nist ------------------------------------------------------------------

struct NistArgs {
  std::string dir;
  std::string measures = "all";
  bool include_hsic = false;
  std::string output;
  std::string format = "table";
};

int run_nist(const NistArgs& a) {
  const auto ids = parse_measure_list(a.measures);
  const bool default_dir = a.dir.empty();
  const std::string dir = default_dir ? std::string(RECOR_DATA_DIR) + "/nist" : a.dir;

  const DirectoryScan scan = scan_directory(dir, default_dir);
  for (const auto& [what, why] : scan.failures) std::cerr << "nist: " << what << ": " << why << "\n";
  if (scan.datasets.empty()) {
    throw DataError(scan.failures.empty() ? "no datasets found in " + dir
                                          : "no datasets found; every dataset failed to load");
  }

  const NistBenchmark bench = nist_benchmark(scan.datasets, ids, {a.include_hsic});
  ojson failures = ojson::array();
  for (const auto& [what, why] : scan.failures) failures.push_back({{"dataset", what}, {"reason", why}});
  ojson datasets = ojson::array();
  for (const auto& d : scan.datasets) datasets.push_back(d.name);
  const std::string context =
      ojson{{"kind", "nist"}, {"datasets", datasets}, {"failures", failures}}.dump();

  if (!a.output.empty()) {
    const std::filesystem::path out(a.output);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw DataError("cannot create " + out.string() + ": " + ec.message());
    write_file(out / "nist_scores.csv", nist_scores_csv(bench));
    write_file(out / "nist_accuracy.csv", accuracy_csv(bench.report));
    write_file(out / "nist_accuracy.json", accuracy_json(bench.report, context));
  }

  if (a.format == "csv") {
    std::cout << nist_scores_csv(bench);
  } else if (a.format == "json") {
    std::cout << accuracy_json(bench.report, context);
  } else {
    std::cout << pad("dataset", 10) << pad("measure", 16) << pad("score", 22) << pad("reference", 22)
              << "error\n";
    for (const auto& s : bench.scores) {
      const auto err = s.error();
      std::cout << pad(s.dataset, 10) << pad(std::string(measure_name(s.measure)), 16)
                << pad(s.score ? format_number(*s.score) : "NA", 22)
                << pad(format_number(s.reference), 22) << (err ? format_number(*err) : "NA") << "\n";
    }
    std::cout << "\n" << ranking_text(bench.report, "table", context);
  }
  return kOk;
}

// scenarios -------------------------------------------------------------

struct ScenarioArgs {
  std::string family = "all";
  std::string scenario_file;
  std::string format = "table";
  std::string output;
};

int run_scenarios(const ScenarioArgs& a) {
  std::vector<Scenario> list;
  if (!a.scenario_file.empty()) {
    try {
      list = load_scenario_file(a.scenario_file);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  } else if (a.family == "all") {
    for (Family f : {Family::monotone, Family::non_monotone}) {
      const auto& r = scenario_registry(f);
      list.insert(list.end(), r.begin(), r.end());
    }
  } else {
    const auto fam = parse_family(a.family);
    if (!fam) throw UsageError("--family must be monotone, non_monotone or all");
    list = scenario_registry(*fam);
  }

  std::string body;
  if (a.format == "json") {
    body = scenarios_to_json(list);
  } else if (a.format == "csv") {
    body = "name,expression,lo,hi,family,description\n";
    for (const auto& s : list) {
      body += s.name + ",\"" + s.f.text() + "\"," + format_number(s.lo) + "," + format_number(s.hi) +
              "," + std::string(family_name(s.family)) + ",\"" + s.description + "\"\n";
    }
  } else {
    for (const auto& s : list) {
      char dom[80];
      std::snprintf(dom, sizeof dom, "[%.6g, %.6g]", s.lo, s.hi);
      body += pad(s.name, 30) + pad(s.f.text(), 26) + pad(dom, 22) + std::string(family_name(s.family)) + "\n";
    }
  }
  emit(a.output, body);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement correlation, comparator measures and accuracy benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  const std::vector<std::string> formats = {"table", "csv", "json"};

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Score measures on two columns of a delimited table");
  compute->add_option("input", ca.input, "Comma- or tab-delimited file with a header row")->required();
  compute->add_option("--x", ca.x, "Column used as x")->capture_default_str();
  compute->add_option("--y", ca.y, "Column used as y")->capture_default_str();
  compute->add_option("--measures", ca.measures, "Comma-separated measures, or all")->capture_default_str();
  compute->add_option("--missing", ca.missing, "drop-row or error")->capture_default_str();
  compute->add_option("--seed", ca.seed, "Seed for xi tie-breaking")->capture_default_str();
  compute->add_option("--format", ca.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  compute->add_option("-o,--output", ca.output, "Output file (default stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the simulated accuracy benchmark");
  bench->add_option("--family", ba.family, "monotone or non_monotone")->capture_default_str();
  bench->add_option("--scenario-file", ba.scenario_file, "Scenario file replacing the built-in registry");
  bench->add_option("--n", ba.n, "Sample size per cell")->capture_default_str();
  bench->add_option("--reps", ba.reps, "Replicates per cell")->capture_default_str();
  bench->add_option("--r-grid", ba.r_grid, "Target R grid lo:hi:step")->capture_default_str();
  bench->add_option("--seed", ba.seed, "Master seed")->capture_default_str();
  bench->add_option("--measures", ba.measures, "Comma-separated measures, or all")->capture_default_str();
  bench->add_flag("--include-hsic", ba.include_hsic, "Rank raw HSIC alongside the other measures");
  bench->add_option("--threads", ba.threads, "Worker threads, 0 = all cores")->capture_default_str();
  bench->add_option("-o,--output", ba.output, "Directory for score and accuracy files")->capture_default_str();
  bench->add_option("--format", ba.format, "Ranking format on stdout")->check(CLI::IsMember(formats))->capture_default_str();

  NistArgs na;
  auto* nist = app.add_subcommand("nist", "Score measures on the NIST StRD datasets");
  nist->add_option("--dir", na.dir, "Directory of .dat files (default: bundled data)");
  nist->add_option("--measures", na.measures, "Comma-separated measures, or all")->capture_default_str();
  nist->add_flag("--include-hsic", na.include_hsic, "Rank raw HSIC alongside the other measures");
  nist->add_option("-o,--output", na.output, "Directory for score and accuracy files");
  nist->add_option("--format", na.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();

  ScenarioArgs sa;
  auto* scen = app.add_subcommand("scenarios", "List scenario registries");
  scen->add_option("--family", sa.family, "monotone, non_monotone or all")->capture_default_str();
  scen->add_option("--scenario-file", sa.scenario_file, "List a scenario file instead");
  scen->add_option("--format", sa.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  scen->add_option("-o,--output", sa.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*compute) return run_compute(ca);
    if (*bench) return run_bench(ba);
    if (*nist) return run_nist(na);
    if (*scen) return run_scenarios(sa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
