#include "recor/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recor/error.hpp"
#include "recor/rng.hpp"

namespace recor {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> split_row(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  out.push_back(std::move(cell));
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  return out;
}

std::optional<double> parse_cell(const std::string& s) {
  if (s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan") return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string score_table_csv(const ScoreTable& t) {
  std::string out = "scenario,measure,target_r,replicate,score\n";
  out.reserve(t.records.size() * 48);
  for (const auto& r : t.records) {
    out += r.scenario;
    out += ',';
    out += measure_name(r.measure);
    out += ',';
    out += format_number(r.target_r);
    out += ',';
    out += std::to_string(r.replicate);
    out += ',';
    out += r.score ? format_number(*r.score) : "NA";
    out += '\n';
  }
  return out;
}

std::string score_table_json(const ScoreTable& t, std::string_view scenario_source) {
  ojson measures = ojson::array();
  for (MeasureId m : t.config.measures) measures.push_back(measure_name(m));
  std::vector<std::string> scenarios;
  for (const auto& r : t.records) {
    if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end()) {
      scenarios.push_back(r.scenario);
    }
  }
  ojson failures = ojson::array();
  for (const auto& r : t.records) {
    if (r.score) continue;
    failures.push_back({{"scenario", r.scenario},
                        {"measure", measure_name(r.measure)},
                        {"target_r", r.target_r},
                        {"replicate", r.replicate},
                        {"reason", r.failure}});
  }
  ojson doc = {
      {"tool", kToolName},
      {"tool_version", kToolVersion},
      {"rng", kRngIdentity},
      {"config",
       {{"n", t.config.n},
        {"reps", t.config.reps},
        {"seed", t.config.seed},
        {"r_levels", t.config.r_levels},
        {"measures", measures},
        {"scenario_source", scenario_source},
        {"scenarios", scenarios}}},
      {"records", t.records.size()},
      {"missing", t.missing()},
      {"failures", failures},
  };
  return doc.dump(2) + "\n";
}

std::string accuracy_csv(const AccuracyReport& r) {
  std::string out = "measure,r_level,median,bias,iqr\n";
  for (const auto& c : r.cells) {
    out += std::string(measure_name(c.measure)) + "," + format_number(c.r_level) + "," +
           format_number(c.median_score) + "," + format_number(c.bias) + "," +
           format_number(c.iqr) + "\n";
  }
  return out;
}

std::string accuracy_json(const AccuracyReport& r, std::string_view context_json) {
  ojson mae = ojson::object();
  for (const auto& [m, v] : r.mae_by_measure) mae[std::string(measure_name(m))] = v;
  ojson ranking = ojson::array();
  for (MeasureId m : r.ranking) ranking.push_back(measure_name(m));
  ojson unranked = ojson::array();
  for (MeasureId m : r.unranked) unranked.push_back(measure_name(m));
  ojson doc = {
      {"tool", kToolName},
      {"tool_version", kToolVersion},
      {"rng", kRngIdentity},
      {"context", ojson::parse(context_json)},
      {"mae_by_measure", mae},
      {"ranking", ranking},
      {"unranked", unranked},
      {"records_used", r.records_used},
      {"records_missing", r.records_missing},
      {"cells", r.cells.size()},
  };
  return doc.dump(2) + "\n";
}

std::string nist_scores_csv(const NistBenchmark& b) {
  std::string out = "dataset,measure,score,reference,error\n";
  for (const auto& s : b.scores) {
    const auto err = s.error();
    out += s.dataset + "," + std::string(measure_name(s.measure)) + "," +
           (s.score ? format_number(*s.score) : "NA") + "," + format_number(s.reference) + "," +
           (err ? format_number(*err) : "NA") + "\n";
  }
  return out;
}

DataTable parse_delimited(std::string_view text, const std::string& source) {
  DataTable t;
  t.source = source;
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  char delim = ',';
  std::size_t line_no = 0;
  for (std::size_t start = 0; start < text.size();) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    if (t.columns.empty()) {
      delim = line.find('\t') != std::string_view::npos ? '\t' : ',';
      t.columns = split_row(line, delim);
      continue;
    }
    auto cells = split_row(line, delim);
    if (cells.size() != t.columns.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(t.columns.size()) + " fields, found " +
                           std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.row_lines.push_back(line_no);
  }
  if (t.columns.empty()) throw ParseError(source, 0, "no header row");
  return t;
}

DataTable read_delimited_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open input file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_delimited(buf.str(), path);
}

ColumnPair select_columns(const DataTable& t, std::string_view x, std::string_view y,
                          MissingPolicy policy) {
  auto index_of = [&](std::string_view name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (t.columns[i] == name) return i;
    }
    std::string avail;
    for (const auto& c : t.columns) avail += (avail.empty() ? "" : ", ") + c;
    throw ContractViolation(t.source + ": no column '" + std::string(name) +
                            "'; available columns: " + avail);
  };
  const std::size_t ix = index_of(x);
  const std::size_t iy = index_of(y);

  ColumnPair out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto vx = parse_cell(t.rows[r][ix]);
    const auto vy = parse_cell(t.rows[r][iy]);
    if (vx && vy) {
      out.x.push_back(*vx);
      out.y.push_back(*vy);
      continue;
    }
    if (policy == MissingPolicy::drop_row) {
      ++out.dropped;
      continue;
    }
    const bool bad_x = !vx;
    throw ParseError(t.source, t.row_lines[r],
                     "column '" + std::string(bad_x ? x : y) + "': missing or non-numeric value '" +
                         t.rows[r][bad_x ? ix : iy] + "'");
  }
  return out;
}

}  // namespace recor
