#include "recor/nist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "recor/error.hpp"

namespace recor {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::optional<double> to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool starts_with_ws_trimmed(std::string_view line, std::string_view prefix) {
  const auto b = line.find_first_not_of(" \t");
  return b != std::string_view::npos && line.substr(b).starts_with(prefix);
}

// "  214 Observations" -> 214
std::optional<std::size_t> leading_count(const std::vector<std::string>& t, std::string_view word) {
  if (t.size() < 2 || t[1] != word) return std::nullopt;
  const auto v = to_double(t[0]);
  if (!v || *v < 0 || *v != std::floor(*v)) return std::nullopt;
  return static_cast<std::size_t>(*v);
}

}  // namespace

std::optional<NistModel> nist_model_for(std::string_view name) noexcept {
  if (name == "Chwirut1") return NistModel::chwirut1;
  if (name == "Hahn1") return NistModel::hahn1;
  if (name == "Rat43") return NistModel::rat43;
  if (name == "Roszman1") return NistModel::roszman1;
  if (name == "Thurber") return NistModel::thurber;
  return std::nullopt;
}

NistDataset parse_dataset(std::string_view text, const std::string& source) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < text.size();) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty() || !starts_with_ws_trimmed(lines[0], "NIST/ITL StRD")) {
    throw ParseError(source, 1, "missing 'NIST/ITL StRD' banner");
  }

  NistDataset d;
  std::optional<std::size_t> declared_obs, declared_params;
  std::size_t data_header = 0;
  for (std::size_t i = 0; i < lines.size() && data_header == 0; ++i) {
    const std::size_t line_no = i + 1;
    const auto t = tokens(lines[i]);
    if (t.empty()) continue;
    if (t.size() >= 3 && t[0] == "Dataset" && t[1] == "Name:") {
      d.name = t[2];
    } else if (auto k = leading_count(t, "Observations")) {
      declared_obs = k;
    } else if (auto k = leading_count(t, "Parameters")) {
      declared_params = k;
    } else if (t[0].size() > 1 && t[0][0] == 'b' && t.size() >= 4 && t[1] == "=") {
      const auto idx = to_double(t[0].substr(1));
      if (!idx || *idx != static_cast<double>(d.certified_params.size() + 1)) {
        throw ParseError(source, line_no, "parameters out of order at '" + t[0] + "'");
      }
      // b1 = start1 [start2] certified stddev
      const auto v = to_double(t[t.size() - 2]);
      if (!v) throw ParseError(source, line_no, "non-numeric certified value");
      d.certified_params.push_back(*v);
    } else if (t.size() >= 5 && t[0] == "Residual" && t[1] == "Sum" && t[3] == "Squares:") {
      const auto v = to_double(t[4]);
      if (!v) throw ParseError(source, line_no, "non-numeric residual sum of squares");
      d.certified_rss = v;
    } else if (t.size() == 3 && t[0] == "Data:" && t[1] == "y" && t[2] == "x") {
      data_header = line_no;
    }
  }

  if (d.name.empty()) throw ParseError(source, 0, "missing 'Dataset Name:' line");
  if (!declared_obs) throw ParseError(source, 0, "missing observation count");
  if (!declared_params) throw ParseError(source, 0, "missing parameter count");
  if (data_header == 0) throw ParseError(source, 0, "missing 'Data:  y  x' header");
  if (d.certified_params.size() != *declared_params) {
    throw ParseError(source, data_header,
                     "declared " + std::to_string(*declared_params) + " parameters, found " +
                         std::to_string(d.certified_params.size()));
  }

  std::size_t last_line = data_header;
  for (std::size_t i = data_header; i < lines.size(); ++i) {
    const auto t = tokens(lines[i]);
    if (t.empty()) continue;
    last_line = i + 1;
    if (t.size() != 2) throw ParseError(source, last_line, "expected two columns 'y x'");
    const auto y = to_double(t[0]);
    const auto x = to_double(t[1]);
    if (!y || !x) throw ParseError(source, last_line, "non-numeric data row");
    d.y.push_back(*y);
    d.x.push_back(*x);
  }
  if (d.x.size() != *declared_obs) {
    throw ParseError(source, last_line,
                     "declared " + std::to_string(*declared_obs) + " observations, found " +
                         std::to_string(d.x.size()));
  }
  d.model = nist_model_for(d.name);
  return d;
}

NistDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open dataset file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), path);
}

std::string format_rows(const NistDataset& d) {
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", d.y[i], d.x[i]);
    out += buf;
  }
  return out;
}

std::vector<double> certified_model_eval(const NistDataset& d) {
  if (!d.model) throw ContractViolation("unsupported model for dataset '" + d.name + "'");
  const auto& b = d.certified_params;
  const std::size_t want = [&] {
    switch (*d.model) {
      case NistModel::chwirut1: return 3;
      case NistModel::rat43:
      case NistModel::roszman1: return 4;
      case NistModel::hahn1:
      case NistModel::thurber: return 7;
    }
    return 0;
  }();
  if (b.size() != want) {
    throw ContractViolation(d.name + " needs " + std::to_string(want) + " parameters, got " +
                            std::to_string(b.size()));
  }

  std::vector<double> out;
  out.reserve(d.x.size());
  for (double x : d.x) {
    switch (*d.model) {
      case NistModel::chwirut1:
        out.push_back(std::exp(-b[0] * x) / (b[1] + b[2] * x));
        break;
      case NistModel::rat43:
        out.push_back(b[0] / std::pow(1.0 + std::exp(b[1] - b[2] * x), 1.0 / b[3]));
        break;
      case NistModel::roszman1:
        out.push_back(b[0] - b[1] * x - std::atan(b[2] / (x - b[3])) / std::numbers::pi);
        break;
      case NistModel::hahn1:
      case NistModel::thurber: {
        const double num = b[0] + x * (b[1] + x * (b[2] + x * b[3]));
        const double den = 1.0 + x * (b[4] + x * (b[5] + x * b[6]));
        out.push_back(num / den);
        break;
      }
    }
  }
  return out;
}

double residual_sum_of_squares(const NistDataset& d) {
  const auto pred = certified_model_eval(d);
  double acc = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) acc += (d.y[i] - pred[i]) * (d.y[i] - pred[i]);
  return acc;
}

ReferenceValue reference_r(const NistDataset& d) {
  if (d.y.empty()) throw ContractViolation("reference_r: empty dataset");
  const double ss_res = residual_sum_of_squares(d);
  const double my = mean(d.y);
  double ss_tot = 0;
  for (double v : d.y) ss_tot += (v - my) * (v - my);
  if (!(ss_tot > 0)) throw UndefinedCorrelation("constant response in " + d.name);
  return {d.name, std::sqrt(std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0))};
}

std::optional<double> NistScore::error() const noexcept {
  if (!score) return std::nullopt;
  return comparable_score(measure, *score) - reference;
}

NistBenchmark nist_benchmark(std::span<const NistDataset> datasets,
                             std::span<const MeasureId> measures, const ReportOptions& opt) {
  NistBenchmark out;
  std::vector<Observation> obs;
  for (const auto& d : datasets) {
    std::optional<PairedSample> pts;
    std::optional<double> ref;
    std::string failure;
    try {
      ref = reference_r(d).r;
      pts.emplace(d.points());
    } catch (const std::exception& e) {
      failure = e.what();
    }
    for (MeasureId m : measures) {
      NistScore s{d.name, m, std::nullopt, ref.value_or(NAN), failure};
      if (pts) {
        try {
          s.score = compute(m, *pts).value;
        } catch (const std::exception& e) {
          s.failure = e.what();
        }
      }
      if (ref) obs.push_back({d.name, m, *ref, s.score});
      out.scores.push_back(std::move(s));
    }
  }
  if (!obs.empty()) out.report = build_report(obs, measures, opt);
  return out;
}

DirectoryScan scan_directory(const std::string& dir, bool expect_all) {
  namespace fs = std::filesystem;
  DirectoryScan scan;
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(dir, ec)) {
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".dat") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());

  for (const auto& f : files) {
    try {
      NistDataset d = load_dataset(f.string());
      if (!d.model) {
        scan.failures.emplace_back(f.string(), "unsupported model '" + d.name + "'");
        continue;
      }
      scan.datasets.push_back(std::move(d));
    } catch (const std::exception& e) {
      scan.failures.emplace_back(f.string(), e.what());
    }
  }
  if (expect_all) {
    for (std::string_view name : kNistNames) {
      const bool found = std::any_of(scan.datasets.begin(), scan.datasets.end(),
                                     [&](const NistDataset& d) { return d.name == name; });
      const bool failed = std::any_of(files.begin(), files.end(), [&](const fs::path& p) {
        return p.stem() == name;
      });
      if (!found && !failed) {
        scan.failures.emplace_back(std::string(name), "missing dataset file " +
                                                          std::string(name) + ".dat");
      }
    }
  }
  return scan;
}

}  // namespace recor
