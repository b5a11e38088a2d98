#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recor/accuracy.hpp"
#include "recor/measures.hpp"
#include "recor/sample.hpp"

namespace recor {

enum class NistModel { chwirut1, hahn1, rat43, roszman1, thurber };

/// The five StRD problems with monotone certified models.
inline constexpr std::string_view kNistNames[] = {"Chwirut1", "Hahn1", "Rat43", "Roszman1",
                                                 "Thurber"};

std::optional<NistModel> nist_model_for(std::string_view dataset_name) noexcept;

struct NistDataset {
  std::string name;
  std::optional<NistModel> model;  // empty for StRD files outside the supported five
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> certified_params;
  std::optional<double> certified_rss;

  PairedSample points() const { return PairedSample(x, y); }
};

/// Parses an StRD .dat file. Checks the banner, the declared observation and
/// parameter counts, and every data row; failures raise ParseError with the
/// 1-based line number.
NistDataset parse_dataset(std::string_view text, const std::string& source = "<nist>");
NistDataset load_dataset(const std::string& path);

/// Data rows as "y x" lines at full precision (parse_dataset reads them back unchanged).
std::string format_rows(const NistDataset& d);

/// Model predictions at each x using the certified parameters (no fitting).
/// Throws ContractViolation for unsupported models or a wrong parameter count.
std::vector<double> certified_model_eval(const NistDataset& d);

double residual_sum_of_squares(const NistDataset& d);

struct ReferenceValue {
  std::string dataset;
  double r;  // sqrt(1 - SS_res / SS_tot)
};

ReferenceValue reference_r(const NistDataset& d);

struct NistScore {
  std::string dataset;
  MeasureId measure;
  std::optional<double> score;
  double reference;
  std::string failure;

  /// comparable score minus reference; empty when the score is missing.
  std::optional<double> error() const noexcept;
};

struct NistBenchmark {
  std::vector<NistScore> scores;  // dataset order, then measure order
  AccuracyReport report;
};

NistBenchmark nist_benchmark(std::span<const NistDataset> datasets,
                             std::span<const MeasureId> measures, const ReportOptions& opt = {});

struct DirectoryScan {
  std::vector<NistDataset> datasets;
  std::vector<std::pair<std::string, std::string>> failures;  // (file or name, reason)
};

/// Loads every *.dat file in `dir` in name order. With `expect_all`, each of
/// the five supported names that has no file is listed as a failure.
DirectoryScan scan_directory(const std::string& dir, bool expect_all);

}  // namespace recor
