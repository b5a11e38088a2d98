#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recor/measures.hpp"

namespace recor {

struct ScoreTable;

/// Midpoint of the two central order statistics for even lengths.
double median(std::span<const double> v);
/// Linear interpolation between order statistics (R's default, type 7).
double quantile(std::span<const double> v, double p);

/// reference - median(scores). Positive means the measure underestimates.
double trueness_bias(std::span<const double> scores, double reference);
/// Q3 - Q1 under `quantile`.
double precision_iqr(std::span<const double> scores);
/// Mean of |score - reference| over (score, reference) pairs.
double mae(std::span<const std::pair<double, double>> scores_with_refs);

/// Magnitude for signed measures, raw value otherwise.
double comparable_score(MeasureId id, double score) noexcept;

struct AccuracyCell {
  MeasureId measure;
  double r_level;
  double median_score;
  double bias;
  double iqr;
  std::size_t count;  // values the median and IQR were taken over
};

struct AccuracyReport {
  std::vector<AccuracyCell> cells;
  std::vector<std::pair<MeasureId, double>> mae_by_measure;  // request order
  std::vector<MeasureId> ranking;                            // ascending MAE
  std::vector<MeasureId> unranked;  // reported but left out of the ranking
  std::size_t records_used = 0;
  std::size_t records_missing = 0;

  std::optional<double> mae_of(MeasureId id) const noexcept;
  /// 1-based position in the ranking, or nullopt when unranked.
  std::optional<std::size_t> rank_of(MeasureId id) const noexcept;
};

/// One scored observation against its conventional true value.
struct Observation {
  std::string group;  // scenario or dataset
  MeasureId measure;
  double reference;
  std::optional<double> score;
};

struct ReportOptions {
  /// Raw HSIC is not on the [0, 1] scale, so it is left out of the ranking by default.
  bool include_hsic = false;
};

/// Cells group observations by (measure, reference). Within a cell, each
/// group's scores are averaged first and the median and IQR are taken over
/// those group means. MAE runs over every individual observation. Ranking ties
/// fall back to MeasureId order.
AccuracyReport build_report(std::span<const Observation> obs, std::span<const MeasureId> measures,
                            const ReportOptions& opt = {});

/// Simulation flavour: each record's reference is its target R.
AccuracyReport build_report(const ScoreTable& table, const ReportOptions& opt = {});

}  // namespace recor
