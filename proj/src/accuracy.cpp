#include "recor/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "recor/error.hpp"
#include "recor/simulation.hpp"

namespace recor {

double median(std::span<const double> v) { return quantile(v, 0.5); }

double quantile(std::span<const double> v, double p) {
  if (v.empty()) throw ContractViolation("quantile of an empty list");
  if (!(p >= 0 && p <= 1)) throw ContractViolation("quantile probability outside [0, 1]");
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  const double h = (static_cast<double>(s.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, s.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return frac == 0 ? s[lo] : s[lo] + frac * (s[hi] - s[lo]);
}

double trueness_bias(std::span<const double> scores, double reference) {
  if (scores.empty()) throw ContractViolation("trueness_bias: no scores");
  return reference - median(scores);
}

double precision_iqr(std::span<const double> scores) {
  if (scores.empty()) throw ContractViolation("precision_iqr: no scores");
  return quantile(scores, 0.75) - quantile(scores, 0.25);
}

double mae(std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty()) throw ContractViolation("mae: no scores");
  double acc = 0;
  for (const auto& [score, ref] : pairs) acc += std::abs(score - ref);
  return acc / static_cast<double>(pairs.size());
}

double comparable_score(MeasureId id, double score) noexcept {
  return is_signed(id) ? std::abs(score) : score;
}

std::optional<double> AccuracyReport::mae_of(MeasureId id) const noexcept {
  for (const auto& [m, v] : mae_by_measure) {
    if (m == id) return v;
  }
  return std::nullopt;
}

std::optional<std::size_t> AccuracyReport::rank_of(MeasureId id) const noexcept {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i] == id) return i + 1;
  }
  return std::nullopt;
}

AccuracyReport build_report(std::span<const Observation> obs, std::span<const MeasureId> measures,
                            const ReportOptions& opt) {
  if (obs.empty()) throw ContractViolation("build_report: empty table");
  AccuracyReport rep;

  struct Acc {
    double abs_err = 0;
    std::size_t count = 0;
  };
  std::map<MeasureId, Acc> totals;
  // (measure, reference) -> group -> (sum, count); std::map keeps output order fixed.
  std::map<std::pair<MeasureId, double>, std::map<std::string, std::pair<double, std::size_t>>>
      cells;

  for (const auto& o : obs) {
    if (!o.score) {
      ++rep.records_missing;
      continue;
    }
    ++rep.records_used;
    const double s = comparable_score(o.measure, *o.score);
    auto& t = totals[o.measure];
    t.abs_err += std::abs(s - o.reference);
    ++t.count;
    auto& g = cells[{o.measure, o.reference}][o.group];
    g.first += s;
    ++g.second;
  }

  for (const auto& [key, groups] : cells) {
    std::vector<double> means;
    means.reserve(groups.size());
    for (const auto& [name, sc] : groups) means.push_back(sc.first / static_cast<double>(sc.second));
    const double med = median(means);
    rep.cells.push_back({key.first, key.second, med, key.second - med, precision_iqr(means),
                         means.size()});
  }
  // Cells follow the caller's measure order, then ascending reference.
  std::stable_sort(rep.cells.begin(), rep.cells.end(), [&](const auto& a, const auto& b) {
    const auto pa = std::find(measures.begin(), measures.end(), a.measure) - measures.begin();
    const auto pb = std::find(measures.begin(), measures.end(), b.measure) - measures.begin();
    return pa < pb;
  });

  std::vector<std::pair<MeasureId, double>> rankable;
  for (MeasureId id : measures) {
    const auto it = totals.find(id);
    if (it == totals.end() || it->second.count == 0) continue;
    const double v = it->second.abs_err / static_cast<double>(it->second.count);
    rep.mae_by_measure.emplace_back(id, v);
    if (id == MeasureId::hsic && !opt.include_hsic) {
      rep.unranked.push_back(id);
    } else {
      rankable.emplace_back(id, v);
    }
  }
  std::stable_sort(rankable.begin(), rankable.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  for (const auto& [id, v] : rankable) rep.ranking.push_back(id);
  return rep;
}

AccuracyReport build_report(const ScoreTable& table, const ReportOptions& opt) {
  std::vector<Observation> obs;
  obs.reserve(table.records.size());
  for (const auto& r : table.records) obs.push_back({r.scenario, r.measure, r.target_r, r.score});
  return build_report(obs, table.config.measures, opt);
}

}  // namespace recor
