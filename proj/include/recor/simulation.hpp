#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recor/measures.hpp"
#include "recor/sample.hpp"
#include "recor/scenario.hpp"

namespace recor {

/// Noise scale that leaves a signal of variance var_y with target strength R:
/// sqrt((1 - R^2) var_y). Throws ContractViolation on var_y <= 0 or R outside [0, 1].
double noise_sigma(double target_r, double var_y);

/// Draws x uniformly on the scenario domain and returns
///   y = R f(x) + noise_sigma(R, var f(x)) z,  z ~ N(0, 1)
/// where var f(x) is the sample variance of the noiseless signal. Scaling the
/// signal by R keeps var(y) at var f(x), so the population correlation ratio
/// of y on f(x) is exactly R; R = 1 gives y = f(x) and R = 0 pure noise.
PairedSample simulate_pair(const Scenario& s, std::size_t n, double target_r,
                           std::uint64_t seed);

struct SimConfig {
  std::size_t n = 512;
  std::size_t reps = 10;
  std::vector<double> r_levels = default_r_levels();
  std::uint64_t seed = 42;
  std::vector<MeasureId> measures{kAllMeasures.begin(), kAllMeasures.end()};
  /// Worker threads; 0 picks the hardware concurrency. Never affects results.
  unsigned threads = 0;

  static std::vector<double> default_r_levels() { return parse_r_grid("0:1:0.05"); }
  /// "lo:hi:step" with 0 <= lo <= hi <= 1 and step > 0. Levels are lo + k*step,
  /// rounded to 12 decimals so 0.05 steps print cleanly.
  static std::vector<double> parse_r_grid(std::string_view spec);

  /// Throws ContractViolation when n < 3, reps < 1, levels empty or outside [0, 1].
  void validate() const;
};

struct ScoreRecord {
  std::string scenario;
  MeasureId measure;
  double target_r;
  std::size_t replicate;
  std::optional<double> score;
  std::string failure;  // reason when score is missing
};

struct ScoreTable {
  SimConfig config;
  std::vector<ScoreRecord> records;

  std::size_t missing() const noexcept;
};

/// Sub-seed of one grid cell; a pure function of its coordinates.
std::uint64_t cell_seed(std::uint64_t master, std::size_t scenario, std::size_t level,
                        std::size_t replicate) noexcept;

/// Scores every (scenario, level, replicate) cell. Records are ordered by
/// scenario, measure, level, replicate regardless of thread count; measure
/// failures become missing scores rather than aborting the grid.
ScoreTable run_grid(const SimConfig& cfg, std::span<const Scenario> scenarios);

}  // namespace recor
