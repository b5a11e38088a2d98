#include "recor/simulation.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "recor/error.hpp"
#include "recor/rng.hpp"

namespace recor {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ContractViolation("r-grid: bad " + std::string(what) + " '" + s + "'");
  }
  return v;
}

}  // namespace

double noise_sigma(double target_r, double var_y) {
  if (!(var_y > 0)) throw ContractViolation("noise_sigma: signal variance must be positive");
  if (!(target_r >= 0 && target_r <= 1)) {
    throw ContractViolation("noise_sigma: target R must lie in [0, 1]");
  }
  return std::sqrt((1.0 - target_r * target_r) * var_y);
}

PairedSample simulate_pair(const Scenario& s, std::size_t n, double target_r,
                           std::uint64_t seed) {
  if (n < 3) throw ContractViolation("simulate_pair: n must be at least 3");
  CounterRng rng(seed);
  std::vector<double> x(n), fx(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = s.lo + (s.hi - s.lo) * rng.uniform();
    fx[i] = s(x[i]);
    if (!std::isfinite(fx[i])) {
      throw ContractViolation("scenario " + s.name + " produced a non-finite value");
    }
  }
  const double var_f = variance(fx);
  if (!(var_f > 0)) throw ContractViolation("scenario " + s.name + ": degenerate signal variance");
  const double sigma = noise_sigma(target_r, var_f);

  std::vector<double> y(n);
  if (sigma == 0) {
    y = std::move(fx);
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] = target_r * fx[i] + sigma * rng.normal();
  }
  return PairedSample(std::move(x), std::move(y));
}

std::vector<double> SimConfig::parse_r_grid(std::string_view spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string_view::npos ? a : spec.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos ||
      spec.find(':', b + 1) != std::string_view::npos) {
    throw ContractViolation("r-grid must look like lo:hi:step, got '" + std::string(spec) + "'");
  }
  const double lo = parse_number(spec.substr(0, a), "lo");
  const double hi = parse_number(spec.substr(a + 1, b - a - 1), "hi");
  const double step = parse_number(spec.substr(b + 1), "step");
  if (!(lo >= 0 && hi <= 1 && lo <= hi)) {
    throw ContractViolation("r-grid needs 0 <= lo <= hi <= 1");
  }
  if (!(step > 0)) throw ContractViolation("r-grid step must be positive");

  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) throw ContractViolation("r-grid has too many levels");
  std::vector<double> levels;
  levels.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double v = std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12;
    levels.push_back(std::min(v, 1.0));
  }
  return levels;
}

void SimConfig::validate() const {
  if (n < 3) throw ContractViolation("n must be at least 3");
  if (reps < 1) throw ContractViolation("reps must be at least 1");
  if (r_levels.empty()) throw ContractViolation("no R levels");
  for (double r : r_levels) {
    if (!(r >= 0 && r <= 1)) throw ContractViolation("R levels must lie in [0, 1]");
  }
  if (measures.empty()) throw ContractViolation("no measures selected");
}

std::size_t ScoreTable::missing() const noexcept {
  std::size_t k = 0;
  for (const auto& r : records) k += r.score ? 0 : 1;
  return k;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t scenario, std::size_t level,
                        std::size_t replicate) noexcept {
  return derive_seed(master, {scenario, level, replicate});
}

ScoreTable run_grid(const SimConfig& cfg, std::span<const Scenario> scenarios) {
  cfg.validate();
  const std::size_t n_s = scenarios.size();
  const std::size_t n_l = cfg.r_levels.size();
  const std::size_t n_r = cfg.reps;
  const std::size_t n_m = cfg.measures.size();

  ScoreTable table{cfg, {}};
  table.records.resize(n_s * n_m * n_l * n_r);
  auto slot = [&](std::size_t s, std::size_t m, std::size_t l, std::size_t r) -> ScoreRecord& {
    return table.records[((s * n_m + m) * n_l + l) * n_r + r];
  };

  const std::size_t cells = n_s * n_l * n_r;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const std::size_t s = c / (n_l * n_r);
      const std::size_t l = (c / n_r) % n_l;
      const std::size_t r = c % n_r;
      const double target = cfg.r_levels[l];
      const std::uint64_t seed = cell_seed(cfg.seed, s, l, r);

      std::optional<PairedSample> pair;
      std::string sim_failure;
      try {
        pair.emplace(simulate_pair(scenarios[s], cfg.n, target, seed));
      } catch (const std::exception& e) {
        sim_failure = e.what();
      }
      const MeasureOptions opt{derive_seed(seed, {0x78u})};
      for (std::size_t m = 0; m < n_m; ++m) {
        ScoreRecord& rec = slot(s, m, l, r);
        rec = {scenarios[s].name, cfg.measures[m], target, r, std::nullopt, sim_failure};
        if (!pair) continue;
        try {
          rec.score = compute(cfg.measures[m], *pair, opt).value;
        } catch (const std::exception& e) {
          rec.failure = e.what();
        }
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return table;
}

}  // namespace recor
