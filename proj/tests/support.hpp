#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "recor/rng.hpp"
#include "recor/sample.hpp"

namespace recor::testing {

// Values drawn from a small integer range so ties are common.
inline std::vector<double> tied_values(CounterRng& g, std::size_t n, int levels) {
  std::vector<double> v(n);
  for (auto& e : v) e = std::floor(g.uniform() * levels);
  return v;
}

inline std::vector<double> normal_values(CounterRng& g, std::size_t n) {
  std::vector<double> v(n);
  for (auto& e : v) e = g.normal();
  return v;
}

inline bool has_spread(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) != v.end();
}

// max (or min) of cov(x, y∘π) over every permutation π
inline double brute_force_extremum(std::vector<double> x, std::vector<double> y, bool maximize) {
  std::sort(y.begin(), y.end());
  double best = maximize ? -INFINITY : INFINITY;
  do {
    const double c = covariance(x, y);
    best = maximize ? std::max(best, c) : std::min(best, c);
  } while (std::next_permutation(y.begin(), y.end()));
  return best;
}

}  // namespace recor::testing
