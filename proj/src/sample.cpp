#include "recor/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recor/error.hpp"
#include "recor/rng.hpp"

namespace recor {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw ContractViolation("a sample needs at least two observations, got " +
                            std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ContractViolation("non-finite value at index " + std::to_string(i));
    }
  }
}

bool Sample::nonconstant() const noexcept {
  const double first = values_.front();
  return std::any_of(values_.begin() + 1, values_.end(),
                     [first](double v) { return v != first; });
}

PairedSample::PairedSample(Sample x, Sample y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw ContractViolation("paired sample length mismatch: " + std::to_string(x_.size()) +
                            " vs " + std::to_string(y_.size()));
  }
}

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y)
    : PairedSample(Sample(std::move(x)), Sample(std::move(y))) {}

Sample increasing_rearrangement(const Sample& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  std::sort(v.begin(), v.end());
  return Sample(std::move(v));
}

Sample decreasing_rearrangement(const Sample& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return Sample(std::move(v));
}

double mean(std::span<const double> v) {
  if (v.empty()) throw ContractViolation("mean of an empty sequence");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractViolation("covariance length mismatch");
  if (x.size() < 2) throw ContractViolation("covariance needs at least two observations");
  const double mx = mean(x);
  const double my = mean(y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - mx) * (y[i] - my);
  return acc / static_cast<double>(x.size() - 1);
}

double variance(std::span<const double> v) {
  if (v.size() < 2) throw ContractViolation("variance needs at least two observations");
  const double m = mean(v);
  double acc = 0.0;
  for (double e : v) acc += (e - m) * (e - m);
  return acc / static_cast<double>(v.size() - 1);
}

double sample_covariance(const PairedSample& p) {
  return covariance(p.x().values(), p.y().values());
}

double sample_variance(const Sample& s) { return variance(s.values()); }

double oriented_rearranged_covariance(const PairedSample& p) {
  if (!p.nonconstant()) {
    throw UndefinedCorrelation("undefined orientation bound for a constant sample");
  }
  std::vector<double> xs(p.x().values().begin(), p.x().values().end());
  std::vector<double> ys(p.y().values().begin(), p.y().values().end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  if (sample_covariance(p) < 0.0) std::reverse(ys.begin(), ys.end());
  return covariance(xs, ys);
}

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> out(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && v[order[j]] == v[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) out[order[k]] = avg;
    i = j;
  }
  return out;
}

RankVector ranks(const Sample& s, TiePolicy policy, std::uint64_t seed) {
  if (policy == TiePolicy::average) return {average_ranks(s.values()), policy};

  const auto v = s.values();
  const std::size_t n = v.size();
  CounterRng rng(seed);
  std::vector<std::uint64_t> jitter(n);
  for (auto& j : jitter) j = rng();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] < v[b];
    if (jitter[a] != jitter[b]) return jitter[a] < jitter[b];
    return a < b;
  });
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[order[k]] = static_cast<double>(k + 1);
  return {std::move(out), policy};
}

}  // namespace recor
