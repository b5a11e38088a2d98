#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace recor {

/// Observations of one variable. Always at least two finite values.
class Sample {
 public:
  /// Throws ContractViolation on fewer than two values or any NaN/infinity.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// True when at least two values differ (exact comparison).
  bool nonconstant() const noexcept;

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<double> values_;
};

/// Aligned (x, y) observations of equal length. Constant sides are allowed
/// here (covariance is still defined); every coefficient rejects them.
class PairedSample {
 public:
  /// Throws ContractViolation on length mismatch.
  PairedSample(Sample x, Sample y);
  PairedSample(std::vector<double> x, std::vector<double> y);

  const Sample& x() const noexcept { return x_; }
  const Sample& y() const noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }
  bool nonconstant() const noexcept { return x_.nonconstant() && y_.nonconstant(); }

  /// The same observations with the roles of x and y exchanged.
  PairedSample swapped() const { return PairedSample(y_, x_); }

  friend bool operator==(const PairedSample&, const PairedSample&) = default;

 private:
  Sample x_;
  Sample y_;
};

enum class TiePolicy { average, random };

struct RankVector {
  std::vector<double> ranks;
  TiePolicy tie_policy = TiePolicy::average;
};

Sample increasing_rearrangement(const Sample& s);
Sample decreasing_rearrangement(const Sample& s);

double mean(std::span<const double> v);

/// Centered two-pass covariance with divisor n - 1.
double covariance(std::span<const double> x, std::span<const double> y);
double variance(std::span<const double> v);

double sample_covariance(const PairedSample& p);
double sample_variance(const Sample& s);

/// Covariance of the co-sorted samples, oriented by the sign of s_xy:
/// s(x-up, y-up) when s_xy >= 0, otherwise s(x-up, y-down).
/// This is the tightest permutation bound on |s_xy|.
double oriented_rearranged_covariance(const PairedSample& p);

/// Average ranks for ties, or ties broken by a generator keyed on `seed`.
RankVector ranks(const Sample& s, TiePolicy policy, std::uint64_t seed = 0);

/// Average ranks of an arbitrary sequence (no Sample invariants required).
std::vector<double> average_ranks(std::span<const double> v);

}  // namespace recor
