#pragma once

#include <array>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "recor/sample.hpp"

namespace recor {

enum class MeasureId {
  pearson,
  additivity,
  concordance,
  rearrangement,
  spearman,
  kendall,
  xi,
  dcor,
  hsic,
};

inline constexpr std::array<MeasureId, 9> kAllMeasures = {
    MeasureId::pearson,  MeasureId::additivity, MeasureId::concordance,
    MeasureId::rearrangement, MeasureId::spearman, MeasureId::kendall,
    MeasureId::xi,       MeasureId::dcor,       MeasureId::hsic,
};

std::string_view measure_name(MeasureId id) noexcept;
/// Accepts canonical names plus the short aliases r, r+, r=, r#, rho, tau.
std::optional<MeasureId> parse_measure(std::string_view name) noexcept;
/// Signed measures carry direction and are compared by magnitude.
bool is_signed(MeasureId id) noexcept;

struct MeasureScore {
  MeasureId measure;
  double value;
  bool is_signed;
};

struct MeasureOptions {
  /// Keys the tie-breaking generator for ties in x under xi.
  std::uint64_t xi_seed = 0;
};

MeasureScore pearson(const PairedSample& p);
MeasureScore additivity(const PairedSample& p);
MeasureScore concordance(const PairedSample& p);
/// s_xy / |s(x-up, y-updown)|. Bounded by one in magnitude and never below |pearson|.
MeasureScore rearrangement_correlation(const PairedSample& p);
MeasureScore spearman(const PairedSample& p);
/// Kendall tau-b, O(n log n).
MeasureScore kendall(const PairedSample& p);
/// xi(y | x) with max-rank convention; asymmetric. Throws InsufficientSample for n < 3.
MeasureScore chatterjee_xi(const PairedSample& p, std::uint64_t seed = 0);
/// Biased (V-statistic) distance correlation.
MeasureScore distance_correlation(const PairedSample& p);
/// Raw biased HSIC, Gaussian kernels with median-heuristic bandwidths.
MeasureScore hsic(const PairedSample& p);

MeasureScore compute(MeasureId id, const PairedSample& p, const MeasureOptions& opt = {});

/// A measure inside compute_all failed. The original exception is kept as `cause`.
class MeasureFailure : public std::runtime_error {
 public:
  MeasureFailure(MeasureId id, std::exception_ptr cause, const std::string& what)
      : std::runtime_error(std::string(measure_name(id)) + ": " + what),
        measure(id),
        cause(std::move(cause)) {}

  MeasureId measure;
  std::exception_ptr cause;
};

/// One score per requested id, in request order.
std::vector<MeasureScore> compute_all(const PairedSample& p, std::span<const MeasureId> ids,
                                      const MeasureOptions& opt = {});

}  // namespace recor
