#include "recor/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recor/error.hpp"

namespace recor {

namespace {

void require_nonconstant(const PairedSample& p) {
  if (!p.x().nonconstant()) throw UndefinedCorrelation("x is constant");
  if (!p.y().nonconstant()) throw UndefinedCorrelation("y is constant");
}

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

MeasureScore make(MeasureId id, double v) { return {id, v, is_signed(id)}; }

struct Moments {
  double mx, my, vx, vy, cxy;
};

Moments moments(const PairedSample& p) {
  const auto x = p.x().values();
  const auto y = p.y().values();
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double d = static_cast<double>(x.size() - 1);
  return {mx, my, sxx / d, syy / d, sxy / d};
}

double pearson_of(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  return clamp_unit(sxy / std::sqrt(sxx * syy));
}

// Merge sort on v counting inversions (pairs out of order).
std::uint64_t count_inversions(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> buf(n);
  std::uint64_t swaps = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += mid - i;
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    std::swap(v, buf);
  }
  return swaps;
}

// Pairs tied within runs of equal consecutive keys.
template <typename Eq>
std::uint64_t tied_pairs(std::size_t n, Eq equal_to_prev) {
  std::uint64_t total = 0, run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal_to_prev(i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total + run * (run - 1) / 2;
}

double median_inplace(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double median_nonzero_distance(std::span<const double> v) {
  std::vector<double> d;
  d.reserve(v.size() * (v.size() - 1) / 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double a = std::abs(v[i] - v[j]);
      if (a > 0) d.push_back(a);
    }
  }
  return median_inplace(d);
}

}  // namespace

std::string_view measure_name(MeasureId id) noexcept {
  switch (id) {
    case MeasureId::pearson: return "pearson";
    case MeasureId::additivity: return "additivity";
    case MeasureId::concordance: return "concordance";
    case MeasureId::rearrangement: return "rearrangement";
    case MeasureId::spearman: return "spearman";
    case MeasureId::kendall: return "kendall";
    case MeasureId::xi: return "xi";
    case MeasureId::dcor: return "dcor";
    case MeasureId::hsic: return "hsic";
  }
  return "unknown";
}

std::optional<MeasureId> parse_measure(std::string_view name) noexcept {
  for (MeasureId id : kAllMeasures) {
    if (measure_name(id) == name) return id;
  }
  struct Alias {
    std::string_view text;
    MeasureId id;
  };
  static constexpr Alias aliases[] = {
      {"r", MeasureId::pearson},        {"r+", MeasureId::additivity},
      {"r=", MeasureId::concordance},   {"r#", MeasureId::rearrangement},
      {"rho", MeasureId::spearman},     {"tau", MeasureId::kendall},
      {"chatterjee", MeasureId::xi},    {"distance", MeasureId::dcor},
  };
  for (const auto& a : aliases) {
    if (a.text == name) return a.id;
  }
  return std::nullopt;
}

bool is_signed(MeasureId id) noexcept {
  switch (id) {
    case MeasureId::xi:
    case MeasureId::dcor:
    case MeasureId::hsic:
      return false;
    default:
      return true;
  }
}

MeasureScore pearson(const PairedSample& p) {
  require_nonconstant(p);
  const Moments m = moments(p);
  return make(MeasureId::pearson, clamp_unit(m.cxy / std::sqrt(m.vx * m.vy)));
}

MeasureScore additivity(const PairedSample& p) {
  require_nonconstant(p);
  const Moments m = moments(p);
  return make(MeasureId::additivity, clamp_unit(m.cxy / (0.5 * (m.vx + m.vy))));
}

MeasureScore concordance(const PairedSample& p) {
  require_nonconstant(p);
  const Moments m = moments(p);
  const double gap = m.mx - m.my;
  return make(MeasureId::concordance, clamp_unit(m.cxy / (0.5 * (m.vx + m.vy + gap * gap))));
}

MeasureScore rearrangement_correlation(const PairedSample& p) {
  require_nonconstant(p);
  const double bound = std::abs(oriented_rearranged_covariance(p));
  // Sorted and unsorted sums round differently; trim the excess on monotone data.
  return make(MeasureId::rearrangement, clamp_unit(sample_covariance(p) / bound));
}

MeasureScore spearman(const PairedSample& p) {
  require_nonconstant(p);
  const auto rx = average_ranks(p.x().values());
  const auto ry = average_ranks(p.y().values());
  return make(MeasureId::spearman, pearson_of(rx, ry));
}

MeasureScore kendall(const PairedSample& p) {
  require_nonconstant(p);
  const auto x = p.x().values();
  const auto y = p.y().values();
  const std::size_t n = x.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  const std::uint64_t x_ties = tied_pairs(n, [&](std::size_t i) {
    return x[order[i]] == x[order[i - 1]];
  });
  const std::uint64_t joint_ties = tied_pairs(n, [&](std::size_t i) {
    return x[order[i]] == x[order[i - 1]] && y[order[i]] == y[order[i - 1]];
  });

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::uint64_t swaps = count_inversions(ys);
  const std::uint64_t y_ties = tied_pairs(n, [&](std::size_t i) { return ys[i] == ys[i - 1]; });

  const double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double numer = n0 - static_cast<double>(x_ties) - static_cast<double>(y_ties) +
                       static_cast<double>(joint_ties) - 2.0 * static_cast<double>(swaps);
  const double denom = std::sqrt((n0 - static_cast<double>(x_ties)) *
                                 (n0 - static_cast<double>(y_ties)));
  return make(MeasureId::kendall, clamp_unit(numer / denom));
}

MeasureScore chatterjee_xi(const PairedSample& p, std::uint64_t seed) {
  require_nonconstant(p);
  const std::size_t n = p.size();
  if (n < 3) throw InsufficientSample("xi needs n >= 3, got " + std::to_string(n));

  const auto y = p.y().values();
  const RankVector xr = ranks(p.x(), TiePolicy::random, seed);
  std::vector<std::size_t> by_x(n);
  for (std::size_t i = 0; i < n; ++i) by_x[static_cast<std::size_t>(xr.ranks[i]) - 1] = i;

  std::vector<double> ys(y.begin(), y.end());
  std::sort(ys.begin(), ys.end());
  std::vector<double> r(n), l(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double v = y[by_x[k]];
    // r: #{j : y_j <= v}, l: #{j : y_j >= v}
    r[k] = static_cast<double>(std::upper_bound(ys.begin(), ys.end(), v) - ys.begin());
    l[k] = static_cast<double>(ys.end() - std::lower_bound(ys.begin(), ys.end(), v));
  }
  double jumps = 0, spread = 0;
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 < n) jumps += std::abs(r[k + 1] - r[k]);
    spread += l[k] * (nd - l[k]);
  }
  return make(MeasureId::xi, 1.0 - nd * jumps / (2.0 * spread));
}

MeasureScore distance_correlation(const PairedSample& p) {
  require_nonconstant(p);
  const auto x = p.x().values();
  const auto y = p.y().values();
  const std::size_t n = x.size();

  // Double-centering is expanded into row sums so no n x n matrix is stored:
  // sum A_ij B_ij = sum a_ij b_ij - (2/n) sum a_i. b_i. + a.. b.. / n^2
  std::vector<double> ra(n, 0.0), rb(n, 0.0);
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = std::abs(x[i] - x[j]);
      const double b = std::abs(y[i] - y[j]);
      ra[i] += a;
      ra[j] += a;
      rb[i] += b;
      rb[j] += b;
      ab += a * b;
      aa += a * a;
      bb += b * b;
    }
  }
  ab *= 2;
  aa *= 2;
  bb *= 2;
  const double nd = static_cast<double>(n);
  double sab = 0, saa = 0, sbb = 0, ta = 0, tb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += ra[i] * rb[i];
    saa += ra[i] * ra[i];
    sbb += rb[i] * rb[i];
    ta += ra[i];
    tb += rb[i];
  }
  const double n2 = nd * nd;
  const double dcov = std::max(0.0, (ab - 2.0 * sab / nd + ta * tb / n2) / n2);
  const double dvx = (aa - 2.0 * saa / nd + ta * ta / n2) / n2;
  const double dvy = (bb - 2.0 * sbb / nd + tb * tb / n2) / n2;
  if (!(dvx > 0 && dvy > 0)) throw UndefinedCorrelation("zero distance variance");
  return make(MeasureId::dcor, std::min(1.0, std::sqrt(dcov / std::sqrt(dvx * dvy))));
}

MeasureScore hsic(const PairedSample& p) {
  require_nonconstant(p);
  const auto x = p.x().values();
  const auto y = p.y().values();
  const std::size_t n = x.size();

  const double bx = median_nonzero_distance(x);
  const double by = median_nonzero_distance(y);
  const double gx = -1.0 / (2.0 * bx * bx);
  const double gy = -1.0 / (2.0 * by * by);

  // Same row-sum expansion as dcor; kernel diagonals are exp(0) = 1.
  std::vector<double> rk(n, 1.0), rl(n, 1.0);
  double kl = static_cast<double>(n) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      const double k = std::exp(gx * dx * dx);
      const double l = std::exp(gy * dy * dy);
      rk[i] += k;
      rk[j] += k;
      rl[i] += l;
      rl[j] += l;
      kl += k * l;
    }
  }
  kl *= 2;
  const double nd = static_cast<double>(n);
  double skl = 0, tk = 0, tl = 0;
  for (std::size_t i = 0; i < n; ++i) {
    skl += rk[i] * rl[i];
    tk += rk[i];
    tl += rl[i];
  }
  const double n2 = nd * nd;
  return make(MeasureId::hsic, std::max(0.0, (kl - 2.0 * skl / nd + tk * tl / n2) / n2));
}

MeasureScore compute(MeasureId id, const PairedSample& p, const MeasureOptions& opt) {
  switch (id) {
    case MeasureId::pearson: return pearson(p);
    case MeasureId::additivity: return additivity(p);
    case MeasureId::concordance: return concordance(p);
    case MeasureId::rearrangement: return rearrangement_correlation(p);
    case MeasureId::spearman: return spearman(p);
    case MeasureId::kendall: return kendall(p);
    case MeasureId::xi: return chatterjee_xi(p, opt.xi_seed);
    case MeasureId::dcor: return distance_correlation(p);
    case MeasureId::hsic: return hsic(p);
  }
  throw ContractViolation("unknown measure id");
}

std::vector<MeasureScore> compute_all(const PairedSample& p, std::span<const MeasureId> ids,
                                      const MeasureOptions& opt) {
  std::vector<MeasureScore> out;
  out.reserve(ids.size());
  for (MeasureId id : ids) {
    try {
      out.push_back(compute(id, p, opt));
    } catch (const std::exception& e) {
      throw MeasureFailure(id, std::current_exception(), e.what());
    }
  }
  return out;
}

}  // namespace recor
