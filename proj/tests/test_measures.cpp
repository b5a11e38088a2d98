#include <doctest.h>

#include <cmath>
#include <numeric>

#include "recor/error.hpp"
#include "recor/measures.hpp"
#include "support.hpp"

using namespace recor;

namespace {

double value(MeasureId id, const PairedSample& p) { return compute(id, p).value; }

// O(n^2) tau-b straight from the definition.
double kendall_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  double conc = 0, tx = 0, ty = 0, n0 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      n0 += 1;
      if (dx == 0) tx += 1;
      if (dy == 0) ty += 1;
      if (dx != 0 && dy != 0) conc += (dx > 0) == (dy > 0) ? 1 : -1;
    }
  }
  return conc / std::sqrt((n0 - tx) * (n0 - ty));
}

const PairedSample kTied({1, 2, 2, 3, 4, 5, 5, 6, 7.5, 8}, {2, 1, 3, 3, 5, 4, 6, 6, 9, 7});

}  // namespace

TEST_CASE("hand-computed values") {
  const PairedSample swap1({1, 2, 3}, {2, 1, 3});
  CHECK(value(MeasureId::spearman, swap1) == doctest::Approx(0.5));
  CHECK(value(MeasureId::kendall, swap1) == doctest::Approx(1.0 / 3.0));

  CHECK(value(MeasureId::concordance, PairedSample({1, 2, 3}, {2, 3, 4})) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(value(MeasureId::additivity, PairedSample({1, 2, 3}, {2, 4, 6})) ==
        doctest::Approx(0.8));

  CHECK(chatterjee_xi(PairedSample({1, 2, 3}, {1, 2, 3})).value == doctest::Approx(0.25));
  std::vector<double> ramp(100);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  CHECK(chatterjee_xi(PairedSample(ramp, ramp)).value ==
        doctest::Approx(1.0 - 297.0 / 9999.0).epsilon(1e-14));
}

// Reference values from scipy.stats and explicit n x n matrices.
TEST_CASE("tied sample against independent oracles") {
  CHECK(value(MeasureId::pearson, kTied) == doctest::Approx(0.9186591501303535).epsilon(1e-13));
  CHECK(value(MeasureId::rearrangement, kTied) ==
        doctest::Approx(0.9416342412451363).epsilon(1e-13));
  CHECK(value(MeasureId::spearman, kTied) == doctest::Approx(0.932515337423313).epsilon(1e-13));
  CHECK(value(MeasureId::kendall, kTied) == doctest::Approx(0.8139534883720931).epsilon(1e-13));
  CHECK(value(MeasureId::additivity, kTied) ==
        doctest::Approx(0.9181882855110267).epsilon(1e-13));
  CHECK(value(MeasureId::concordance, kTied) ==
        doctest::Approx(0.9133152494397924).epsilon(1e-13));
  CHECK(value(MeasureId::dcor, kTied) == doctest::Approx(0.9307392757729879).epsilon(1e-12));
  CHECK(value(MeasureId::hsic, kTied) == doctest::Approx(0.056541732708793334).epsilon(1e-12));

  const PairedSample distinct({0.3, 1.2, -0.5, 2.2, 0.9, 1.7, -1.1, 0.1},
                              {1.0, 0.4, 2.0, 0.4, -0.3, 1.5, 0.8, 2.5});
  CHECK(chatterjee_xi(distinct).value == doctest::Approx(0.03797468354430378).epsilon(1e-13));
}

TEST_CASE("kendall agrees with the quadratic definition") {
  CounterRng g(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(g.uniform() * 60);
    const auto x = testing::tied_values(g, n, 2 + trial % 7);
    const auto y = trial % 2 ? testing::tied_values(g, n, 5) : testing::normal_values(g, n);
    if (!testing::has_spread(x) || !testing::has_spread(y)) continue;
    CHECK(kendall(PairedSample(x, y)).value ==
          doctest::Approx(kendall_oracle(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("spearman is pearson on average ranks") {
  CounterRng g(6);
  const auto x = testing::tied_values(g, 40, 6);
  const auto y = testing::normal_values(g, 40);
  const PairedSample ranked(average_ranks(x), average_ranks(y));
  CHECK(spearman(PairedSample(x, y)).value == doctest::Approx(pearson(ranked).value));
}

TEST_CASE("r# is exact on monotone data and equals r on linear data") {
  std::vector<double> x, y_up, y_down, y_line;
  for (int i = 0; i < 50; ++i) {
    const double v = -2 + 0.09 * i;
    x.push_back(v);
    y_up.push_back(std::exp(3 * v));
    y_down.push_back(-std::cbrt(v));
    y_line.push_back(-4 * v + 7);
  }
  CHECK(rearrangement_correlation(PairedSample(x, y_up)).value == 1.0);
  CHECK(rearrangement_correlation(PairedSample(x, y_down)).value == -1.0);
  CHECK(pearson(PairedSample(x, y_up)).value < 0.9);

  const PairedSample line(x, y_line);
  CHECK(rearrangement_correlation(line).value == doctest::Approx(pearson(line).value));
}

TEST_CASE("r# bounds and symmetry on random data") {
  CounterRng g(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 40;
    const auto x = testing::normal_values(g, n);
    auto y = testing::normal_values(g, n);
    for (std::size_t i = 0; i < n; ++i) y[i] += (trial % 5 - 2) * x[i];
    const PairedSample p(x, y);
    const double rs = rearrangement_correlation(p).value;
    CHECK(std::abs(rs) <= 1.0);
    CHECK(std::abs(rs) >= std::abs(pearson(p).value) - 1e-12);
    CHECK(rs == doctest::Approx(rearrangement_correlation(p.swapped()).value));
  }
}

TEST_CASE("unsigned measures stay in range and ignore the sign") {
  const PairedSample p({1, 2, 3, 4, 5}, {5, 3, 4, 1, 2});
  const PairedSample q({1, 2, 3, 4, 5}, {-5, -3, -4, -1, -2});
  CHECK(distance_correlation(p).value == doctest::Approx(distance_correlation(q).value));
  CHECK(hsic(p).value == doctest::Approx(hsic(q).value));
  CHECK(distance_correlation(p).value >= 0);
  CHECK(distance_correlation(p).value <= 1);
  CHECK_FALSE(is_signed(MeasureId::dcor));
  CHECK_FALSE(is_signed(MeasureId::xi));
  CHECK_FALSE(is_signed(MeasureId::hsic));
  CHECK(is_signed(MeasureId::rearrangement));
  CHECK(compute(MeasureId::kendall, p).is_signed);
}

TEST_CASE("dcor is one under linear dependence") {
  const PairedSample p({1, 2, 3, 4, 9}, {3, 5, 7, 9, 19});
  CHECK(distance_correlation(p).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("xi tie-breaking follows the seed") {
  const PairedSample p({1, 1, 1, 2, 2, 3, 3, 3}, {4, 1, 3, 2, 5, 8, 6, 7});
  CHECK(chatterjee_xi(p, 9).value == chatterjee_xi(p, 9).value);
  CHECK(compute(MeasureId::xi, p, {.xi_seed = 9}).value == chatterjee_xi(p, 9).value);
}

TEST_CASE("undefined inputs raise typed errors") {
  const PairedSample flat({1, 2, 3}, {4, 4, 4});
  for (MeasureId id : kAllMeasures) {
    CAPTURE(measure_name(id));
    CHECK_THROWS_AS(compute(id, flat), UndefinedCorrelation);
    CHECK_THROWS_AS(compute(id, flat.swapped()), UndefinedCorrelation);
  }
  CHECK_THROWS_AS(chatterjee_xi(PairedSample({1, 2}, {2, 1})), InsufficientSample);
  CHECK(rearrangement_correlation(PairedSample({1, 2}, {2, 1})).value == -1.0);
}

TEST_CASE("compute_all names the failing measure") {
  const PairedSample two({1, 2}, {1, 3});
  const std::vector<MeasureId> ok{MeasureId::pearson, MeasureId::rearrangement};
  CHECK(compute_all(two, ok).size() == 2);

  const std::vector<MeasureId> ids{MeasureId::pearson, MeasureId::xi};
  try {
    compute_all(two, ids);
    FAIL("expected MeasureFailure");
  } catch (const MeasureFailure& f) {
    CHECK(f.measure == MeasureId::xi);
    CHECK_THROWS_AS(std::rethrow_exception(f.cause), InsufficientSample);
  }
}

TEST_CASE("measure names and aliases") {
  for (MeasureId id : kAllMeasures) CHECK(parse_measure(measure_name(id)) == id);
  CHECK(parse_measure("r#") == MeasureId::rearrangement);
  CHECK(parse_measure("r+") == MeasureId::additivity);
  CHECK(parse_measure("r=") == MeasureId::concordance);
  CHECK(parse_measure("rho") == MeasureId::spearman);
  CHECK(parse_measure("tau") == MeasureId::kendall);
  CHECK(parse_measure("chatterjee") == MeasureId::xi);
  CHECK_FALSE(parse_measure("bogus").has_value());
}
