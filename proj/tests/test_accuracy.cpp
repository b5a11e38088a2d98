#include <doctest.h>

#include "recor/accuracy.hpp"
#include "recor/error.hpp"

using namespace recor;

TEST_CASE("order statistics") {
  const std::vector<double> four{4, 1, 3, 2};
  CHECK(median(four) == 2.5);
  CHECK(median(std::vector<double>{5, 1, 3}) == 3);
  CHECK(precision_iqr(four) == 1.5);
  CHECK(quantile(four, 0.25) == 1.75);
  CHECK(quantile(four, 0.0) == 1);
  CHECK(quantile(four, 1.0) == 4);
  CHECK_THROWS_AS(median(std::vector<double>{}), ContractViolation);
  CHECK_THROWS_AS(quantile(four, 1.5), ContractViolation);
}

TEST_CASE("trueness and mean absolute error") {
  CHECK(trueness_bias(std::vector<double>{0.1, 0.9}, 0.75) == doctest::Approx(0.25));
  const std::vector<std::pair<double, double>> pairs{{0.5, 0.7}, {1.0, 0.6}};
  CHECK(mae(pairs) == doctest::Approx(0.3));
  CHECK(comparable_score(MeasureId::rearrangement, -0.8) == 0.8);
  CHECK(comparable_score(MeasureId::dcor, 0.4) == 0.4);
}

TEST_CASE("report ranks by mean absolute error") {
  std::vector<Observation> obs;
  const std::vector<MeasureId> ms{MeasureId::pearson, MeasureId::rearrangement, MeasureId::hsic};
  for (const char* g : {"a", "b"}) {
    obs.push_back({g, MeasureId::pearson, 0.5, 0.7});
    obs.push_back({g, MeasureId::rearrangement, 0.5, -0.55});
    obs.push_back({g, MeasureId::hsic, 0.5, 0.49});
  }
  obs.push_back({"c", MeasureId::pearson, 0.5, std::nullopt});

  const auto r = build_report(obs, ms);
  CHECK(r.ranking == std::vector<MeasureId>{MeasureId::rearrangement, MeasureId::pearson});
  CHECK(r.unranked == std::vector<MeasureId>{MeasureId::hsic});
  CHECK(r.mae_of(MeasureId::pearson).value() == doctest::Approx(0.2));
  CHECK(r.mae_of(MeasureId::hsic).value() == doctest::Approx(0.01));
  CHECK(r.rank_of(MeasureId::rearrangement) == 1u);
  CHECK_FALSE(r.rank_of(MeasureId::hsic).has_value());
  CHECK(r.records_used == 6);
  CHECK(r.records_missing == 1);

  const auto with = build_report(obs, ms, {.include_hsic = true});
  CHECK(with.ranking.front() == MeasureId::hsic);
  CHECK(with.unranked.empty());

  REQUIRE(r.cells.size() == 3);
  const auto& cell = r.cells[1];
  CHECK(cell.measure == MeasureId::rearrangement);
  CHECK(cell.r_level == 0.5);
  CHECK(cell.median_score == doctest::Approx(0.55));
  CHECK(cell.bias == doctest::Approx(-0.05));
  CHECK(cell.count == 2);
}

TEST_CASE("cell statistics use one value per group") {
  std::vector<Observation> obs;
  for (double s : {0.1, 0.2, 0.3}) obs.push_back({"a", MeasureId::pearson, 0.4, s});
  obs.push_back({"b", MeasureId::pearson, 0.4, 0.8});
  const std::vector<MeasureId> ms{MeasureId::pearson};
  const auto r = build_report(obs, ms);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.cells[0].count == 2);
  CHECK(r.cells[0].median_score == doctest::Approx(0.5));
  CHECK(r.mae_of(MeasureId::pearson).value() == doctest::Approx((0.3 + 0.2 + 0.1 + 0.4) / 4));
}
