#include <doctest.h>

#include <set>

#include "recor/error.hpp"
#include "recor/scenario.hpp"

using namespace recor;

TEST_CASE("registry sizes and unique names") {
  const auto& mono = scenario_registry(Family::monotone);
  const auto& non = scenario_registry(Family::non_monotone);
  CHECK(mono.size() == 50);
  CHECK(non.size() == 16);

  std::set<std::string> names;
  for (const auto& s : mono) names.insert(s.name);
  for (const auto& s : non) names.insert(s.name);
  CHECK(names.size() == 66);
}

TEST_CASE("monotone registry entries are monotone and non-monotone ones are not") {
  for (const auto& s : scenario_registry(Family::monotone)) {
    CAPTURE(s.name);
    CHECK(s.family == Family::monotone);
    int sign = 0;
    bool ok = true;
    double prev = s(s.lo + (s.hi - s.lo) / 4096);
    for (int k = 1; k < 2048; ++k) {
      const double v = s(s.lo + (s.hi - s.lo) * (2 * k + 1) / 4096.0);
      if (v > prev && sign < 0) ok = false;
      if (v < prev && sign > 0) ok = false;
      if (v != prev && sign == 0) sign = v > prev ? 1 : -1;
      prev = v;
    }
    CHECK(ok);
    CHECK(sign != 0);
  }
  for (const auto& s : scenario_registry(Family::non_monotone)) {
    CAPTURE(s.name);
    CHECK(s.family == Family::non_monotone);
    CHECK_THROWS_AS(make_scenario(s.name, s.f.text(), s.lo, s.hi, Family::monotone),
                    ContractViolation);
  }
}

TEST_CASE("make_scenario validation") {
  CHECK_THROWS_AS(make_scenario("bad", "x", 1, 1, Family::monotone), ContractViolation);
  CHECK_THROWS_AS(make_scenario("bad", "x", 2, 1, Family::monotone), ContractViolation);
  CHECK_THROWS_AS(make_scenario("flat", "3", 0, 1, Family::monotone), ContractViolation);
  CHECK_THROWS_AS(make_scenario("nan", "log(x)", -2, -1, Family::monotone), ContractViolation);
  CHECK_THROWS_AS(make_scenario("bump", "x^2", -1, 1, Family::monotone), ContractViolation);
  CHECK_NOTHROW(make_scenario("bump", "x^2", -1, 1, Family::non_monotone));
  CHECK_THROWS_AS(make_scenario("bad", "x +", 0, 1, Family::monotone), ParseError);
}

TEST_CASE("lookup by name") {
  REQUIRE(find_scenario("cubic") != nullptr);
  CHECK(find_scenario("cubic")->f.text() == "x^3");
  REQUIRE(find_scenario("parabola") != nullptr);
  CHECK(find_scenario("parabola")->family == Family::non_monotone);
  CHECK(find_scenario("no_such_thing") == nullptr);
  CHECK(parse_family("non-monotone") == Family::non_monotone);
  CHECK(parse_family(family_name(Family::monotone)) == Family::monotone);
  CHECK_FALSE(parse_family("sideways").has_value());
}

TEST_CASE("text format parses, reports line numbers and round-trips") {
  const auto list = parse_scenarios(
      "# comment\n"
      "\n"
      "rise | exp(x) | 0 | pi/2 | monotone | exponential\n"
      "hump | sin(pi*x) | 0 | 1 | non_monotone\n",
      "inline");
  REQUIRE(list.size() == 2);
  CHECK(list[0].hi == doctest::Approx(1.5707963267948966));
  CHECK(list[0].description == "exponential");
  CHECK(list[1].family == Family::non_monotone);

  const auto back = parse_scenarios(scenarios_to_text(list), "again");
  REQUIRE(back.size() == 2);
  CHECK(back[0].name == "rise");
  CHECK(back[0].hi == list[0].hi);
  CHECK(back[1].f.text() == list[1].f.text());

  try {
    parse_scenarios("a | x | 0 | 1 | monotone\nb | x | 0 | 1\n", "file.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).starts_with("file.txt:2"));
  }
  CHECK_THROWS_AS(parse_scenarios("a | x | 0 | 1 | monotone\na | x^3 | 0 | 1 | monotone\n", "dup"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenarios("a | x | 0 | 1 | sideways\n", "fam"), ParseError);
}

TEST_CASE("json format round-trips the built-in registry") {
  const auto& mono = scenario_registry(Family::monotone);
  const auto back = parse_scenarios(scenarios_to_json(mono), "json");
  REQUIRE(back.size() == mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) {
    CHECK(back[i].name == mono[i].name);
    CHECK(back[i].f.text() == mono[i].f.text());
    CHECK(back[i].lo == mono[i].lo);
    CHECK(back[i].hi == mono[i].hi);
    CHECK(back[i].description == mono[i].description);
  }
  const auto obj = parse_scenarios(
      R"j({"scenarios": [{"name": "s", "expression": "sqrt(x)", "lo": 0, "hi": "4",
                         "family": "monotone"}]})j",
      "obj");
  REQUIRE(obj.size() == 1);
  CHECK(obj[0].hi == 4);
  CHECK_THROWS_AS(parse_scenarios("[{\"name\": \"s\"}]", "short"), ParseError);
}
