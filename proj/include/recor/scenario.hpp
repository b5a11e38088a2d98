#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recor/expression.hpp"

namespace recor {

enum class Family { monotone, non_monotone };

std::string_view family_name(Family f) noexcept;
/// Accepts "monotone", "non_monotone" and "non-monotone".
std::optional<Family> parse_family(std::string_view text) noexcept;

/// A generator y = f(x) with x uniform on [lo, hi].
struct Scenario {
  std::string name;
  Expression f;
  double lo = 0;
  double hi = 1;
  Family family = Family::monotone;
  std::string description;

  double operator()(double x) const { return f(x); }
};

/// Compiles and validates a scenario: lo < hi, f finite on an interior grid,
/// and for the monotone family f must not change direction on that grid.
/// Throws ContractViolation (or ParseError for a bad expression).
Scenario make_scenario(std::string name, std::string_view expression, double lo, double hi,
                       Family family, std::string description = {});

/// The built-in registry: 50 monotone or 16 non-monotone scenarios.
const std::vector<Scenario>& scenario_registry(Family family);
const Scenario* find_scenario(std::string_view name);

/// Reads a scenario file. Text layout is one entry per line,
///   name | expression | lo | hi | family | description
/// where lo/hi may be constant expressions and `#` starts a comment.
/// Input whose first non-blank character is '[' or '{' is read as JSON
/// (the format `scenarios --format json` writes).
std::vector<Scenario> parse_scenarios(std::string_view text, const std::string& source);
std::vector<Scenario> load_scenario_file(const std::string& path);

std::string scenarios_to_text(const std::vector<Scenario>& s);
std::string scenarios_to_json(const std::vector<Scenario>& s);

}  // namespace recor
