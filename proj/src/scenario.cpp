#include "recor/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recor/error.hpp"

namespace recor {

namespace {

// Built-in registries, stored in the scenario-file text layout so that the
// shipped data and user files go through the same parser.
constexpr std::string_view kMonotone = R"(
# powers, roots and rationals
linear                       | 2*x + 1          | 0     | 1     | monotone | straight line
quadratic                    | x^2              | 0     | 1     | monotone | parabola branch
cubic                        | x^3              | 0     | 1     | monotone | cubic
square_root                  | sqrt(x)          | 0     | 1     | monotone | square root
cube_root                    | cbrt(x)          | 0     | 1     | monotone | cube root
tenth_root                   | x^0.1            | 0     | 1     | monotone | tenth root, sharp rise at zero
inverse_square_root          | x^-0.5           | 0.01  | 1     | monotone | reciprocal square root
reciprocal                   | 1/x              | 0.5   | 2     | monotone | hyperbola branch
saturation                   | x/(1 + x)        | 0     | 100   | monotone | Michaelis-Menten saturation
# exponentials and logarithms
exponential                  | exp(x)           | 0     | 2     | monotone | natural exponential
exponential_base10           | 10^x             | 0     | 1     | monotone | base-10 exponential
exponential_decay            | exp(-x)          | 0     | 1     | monotone | exponential decay
stretched_decay              | exp(-sqrt(x))    | 0     | 10    | monotone | stretched exponential decay
natural_log                  | log(x)           | 0     | 1     | monotone | natural logarithm
common_log                   | log10(x)         | 0     | 10    | monotone | base-10 logarithm
binary_log                   | log2(x)          | 0     | 1     | monotone | base-2 logarithm
reciprocal_log               | 1/log(x)         | 1.01  | 10    | monotone | reciprocal of the logarithm
iterated_log                 | log(log(x))      | 1.001 | 100   | monotone | logarithm of the logarithm
# trigonometric branches
sine                         | sin(x)           | 0     | pi/2  | monotone | sine, first quarter
cosine                       | cos(x)           | 0     | pi/2  | monotone | cosine, first quarter
tangent                      | tan(x)           | -1.57 | 1.57  | monotone | tangent across one full branch
cotangent                    | cot(x)           | 0.05  | 3.09  | monotone | cotangent across one full branch
secant                       | sec(x)           | 0     | 1.5   | monotone | secant
cosecant                     | csc(x)           | 0.1   | pi/2  | monotone | cosecant
# inverse trigonometric
inverse_sine                 | asin(x)          | 0     | 1     | monotone | arcsine
inverse_cosine               | acos(x)          | -1    | 1     | monotone | arccosine
inverse_tangent              | atan(x)          | 0     | 100   | monotone | arctangent
inverse_cotangent            | acot(x)          | -100  | 100   | monotone | arccotangent, continuous branch
inverse_secant               | asec(x)          | 1     | 1000  | monotone | arcsecant
inverse_cosecant             | acsc(x)          | 1     | 10    | monotone | arccosecant
# hyperbolic
hyperbolic_sine              | sinh(x)          | 0     | 3     | monotone | hyperbolic sine
hyperbolic_cosine            | cosh(x)          | 0     | 2     | monotone | hyperbolic cosine, right branch
hyperbolic_tangent           | tanh(x)          | -20   | 20    | monotone | hyperbolic tangent
hyperbolic_cotangent         | coth(x)          | 0.1   | 3     | monotone | hyperbolic cotangent
hyperbolic_secant            | sech(x)          | 0     | 2     | monotone | hyperbolic secant, right branch
hyperbolic_cosecant          | csch(x)          | 0.1   | 3     | monotone | hyperbolic cosecant
# inverse hyperbolic
inverse_hyperbolic_sine      | asinh(x)         | -1000 | 1000  | monotone | area hyperbolic sine
inverse_hyperbolic_cosine    | acosh(x)         | 1     | 1000  | monotone | area hyperbolic cosine
inverse_hyperbolic_tangent   | atanh(x)         | 0     | 1     | monotone | area hyperbolic tangent
inverse_hyperbolic_cotangent | acoth(x)         | 1     | 100   | monotone | area hyperbolic cotangent
inverse_hyperbolic_secant    | asech(x)         | 0     | 1     | monotone | area hyperbolic secant
inverse_hyperbolic_cosecant  | acsch(x)         | 0     | 100   | monotone | area hyperbolic cosecant
# sigmoids, special functions and composites
logistic                     | logistic(x)      | -20   | 20    | monotone | logistic sigmoid
error_function               | erf(x)           | -10   | 10    | monotone | Gauss error function
normal_cdf                   | normal_cdf(x)    | -12   | 12    | monotone | standard normal distribution function
log_gamma                    | lgamma(x)        | 2     | 20    | monotone | log-gamma past its minimum
digamma                      | digamma(x)       | 0.01  | 10    | monotone | digamma function
lambert_w                    | lambertw(x)      | 0     | 100   | monotone | Lambert W, principal branch
x_exp                        | x*exp(x)         | 0     | 1     | monotone | inverse of Lambert W
x_plus_sine                  | x + sin(x)       | 0     | 2*pi  | monotone | line with a sine ripple, non-decreasing
)";

constexpr std::string_view kNonMonotone = R"(
parabola            | (2*x - 1)^2                   | 0    | 1   | non_monotone | symmetric parabola
lopsided_parabola   | (x - 0.25)^2                  | 0    | 1   | non_monotone | parabola with an off-centre vertex
cubic_wave          | 4*x^3 + x^2 - 4*x             | -1.3 | 1.1 | non_monotone | cubic with two turning points
sine_one_period     | sin(2*pi*x)                   | 0    | 1   | non_monotone | one sine period
sine_four_periods   | sin(8*pi*x)                   | 0    | 1   | non_monotone | four sine periods
sine_eight_periods  | sin(16*pi*x)                  | 0    | 1   | non_monotone | eight sine periods
cosine_one_period   | cos(2*pi*x)                   | 0    | 1   | non_monotone | one cosine period
semicircle          | sqrt(1 - x^2)                 | -1   | 1   | non_monotone | upper half circle
v_shape             | abs(x)                        | -1   | 1   | non_monotone | absolute value
w_shape             | abs(abs(x) - 0.5)             | -1   | 1   | non_monotone | folded absolute value
square_wave         | sign(sin(4*pi*x))             | 0    | 1   | non_monotone | two square-wave periods
sawtooth            | frac(4*x)                     | 0    | 1   | non_monotone | four sawtooth teeth
damped_cosine       | exp(-3*x)*cos(8*pi*x)         | 0    | 1   | non_monotone | decaying oscillation
sine_with_trend     | x + sin(4*pi*x)/2             | 0    | 1   | non_monotone | oscillation around a rising line
x_sine              | x*sin(6*pi*x)                 | 0    | 1   | non_monotone | oscillation with growing amplitude
gaussian_spike      | exp(-50*(x - 0.5)^2)          | 0    | 1   | non_monotone | narrow bump
)";

constexpr int kGridPoints = 1024;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double bound_from_json(const nlohmann::json& j, const char* key, const std::string& source) {
  if (!j.contains(key)) throw ParseError(source, 0, std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return evaluate_constant(v.get<std::string>());
  throw ParseError(source, 0, std::string("field '") + key + "' must be a number or string");
}

std::vector<Scenario> parse_json(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("scenarios")) throw ParseError(source, 0, "expected a 'scenarios' array");
    list = &doc.at("scenarios");
  }
  if (!list->is_array()) throw ParseError(source, 0, "expected an array of scenarios");

  std::vector<Scenario> out;
  for (const auto& item : *list) {
    try {
      const auto family = parse_family(item.at("family").get<std::string>());
      if (!family) throw ParseError(source, 0, "unknown family");
      out.push_back(make_scenario(item.at("name").get<std::string>(),
                                  item.at("expression").get<std::string>(),
                                  bound_from_json(item, "lo", source),
                                  bound_from_json(item, "hi", source), *family,
                                  item.value("description", std::string())));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, 0, "scenario #" + std::to_string(out.size() + 1) + ": " + e.what());
    } catch (const ContractViolation& e) {
      throw ParseError(source, 0, "scenario #" + std::to_string(out.size() + 1) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Scenario> build_registry(std::string_view text, const char* source) {
  auto list = parse_scenarios(text, source);
  return list;
}

}  // namespace

std::string_view family_name(Family f) noexcept {
  return f == Family::monotone ? "monotone" : "non_monotone";
}

std::optional<Family> parse_family(std::string_view text) noexcept {
  if (text == "monotone") return Family::monotone;
  if (text == "non_monotone" || text == "non-monotone" || text == "nonmonotone") {
    return Family::non_monotone;
  }
  return std::nullopt;
}

Scenario make_scenario(std::string name, std::string_view expression, double lo, double hi,
                       Family family, std::string description) {
  if (name.empty()) throw ContractViolation("scenario name is empty");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw ContractViolation("scenario " + name + ": domain needs finite lo < hi");
  }
  Scenario s{std::move(name), Expression::parse(expression), lo, hi, family,
             std::move(description)};

  // Interior midpoints: endpoints may be singular (log at 0) and are never drawn.
  std::vector<double> v(kGridPoints);
  double lowest = INFINITY, highest = -INFINITY;
  for (int k = 0; k < kGridPoints; ++k) {
    const double x = lo + (hi - lo) * (k + 0.5) / kGridPoints;
    v[static_cast<std::size_t>(k)] = s(x);
    if (!std::isfinite(v[static_cast<std::size_t>(k)])) {
      throw ContractViolation("scenario " + s.name + ": f is not finite at x = " + fmt17(x));
    }
    lowest = std::min(lowest, v[static_cast<std::size_t>(k)]);
    highest = std::max(highest, v[static_cast<std::size_t>(k)]);
  }
  if (lowest == highest) throw ContractViolation("scenario " + s.name + ": f is constant");
  if (family == Family::monotone) {
    const double slack = 1e-12 * std::max(std::abs(lowest), std::abs(highest));
    bool up = true, down = true;
    for (std::size_t k = 1; k < v.size(); ++k) {
      up = up && v[k] >= v[k - 1] - slack;
      down = down && v[k] <= v[k - 1] + slack;
    }
    if (!up && !down) {
      throw ContractViolation("scenario " + s.name + ": declared monotone but f changes direction");
    }
  }
  return s;
}

const std::vector<Scenario>& scenario_registry(Family family) {
  static const std::vector<Scenario> monotone = build_registry(kMonotone, "<monotone registry>");
  static const std::vector<Scenario> non_monotone =
      build_registry(kNonMonotone, "<non-monotone registry>");
  return family == Family::monotone ? monotone : non_monotone;
}

const Scenario* find_scenario(std::string_view name) {
  for (Family f : {Family::monotone, Family::non_monotone}) {
    for (const auto& s : scenario_registry(f)) {
      if (s.name == name) return &s;
    }
  }
  return nullptr;
}

std::vector<Scenario> parse_scenarios(std::string_view text, const std::string& source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && (text[first] == '[' || text[first] == '{')) {
    return parse_json(text, source);
  }

  std::vector<Scenario> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (trim(line).empty()) continue;

    const auto fields = split(line, '|');
    if (fields.size() < 5 || fields.size() > 6) {
      throw ParseError(source, line_no,
                       "expected 'name | expression | lo | hi | family [| description]'");
    }
    const auto family = parse_family(fields[4]);
    if (!family) throw ParseError(source, line_no, "unknown family '" + fields[4] + "'");
    try {
      out.push_back(make_scenario(fields[0], fields[1], evaluate_constant(fields[2]),
                                  evaluate_constant(fields[3]), *family,
                                  fields.size() == 6 ? fields[5] : std::string()));
    } catch (const ParseError& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const ContractViolation& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (out[i].name == out[j].name) {
        throw ParseError(source, 0, "duplicate scenario name '" + out[i].name + "'");
      }
    }
  }
  return out;
}

std::vector<Scenario> load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str(), path);
}

std::string scenarios_to_text(const std::vector<Scenario>& list) {
  std::string out = "# name | expression | lo | hi | family | description\n";
  for (const auto& s : list) {
    out += s.name + " | " + s.f.text() + " | " + fmt17(s.lo) + " | " + fmt17(s.hi) + " | " +
           std::string(family_name(s.family)) + " | " + s.description + "\n";
  }
  return out;
}

std::string scenarios_to_json(const std::vector<Scenario>& list) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : list) {
    arr.push_back({{"name", s.name},
                   {"expression", s.f.text()},
                   {"lo", s.lo},
                   {"hi", s.hi},
                   {"family", family_name(s.family)},
                   {"description", s.description}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace recor
