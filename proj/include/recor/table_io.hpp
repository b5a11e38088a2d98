#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recor/accuracy.hpp"
#include "recor/nist.hpp"
#include "recor/simulation.hpp"

namespace recor {

inline constexpr std::string_view kToolName = "recor";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Shortest text that reads back to the same double.
std::string format_number(double v);

/// `scenario,measure,target_r,replicate,score`; missing scores are written as NA.
std::string score_table_csv(const ScoreTable& t);
/// Config echo, RNG identity, tool version and the reason behind every NA.
/// Thread count is deliberately left out so outputs match across runs.
std::string score_table_json(const ScoreTable& t, std::string_view scenario_source);

/// `measure,r_level,median,bias,iqr`
std::string accuracy_csv(const AccuracyReport& r);
std::string accuracy_json(const AccuracyReport& r, std::string_view context_json = "null");

/// `dataset,measure,score,reference,error`
std::string nist_scores_csv(const NistBenchmark& b);

/// Header row plus string cells. Comma- or tab-delimited (picked from the
/// header line); double-quoted fields may contain the delimiter.
struct DataTable {
  std::string source;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based file line of each row
};

DataTable parse_delimited(std::string_view text, const std::string& source);
DataTable read_delimited_file(const std::string& path);

enum class MissingPolicy { drop_row, error };

struct ColumnPair {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t dropped = 0;
};

/// Pulls two numeric columns. An unknown name raises ContractViolation listing
/// the available columns; a bad cell under MissingPolicy::error raises
/// ParseError naming the line and column.
ColumnPair select_columns(const DataTable& t, std::string_view x, std::string_view y,
                          MissingPolicy policy);

}  // namespace recor
