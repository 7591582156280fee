#pragma once

// CSV matrices, report rows, content hashing and atomic file output.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyadic/grid.hpp"

namespace dyadiclab {

/// Missing or unreadable files and malformed input; commands exit with status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major numeric matrix; every row must have the same number of columns.
std::vector<std::vector<double>> read_matrix_csv(const std::string& path);
std::vector<std::vector<double>> parse_matrix_csv(const std::string& text, const std::string& source);

/// 1D functions are single rows of 2^K entries.
dyadic::GridFunction1D to_function_1d(const std::vector<std::vector<double>>& m, const std::string& source);
/// 2D functions are 2^K rows of 2^K entries; entry (r, c) is at(r, c).
dyadic::GridFunction2D to_function_2d(const std::vector<std::vector<double>>& m, const std::string& source);

std::string matrix_csv(const dyadic::GridFunction1D& f);
std::string matrix_csv(const dyadic::GridFunction2D& f);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

struct ReportRow {
  std::string suite;
  std::string case_id;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  /// "1", "0", or "-" for reported-only rows.
  std::string pass = "-";
};

inline const char* kReportHeader = "suite,case_id,lhs,rhs,ratio,pass";
std::string render_report(const std::vector<ReportRow>& rows);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

/// Writes to a temporary sibling and renames it over the target.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace dyadiclab
