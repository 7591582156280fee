#pragma once

// The dyadiclab subcommands. Each returns a process exit status: 0 on success,
// 1 when a suite fails, 2 on usage or input errors (raised as UsageError or
// InputError and mapped by the caller).

#include <string>
#include <vector>

#include "dyadiclab/config.hpp"
#include "dyadiclab/io.hpp"

namespace dyadiclab {

/// Names accepted by --suite for verify.
const std::vector<std::string>& verify_suite_names();
/// Names accepted by --suite for constants.
const std::vector<std::string>& constant_probe_names();

/// Rows of one exact-identity suite at the configured resolution.
std::vector<ReportRow> run_verify_suite(const std::string& name, const Config& c);
/// Rows of one constant probe: one row per trial, then summary:max and summary:p95.
std::vector<ReportRow> run_constant_probe(const std::string& name, const Config& c);

struct VerifyOutcome {
  std::vector<ReportRow> rows;
  std::string csv;
  std::string summary;
  bool ok = true;
};
VerifyOutcome verify(const Config& c);

/// Writes verify.csv and verify_summary.txt into out_dir.
int cmd_verify(const Config& c, const std::string& out_dir);
/// Writes constants.csv into out_dir.
int cmd_constants(const Config& c, const std::string& out_dir);

struct TransformRequest {
  std::string op;  ///< haar | maxmod | lambda | lk
  std::vector<std::string> inputs;
  std::string output;
  double eps = 1.0;  ///< constant coefficient on every interval or triple
};
/// haar: f. maxmod: f, N. lambda: F0, F1, F2. lk: f, parallelograms
/// (rows left,length,base_y,slope,height).
int cmd_transform(const TransformRequest& r);

/// Writes cover.csv and cover_selected.csv into out_dir.
int cmd_cover(const Config& c, const std::string& out_dir);

}  // namespace dyadiclab
