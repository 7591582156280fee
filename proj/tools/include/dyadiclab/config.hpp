#pragma once

// Plain-text key=value configuration for dyadiclab commands.

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyadiclab {

/// Bad configuration or command line; commands exit with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int resolution = 5;
  std::uint64_t seed = 1;
  int trials = 20;
  double p0 = 4.0;
  double p1 = 2.0;
  double p2 = 4.0 / 3.0;
  int L = 1;
  std::string mode = "diagonal";  ///< diagonal | fiberwise
  std::string a_bits = "1.1";     ///< diagonal multiplier in binary
  double delta = 0.5;
  int grid = 256;                 ///< side of the covering grid, a power of two
  int ensemble_size = 64;         ///< parallelograms per covering ensemble
  std::vector<std::string> suites;
};

/// Parses key=value lines; '#' starts a comment. Unknown keys and malformed
/// values raise UsageError naming the line.
Config parse_config(std::istream& in, const std::string& source = "config");
Config load_config(const std::string& path);
void validate(const Config& c);

/// log2 of the covering grid side.
int grid_resolution(const Config& c);

}  // namespace dyadiclab
