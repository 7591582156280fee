#include "dyadiclab/config.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dyadic/error.hpp"
#include "dyadic/walsh.hpp"

namespace dyadiclab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& v, const std::string& where) {
  T out{};
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw UsageError(where + ": cannot parse '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Config parse_config(std::istream& in, const std::string& source) {
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "resolution") c.resolution = parse_number<int>(value, where);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(value, where);
    else if (key == "trials") c.trials = parse_number<int>(value, where);
    else if (key == "p0") c.p0 = parse_number<double>(value, where);
    else if (key == "p1") c.p1 = parse_number<double>(value, where);
    else if (key == "p2") c.p2 = parse_number<double>(value, where);
    else if (key == "L") c.L = parse_number<int>(value, where);
    else if (key == "mode") c.mode = value;
    else if (key == "a_bits") c.a_bits = value;
    else if (key == "delta") c.delta = parse_number<double>(value, where);
    else if (key == "grid") c.grid = parse_number<int>(value, where);
    else if (key == "ensemble_size") c.ensemble_size = parse_number<int>(value, where);
    else if (key == "suite" || key == "suites") {
      for (auto& s : split_list(value)) c.suites.push_back(s);
    } else {
      throw UsageError(where + ": unknown key '" + key + "'");
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  return parse_config(in, path);
}

void validate(const Config& c) {
  if (c.resolution < 1 || c.resolution > 8) throw UsageError("resolution must lie in 1..8");
  if (c.trials < 0) throw UsageError("trials must be non-negative");
  for (double p : {c.p0, c.p1, c.p2})
    if (!(p > 1)) throw UsageError("exponents must exceed 1");
  if (c.L < 1) throw UsageError("L must be at least 1");
  if (c.mode != "diagonal" && c.mode != "fiberwise") throw UsageError("mode must be diagonal or fiberwise");
  try {
    const dyadic::WalshNumber a = dyadic::WalshNumber::from_binary(c.a_bits);
    if (a.is_zero() || a.hi() < 0) throw UsageError("a_bits must be at least 1");
  } catch (const dyadic::DyadicError& e) {
    throw UsageError(std::string("a_bits: ") + e.what());
  }
  if (!(c.delta > 0 && c.delta <= 1)) throw UsageError("delta must lie in (0, 1]");
  if (c.grid < 2 || c.grid > 1024 || !std::has_single_bit(static_cast<unsigned>(c.grid)))
    throw UsageError("grid must be a power of two between 2 and 1024");
  if (c.ensemble_size < 0) throw UsageError("ensemble_size must be non-negative");
}

int grid_resolution(const Config& c) { return std::countr_zero(static_cast<unsigned>(c.grid)); }

}  // namespace dyadiclab
