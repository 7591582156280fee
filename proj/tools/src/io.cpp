#include "dyadiclab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dyadiclab {

namespace {

int exponent_of(std::size_t n, const std::string& source, const char* what) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  if ((std::size_t{1} << k) != n) throw InputError(source + ": " + what + " must be a power of two");
  return k;
}

}  // namespace

std::vector<std::vector<double>> parse_matrix_csv(const std::string& text, const std::string& source) {
  std::vector<std::vector<double>> m;
  std::stringstream in(text);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> values;
    std::size_t col = 0, start = 0;
    for (;;) {
      ++col;
      const std::size_t comma = line.find(',', start);
      std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      while (!cell.empty() && cell.back() == ' ') cell.pop_back();
      double v = 0;
      const char* end = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
        throw InputError(source + ": row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": not a finite number: '" + cell + "'");
      values.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!m.empty() && values.size() != m.front().size())
      throw InputError(source + ": row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                       " columns, expected " + std::to_string(m.front().size()));
    m.push_back(std::move(values));
  }
  if (m.empty()) throw InputError(source + ": no data");
  return m;
}

std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_csv(ss.str(), path);
}

dyadic::GridFunction1D to_function_1d(const std::vector<std::vector<double>>& m, const std::string& source) {
  if (m.size() != 1) throw InputError(source + ": a 1D function is a single row");
  const int K = exponent_of(m.front().size(), source, "row length");
  return dyadic::GridFunction1D(K, m.front());
}

dyadic::GridFunction2D to_function_2d(const std::vector<std::vector<double>>& m, const std::string& source) {
  const int K = exponent_of(m.size(), source, "row count");
  if (m.front().size() != m.size()) throw InputError(source + ": a 2D function needs as many columns as rows");
  std::vector<double> v;
  v.reserve(m.size() * m.size());
  for (const auto& r : m) v.insert(v.end(), r.begin(), r.end());
  return dyadic::GridFunction2D(K, std::move(v));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string matrix_csv(const dyadic::GridFunction1D& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += format_double(f[i]);
  }
  return out + "\n";
}

std::string matrix_csv(const dyadic::GridFunction2D& f) {
  std::string out;
  for (std::size_t r = 0; r < f.side(); ++r) {
    for (std::size_t c = 0; c < f.side(); ++c) {
      if (c) out += ',';
      out += format_double(f.at(r, c));
    }
    out += "\n";
  }
  return out;
}

std::string render_report(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kReportHeader) + "\n";
  for (const ReportRow& r : rows)
    out += r.suite + "," + r.case_id + "," + format_double(r.lhs) + "," + format_double(r.rhs) + "," +
           format_double(r.ratio) + "," + r.pass + "\n";
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw InputError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw InputError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

}  // namespace dyadiclab
