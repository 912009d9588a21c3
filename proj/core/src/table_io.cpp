#include "induced/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "induced/error.hpp"

namespace induced {

namespace {

constexpr std::string_view kMagic = "# induced-table v1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view s, double& out, bool allow_inf) {
  s = trim(s);
  if (allow_inf) {
    if (s == "inf" || s == "+inf") {
      out = std::numeric_limits<double>::infinity();
      return true;
    }
    if (s == "-inf") {
      out = -std::numeric_limits<double>::infinity();
      return true;
    }
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Custom read_table(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw ParseError("empty table file", 1);
  ++lineno;
  std::string_view header = trim(line);
  if (header.substr(0, kMagic.size()) != kMagic) {
    throw ParseError("expected header '# induced-table v1 support=<lo>,<hi>'", lineno);
  }
  const auto key = header.find("support=");
  if (key == std::string_view::npos) throw ParseError("header lacks support=<lo>,<hi>", lineno);
  const auto bounds = split(header.substr(key + 8), ',');
  Support support{};
  if (bounds.size() != 2 || !parse_double(bounds[0], support.lower, true) ||
      !parse_double(bounds[1], support.upper, true)) {
    throw ParseError("malformed support bounds", lineno);
  }
  if (!(support.lower < support.upper)) {
    throw ParseError("support requires lower < upper", lineno);
  }

  std::vector<double> a, b;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (row == "n,a_n,b_n") continue;
    const auto fields = split(row, ',');
    if (fields.size() != 3) throw ParseError("expected 3 fields 'n,a_n,b_n'", lineno);
    std::size_t n = 0;
    const auto f0 = trim(fields[0]);
    const auto [ptr, ec] = std::from_chars(f0.data(), f0.data() + f0.size(), n);
    if (ec != std::errc() || ptr != f0.data() + f0.size()) {
      throw ParseError("malformed index '" + std::string(f0) + "'", lineno);
    }
    if (n != a.size()) {
      throw ParseError("index " + std::to_string(n) + " out of sequence (expected " +
                           std::to_string(a.size()) + ")",
                       lineno);
    }
    double an = 0.0, bn = 0.0;
    if (!parse_double(fields[1], an, false)) throw ParseError("malformed a_n", lineno);
    if (!parse_double(fields[2], bn, false)) throw ParseError("malformed b_n", lineno);
    if (!(bn > 0.0)) throw ParseError("b_n must be positive", lineno);
    a.push_back(an);
    b.push_back(bn);
  }
  if (a.empty()) throw ParseError("table has no coefficient rows", lineno);
  return Custom(support, RecurrenceTable(std::move(a), std::move(b)));
}

Custom load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return read_table(in);
}

void write_table(const RecurrenceTable& table, Support support, std::ostream& out) {
  out << kMagic << " support=" << format(support.lower) << ',' << format(support.upper)
      << '\n'
      << "n,a_n,b_n\n";
  for (std::size_t j = 0; j < table.size(); ++j) {
    out << j << ',' << format(table.a(j)) << ',' << format(table.b(j)) << '\n';
  }
}

void save_table(const RecurrenceTable& table, Support support,
                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_table(table, support, out);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace induced
