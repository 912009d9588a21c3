#include "parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "induced/error.hpp"
#include "induced/table_io.hpp"

namespace induced::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// atom := number | pi | e | sqrt(expr) ; expr := [-] atom (('*'|'/') atom)*
class ValueParser {
 public:
  explicit ValueParser(std::string text) : s_(std::move(text)) {}

  double parse() {
    const double v = expr();
    skip_space();
    if (pos_ != s_.size()) fail();
    return v;
  }

 private:
  double expr() {
    skip_space();
    double sign = 1.0;
    if (peek() == '-') {
      sign = -1.0;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    double v = atom();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        v *= atom();
      } else if (c == '/') {
        ++pos_;
        v /= atom();
      } else {
        break;
      }
    }
    return sign * v;
  }

  double atom() {
    skip_space();
    if (s_.compare(pos_, 5, "sqrt(") == 0) {
      pos_ += 5;
      const double v = expr();
      skip_space();
      if (peek() != ')') fail();
      ++pos_;
      return std::sqrt(v);
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    if (peek() == 'e' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return std::numbers::e;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail();
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail() const { throw UsageError("cannot parse number '" + s_ + "'"); }

  std::string s_;
  std::size_t pos_ = 0;
};

double parse_value(const std::string& text) { return ValueParser(trim(text)).parse(); }

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::pair<double, double> two_params(const std::string& family, const std::string& params) {
  const auto v = parse_reals(params);
  if (v.size() != 2) {
    throw UsageError("--params for " + family + " takes two values, got '" + params + "'");
  }
  return {v[0], v[1]};
}

}  // namespace

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(parse_value(item));
  return out;
}

MeasureChoice make_measure(const std::string& family, const std::string& params,
                           const std::string& table_path) {
  if (family == "custom") {
    if (table_path.empty()) throw UsageError("--measure custom needs --table FILE");
    return {load_table(table_path), {}};
  }
  const auto [p, q] = two_params(family, params);
  try {
    if (family == "jacobi") {
      if (!table_path.empty()) throw UsageError("--table is not used with jacobi");
      return {Jacobi(p, q), {}};
    }
    if (family == "hf") {
      MeasureChoice out{HalfLineFreud(p, q), {}};
      if (!table_path.empty()) out.registry.add(HalfLineFreud(p, q), load_table(table_path).table);
      return out;
    }
    if (family == "freud") {
      MeasureChoice out{Freud(p, q), {}};
      if (!table_path.empty()) out.registry.add(Freud(p, q), load_table(table_path).table);
      return out;
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown measure '" + family + "' (expected jacobi, hf, freud or custom)");
}

MeasureSpec parse_measure_token(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) {
    throw UsageError("measure '" + token + "' should look like family:p,q");
  }
  const std::string family = trim(token.substr(0, colon));
  if (family == "custom") throw UsageError("custom tables cannot be sampled");
  return make_measure(family, token.substr(colon + 1), "").spec;
}

std::vector<double> parse_points(const std::string& text) {
  const std::string t = trim(text);
  if (t.rfind("linspace:", 0) == 0) {
    const auto v = parse_reals(t.substr(9));
    if (v.size() != 3 || v[2] < 1.0 || v[2] != std::floor(v[2])) {
      throw UsageError("linspace takes lo,hi,count");
    }
    const auto count = static_cast<std::size_t>(v[2]);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
      out[k] = count == 1 ? v[0]
                          : v[0] + (v[1] - v[0]) * static_cast<double>(k) /
                                       static_cast<double>(count - 1);
    }
    return out;
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(t, ec)) {
    std::vector<double> out;
    for (const auto& line : read_lines(t)) out.push_back(parse_value(line));
    return out;
  }
  return parse_reals(t);
}

MultiIndexSet parse_index_set(const std::string& text, int dims) {
  const std::string t = trim(text);
  try {
    if (t.rfind("total-degree:", 0) == 0) {
      const auto v = parse_reals(t.substr(13));
      if (v.size() != 2) throw UsageError("total-degree takes d,n");
      if (static_cast<int>(v[0]) != dims) {
        throw UsageError("total-degree dimension does not match --dims");
      }
      return total_degree_set(static_cast<int>(v[0]), static_cast<int>(v[1]));
    }
    std::vector<std::vector<int>> rows;
    for (auto line : read_lines(t)) {
      for (char& c : line) {
        if (c == ',' || c == '\t') c = ' ';
      }
      std::istringstream in(line);
      std::vector<int> row;
      int k = 0;
      while (in >> k) row.push_back(k);
      if (!in.eof()) throw UsageError("bad multi-index line '" + line + "'");
      rows.push_back(std::move(row));
    }
    return MultiIndexSet(dims, std::move(rows));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace induced::cli
