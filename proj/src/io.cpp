#include "tlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "tlab/error.hpp"

namespace tlab::io {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(s.c_str(), &end, 10);
  return end == s.c_str() + s.size();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return in;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

DiscreteSignal read_signal_csv(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::int64_t, double>> rows;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split(line, ',');
    if (first) {
      first = false;
      if (cols.size() == 2 && cols[0] == "n" && cols[1] == "value") continue;
    }
    std::int64_t n = 0;
    double v = 0.0;
    if (cols.size() != 2 || !parse_int(cols[0], n) || !parse_double(cols[1], v)) {
      throw ValidationError("malformed signal row at line " + std::to_string(lineno));
    }
    rows.emplace_back(n, v);
  }
  if (rows.empty()) return {};
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) {
      throw ValidationError("duplicate signal index n = " + std::to_string(rows[i].first));
    }
  }
  const std::int64_t lo = rows.front().first;
  std::vector<double> v(static_cast<std::size_t>(rows.back().first - lo + 1), 0.0);
  for (const auto& [n, x] : rows) v[static_cast<std::size_t>(n - lo)] = x;
  return DiscreteSignal(lo, std::move(v));
}

DiscreteSignal read_signal_file(const std::string& path) {
  auto in = open_in(path);
  return read_signal_csv(in);
}

void write_signal_csv(std::ostream& out, const DiscreteSignal& f) {
  out << "n,value\n";
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    out << (f.lo() + static_cast<std::int64_t>(i)) << ',' << format_double(v[i]) << '\n';
  }
}

void write_signal_file(const std::string& path, const DiscreteSignal& f) {
  std::ostringstream os;
  write_signal_csv(os, f);
  write_text_file(path, os.str());
}

std::vector<std::vector<double>> read_points_csv(std::istream& in) {
  std::vector<std::vector<double>> pts;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> p;
    bool ok = true;
    for (const auto& c : split(line, ',')) {
      double x = 0.0;
      if (!parse_double(c, x)) {
        ok = false;
        break;
      }
      p.push_back(x);
    }
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      throw ValidationError("malformed point row at line " + std::to_string(lineno));
    }
    first = false;
    if (!pts.empty() && p.size() != pts.front().size()) {
      throw ValidationError("inconsistent point dimension at line " + std::to_string(lineno));
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<std::vector<double>> read_points_file(const std::string& path) {
  auto in = open_in(path);
  return read_points_csv(in);
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ValidationError("empty key at line " + std::to_string(lineno));
    kv[key] = value;
  }
  return kv;
}

void write_key_values(std::ostream& out, const KeyValues& kv) {
  for (const auto& [k, v] : kv) out << k << " = \"" << v << "\"\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

}  // namespace tlab::io
