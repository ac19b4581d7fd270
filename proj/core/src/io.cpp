#include "invscheme/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "invscheme/errors.hpp"

namespace invscheme {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

struct Row {
  long n;
  double a;
  double b;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

double parse_real(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw DomainError("csv line " + std::to_string(line) + ": bad number '" + t + "'");
  }
  return v;
}

long parse_index(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw DomainError("csv line " + std::to_string(line) + ": bad index '" + t + "'");
  }
  return v;
}

std::vector<Row> read_rows(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != header) {
    throw DomainError("csv: expected header '" + header + "'");
  }
  std::vector<Row> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 3) {
      throw DomainError("csv line " + std::to_string(lineno) + ": expected 3 fields");
    }
    const Row r{parse_index(fields[0], lineno), parse_real(fields[1], lineno),
                parse_real(fields[2], lineno)};
    if (!rows.empty() && r.n != rows.back().n + 1) {
      throw DomainError("csv line " + std::to_string(lineno) + ": indices must be consecutive");
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw DomainError("csv: no rows");
  return rows;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open '" + path + "'");
  return is;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot write '" + path + "'");
  return os;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "n,x,u\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    os << tr.index(i) << ',' << format_real(tr[i].x) << ',' << format_real(tr[i].u) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  const std::vector<Row> rows = read_rows(is, "n,x,u");
  std::vector<Node> pts;
  pts.reserve(rows.size());
  for (const Row& r : rows) pts.push_back({r.a, r.b});
  return Trajectory(rows.front().n, std::move(pts));
}

void write_winternitz_csv(std::ostream& os, const WinternitzPair& ty) {
  os << "n,t,y\n";
  for (std::size_t i = 0; i < ty.y.size(); ++i) {
    os << ty.n0 + static_cast<long>(i) << ',' << format_real(ty.t[i]) << ','
       << format_real(ty.y[i]) << '\n';
  }
}

WinternitzPair read_winternitz_csv(std::istream& is) {
  const std::vector<Row> rows = read_rows(is, "n,t,y");
  WinternitzPair ty;
  ty.n0 = rows.front().n;
  for (const Row& r : rows) {
    ty.t.push_back(r.a);
    ty.y.push_back(r.b);
  }
  return ty;
}

void save_trajectory_csv(const std::string& path, const Trajectory& tr) {
  std::ofstream os = open_out(path);
  write_trajectory_csv(os, tr);
}

Trajectory load_trajectory_csv(const std::string& path) {
  std::ifstream is = open_in(path);
  return read_trajectory_csv(is);
}

void save_winternitz_csv(const std::string& path, const WinternitzPair& ty) {
  std::ofstream os = open_out(path);
  write_winternitz_csv(os, ty);
}

WinternitzPair load_winternitz_csv(const std::string& path) {
  std::ifstream is = open_in(path);
  return read_winternitz_csv(is);
}

}  // namespace invscheme
