// SPDX-License-Identifier: Apache-2.0
#include "parsimplex/lp_model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace parsimplex {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::IterationLimit: return "IterationLimit";
  }
  return "?";
}

namespace {

Violation dimension_mismatch(std::string message) {
  return Violation{Violation::Kind::DimensionMismatch, 0, 0, std::move(message)};
}

}  // namespace

ValidationResult validate(const LpProblem& p) {
  if (p.m == 0 || p.n == 0)
    return {dimension_mismatch("m and n must be positive")};
  if (p.a.size() != p.m * p.n) {
    std::ostringstream os;
    os << "A has " << p.a.size() << " entries, expected " << p.m * p.n;
    return {dimension_mismatch(os.str())};
  }
  if (p.b.size() != p.m) {
    std::ostringstream os;
    os << "b has length " << p.b.size() << ", expected " << p.m;
    return {dimension_mismatch(os.str())};
  }
  if (p.c.size() != p.n) {
    std::ostringstream os;
    os << "c has length " << p.c.size() << ", expected " << p.n;
    return {dimension_mismatch(os.str())};
  }
  for (std::size_t i = 0; i < p.m; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      if (!std::isfinite(p.at(i, j))) {
        std::ostringstream os;
        os << "A[" << i << "][" << j << "] is not finite";
        return {Violation{Violation::Kind::NonFiniteEntry, i, j, os.str()}};
      }
  for (std::size_t i = 0; i < p.m; ++i) {
    if (!std::isfinite(p.b[i])) {
      std::ostringstream os;
      os << "b[" << i << "] is not finite";
      return {Violation{Violation::Kind::NonFiniteEntry, i, 0, os.str()}};
    }
    if (p.b[i] < 0.0) {
      std::ostringstream os;
      os << "b[" << i << "] = " << p.b[i] << " violates b >= 0";
      return {Violation{Violation::Kind::NegativeRhs, i, 0, os.str()}};
    }
  }
  for (std::size_t j = 0; j < p.n; ++j)
    if (!std::isfinite(p.c[j])) {
      std::ostringstream os;
      os << "c[" << j << "] is not finite";
      return {Violation{Violation::Kind::NonFiniteEntry, j, 0, os.str()}};
    }
  return {};
}

// --- file format ---------------------------------------------------------

namespace {

void put_value(std::ostream& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

void put_row(std::ostream& out, const double* v, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) {
    if (j) out.put(' ');
    put_value(out, v[j]);
  }
  out.put('\n');
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "parse error at line " << line_no << ": " << what;
  throw std::runtime_error(os.str());
}

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;

  // Next line with content, comments stripped. False at EOF.
  bool next(std::string& out) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        out = std::move(line);
        return true;
      }
    }
    return false;
  }
};

std::vector<double> parse_values(const std::string& line, std::size_t expected,
                                 std::size_t line_no, const char* what) {
  std::vector<double> values;
  values.reserve(expected);
  const char* p = line.data();
  const char* end = p + line.size();
  while (p != end) {
    if (*p == ' ' || *p == '\t' || *p == '\r') {
      ++p;
      continue;
    }
    double v = 0.0;
    auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc{}) {
      std::ostringstream os;
      os << "bad " << what << " value near '" << std::string(p, std::min<std::size_t>(end - p, 12)) << "'";
      parse_fail(line_no, os.str());
    }
    values.push_back(v);
    p = res.ptr;
  }
  if (values.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " " << what << " values, got " << values.size();
    parse_fail(line_no, os.str());
  }
  return values;
}

}  // namespace

void write_problem(std::ostream& out, const LpProblem& p) {
  out << p.m << ' ' << p.n << ' ';
  put_value(out, p.density);
  if (p.seed) out << ' ' << *p.seed;
  out.put('\n');
  for (std::size_t i = 0; i < p.m; ++i)
    put_row(out, p.a.data() + i * p.n, p.n);
  put_row(out, p.b.data(), p.m);
  put_row(out, p.c.data(), p.n);
}

void save_problem(const std::string& path, const LpProblem& problem) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_problem(out, problem);
  if (!out) throw std::runtime_error("write failed: " + path);
}

LpProblem read_problem(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) parse_fail(reader.line_no + 1, "missing header");

  LpProblem p;
  {
    std::istringstream header(line);
    double density = 1.0;
    if (!(header >> p.m >> p.n >> density))
      parse_fail(reader.line_no, "header must be 'm n density [seed]'");
    p.density = density;
    std::uint64_t seed;
    if (header >> seed) p.seed = seed;
    std::string trailing;
    if (header >> trailing) parse_fail(reader.line_no, "trailing tokens in header");
  }
  if (p.m == 0 || p.n == 0) parse_fail(reader.line_no, "m and n must be positive");

  p.a.reserve(p.m * p.n);
  for (std::size_t i = 0; i < p.m; ++i) {
    if (!reader.next(line)) parse_fail(reader.line_no + 1, "missing row of A");
    auto row = parse_values(line, p.n, reader.line_no, "A");
    p.a.insert(p.a.end(), row.begin(), row.end());
  }
  if (!reader.next(line)) parse_fail(reader.line_no + 1, "missing b line");
  p.b = parse_values(line, p.m, reader.line_no, "b");
  if (!reader.next(line)) parse_fail(reader.line_no + 1, "missing c line");
  p.c = parse_values(line, p.n, reader.line_no, "c");
  return p;
}

LpProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_problem(in);
}

}  // namespace parsimplex
