// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "parsimplex/bench.hpp"

using namespace parsimplex;
using namespace parsimplex::bench;

namespace {

// Independent route: largest n with n^2 + vars*n <= budget by binary search.
std::uint64_t brute_force_limit(std::uint64_t vars, std::uint64_t budget) {
  std::uint64_t lo = 0, hi = 1;
  const auto fits = [&](std::uint64_t n) {
    return (unsigned __int128)n * n + (unsigned __int128)vars * n <= budget;
  };
  while (fits(hi)) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (fits(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("parsimplex_bench_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string stem(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("cache limit reproduces the published bounds") {
  CHECK(cache_limit_constraints(256) == 2771);
  CHECK(cache_limit_constraints(512) == 2651);
  CHECK(cache_limit_constraints(1024) == 2429);
  CHECK(cache_limit_constraints(2048) == 2048);
  CHECK(cache_limit_constraints(4096) == 1499);
}

TEST_CASE("cache limit for zero variables is the square-root bound") {
  CHECK(cache_limit_constraints(0) == 2896);  // floor(sqrt(8388608))
}

TEST_CASE("cache limit for 8192 variables follows the model, with a note") {
  CHECK(cache_limit_constraints(8192) == 920);
  const auto note = cache_limit_reference_note(8192);
  REQUIRE(note.has_value());
  CHECK(note->find("1499") != std::string::npos);
  CHECK(note->find("920") != std::string::npos);
  CHECK_FALSE(cache_limit_reference_note(4096).has_value());
  CHECK_FALSE(cache_limit_reference_note(256).has_value());
  CHECK_FALSE(cache_limit_reference_note(333).has_value());
}

TEST_CASE("closed form equals brute force over a wide range") {
  const CacheModel model;
  const std::uint64_t budget = model.element_budget();
  for (std::uint64_t vars = 0; vars <= 100000; vars += 97)
    CHECK(cache_limit_constraints(vars, model) == brute_force_limit(vars, budget));
  // non-default models too
  CacheModel small{1 << 20, 4};
  for (std::uint64_t vars : {0ull, 1ull, 100ull, 4096ull})
    CHECK(cache_limit_constraints(vars, small) ==
          brute_force_limit(vars, small.element_budget()));
}

TEST_CASE("footprint accessors") {
  CHECK(model_footprint_bytes(2048, 2048) == (2048ull + 2048) * 2048 * 8);
  CHECK(exact_tableau_bytes(3, 2) == 4ull * 6 * 8);
}

TEST_CASE("median averages the middle pair on even counts") {
  CHECK(median({3.0}) == 3.0);
  CHECK(median({4.0, 2.0, 9.0}) == 4.0);
  CHECK(median({4.0, 2.0}) == 3.0);
  CHECK(median({1.0, 2.0, 3.0, 10.0}) == 2.5);
  CHECK_THROWS_AS(median(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("grid validation rejects inconsistent configs") {
  GridConfig config;
  config.sizes = {{4, 4}};
  config.thread_counts = {1};
  config.runs = 1;
  config.serial_convention = SerialConvention::TwiceT2;
  // TwiceT2 needs P=2 data
  CHECK_THROWS_AS(run_grid(config), std::invalid_argument);

  config.serial_convention = SerialConvention::Measured;
  config.thread_counts = {4, 2};
  CHECK_THROWS_AS(run_grid(config), std::invalid_argument);

  config.thread_counts = {};
  CHECK_THROWS_AS(run_grid(config), std::invalid_argument);

  config.thread_counts = {1};
  config.runs = 0;
  CHECK_THROWS_AS(run_grid(config), std::invalid_argument);

  config.runs = 1;
  config.sizes = {};
  CHECK_THROWS_AS(run_grid(config), std::invalid_argument);
}

TEST_CASE("report identities hold for a small measured grid") {
  GridConfig config;
  config.sizes = {{6, 6}, {10, 8}};
  config.thread_counts = {1, 2};
  config.runs = 3;
  config.warmup = 1;
  config.density = 1.0;
  config.serial_convention = SerialConvention::Measured;
  const auto report = run_grid(config);

  REQUIRE(report.cells.size() == 4);
  REQUIRE(report.serial.size() == 2);
  for (const auto& cell : report.cells) {
    CHECK(cell.status == SolveStatus::Optimal);
    CHECK(cell.median_seconds >= 0.0);
    CHECK(cell.efficiency == cell.speedup / cell.threads);  // exact identity
    CHECK_FALSE(cell.over_cache_limit);  // tiny problems fit any cache
  }
}

TEST_CASE("twice-t2 convention pins the speedup at P=2 to exactly 2") {
  GridConfig config;
  config.sizes = {{8, 8}};
  config.thread_counts = {1, 2, 4};
  config.runs = 2;
  config.warmup = 0;
  config.density = 1.0;
  config.serial_convention = SerialConvention::TwiceT2;
  const auto report = run_grid(config);
  REQUIRE(report.cells.size() == 3);
  for (const auto& cell : report.cells) {
    if (cell.threads == 2) CHECK(cell.speedup == 2.0);  // exact
    CHECK(cell.efficiency == cell.speedup / cell.threads);
  }
}

TEST_CASE("iteration-limited cells are recorded, not fatal") {
  GridConfig config;
  config.sizes = {{8, 8}};
  config.thread_counts = {1, 2};
  config.runs = 1;
  config.warmup = 0;
  config.density = 1.0;
  config.serial_convention = SerialConvention::TwiceT2;
  config.solver.max_iterations = 1;  // force IterationLimit
  const auto report = run_grid(config);
  REQUIRE(report.cells.size() == 2);
  for (const auto& cell : report.cells)
    CHECK(cell.status == SolveStatus::IterationLimit);
}

TEST_CASE("instance seeds are stable and size-dependent") {
  CHECK(instance_seed(1, 4, 4) == instance_seed(1, 4, 4));
  CHECK(instance_seed(1, 4, 4) != instance_seed(1, 4, 5));
  CHECK(instance_seed(1, 4, 4) != instance_seed(2, 4, 4));
}

TEST_CASE("emit_report writes the CSV schema and plot series") {
  TempDir dir;

  SUBCASE("empty report yields a header-only CSV and no series files") {
    BenchReport report;
    const auto files = emit_report(report, dir.stem("empty"));
    REQUIRE(files.size() == 1);
    CHECK(slurp(files[0]) == "m,n,P,median_s,speedup,efficiency,over_cache_limit\n");
  }

  SUBCASE("one cell yields one data row and one series file") {
    BenchReport report;
    report.cells.push_back({4, 4, 2, 0.036, 2.0, 1.0, false,
                            SolveStatus::Optimal, 5});
    const auto files = emit_report(report, dir.stem("one"));
    REQUIRE(files.size() == 2);
    const auto csv = slurp(files[0]);
    CHECK(csv == "m,n,P,median_s,speedup,efficiency,over_cache_limit\n"
                 "4,4,2,0.036,2,1,0\n");
    const auto series = slurp(files[1]);
    CHECK(series.find("# m=4 n=4") != std::string::npos);
    CHECK(series.find("2 2") != std::string::npos);
  }

  SUBCASE("two sizes by three thread counts yields six rows") {
    BenchReport report;
    for (std::size_t n : {4, 8})
      for (unsigned p : {1u, 2u, 4u})
        report.cells.push_back({16, n, p, 0.5 / p, static_cast<double>(p),
                                1.0, false, SolveStatus::Optimal, 3});
    const auto files = emit_report(report, dir.stem("grid"));
    const auto csv = slurp(files[0]);
    std::size_t rows = 0;
    for (char ch : csv)
      if (ch == '\n') ++rows;
    CHECK(rows == 7);  // header + 6 cells
    REQUIRE(files.size() == 2);  // one fixed-m file
    const auto series = slurp(files[1]);
    CHECK(series.find("# m=16 n=4") != std::string::npos);
    CHECK(series.find("# m=16 n=8") != std::string::npos);
  }
}
