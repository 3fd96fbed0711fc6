#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Property suites over bounded parameter grids. Each cell records one
// identity at one parameter point; a report lists cells sorted by suite and
// label.
namespace bandperm::verify {

struct Bounds {
  unsigned max_k = 2;
  unsigned max_t = 3;
  unsigned max_n = 5;
  unsigned oracle_size = 10;  // largest nk handed to a brute-force permanent
  unsigned samples = 5;       // random weight sets per grid point
  std::uint64_t seed = 20261016;
};

struct Cell {
  std::string suite;
  std::string label;
  bool ok = false;
  std::size_t checks = 0;  // individual equalities behind this cell
  std::string detail;      // first failure, or empty
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<Cell> cells;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

// "zero-pattern", "trace-derivative", "structure", "genfun", "oracle", or "all".
const std::vector<std::string>& suite_names();
Report run_suite(const std::string& name, const Bounds& bounds);

}  // namespace bandperm::verify
