#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "maxrec/equation.hpp"

namespace maxrec {

// Grid document (JSON):
//   {
//     "max_points": 10000,                                    optional
//     "axes": [
//       {"delay": 1, "periods": [1, 2, 3]},                   random values, seeded
//       {"delay": 2, "schedules": [["1/2"], ["1", "2"]]},     explicit schedules
//       {"delay": 2, "period": 2, "choices": ["1/2", "2"]}    every assignment of
//     ]                                                       choices to positions
//   }
// Points are the cartesian product of the axes, last axis varying fastest.

struct GridAxis {
  int delay = 1;
  std::vector<CoefficientSchedule> options;
};

struct GridSpec {
  std::vector<GridAxis> axes;
  std::uint64_t max_points = 10'000;

  std::uint64_t point_count() const;
};

/// `seed` drives the random values of "periods" axes.
GridSpec parse_grid(std::string_view text, std::uint64_t seed);

struct SweepOptions {
  std::uint64_t max_steps = 10'000;       // exact cycle search per point
  std::size_t log_steps = 10'000;         // log-domain run for persistence flags
  unsigned threads = 0;                   // 0: hardware concurrency
};

/// One record per grid point, in grid order. Throws ConfigError when the
/// grid exceeds max_points.
std::vector<nlohmann::ordered_json> run_sweep(const EquationConfig& base, const GridSpec& grid,
                                              const SweepOptions& options = {});

}  // namespace maxrec
