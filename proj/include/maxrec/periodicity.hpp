#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>

#include "maxrec/equation.hpp"
#include "maxrec/recurrence.hpp"

namespace maxrec {

/// x_{n+period} == x_n for every n >= preperiod (checked exactly through
/// preperiod + verified_horizon). `period` is the minimal value period;
/// `state_period` is the length of the repeated driven-state cycle
/// (window of t terms plus coefficient phase), a multiple of `period`.
struct CycleReport {
  std::int64_t preperiod = 0;
  std::uint64_t period = 1;
  std::uint64_t state_period = 1;
  std::int64_t verified_horizon = 0;
};

/// No repeated driven state within the step budget. This does not mean
/// the solution is unbounded.
struct CycleNotFound {
  std::uint64_t steps_explored = 0;
  PositiveRational min_value;
  PositiveRational max_value;
  std::optional<Truncation> truncation;
};

using CycleDetection = std::variant<CycleReport, CycleNotFound>;

inline constexpr std::uint64_t kDefaultMaxSteps = 100'000;

CycleDetection detect_cycle(const EquationConfig& config,
                            std::uint64_t max_steps = kDefaultMaxSteps,
                            const SimulationOptions& options = {});

/// Smallest divisor d of p such that `segment` is d-periodic.
/// Throws ContractViolation when the segment is shorter than 2p or is not
/// p-periodic.
std::uint64_t minimal_period(std::span<const PositiveRational> segment, std::uint64_t p);

/// True iff x_{n+p} == x_n for all first <= n <= first + horizon.
bool verify_periodicity(const EquationConfig& config, std::int64_t first, std::uint64_t p,
                        std::uint64_t horizon, const SimulationOptions& options = {});

/// Same check on an existing exact trajectory; throws InsufficientHistory
/// if it is too short.
bool verify_periodicity(const Trajectory& trajectory, std::int64_t first, std::uint64_t p,
                        std::uint64_t horizon);

}  // namespace maxrec
