#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxrec/rational.hpp"

namespace maxrec {

/// Periodic coefficient sequence A^k_n attached to one delay k.
struct CoefficientSchedule {
  int delay = 1;
  std::vector<PositiveRational> values;

  std::size_t period() const { return values.size(); }

  friend bool operator==(const CoefficientSchedule&, const CoefficientSchedule&) = default;
};

/// Periodic lookup values[n mod period]. Negative indices use the periodic
/// extension of the sequence.
const PositiveRational& coefficient_at(const CoefficientSchedule& schedule, std::int64_t n);

/// x_n = max_k A^k_{n-1} / x_{n-k} over the listed delays k.
///
/// `initial` holds x_{b}, ..., x_{b+t-1} with b = index_base; the first
/// computed term is x_{b+t}.
struct EquationConfig {
  int t = 1;
  std::vector<int> delays;                    // strictly increasing, max == t
  std::vector<CoefficientSchedule> schedules;  // one per delay, same order
  std::vector<PositiveRational> initial;       // size t
  std::int64_t index_base = 0;
  std::optional<std::uint64_t> seed;

  std::int64_t first_computed_index() const { return index_base + t; }
  bool has_full_delay_set() const;
  const CoefficientSchedule& schedule_for(int delay) const;
  /// lcm of every schedule period.
  std::uint64_t coefficient_lcm() const;

  friend bool operator==(const EquationConfig&, const EquationConfig&) = default;
};

/// Throws ConfigError describing the first violated invariant.
void validate(const EquationConfig& config);

/// Convenience builder for the full delay set {1..t}; index_base = 1 - t.
EquationConfig make_config(std::vector<std::vector<PositiveRational>> coefficients,
                           std::vector<PositiveRational> initial);

/// Same, for an arbitrary delay subset (one coefficient list per delay).
EquationConfig make_config(std::vector<int> delays,
                           std::vector<std::vector<PositiveRational>> coefficients,
                           std::vector<PositiveRational> initial);

/// Shorthand for building schedules in code: {"1/2", "3"}.
std::vector<PositiveRational> rationals(std::initializer_list<const char*> literals);

}  // namespace maxrec
