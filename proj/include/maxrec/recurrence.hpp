#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxrec/equation.hpp"
#include "maxrec/rational.hpp"

namespace maxrec {

enum class Mode { Exact, LogDomain };

struct StepResult {
  PositiveRational value;
  int argmax_delay = 0;
};

struct LogStepResult {
  double log_value = 0.0;
  int argmax_delay = 0;
};

struct SimulationOptions {
  // Exact mode stops before storing a term whose numerator plus
  // denominator bit length exceeds this.
  std::size_t bit_cap = 1'000'000;
  // LogDomain arguments closer than this are treated as tied.
  double tie_tolerance = 1e-12;
};

struct Truncation {
  std::int64_t index = 0;   // the term that was not stored
  std::size_t bits = 0;     // its size
  std::size_t bit_cap = 0;
};

/// One application of the recurrence. `window` holds x_{n-t}, ..., x_{n-1}.
/// Ties resolve to the smallest delay.
StepResult step(const EquationConfig& config, std::span<const PositiveRational> window,
                std::int64_t n);

/// Max-plus form: log x_n = max_k (log A^k_{n-1} - log x_{n-k}).
LogStepResult log_step(const EquationConfig& config, std::span<const double> window,
                       std::int64_t n, double tie_tolerance = 1e-12);

/// Solution terms with per-step argmax certificates, indexed from
/// config.index_base. Initial terms carry argmax 0.
class Trajectory {
 public:
  Trajectory(EquationConfig config, Mode mode);

  const EquationConfig& config() const { return config_; }
  Mode mode() const { return mode_; }

  std::int64_t first_index() const { return config_.index_base; }
  std::int64_t last_index() const { return first_index() + static_cast<std::int64_t>(size()) - 1; }
  std::size_t size() const { return logs_.size(); }
  /// Number of computed (non-initial) terms.
  std::size_t steps() const { return size() - static_cast<std::size_t>(config_.t); }
  bool contains(std::int64_t n) const { return n >= first_index() && n <= last_index(); }

  /// Exact value; throws ContractViolation in LogDomain mode.
  const PositiveRational& value(std::int64_t n) const;
  double log_value(std::int64_t n) const;
  int argmax_delay(std::int64_t n) const;

  std::span<const PositiveRational> exact_values() const { return values_; }
  std::span<const double> log_values() const { return logs_; }

  const std::optional<Truncation>& truncation() const { return truncation_; }

 private:
  friend void extend(Trajectory&, std::size_t, const SimulationOptions&);

  std::size_t offset(std::int64_t n) const;

  EquationConfig config_;
  Mode mode_;
  std::vector<PositiveRational> values_;  // Exact mode only
  std::vector<double> logs_;
  std::vector<int> argmax_;
  std::optional<Truncation> truncation_;
};

Trajectory simulate(const EquationConfig& config, std::size_t steps, Mode mode,
                    const SimulationOptions& options = {});

/// Appends up to `steps` more terms; a no-op once truncated.
void extend(Trajectory& trajectory, std::size_t steps, const SimulationOptions& options = {});

}  // namespace maxrec
