#include "maxrec/recurrence.hpp"

#include <string>

#include "maxrec/errors.hpp"

namespace maxrec {

StepResult step(const EquationConfig& config, std::span<const PositiveRational> window,
                std::int64_t n) {
  std::optional<StepResult> best;
  for (const int d : config.delays) {
    if (static_cast<std::size_t>(d) > window.size())
      throw ConfigError("window has no entry x_{n-" + std::to_string(d) + "} for delay " +
                        std::to_string(d));
    const PositiveRational& x = window[window.size() - static_cast<std::size_t>(d)];
    PositiveRational candidate = coefficient_at(config.schedule_for(d), n - 1) / x;
    if (!best || candidate > best->value) best = StepResult{std::move(candidate), d};
  }
  return *best;
}

LogStepResult log_step(const EquationConfig& config, std::span<const double> window,
                       std::int64_t n, double tie_tolerance) {
  std::optional<LogStepResult> best;
  for (const int d : config.delays) {
    if (static_cast<std::size_t>(d) > window.size())
      throw ConfigError("window has no entry x_{n-" + std::to_string(d) + "} for delay " +
                        std::to_string(d));
    const double x = window[window.size() - static_cast<std::size_t>(d)];
    const double candidate = coefficient_at(config.schedule_for(d), n - 1).log() - x;
    if (!best || candidate > best->log_value + tie_tolerance)
      best = LogStepResult{candidate, d};
  }
  return *best;
}

Trajectory::Trajectory(EquationConfig config, Mode mode)
    : config_(std::move(config)), mode_(mode) {
  validate(config_);
  for (const auto& x : config_.initial) {
    if (mode_ == Mode::Exact) values_.push_back(x);
    logs_.push_back(x.log());
    argmax_.push_back(0);
  }
}

std::size_t Trajectory::offset(std::int64_t n) const {
  if (!contains(n))
    throw InsufficientHistory("index " + std::to_string(n) + " outside trajectory [" +
                              std::to_string(first_index()) + ", " +
                              std::to_string(last_index()) + "]");
  return static_cast<std::size_t>(n - first_index());
}

const PositiveRational& Trajectory::value(std::int64_t n) const {
  if (mode_ != Mode::Exact) throw ContractViolation("exact values require an Exact trajectory");
  return values_[offset(n)];
}

double Trajectory::log_value(std::int64_t n) const { return logs_[offset(n)]; }

int Trajectory::argmax_delay(std::int64_t n) const { return argmax_[offset(n)]; }

namespace {

// Per-delay coefficient tables resolved once per simulation.
struct ResolvedSchedules {
  struct Entry {
    std::size_t delay;
    const CoefficientSchedule* schedule;
    std::vector<double> logs;
  };
  std::vector<Entry> entries;

  explicit ResolvedSchedules(const EquationConfig& c) {
    for (const int d : c.delays) {
      const auto& s = c.schedule_for(d);
      Entry e{static_cast<std::size_t>(d), &s, {}};
      for (const auto& v : s.values) e.logs.push_back(v.log());
      entries.push_back(std::move(e));
    }
  }
};

std::size_t wrap(std::int64_t n, std::size_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = n % sp;
  return static_cast<std::size_t>(r < 0 ? r + sp : r);
}

}  // namespace

void extend(Trajectory& tr, std::size_t steps, const SimulationOptions& options) {
  if (tr.truncation_) return;
  const ResolvedSchedules resolved(tr.config_);
  tr.logs_.reserve(tr.logs_.size() + steps);
  tr.argmax_.reserve(tr.argmax_.size() + steps);
  if (tr.mode_ == Mode::Exact) tr.values_.reserve(tr.values_.size() + steps);

  PositiveRational best;
  PositiveRational candidate;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::int64_t n = tr.last_index() + 1;
    const std::size_t here = tr.logs_.size();
    if (tr.mode_ == Mode::Exact) {
      int best_delay = 0;
      for (const auto& e : resolved.entries) {
        const auto& a = e.schedule->values[wrap(n - 1, e.schedule->period())];
        candidate = a / tr.values_[here - e.delay];
        if (best_delay == 0 || candidate > best) {
          std::swap(best, candidate);
          best_delay = static_cast<int>(e.delay);
        }
      }
      const std::size_t bits = best.bit_size();
      if (bits > options.bit_cap) {
        tr.truncation_ = Truncation{n, bits, options.bit_cap};
        return;
      }
      tr.logs_.push_back(best.log());
      tr.values_.push_back(best);
      tr.argmax_.push_back(best_delay);
    } else {
      int best_delay = 0;
      double best_log = 0.0;
      for (const auto& e : resolved.entries) {
        const double c = e.logs[wrap(n - 1, e.schedule->period())] - tr.logs_[here - e.delay];
        if (best_delay == 0 || c > best_log + options.tie_tolerance) {
          best_log = c;
          best_delay = static_cast<int>(e.delay);
        }
      }
      tr.logs_.push_back(best_log);
      tr.argmax_.push_back(best_delay);
    }
  }
}

Trajectory simulate(const EquationConfig& config, std::size_t steps, Mode mode,
                    const SimulationOptions& options) {
  Trajectory tr(config, mode);
  extend(tr, steps, options);
  return tr;
}

}  // namespace maxrec
