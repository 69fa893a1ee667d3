#include "maxrec/equation.hpp"

#include <numeric>
#include <string>

#include "maxrec/errors.hpp"

namespace maxrec {

const PositiveRational& coefficient_at(const CoefficientSchedule& schedule, std::int64_t n) {
  const auto p = static_cast<std::int64_t>(schedule.values.size());
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return schedule.values[static_cast<std::size_t>(r)];
}

bool EquationConfig::has_full_delay_set() const {
  if (static_cast<int>(delays.size()) != t) return false;
  for (int k = 0; k < t; ++k)
    if (delays[static_cast<std::size_t>(k)] != k + 1) return false;
  return true;
}

const CoefficientSchedule& EquationConfig::schedule_for(int delay) const {
  for (const auto& s : schedules)
    if (s.delay == delay) return s;
  throw ConfigError("no coefficient schedule for delay " + std::to_string(delay));
}

std::uint64_t EquationConfig::coefficient_lcm() const {
  std::uint64_t l = 1;
  for (const auto& s : schedules) l = std::lcm(l, static_cast<std::uint64_t>(s.period()));
  return l;
}

void validate(const EquationConfig& config) {
  if (config.t < 1) throw ConfigError("t must be a positive integer");
  if (config.delays.empty()) throw ConfigError("delays must be nonempty");
  for (std::size_t i = 0; i < config.delays.size(); ++i) {
    const int d = config.delays[i];
    if (d < 1 || d > config.t)
      throw ConfigError("delay " + std::to_string(d) + " outside [1, t]");
    if (i > 0 && d <= config.delays[i - 1])
      throw ConfigError("delays must be strictly increasing");
  }
  if (config.delays.back() != config.t)
    throw ConfigError("largest delay must equal t = " + std::to_string(config.t));
  for (const int d : config.delays) {
    int count = 0;
    for (const auto& s : config.schedules) count += s.delay == d ? 1 : 0;
    if (count == 0)
      throw ConfigError("missing coefficient schedule for delay " + std::to_string(d));
    if (count > 1)
      throw ConfigError("duplicate coefficient schedule for delay " + std::to_string(d));
  }
  for (const auto& s : config.schedules) {
    bool listed = false;
    for (const int d : config.delays) listed = listed || d == s.delay;
    if (!listed)
      throw ConfigError("coefficient schedule for unlisted delay " + std::to_string(s.delay));
    if (s.values.empty())
      throw ConfigError("schedule for delay " + std::to_string(s.delay) + " has no values");
  }
  if (static_cast<int>(config.initial.size()) != config.t)
    throw ConfigError("expected " + std::to_string(config.t) + " initial conditions, got " +
                      std::to_string(config.initial.size()));
}

EquationConfig make_config(std::vector<int> delays,
                           std::vector<std::vector<PositiveRational>> coefficients,
                           std::vector<PositiveRational> initial) {
  if (delays.size() != coefficients.size())
    throw ConfigError("one coefficient list per delay required");
  EquationConfig c;
  c.t = delays.empty() ? 0 : delays.back();
  c.delays = delays;
  for (std::size_t i = 0; i < delays.size(); ++i)
    c.schedules.push_back(CoefficientSchedule{delays[i], std::move(coefficients[i])});
  c.initial = std::move(initial);
  c.index_base = 1 - c.t;
  validate(c);
  return c;
}

EquationConfig make_config(std::vector<std::vector<PositiveRational>> coefficients,
                           std::vector<PositiveRational> initial) {
  std::vector<int> delays(coefficients.size());
  std::iota(delays.begin(), delays.end(), 1);
  return make_config(std::move(delays), std::move(coefficients), std::move(initial));
}

std::vector<PositiveRational> rationals(std::initializer_list<const char*> literals) {
  std::vector<PositiveRational> out;
  out.reserve(literals.size());
  for (const char* s : literals) out.push_back(PositiveRational::parse(s));
  return out;
}

}  // namespace maxrec
