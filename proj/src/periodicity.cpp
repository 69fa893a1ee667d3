#include "maxrec/periodicity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "maxrec/errors.hpp"

namespace maxrec {
namespace {

std::int64_t phase_of(std::int64_t n, std::uint64_t lcm) {
  const auto l = static_cast<std::int64_t>(lcm);
  const std::int64_t r = n % l;
  return r < 0 ? r + l : r;
}

bool periodic_from(std::span<const PositiveRational> v, std::size_t begin, std::size_t end,
                   std::size_t d) {
  for (std::size_t i = begin; i + d < end; ++i)
    if (!(v[i] == v[i + d])) return false;
  return true;
}

}  // namespace

std::uint64_t minimal_period(std::span<const PositiveRational> segment, std::uint64_t p) {
  if (p == 0) throw ContractViolation("period must be positive");
  if (segment.size() < 2 * p)
    throw ContractViolation("segment of length " + std::to_string(segment.size()) +
                            " is shorter than twice the period " + std::to_string(p));
  if (!periodic_from(segment, 0, segment.size(), p))
    throw ContractViolation("segment is not " + std::to_string(p) + "-periodic");
  for (std::uint64_t d = 1; d < p; ++d)
    if (p % d == 0 && periodic_from(segment, 0, segment.size(), d)) return d;
  return p;
}

bool verify_periodicity(const Trajectory& tr, std::int64_t first, std::uint64_t p,
                        std::uint64_t horizon) {
  if (p == 0) throw ContractViolation("period must be positive");
  const std::int64_t last = first + static_cast<std::int64_t>(horizon + p);
  if (!tr.contains(first) || !tr.contains(last))
    throw InsufficientHistory("trajectory does not cover [" + std::to_string(first) + ", " +
                              std::to_string(last) + "]");
  const auto dp = static_cast<std::int64_t>(p);
  for (std::int64_t n = first; n <= first + static_cast<std::int64_t>(horizon); ++n)
    if (!(tr.value(n + dp) == tr.value(n))) return false;
  return true;
}

bool verify_periodicity(const EquationConfig& config, std::int64_t first, std::uint64_t p,
                        std::uint64_t horizon, const SimulationOptions& options) {
  if (first < config.index_base)
    throw ContractViolation("start index precedes the first initial condition");
  const std::int64_t last = first + static_cast<std::int64_t>(horizon + p);
  const auto needed = static_cast<std::size_t>(std::max<std::int64_t>(
      0, last - config.first_computed_index() + 1));
  const Trajectory tr = simulate(config, needed, Mode::Exact, options);
  if (!tr.contains(last)) return false;  // truncated by the bit cap
  return verify_periodicity(tr, first, p, horizon);
}

CycleDetection detect_cycle(const EquationConfig& config, std::uint64_t max_steps,
                            const SimulationOptions& options) {
  const auto t = static_cast<std::size_t>(config.t);
  const std::uint64_t lcm = config.coefficient_lcm();
  Trajectory tr(config, Mode::Exact);

  auto state_hash = [&](std::int64_t n) {
    std::size_t h = std::hash<std::int64_t>{}(phase_of(n, lcm));
    for (std::size_t k = 0; k < t; ++k) {
      const std::size_t v = tr.value(n - static_cast<std::int64_t>(k)).hash();
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  };
  auto same_state = [&](std::int64_t a, std::int64_t b) {
    if (phase_of(a, lcm) != phase_of(b, lcm)) return false;
    for (std::size_t k = 0; k < t; ++k) {
      const auto off = static_cast<std::int64_t>(k);
      if (!(tr.value(a - off) == tr.value(b - off))) return false;
    }
    return true;
  };

  // State "at n" is the window x_{n-t+1..n} with phase n mod L.
  std::unordered_map<std::size_t, std::vector<std::int64_t>> seen;
  std::int64_t repeat_first = 0;
  std::int64_t repeat_second = 0;
  bool found = false;
  std::int64_t n = tr.last_index();
  const std::int64_t limit = tr.last_index() + static_cast<std::int64_t>(max_steps);
  constexpr std::size_t kChunk = 4096;
  while (!found && n <= limit) {
    if (n > tr.last_index()) {
      const auto remaining = static_cast<std::size_t>(limit - tr.last_index());
      extend(tr, std::min(kChunk, remaining), options);
      if (n > tr.last_index()) break;  // truncated
    }
    auto& bucket = seen[state_hash(n)];
    for (const std::int64_t m : bucket) {
      if (same_state(m, n)) {
        repeat_first = m;
        repeat_second = n;
        found = true;
        break;
      }
    }
    bucket.push_back(n);
    ++n;
  }

  if (!found) {
    CycleNotFound nf;
    nf.steps_explored = tr.steps();
    const auto values = tr.exact_values();
    nf.min_value = *std::min_element(values.begin(), values.end());
    nf.max_value = *std::max_element(values.begin(), values.end());
    nf.truncation = tr.truncation();
    return nf;
  }

  const auto state_period = static_cast<std::uint64_t>(repeat_second - repeat_first);
  const std::int64_t tail = repeat_first - static_cast<std::int64_t>(t) + 1;
  const auto sp = static_cast<std::int64_t>(state_period);

  auto ensure = [&](std::int64_t index) {
    if (index > tr.last_index())
      extend(tr, static_cast<std::size_t>(index - tr.last_index()), options);
    if (!tr.contains(index))
      throw std::logic_error("bit cap exceeded while confirming a detected cycle");
  };

  ensure(tail + 2 * sp);
  const auto values = tr.exact_values();
  const auto begin = static_cast<std::size_t>(tail - tr.first_index());
  const std::uint64_t period = minimal_period(
      values.subspan(begin, static_cast<std::size_t>(2 * sp)), state_period);

  const auto dp = static_cast<std::int64_t>(period);
  std::int64_t preperiod = tail;
  while (preperiod - 1 >= tr.first_index() &&
         tr.value(preperiod - 1) == tr.value(preperiod - 1 + dp))
    --preperiod;

  const std::uint64_t horizon = std::max<std::uint64_t>(10 * period * lcm, 2 * state_period);
  ensure(preperiod + static_cast<std::int64_t>(horizon) + dp);
  if (!verify_periodicity(tr, preperiod, period, horizon))
    throw std::logic_error("detected cycle failed exact verification");

  return CycleReport{preperiod, period, state_period, static_cast<std::int64_t>(horizon)};
}

}  // namespace maxrec
