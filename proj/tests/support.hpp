#pragma once

// Test-only helpers: random generators and oracles computed with plain
// mpq_class arithmetic, independent of the library's simulation paths.

#include <gmpxx.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "maxrec/equation.hpp"
#include "maxrec/rational.hpp"

namespace maxrec::testing {

inline PositiveRational rand_q(std::mt19937_64& rng, std::int64_t max = 10'000) {
  std::uniform_int_distribution<std::int64_t> d(1, max);
  const auto p = d(rng);
  const auto q = d(rng);
  return PositiveRational(p, q);
}

inline std::vector<PositiveRational> rand_values(std::mt19937_64& rng, std::size_t n,
                                                 std::int64_t max = 100) {
  std::vector<PositiveRational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rand_q(rng, max));
  return v;
}

/// Full-delay config with the given periods and random values.
inline EquationConfig rand_config(std::mt19937_64& rng, const std::vector<std::size_t>& periods,
                                  std::int64_t coef_max = 100, std::int64_t init_max = 10'000) {
  std::vector<std::vector<PositiveRational>> coefs;
  for (const auto p : periods) coefs.push_back(rand_values(rng, p, coef_max));
  return make_config(std::move(coefs), rand_values(rng, periods.size(), init_max));
}

/// Naive exact iteration: map from absolute index to value, straight from
/// the defining formula.
inline std::map<std::int64_t, mpq_class> naive_simulate(const EquationConfig& c,
                                                        std::int64_t steps) {
  std::map<std::int64_t, mpq_class> x;
  for (int k = 0; k < c.t; ++k) x[c.index_base + k] = c.initial[static_cast<std::size_t>(k)].mpq();
  const std::int64_t first = c.index_base + c.t;
  for (std::int64_t n = first; n < first + steps; ++n) {
    mpq_class best = 0;
    for (const auto& s : c.schedules) {
      const auto p = static_cast<std::int64_t>(s.values.size());
      const std::int64_t idx = ((n - 1) % p + p) % p;
      mpq_class cand = s.values[static_cast<std::size_t>(idx)].mpq() / x[n - s.delay];
      if (cand > best) best = cand;
    }
    x[n] = best;
  }
  return x;
}

/// Smallest (preperiod, period) describing a sequence that is periodic on
/// its second half, by exhaustive search; period 0 when none is found.
inline std::pair<std::size_t, std::size_t> brute_eventual_period(
    const std::vector<mpq_class>& seq) {
  const std::size_t n = seq.size();
  for (std::size_t p = 1; p <= n / 4; ++p) {
    bool ok = true;
    for (std::size_t i = n / 2; i + p < n && ok; ++i) ok = seq[i] == seq[i + p];
    if (!ok) continue;
    std::size_t start = n / 2;
    while (start > 0 && seq[start - 1] == seq[start - 1 + p]) --start;
    return {start, p};
  }
  return {0, 0};
}

}  // namespace maxrec::testing
