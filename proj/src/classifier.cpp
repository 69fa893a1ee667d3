#include "maxrec/classifier.hpp"

#include <algorithm>
#include <numeric>

#include "maxrec/errors.hpp"

namespace maxrec {
namespace {

void require_full_delays(const EquationConfig& config) {
  validate(config);
  if (!config.has_full_delay_set())
    throw NotApplicable("the boundedness theorems require the full delay set {1, ..., t}");
}

const PositiveRational& min_value(const CoefficientSchedule& s) {
  return *std::min_element(s.values.begin(), s.values.end());
}

const PositiveRational& max_value(const CoefficientSchedule& s) {
  return *std::max_element(s.values.begin(), s.values.end());
}

// Odd t: A^m_{(t+1)l+(t+1)+j} < A^m_{(t+1)l+m+j} for l in [k_m], m = (t+1)/2.
std::optional<CorollaryTerm> middle_premise(const EquationConfig& c, int j) {
  const int t = c.t;
  const int m = (t + 1) / 2;
  const auto& s = c.schedule_for(m);
  const auto step = static_cast<std::uint64_t>(t + 1);
  if (s.period() % step != 0) return std::nullopt;
  const std::uint64_t k = s.period() / step;
  for (std::uint64_t l = 1; l <= k; ++l) {
    const auto base = static_cast<std::int64_t>(step * l);
    if (!(coefficient_at(s, base + t + 1 + j) < coefficient_at(s, base + m + j)))
      return std::nullopt;
  }
  return CorollaryTerm{m, k};
}

// For the pair (outer, inner): outer has period (t+1)k and for all l in [k]
//   A^outer_{(t+1)l+(t+1)+j} < min A^inner < max A^inner < A^outer_{(t+1)l+shift+j}.
std::optional<CorollaryTerm> chain(const EquationConfig& c, int outer, int inner, int shift,
                                   int j) {
  const int t = c.t;
  const auto& so = c.schedule_for(outer);
  const auto& si = c.schedule_for(inner);
  const auto step = static_cast<std::uint64_t>(t + 1);
  if (so.period() % step != 0) return std::nullopt;
  const std::uint64_t k = so.period() / step;
  const PositiveRational& lo = min_value(si);
  const PositiveRational& hi = max_value(si);
  if (!(lo < hi)) return std::nullopt;
  for (std::uint64_t l = 1; l <= k; ++l) {
    const auto base = static_cast<std::int64_t>(step * l);
    if (!(coefficient_at(so, base + t + 1 + j) < lo)) return std::nullopt;
    if (!(hi < coefficient_at(so, base + shift + j))) return std::nullopt;
  }
  return CorollaryTerm{outer, k};
}

}  // namespace

std::optional<GcdWitness> gcd_bounded_test(int t, const std::map<int, std::uint64_t>& periods) {
  if (t < 1) throw NotApplicable("t must be positive");
  if (static_cast<int>(periods.size()) != t || periods.begin()->first != 1 ||
      periods.rbegin()->first != t)
    throw NotApplicable("the gcd criterion requires a period for every delay in {1, ..., t}");
  const auto modulus = static_cast<std::uint64_t>(t + 1);
  for (int i = 1; i <= t; ++i) {
    const std::uint64_t product = periods.at(i) * periods.at(t + 1 - i);
    if (std::gcd(modulus, product) == 1) return GcdWitness{i, product};
  }
  return std::nullopt;
}

std::optional<GcdWitness> gcd_bounded_test(const EquationConfig& config) {
  require_full_delays(config);
  std::map<int, std::uint64_t> periods;
  for (const auto& s : config.schedules) periods[s.delay] = s.period();
  return gcd_bounded_test(config.t, periods);
}

std::vector<PositiveRational> residue_orbit(const CoefficientSchedule& schedule,
                                            std::int64_t start, std::uint64_t step) {
  const std::uint64_t p = schedule.period();
  const std::uint64_t length = p / std::gcd(step, p);
  std::vector<PositiveRational> out;
  out.reserve(length);
  for (std::uint64_t n = 0; n < length; ++n)
    out.push_back(coefficient_at(schedule, start + static_cast<std::int64_t>((step * n) % p)));
  return out;
}

std::vector<HBound> h_bounds(const EquationConfig& config, int j) {
  require_full_delays(config);
  const int t = config.t;
  const auto step = static_cast<std::uint64_t>(t + 1);
  std::vector<HBound> rows;
  for (int i = 1; i <= t; ++i) {
    const auto sup_orbit = residue_orbit(config.schedule_for(i), t + 1 + j, step);
    const auto inf_orbit = residue_orbit(config.schedule_for(t + 1 - i), t + 1 - i + j, step);
    rows.push_back(HBound{i, *std::max_element(sup_orbit.begin(), sup_orbit.end()),
                          *std::min_element(inf_orbit.begin(), inf_orbit.end())});
  }
  return rows;
}

std::optional<HReport> hypothesis_h_check(const EquationConfig& config) {
  require_full_delays(config);
  for (int j = 1; j <= config.t + 1; ++j) {
    auto rows = h_bounds(config, j);
    if (!std::all_of(rows.begin(), rows.end(), [](const HBound& b) { return b.holds(); }))
      continue;
    PositiveRational alpha = rows.front().sup / rows.front().inf;
    for (const auto& b : rows) alpha = std::max(alpha, b.sup / b.inf);
    return HReport{j, std::move(rows), alpha};
  }
  return std::nullopt;
}

std::optional<CorollaryWitness> corollary_check(const EquationConfig& config) {
  require_full_delays(config);
  const int t = config.t;
  const int d = t / 2;
  for (int which = 1; which <= 2; ++which) {
    for (int j = 1; j <= t + 1; ++j) {
      CorollaryWitness w{which, j, {}, std::nullopt};
      if (t % 2 == 1) {
        w.middle = middle_premise(config, j);
        if (!w.middle) continue;
      }
      bool ok = true;
      for (int i = 1; i <= d && ok; ++i) {
        const auto term = which == 1 ? chain(config, i, t + 1 - i, i, j)
                                     : chain(config, t + 1 - i, i, t + 1 - i, j);
        if (term) w.terms.push_back(*term);
        else ok = false;
      }
      if (ok) return w;
    }
  }
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "Bounded";
    case Verdict::Unbounded: return "Unbounded";
    case Verdict::Unknown: return "Unknown";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

Classification classify(const EquationConfig& config) {
  validate(config);
  Classification c;
  if (!config.has_full_delay_set()) {
    c.verdict = Verdict::NotApplicable;
    c.citation =
        "boundedness and unboundedness criteria cover only the full delay set {1, ..., t}";
    return c;
  }
  c.gcd = gcd_bounded_test(config);
  if (c.gcd) {
    c.verdict = Verdict::Bounded;
    c.citation = "bounded-solutions theorem: gcd(t+1, p_i p_{t+1-i}) = 1 implies every "
                 "positive solution is bounded and persists";
    return c;
  }
  c.failed_checks.push_back("gcd: every i in [t] has gcd(t+1, p_i p_{t+1-i}) > 1");
  c.h = hypothesis_h_check(config);
  if (c.h) {
    c.verdict = Verdict::Unbounded;
    c.citation = "Hypothesis (H) holds, so every positive solution is unbounded and "
                 "x_{(t+1)n+1+j} <= alpha^n x_{1+j}";
    return c;
  }
  c.failed_checks.push_back("(H): no j in [t+1] with S_{A^i} < I_{A^{t+1-i}} for all i");
  c.corollary = corollary_check(config);
  if (c.corollary) {
    c.verdict = Verdict::Unbounded;
    c.citation = "periodic-coefficients corollary (case " +
                 std::to_string(c.corollary->which) + "): every positive solution is unbounded";
    return c;
  }
  c.failed_checks.push_back("corollary: neither case holds for any j in [t+1]");
  c.verdict = Verdict::Unknown;
  c.citation = "no sufficient condition applies; boundedness is undetermined";
  return c;
}

}  // namespace maxrec
