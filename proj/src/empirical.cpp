#include "maxrec/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "maxrec/errors.hpp"

namespace maxrec {
namespace {

void require_exact(const Trajectory& tr) {
  if (tr.mode() != Mode::Exact)
    throw ContractViolation("this check needs an Exact-mode trajectory");
}

void require_full(const Trajectory& tr) {
  if (!tr.config().has_full_delay_set())
    throw NotApplicable("this check needs the full delay set {1, ..., t}");
}

std::int64_t floor_mod(std::int64_t n, std::int64_t p) {
  const std::int64_t r = n % p;
  return r < 0 ? r + p : r;
}

// x_idx * x_{idx-d} == A^d_{idx-1}: the argument for delay d attains the max.
bool attains(const Trajectory& tr, std::int64_t idx, int d) {
  if (idx < tr.config().first_computed_index()) return false;
  const auto& a = coefficient_at(tr.config().schedule_for(d), idx - 1);
  return tr.value(idx) * tr.value(idx - d) == a;
}

}  // namespace

std::vector<std::size_t> prefix_min_positions(std::span<const PositiveRational> values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (out.empty() || values[i] < values[out.back()]) out.push_back(i);
  return out;
}

std::vector<std::int64_t> prefix_min_subsequence(const Trajectory& tr) {
  std::vector<std::int64_t> out;
  if (tr.mode() == Mode::Exact) {
    for (const std::size_t pos : prefix_min_positions(tr.exact_values()))
      out.push_back(tr.first_index() + static_cast<std::int64_t>(pos));
    return out;
  }
  const auto logs = tr.log_values();
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto n = tr.first_index() + static_cast<std::int64_t>(i);
    if (out.empty() || logs[i] < tr.log_value(out.back())) out.push_back(n);
  }
  return out;
}

PersistenceReport persistence_report(const Trajectory& tr,
                                     const PersistenceThresholds& thresholds) {
  std::size_t window = thresholds.window;
  if (window == 0)
    window = 10 * static_cast<std::size_t>(tr.config().t + 1) * tr.config().coefficient_lcm();
  const double upper = std::log(thresholds.upper);
  const double lower = std::log(thresholds.lower);

  PersistenceReport r;
  const auto logs = tr.log_values();
  r.min_log = r.max_log = logs.front();
  r.argmin = r.argmax = tr.first_index();
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto n = tr.first_index() + static_cast<std::int64_t>(i);
    const double v = logs[i];
    if (i % window == 0) r.windows.push_back(WindowExtremes{n, n, v, v});
    auto& w = r.windows.back();
    w.last = n;
    w.min_log = std::min(w.min_log, v);
    w.max_log = std::max(w.max_log, v);
    if (v < r.min_log) { r.min_log = v; r.argmin = n; }
    if (v > r.max_log) { r.max_log = v; r.argmax = n; }
    if (v > upper && !r.divergence_flag) { r.divergence_flag = true; r.first_divergence = n; }
    if (v < lower && !r.vanishing_flag) { r.vanishing_flag = true; r.first_vanishing = n; }
  }
  return r;
}

const char* to_string(ClassTrend trend) {
  switch (trend) {
    case ClassTrend::ToZero: return "ToZero";
    case ClassTrend::ToInfinity: return "ToInfinity";
    case ClassTrend::BoundedClass: return "BoundedClass";
    case ClassTrend::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::size_t ExtendedPeriodicityVerdict::count(ClassTrend trend) const {
  return static_cast<std::size_t>(std::count_if(
      classes.begin(), classes.end(), [&](const ResidueClassFit& c) { return c.trend == trend; }));
}

ExtendedPeriodicityVerdict extended_periodicity_fit(const Trajectory& tr, std::uint64_t p,
                                                    std::size_t burn_in,
                                                    double slope_threshold) {
  if (p == 0) throw ContractViolation("period must be positive");
  if (tr.size() < burn_in + 10 * p)
    throw InsufficientHistory("trajectory of " + std::to_string(tr.size()) +
                              " terms is shorter than burn-in plus 10 periods (" +
                              std::to_string(burn_in + 10 * p) + ")");
  const auto sp = static_cast<std::int64_t>(p);
  ExtendedPeriodicityVerdict verdict;
  verdict.period = p;
  const std::int64_t start = tr.first_index() + static_cast<std::int64_t>(burn_in);
  for (std::int64_t r = 0; r < sp; ++r) {
    std::vector<double> xs;
    std::vector<double> ys;
    std::int64_t n = start + floor_mod(r - start, sp);
    for (; n <= tr.last_index(); n += sp) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(tr.log_value(n));
    }
    ResidueClassFit fit;
    fit.residue = r;
    fit.samples = xs.size();
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;

    constexpr std::size_t kChunks = 4;
    std::vector<double> means;
    const std::size_t chunk = xs.size() / kChunks;
    for (std::size_t c = 0; c < kChunks && chunk > 0; ++c) {
      const auto first = ys.begin() + static_cast<std::ptrdiff_t>(c * chunk);
      means.push_back(std::accumulate(first, first + static_cast<std::ptrdiff_t>(chunk), 0.0) /
                      static_cast<double>(chunk));
    }
    const bool rising = means.size() == kChunks &&
                        std::adjacent_find(means.begin(), means.end(), std::greater_equal<>()) ==
                            means.end();
    const bool falling = means.size() == kChunks &&
                         std::adjacent_find(means.begin(), means.end(), std::less_equal<>()) ==
                             means.end();
    if (std::abs(fit.slope) <= slope_threshold) fit.trend = ClassTrend::BoundedClass;
    else if (fit.slope > 0 && rising) fit.trend = ClassTrend::ToInfinity;
    else if (fit.slope < 0 && falling) fit.trend = ClassTrend::ToZero;
    else fit.trend = ClassTrend::Undetermined;
    verdict.classes.push_back(fit);
  }
  return verdict;
}

ExtendedPeriodicityVerdict extended_periodicity_fit(const Trajectory& tr, std::uint64_t p) {
  return extended_periodicity_fit(tr, p, tr.size() / 5);
}

std::size_t decay_blocks(const Trajectory& tr, const HReport& report) {
  const std::int64_t t = tr.config().t;
  const std::int64_t first = (t + 2) + report.j;  // n = 0
  if (tr.last_index() < first) return 0;
  return static_cast<std::size_t>((tr.last_index() - first) / (t + 1) + 1);
}

bool verify_decay_bound(const Trajectory& tr, const std::optional<HReport>& report) {
  if (!report) throw NotApplicable("no Hypothesis (H) report: decay bound does not apply");
  if (!(report->alpha < PositiveRational(1)))
    throw NotApplicable("decay factor alpha = " + report->alpha.to_string() +
                        " is not below 1");
  require_exact(tr);
  require_full(tr);
  const std::int64_t t = tr.config().t;
  const std::int64_t j = report->j;
  if (j < 1 || j > t + 1) throw NotApplicable("witness shift j outside [1, t+1]");
  if (!tr.contains(1 + j))
    throw InsufficientHistory("trajectory does not contain x_{1+j}");

  const PositiveRational& anchor = tr.value(1 + j);
  PositiveRational power;  // alpha^n
  const std::size_t blocks = decay_blocks(tr, *report);
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto n = static_cast<std::int64_t>(b);
    const PositiveRational& small = tr.value((t + 1) * n + 1 + j);
    const PositiveRational& next = tr.value((t + 1) * n + (t + 2) + j);
    if (next > report->alpha * small) return false;
    if (small > power * anchor) return false;
    power *= report->alpha;
  }
  return true;
}

ReturnMapCheck verify_return_map_identity(const Trajectory& tr, std::int64_t N,
                                          std::uint64_t P) {
  require_exact(tr);
  require_full(tr);
  const int t = tr.config().t;
  const std::int64_t block = t + 1;
  const std::int64_t end = N + static_cast<std::int64_t>(P) * block;
  if (P == 0) throw ContractViolation("P must be positive");
  if (!tr.contains(N) || !tr.contains(end))
    throw InsufficientHistory("trajectory does not cover [" + std::to_string(N) + ", " +
                              std::to_string(end) + "]");

  ReturnMapCheck result;
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(P); ++k) {
    for (int j = 1; j <= t; ++j) {
      const std::int64_t idx = N + k * block - j;
      // delay t+1-j reaches back to x_{N+(k-1)(t+1)}
      if (!attains(tr, idx, t + 1 - j)) {
        result.pattern_break = idx;
        return result;
      }
    }
  }

  const auto& cfg = tr.config();
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(P); ++k) {
    std::optional<PositiveRational> best;
    for (int j = 1; j <= t; ++j) {
      PositiveRational ratio = coefficient_at(cfg.schedule_for(j), N + k * block - 1) /
                               coefficient_at(cfg.schedule_for(t + 1 - j), N + k * block - j - 1);
      if (!best || ratio > *best) best = std::move(ratio);
    }
    result.product *= *best;
  }
  if (!(tr.value(end) == tr.value(N) * result.product)) {
    result.status = ReturnMapCheck::Status::IdentityFailed;
    return result;
  }

  const auto witness = gcd_bounded_test(cfg);
  if (witness && P % witness->product == 0) {
    result.inequality_checked = true;
    if (tr.value(end) < tr.value(N)) {
      result.status = ReturnMapCheck::Status::InequalityFailed;
      return result;
    }
  }
  result.status = ReturnMapCheck::Status::Verified;
  return result;
}

bool small_value_pattern_check(const Trajectory& tr, std::int64_t N, std::uint64_t M) {
  require_exact(tr);
  require_full(tr);
  const int t = tr.config().t;
  const std::int64_t block = t + 1;
  const std::int64_t earliest = N - static_cast<std::int64_t>(M) * block - t;
  if (!tr.contains(earliest) || !tr.contains(N))
    throw InsufficientHistory("small-value pattern needs x_" + std::to_string(earliest) +
                              " through x_" + std::to_string(N));
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(M); ++k)
    for (int i = 1; i <= t; ++i)
      if (!attains(tr, N - k * block - i, t + 1 - i)) return false;
  return true;
}

}  // namespace maxrec
