#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxrec/classifier.hpp"
#include "maxrec/recurrence.hpp"

namespace maxrec {

/// Greedy strictly decreasing subsequence of record minima: the first
/// term, then each term strictly below the previous pick. Returns
/// trajectory indices. Works in either mode (LogDomain compares logs).
std::vector<std::int64_t> prefix_min_subsequence(const Trajectory& trajectory);

/// Same on a bare sequence; returns positions.
std::vector<std::size_t> prefix_min_positions(std::span<const PositiveRational> values);

struct PersistenceThresholds {
  double upper = 1e12;
  double lower = 1e-12;
  std::size_t window = 0;  // 0: 10 * (t+1) * lcm of periods
};

struct WindowExtremes {
  std::int64_t first = 0;
  std::int64_t last = 0;
  double min_log = 0.0;
  double max_log = 0.0;
};

struct PersistenceReport {
  std::vector<WindowExtremes> windows;
  double min_log = 0.0;  // natural log of the running minimum
  double max_log = 0.0;
  std::int64_t argmin = 0;
  std::int64_t argmax = 0;
  bool divergence_flag = false;  // some term above `upper`
  bool vanishing_flag = false;   // some term below `lower`
  std::optional<std::int64_t> first_divergence;
  std::optional<std::int64_t> first_vanishing;
};

PersistenceReport persistence_report(const Trajectory& trajectory,
                                     const PersistenceThresholds& thresholds = {});

enum class ClassTrend { ToZero, ToInfinity, BoundedClass, Undetermined };

const char* to_string(ClassTrend trend);

struct ResidueClassFit {
  std::int64_t residue = 0;  // n mod p of the class
  ClassTrend trend = ClassTrend::Undetermined;
  double slope = 0.0;        // d(log x)/dn, least squares
  std::size_t samples = 0;
};

struct ExtendedPeriodicityVerdict {
  std::uint64_t period = 1;
  std::vector<ResidueClassFit> classes;

  std::size_t count(ClassTrend trend) const;
};

inline constexpr double kDefaultSlopeThreshold = 1e-3;

/// Least-squares log-slope per residue class n mod p, after skipping
/// `burn_in` leading terms. ToZero/ToInfinity need |slope| above the
/// threshold and strictly monotone means over four consecutive chunks.
ExtendedPeriodicityVerdict extended_periodicity_fit(const Trajectory& trajectory,
                                                    std::uint64_t p, std::size_t burn_in,
                                                    double slope_threshold = kDefaultSlopeThreshold);

/// Burn-in of 20% of the trajectory.
ExtendedPeriodicityVerdict extended_periodicity_fit(const Trajectory& trajectory,
                                                    std::uint64_t p);

/// Checks, exactly and for every block present in the trajectory,
///   x_{(t+1)n+(t+2)+j} <= alpha x_{(t+1)n+1+j}   and
///   x_{(t+1)n+1+j}     <= alpha^n x_{1+j}.
/// Throws NotApplicable if the report is absent or alpha >= 1.
bool verify_decay_bound(const Trajectory& trajectory, const std::optional<HReport>& report);

/// Number of complete blocks verify_decay_bound would examine.
std::size_t decay_blocks(const Trajectory& trajectory, const HReport& report);

struct ReturnMapCheck {
  enum class Status { Verified, PatternNotSatisfied, IdentityFailed, InequalityFailed };
  Status status = Status::PatternNotSatisfied;
  PositiveRational product;        // prod_k max_j A^j_{N+k(t+1)-1} / A^{t+1-j}_{N+k(t+1)-j-1}
  bool inequality_checked = false;  // gcd premise held with P a multiple of p_i p_{t+1-i}
  std::optional<std::int64_t> pattern_break;

  bool ok() const { return status == Status::Verified; }
};

/// Return-map identity over P blocks of length t+1 starting at N. When
/// x_{N+k(t+1)-j} == A^{t+1-j}_{N+k(t+1)-j-1} / x_{N+(k-1)(t+1)} for all
/// j in [t], k in [P], checks that x_{N+P(t+1)} == x_N * product and, under
/// the gcd premise, x_{N+P(t+1)} >= x_N.
ReturnMapCheck verify_return_map_identity(const Trajectory& trajectory, std::int64_t N,
                                          std::uint64_t P);

/// True iff the pattern forced before a small term holds:
///   x_{N-k(t+1)-i} == A^{t+1-i}_{N-k(t+1)-i-1} / x_{N-(k+1)(t+1)}
/// for all i in [t] and 0 <= k < M.
bool small_value_pattern_check(const Trajectory& trajectory, std::int64_t N, std::uint64_t M);

}  // namespace maxrec
