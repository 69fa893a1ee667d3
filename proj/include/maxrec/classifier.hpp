#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxrec/equation.hpp"
#include "maxrec/rational.hpp"

namespace maxrec {

/// Boundedness witness: gcd(t+1, p_i * p_{t+1-i}) == 1.
struct GcdWitness {
  int i = 0;
  std::uint64_t product = 0;  // P = p_i * p_{t+1-i}
};

/// Smallest i in [1, t] with gcd(t+1, p_i p_{t+1-i}) == 1, or nullopt.
/// `periods` must have exactly the keys 1..t, else NotApplicable.
std::optional<GcdWitness> gcd_bounded_test(int t, const std::map<int, std::uint64_t>& periods);
std::optional<GcdWitness> gcd_bounded_test(const EquationConfig& config);

/// Values A_{(c + step*n) mod p} for n >= 0: one full orbit of
/// p / gcd(step, p) entries, starting at index c.
std::vector<PositiveRational> residue_orbit(const CoefficientSchedule& schedule,
                                            std::int64_t start, std::uint64_t step);

/// One row of the (H) table for a fixed shift j.
struct HBound {
  int i = 0;
  PositiveRational sup;  // S_{A^i}: sup A^i over (t+1)n + (t+1) + j
  PositiveRational inf;  // I_{A^{t+1-i}}: inf A^{t+1-i} over (t+1)n + (t+1-i) + j
  bool holds() const { return sup < inf; }
};

struct HReport {
  int j = 0;  // in [1, t+1]
  std::vector<HBound> bounds;
  PositiveRational alpha;  // max_i sup_i / inf_i
};

/// The (H) table for shift j, whether or not it holds.
std::vector<HBound> h_bounds(const EquationConfig& config, int j);

/// Report for the smallest j in [1, t+1] for which (H) holds.
/// Throws NotApplicable for a partial delay set.
std::optional<HReport> hypothesis_h_check(const EquationConfig& config);

struct CorollaryTerm {
  int schedule = 0;  // the delay whose period is (t+1)k
  std::uint64_t k = 0;
};

struct CorollaryWitness {
  int which = 1;  // case 1 or 2
  int j = 0;      // in [1, t+1]
  std::vector<CorollaryTerm> terms;          // one per i in [d]
  std::optional<CorollaryTerm> middle;       // odd t only
};

/// Literal check of the periodic-coefficients corollary, case 1 before
/// case 2, j ascending. Throws NotApplicable for a partial delay set.
std::optional<CorollaryWitness> corollary_check(const EquationConfig& config);

enum class Verdict { Bounded, Unbounded, Unknown, NotApplicable };

const char* to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Unknown;
  std::optional<GcdWitness> gcd;
  std::optional<HReport> h;
  std::optional<CorollaryWitness> corollary;
  std::vector<std::string> failed_checks;
  std::string citation;
};

/// Bounded by the gcd criterion, else Unbounded by (H) or the corollary,
/// else Unknown. NotApplicable for partial delay sets.
Classification classify(const EquationConfig& config);

}  // namespace maxrec
