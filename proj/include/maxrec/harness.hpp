#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "maxrec/classifier.hpp"
#include "maxrec/equation.hpp"

namespace maxrec {

enum class Expectation { Period, Bounded, Unbounded, SimulationOnly };

const char* to_string(Expectation e);

/// A configuration paired with a published outcome. Each trial replaces
/// the initial conditions (and, when `random_coefficients` is set, the
/// coefficient values, keeping their periods) with random ratios of
/// integers in [1, 10^4].
struct LiteratureCase {
  std::string id;
  EquationConfig config;
  Expectation expected = Expectation::Period;
  std::uint64_t expected_period = 0;
  bool exact_period = false;  // otherwise the detected period must divide it
  bool random_coefficients = false;
  std::uint64_t seed = 0;
  std::string provenance;
};

struct CaseRunOptions {
  std::uint64_t max_steps = 100'000;  // cycle search budget (exact)
  std::size_t unbounded_steps = 10'000;  // log-domain run for unbounded cases
  std::size_t bounded_steps = 10'000;    // exact run for persistence flags
  std::int64_t integer_max = 10'000;
};

struct CaseReport {
  std::string id;
  Expectation expected = Expectation::Period;
  std::size_t trials = 0;
  std::size_t passed_trials = 0;
  std::map<std::uint64_t, std::size_t> period_histogram;
  std::vector<std::string> failures;
  std::optional<EquationConfig> replay;  // first offending trial
  std::string provenance;

  bool passed() const { return failures.empty() && passed_trials == trials; }
};

PositiveRational random_rational(std::mt19937_64& rng, std::int64_t integer_max = 10'000);

/// The case config with trial-specific random initial conditions (and
/// coefficients, if requested).
EquationConfig trial_config(const LiteratureCase& c, std::mt19937_64& rng,
                            std::int64_t integer_max = 10'000);

CaseReport run_case(const LiteratureCase& c, std::size_t trials,
                    const CaseRunOptions& options = {});

/// Published periodicity and unboundedness results for the two-delay
/// and delay-subset equations.
std::vector<LiteratureCase> literature_cases();

/// Exemplars of the gcd boundedness criterion and Hypothesis (H).
std::vector<LiteratureCase> theorem_cases();

/// "literature", "theorems", "all", or a single case id. Empty result for
/// an unknown name.
std::vector<LiteratureCase> suite(std::string_view name);

nlohmann::ordered_json to_json(const LiteratureCase& c);
nlohmann::ordered_json to_json(const CaseReport& r);

}  // namespace maxrec
