#include "maxrec/harness.hpp"

#include <sstream>
#include <variant>

#include "maxrec/config_io.hpp"
#include "maxrec/empirical.hpp"
#include "maxrec/periodicity.hpp"
#include "maxrec/recurrence.hpp"

namespace maxrec {
namespace {

LiteratureCase make_case(std::string id, std::vector<int> delays,
                         std::vector<std::vector<PositiveRational>> coefficients,
                         Expectation expected, std::uint64_t period, std::uint64_t seed,
                         std::string provenance) {
  const auto n = static_cast<std::size_t>(delays.back());
  std::vector<PositiveRational> initial(n, PositiveRational(1));
  LiteratureCase c;
  c.id = std::move(id);
  c.config = make_config(std::move(delays), std::move(coefficients), std::move(initial));
  c.expected = expected;
  c.expected_period = period;
  c.seed = seed;
  c.provenance = std::move(provenance);
  return c;
}

LiteratureCase two_delay(std::string id, std::vector<PositiveRational> a2, Expectation e,
                         std::uint64_t period, std::uint64_t seed, std::string provenance) {
  return make_case(std::move(id), {1, 2}, {rationals({"1"}), std::move(a2)}, e, period, seed,
                   std::move(provenance));
}

std::string describe(const CycleDetection& d) {
  if (const auto* r = std::get_if<CycleReport>(&d))
    return "period " + std::to_string(r->period) + " from n=" + std::to_string(r->preperiod);
  const auto& nf = std::get<CycleNotFound>(d);
  return "no cycle within " + std::to_string(nf.steps_explored) + " steps" +
         (nf.truncation ? " (bit cap reached)" : "");
}

}  // namespace

const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::Period: return "Period";
    case Expectation::Bounded: return "Bounded";
    case Expectation::Unbounded: return "Unbounded";
    case Expectation::SimulationOnly: return "SimulationOnly";
  }
  return "Period";
}

PositiveRational random_rational(std::mt19937_64& rng, std::int64_t integer_max) {
  std::uniform_int_distribution<std::int64_t> d(1, integer_max);
  const std::int64_t p = d(rng);
  const std::int64_t q = d(rng);
  return PositiveRational(p, q);
}

EquationConfig trial_config(const LiteratureCase& c, std::mt19937_64& rng,
                            std::int64_t integer_max) {
  EquationConfig cfg = c.config;
  if (c.random_coefficients)
    for (auto& s : cfg.schedules)
      for (auto& v : s.values) v = random_rational(rng, integer_max);
  for (auto& x : cfg.initial) x = random_rational(rng, integer_max);
  return cfg;
}

CaseReport run_case(const LiteratureCase& c, std::size_t trials, const CaseRunOptions& options) {
  CaseReport report;
  report.id = c.id;
  report.expected = c.expected;
  report.trials = trials;
  report.provenance = c.provenance;
  std::mt19937_64 rng(c.seed);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const EquationConfig cfg = trial_config(c, rng, options.integer_max);
    std::string failure;
    switch (c.expected) {
      case Expectation::Period: {
        const auto d = detect_cycle(cfg, options.max_steps);
        const auto* r = std::get_if<CycleReport>(&d);
        if (!r) {
          failure = describe(d);
          break;
        }
        ++report.period_histogram[r->period];
        const bool ok = c.exact_period ? r->period == c.expected_period
                                       : c.expected_period % r->period == 0;
        if (!ok)
          failure = describe(d) + (c.exact_period ? ", expected exactly " : ", expected a divisor of ") +
                    std::to_string(c.expected_period);
        break;
      }
      case Expectation::Bounded: {
        const auto v = classify(cfg);
        if (v.verdict == Verdict::Unbounded) failure = "classifier reports Unbounded";
        const Trajectory tr = simulate(cfg, options.bounded_steps, Mode::Exact);
        const auto p = persistence_report(tr);
        if (p.divergence_flag || p.vanishing_flag)
          failure = "persistence flags set (min log " + std::to_string(p.min_log) + ", max log " +
                    std::to_string(p.max_log) + ")";
        const auto d = detect_cycle(cfg, options.max_steps);
        if (const auto* r = std::get_if<CycleReport>(&d)) ++report.period_histogram[r->period];
        else if (failure.empty()) failure = describe(d);
        break;
      }
      case Expectation::Unbounded: {
        const auto v = classify(cfg);
        if (v.verdict == Verdict::Bounded) failure = "classifier reports Bounded";
        const Trajectory tr = simulate(cfg, options.unbounded_steps, Mode::LogDomain);
        const auto p = persistence_report(tr);
        if (!p.divergence_flag || !p.vanishing_flag) {
          failure = "persistence flags not both set";
          break;
        }
        const auto fit = extended_periodicity_fit(tr, static_cast<std::uint64_t>(cfg.t + 1));
        if (fit.count(ClassTrend::BoundedClass) == fit.classes.size())
          failure = "every residue class fitted as bounded";
        break;
      }
      case Expectation::SimulationOnly: {
        if (classify(cfg).verdict != Verdict::NotApplicable)
          failure = "classifier did not refuse a partial delay set";
        const Trajectory tr = simulate(cfg, options.bounded_steps, Mode::Exact);
        if (tr.truncation() || tr.steps() != options.bounded_steps) {
          failure = "simulation truncated";
          break;
        }
        for (std::int64_t n = cfg.first_computed_index(); n <= tr.last_index(); ++n) {
          const int d = tr.argmax_delay(n);
          if (!(tr.value(n) * tr.value(n - d) == coefficient_at(cfg.schedule_for(d), n - 1))) {
            failure = "max-equality certificate failed at n=" + std::to_string(n);
            break;
          }
        }
        break;
      }
    }
    if (failure.empty()) {
      ++report.passed_trials;
    } else {
      report.failures.push_back("trial " + std::to_string(trial) + ": " + failure);
      if (!report.replay) report.replay = cfg;
    }
  }
  return report;
}

std::vector<LiteratureCase> literature_cases() {
  using E = Expectation;
  std::vector<LiteratureCase> cases;
  cases.push_back(two_delay("AHL-a1-Alt1", rationals({"1/2"}), E::Period, 2, 101,
                            "Al-Amleh, Hoag, Ladas: a=1, A in (0,1) -> period 2"));
  cases.push_back(two_delay("AHL-a1-A1", rationals({"1"}), E::Period, 3, 102,
                            "Al-Amleh, Hoag, Ladas: a=1, A=1 -> period 3"));
  cases.push_back(two_delay("AHL-a1-Agt1", rationals({"2"}), E::Period, 4, 103,
                            "Al-Amleh, Hoag, Ladas: a=1, A in (1,inf) -> period 4"));
  cases.push_back(two_delay("BGLM-p2-lt1", rationals({"1", "1/2"}), E::Period, 2, 201,
                            "Briden et al., period-2 A_n: A0 A1 in (0,1) -> period 2"));
  cases.push_back(two_delay("BGLM-p2-eq1", rationals({"2", "1/2"}), E::Period, 6, 202,
                            "Briden et al., period-2 A_n: A0 A1 = 1 -> period 6"));
  cases.push_back(two_delay("BGLM-p2", rationals({"1", "2"}), E::Period, 4, 203,
                            "Briden et al., period-2 A_n: A0 A1 in (1,inf) -> period 4"));
  cases.push_back(two_delay("GKLR-below", rationals({"1/2", "1/3", "2/3"}), E::Period, 2, 301,
                            "Briden et al. / Grove et al., period-3 A_n in (0,1) -> period 2"));
  cases.push_back(two_delay("GKLR-above", rationals({"2", "3", "3/2"}), E::Period, 12, 302,
                            "Briden et al. / Grove et al., period-3 A_n in (1,inf) -> period 12"));
  cases.push_back(two_delay("GKLR-unbounded", rationals({"3", "1/3", "1"}), E::Unbounded, 0, 303,
                            "Grove et al., period-3 A_n with A_{i+1} < 1 < A_i -> unbounded"));
  cases.push_back(two_delay("GKLR-other", rationals({"2", "1", "1/2"}), E::Period, 3, 304,
                            "Briden et al. / Grove et al., period-3 A_n, other cases -> period 3"));

  LiteratureCase kr = make_case("KR-bounded", {1, 2},
                                {rationals({"3", "1/2"}), rationals({"2", "5/3", "1/4", "7"})},
                                E::Bounded, 0, 401,
                                "Kent, Radin: neither p nor q a multiple of 3 -> bounded");
  kr.random_coefficients = true;
  cases.push_back(std::move(kr));

  LiteratureCase kr5 = make_case("KR-delays-1-3", {1, 3},
                                 {rationals({"2", "1/3"}), rationals({"1", "3", "1/2", "5"})},
                                 E::SimulationOnly, 0, 501,
                                 "Kerbert, Radin: delays {1,3}; unboundedness conditions omitted "
                                 "in the source, simulation only");
  kr5.random_coefficients = true;
  cases.push_back(std::move(kr5));

  LiteratureCase kr6 = make_case("delays-2-3", {2, 3},
                                 {rationals({"2", "1/3", "1"}), rationals({"1", "3", "1/2", "5", "2"})},
                                 E::SimulationOnly, 0, 601,
                                 "delays {2,3}; multiple-of-5 unboundedness conditions omitted in "
                                 "the source, simulation only");
  kr6.random_coefficients = true;
  cases.push_back(std::move(kr6));
  return cases;
}

std::vector<LiteratureCase> theorem_cases() {
  using E = Expectation;
  std::vector<LiteratureCase> cases;
  LiteratureCase b3 = make_case("T1-t3-periods-1-3-5",
                                {1, 2, 3},
                                {rationals({"2"}), rationals({"1", "3"}), rationals({"1/2", "4", "3", "2", "5"})},
                                E::Bounded, 0, 701,
                                "bounded-solutions theorem, t=3: gcd(4, p_1 p_3) = gcd(4, 5) = 1");
  b3.random_coefficients = true;
  cases.push_back(std::move(b3));

  cases.push_back(make_case("T2-t1-1-4", {1}, {rationals({"1", "4"})}, E::Unbounded, 0, 801,
                            "Hypothesis (H), t=1: A = (1, 4), alpha = 1/4"));
  cases.push_back(make_case("T2-t2-corollary", {1, 2},
                            {rationals({"1", "1/3", "3"}), rationals({"1", "2"})}, E::Unbounded, 0,
                            802, "periodic-coefficients corollary, case 1, t=2"));
  return cases;
}

std::vector<LiteratureCase> suite(std::string_view name) {
  if (name == "literature") return literature_cases();
  if (name == "theorems") return theorem_cases();
  auto all = literature_cases();
  for (auto& c : theorem_cases()) all.push_back(std::move(c));
  if (name == "all") return all;
  std::vector<LiteratureCase> one;
  for (auto& c : all)
    if (c.id == name) one.push_back(std::move(c));
  return one;
}

nlohmann::ordered_json to_json(const LiteratureCase& c) {
  nlohmann::ordered_json doc;
  doc["id"] = c.id;
  doc["expected"] = to_string(c.expected);
  if (c.expected == Expectation::Period) {
    doc["expected_period"] = c.expected_period;
    doc["match"] = c.exact_period ? "exact" : "divides";
  }
  doc["random_coefficients"] = c.random_coefficients;
  doc["seed"] = c.seed;
  doc["provenance"] = c.provenance;
  doc["config"] = to_json(c.config);
  return doc;
}

nlohmann::ordered_json to_json(const CaseReport& r) {
  nlohmann::ordered_json doc;
  doc["case"] = r.id;
  doc["expected"] = to_string(r.expected);
  doc["passed"] = r.passed();
  doc["trials"] = r.trials;
  doc["passed_trials"] = r.passed_trials;
  if (!r.period_histogram.empty()) {
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [p, n] : r.period_histogram) hist[std::to_string(p)] = n;
    doc["periods"] = std::move(hist);
  }
  doc["failures"] = r.failures;
  if (r.replay) doc["replay"] = to_json(*r.replay);
  doc["provenance"] = r.provenance;
  return doc;
}

}  // namespace maxrec
