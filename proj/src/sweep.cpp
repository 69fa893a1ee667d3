#include "maxrec/sweep.hpp"

#include <atomic>
#include <mutex>
#include <random>
#include <thread>
#include <variant>

#include "maxrec/classifier.hpp"
#include "maxrec/config_io.hpp"
#include "maxrec/empirical.hpp"
#include "maxrec/errors.hpp"
#include "maxrec/harness.hpp"
#include "maxrec/periodicity.hpp"

namespace maxrec {
namespace {

using nlohmann::json;

std::int64_t int_field(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw ConfigError("grid field '" + where + "': expected a positive integer");
  return v.get<std::int64_t>();
}

std::vector<PositiveRational> rational_list(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty())
    throw ConfigError("grid field '" + where + "': expected a nonempty list of rationals");
  std::vector<PositiveRational> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string())
      throw ConfigError("grid field '" + where + "[" + std::to_string(i) +
                        "]': expected a rational string");
    out.push_back(PositiveRational::parse(v[i].get<std::string>()));
  }
  return out;
}

}  // namespace

std::uint64_t GridSpec::point_count() const {
  if (axes.empty()) return 0;
  std::uint64_t n = 1;
  for (const auto& a : axes) {
    if (a.options.empty()) return 0;
    if (n > (std::uint64_t{1} << 62) / a.options.size()) return std::uint64_t{1} << 62;
    n *= a.options.size();
  }
  return n;
}

GridSpec parse_grid(std::string_view text, std::uint64_t seed) {
  const json doc = parse_json_document(text, "grid");
  if (!doc.is_object()) throw ConfigError("grid document must be an object");
  GridSpec grid;
  if (doc.contains("max_points"))
    grid.max_points = static_cast<std::uint64_t>(int_field(doc.at("max_points"), "max_points"));
  if (!doc.contains("axes") || !doc.at("axes").is_array())
    throw ConfigError("grid field 'axes': expected a list");
  std::mt19937_64 rng(seed);
  const json& axes = doc.at("axes");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string where = "axes[" + std::to_string(i) + "]";
    const json& a = axes[i];
    if (!a.is_object() || !a.contains("delay"))
      throw ConfigError("grid field '" + where + ".delay': missing");
    GridAxis axis;
    axis.delay = static_cast<int>(int_field(a.at("delay"), where + ".delay"));
    if (a.contains("periods")) {
      const json& ps = a.at("periods");
      if (!ps.is_array()) throw ConfigError("grid field '" + where + ".periods': expected a list");
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const auto p = int_field(ps[k], where + ".periods[" + std::to_string(k) + "]");
        CoefficientSchedule s{axis.delay, {}};
        for (std::int64_t v = 0; v < p; ++v) s.values.push_back(random_rational(rng, 100));
        axis.options.push_back(std::move(s));
      }
    } else if (a.contains("schedules")) {
      const json& ss = a.at("schedules");
      if (!ss.is_array())
        throw ConfigError("grid field '" + where + ".schedules': expected a list");
      for (std::size_t k = 0; k < ss.size(); ++k)
        axis.options.push_back(CoefficientSchedule{
            axis.delay, rational_list(ss[k], where + ".schedules[" + std::to_string(k) + "]")});
    } else if (a.contains("choices")) {
      if (!a.contains("period")) throw ConfigError("grid field '" + where + ".period': missing");
      const auto p = static_cast<std::size_t>(int_field(a.at("period"), where + ".period"));
      const auto choices = rational_list(a.at("choices"), where + ".choices");
      std::uint64_t count = 1;
      for (std::size_t k = 0; k < p; ++k) {
        count *= choices.size();
        if (count > grid.max_points)
          throw ConfigError("grid axis " + where + " exceeds the point cap of " +
                            std::to_string(grid.max_points));
      }
      for (std::uint64_t code = 0; code < count; ++code) {
        CoefficientSchedule s{axis.delay, std::vector<PositiveRational>(p)};
        std::uint64_t c = code;
        for (std::size_t k = p; k-- > 0;) {
          s.values[k] = choices[c % choices.size()];
          c /= choices.size();
        }
        axis.options.push_back(std::move(s));
      }
    } else {
      throw ConfigError("grid field '" + where +
                        "': expected one of 'periods', 'schedules', 'choices'");
    }
    grid.axes.push_back(std::move(axis));
  }
  return grid;
}

std::vector<nlohmann::ordered_json> run_sweep(const EquationConfig& base, const GridSpec& grid,
                                              const SweepOptions& options) {
  const std::uint64_t points = grid.point_count();
  if (points > grid.max_points)
    throw ConfigError("grid has " + std::to_string(points) + " points, above the cap of " +
                      std::to_string(grid.max_points));
  for (const auto& a : grid.axes) {
    bool listed = false;
    for (const int d : base.delays) listed = listed || d == a.delay;
    if (!listed)
      throw ConfigError("grid axis for delay " + std::to_string(a.delay) +
                        " which the template does not list");
  }

  std::vector<nlohmann::ordered_json> records(points);
  auto evaluate = [&](std::uint64_t index) {
    EquationConfig cfg = base;
    std::uint64_t code = index;
    std::vector<std::size_t> choice(grid.axes.size());
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      choice[a] = code % grid.axes[a].options.size();
      code /= grid.axes[a].options.size();
    }
    for (std::size_t a = 0; a < grid.axes.size(); ++a)
      for (auto& s : cfg.schedules)
        if (s.delay == grid.axes[a].delay) s = grid.axes[a].options[choice[a]];

    nlohmann::ordered_json rec;
    rec["point"] = index;
    nlohmann::ordered_json periods = nlohmann::ordered_json::object();
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& s : cfg.schedules) {
      periods[std::to_string(s.delay)] = s.period();
      auto vs = nlohmann::ordered_json::array();
      for (const auto& v : s.values) vs.push_back(v.to_string());
      values[std::to_string(s.delay)] = std::move(vs);
    }
    rec["periods"] = std::move(periods);
    rec["values"] = std::move(values);
    const auto verdict = classify(cfg);
    rec["verdict"] = to_string(verdict.verdict);
    const auto cycle = detect_cycle(cfg, options.max_steps);
    if (const auto* r = std::get_if<CycleReport>(&cycle)) {
      rec["detected_period"] = r->period;
      rec["preperiod"] = r->preperiod;
    } else {
      rec["detected_period"] = nullptr;
      rec["preperiod"] = nullptr;
    }
    const auto persistence = persistence_report(simulate(cfg, options.log_steps, Mode::LogDomain));
    rec["divergence_flag"] = persistence.divergence_flag;
    rec["vanishing_flag"] = persistence.vanishing_flag;
    records[index] = std::move(rec);
  };

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, points)));
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < threads && points > 0; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < points; i = next++) {
        try {
          evaluate(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace maxrec
