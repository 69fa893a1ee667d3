#include "maxrec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxrec/classifier.hpp"
#include "maxrec/config_io.hpp"
#include "maxrec/errors.hpp"
#include "maxrec/harness.hpp"
#include "maxrec/periodicity.hpp"
#include "maxrec/recurrence.hpp"
#include "maxrec/sweep.hpp"

namespace maxrec::cli {
namespace {

using ojson = nlohmann::ordered_json;

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ojson h_report_json(const HReport& h) {
  ojson doc;
  doc["j"] = h.j;
  auto rows = ojson::array();
  for (const auto& b : h.bounds) {
    ojson row;
    row["i"] = b.i;
    row["S_Ai"] = b.sup.to_string();
    row["I_At+1-i"] = b.inf.to_string();
    rows.push_back(std::move(row));
  }
  doc["bounds"] = std::move(rows);
  doc["alpha"] = h.alpha.to_string();
  return doc;
}

ojson classification_json(const Classification& c) {
  ojson doc;
  doc["verdict"] = to_string(c.verdict);
  if (c.gcd) doc["gcd_witness"] = ojson{{"i", c.gcd->i}, {"P", c.gcd->product}};
  if (c.h) doc["h_report"] = h_report_json(*c.h);
  if (c.corollary) {
    ojson w;
    w["case"] = c.corollary->which;
    w["j"] = c.corollary->j;
    auto terms = ojson::array();
    for (const auto& term : c.corollary->terms)
      terms.push_back(ojson{{"delay", term.schedule}, {"k", term.k}});
    w["terms"] = std::move(terms);
    if (c.corollary->middle)
      w["middle"] = ojson{{"delay", c.corollary->middle->schedule}, {"k", c.corollary->middle->k}};
    doc["corollary_witness"] = std::move(w);
  }
  if (!c.failed_checks.empty()) doc["failed_checks"] = c.failed_checks;
  doc["citation"] = c.citation;
  return doc;
}

int cmd_simulate(const std::string& config_path, std::size_t steps, const std::string& mode,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  const EquationConfig cfg = load_config(config_path);
  const Mode m = mode == "log" ? Mode::LogDomain : Mode::Exact;
  const Trajectory tr = simulate(cfg, steps, m);
  Output o(out_path, out);
  *o << "n,value,log10_value,argmax_delay\n";
  const double ln10 = std::log(10.0);
  for (std::int64_t n = cfg.first_computed_index(); n <= tr.last_index(); ++n) {
    *o << n << ',';
    if (m == Mode::Exact) *o << tr.value(n).to_string();
    *o << ',' << std::setprecision(17) << tr.log_value(n) / ln10 << ',' << tr.argmax_delay(n)
       << '\n';
  }
  if (const auto& trunc = tr.truncation()) {
    ojson w;
    w["warning"] = "truncated";
    w["index"] = trunc->index;
    w["bits"] = trunc->bits;
    w["bit_cap"] = trunc->bit_cap;
    w["steps_completed"] = tr.steps();
    err << w.dump() << '\n';
  }
  return kExitOk;
}

int cmd_classify(const std::string& config_path, const std::string& out_path, std::ostream& out) {
  const EquationConfig cfg = load_config(config_path);
  Output o(out_path, out);
  *o << classification_json(classify(cfg)).dump() << '\n';
  return kExitOk;
}

int cmd_detect(const std::string& config_path, std::uint64_t max_steps,
               const std::string& out_path, std::ostream& out) {
  const EquationConfig cfg = load_config(config_path);
  const auto d = detect_cycle(cfg, max_steps);
  ojson doc;
  if (const auto* r = std::get_if<CycleReport>(&d)) {
    doc["found"] = true;
    doc["preperiod"] = r->preperiod;
    doc["period"] = r->period;
    doc["state_period"] = r->state_period;
    doc["verified_horizon"] = r->verified_horizon;
  } else {
    const auto& nf = std::get<CycleNotFound>(d);
    doc["found"] = false;
    doc["steps_explored"] = nf.steps_explored;
    doc["min_value_log10"] = nf.min_value.log() / std::log(10.0);
    doc["max_value_log10"] = nf.max_value.log() / std::log(10.0);
    doc["truncated"] = nf.truncation.has_value();
    doc["note"] = "no repeated state within the budget; not a proof of unboundedness";
  }
  Output o(out_path, out);
  *o << doc.dump() << '\n';
  return kExitOk;
}

int cmd_reproduce(const std::string& suite_name, std::size_t trials,
                  std::optional<std::uint64_t> seed, std::uint64_t max_steps,
                  const std::string& out_path, std::ostream& out, std::ostream& err) {
  auto cases = suite(suite_name);
  if (cases.empty()) {
    err << "unknown suite or case '" << suite_name << "'\n";
    return kExitUsage;
  }
  CaseRunOptions options;
  options.max_steps = max_steps;
  Output o(out_path, out);
  bool all_passed = true;
  for (auto& c : cases) {
    if (seed) c.seed ^= *seed;
    const CaseReport r = run_case(c, trials, options);
    all_passed = all_passed && r.passed();
    *o << to_json(r).dump() << '\n';
  }
  return all_passed ? kExitOk : kExitInvariant;
}

int cmd_sweep(const std::string& template_path, const std::string& grid_path,
              std::uint64_t seed, const SweepOptions& options, std::optional<std::uint64_t> cap,
              const std::string& out_path, std::ostream& out) {
  const EquationConfig base = load_config(template_path);
  GridSpec grid = parse_grid(read_file(grid_path), seed);
  if (cap) grid.max_points = *cap;
  const auto records = run_sweep(base, grid, options);
  Output o(out_path, out);
  for (const auto& r : records) *o << r.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate and classify reciprocal max-type difference equations", "maxrec"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::size_t steps = 100;
  std::string mode = "exact";
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::string suite_name = "all";
  std::string grid_path;
  std::optional<std::uint64_t> max_points;
  unsigned threads = 0;

  auto* sim = app.add_subcommand("simulate", "Iterate the recurrence and write a CSV table");
  sim->add_option("config", config_path, "Config file")->required();
  sim->add_option("--steps", steps, "Number of computed terms")->check(CLI::PositiveNumber);
  sim->add_option("--mode", mode, "exact or log")->check(CLI::IsMember({"exact", "log"}));
  sim->add_option("--out", out_path, "Output path");

  auto* cls = app.add_subcommand("classify", "Apply the boundedness/unboundedness criteria");
  cls->add_option("config", config_path, "Config file")->required();
  cls->add_option("--out", out_path, "Output path");

  auto* det = app.add_subcommand("detect-period", "Search for eventual periodicity");
  det->add_option("config", config_path, "Config file")->required();
  det->add_option("--max-steps", max_steps, "Step budget")->check(CLI::PositiveNumber);
  det->add_option("--out", out_path, "Output path");

  auto* rep = app.add_subcommand("reproduce", "Run the literature and theorem cases");
  rep->add_option("--suite", suite_name, "literature, theorems, all, or a case id");
  rep->add_option("--trials", trials, "Random initial conditions per case")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = rep->add_option("--seed", seed, "Mixed into every case seed");
  rep->add_option("--max-steps", max_steps, "Cycle search budget")->check(CLI::PositiveNumber);
  rep->add_option("--out", out_path, "Output path");

  SweepOptions sweep_options;
  auto* swp = app.add_subcommand("sweep", "Classify and simulate every point of a grid");
  swp->add_option("template", config_path, "Template config")->required();
  swp->add_option("grid", grid_path, "Grid spec")->required();
  swp->add_option("--seed", seed, "Seed for randomly drawn coefficient values");
  swp->add_option("--steps", sweep_options.log_steps, "Log-domain steps for persistence flags")
      ->check(CLI::PositiveNumber);
  swp->add_option("--max-steps", sweep_options.max_steps, "Cycle search budget")
      ->check(CLI::PositiveNumber);
  swp->add_option("--max-points", max_points, "Refuse grids larger than this");
  swp->add_option("--threads", threads, "Worker threads (0: all cores)");
  swp->add_option("--out", out_path, "Output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, steps, mode, out_path, out, err);
    if (cls->parsed()) return cmd_classify(config_path, out_path, out);
    if (det->parsed()) return cmd_detect(config_path, max_steps, out_path, out);
    if (rep->parsed())
      return cmd_reproduce(suite_name, trials,
                           seed_opt->count() > 0 ? std::optional<std::uint64_t>(seed) : std::nullopt,
                           max_steps, out_path, out, err);
    if (swp->parsed()) {
      sweep_options.threads = threads;
      return cmd_sweep(config_path, grid_path, seed, sweep_options, max_points, out_path, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "internal invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitUsage;
}

}  // namespace maxrec::cli
