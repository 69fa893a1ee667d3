#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "maxrec/errors.hpp"
#include "maxrec/recurrence.hpp"
#include "support.hpp"

using namespace maxrec;
using maxrec::testing::rand_config;

namespace {

std::vector<std::string> computed(const Trajectory& tr) {
  std::vector<std::string> out;
  for (std::int64_t n = tr.config().first_computed_index(); n <= tr.last_index(); ++n)
    out.push_back(tr.value(n).to_string());
  return out;
}

}  // namespace

TEST_CASE("coefficient_at indexes periodically") {
  CHECK(coefficient_at({1, rationals({"1/2", "3"})}, 5).to_string() == "3/1");
  CHECK(coefficient_at({1, rationals({"7"})}, 1'000'000).to_string() == "7/1");
  CHECK(coefficient_at({1, rationals({"3", "1/3", "1"})}, 4).to_string() == "1/3");
  CHECK(coefficient_at({1, rationals({"3", "1/3", "1"})}, -1).to_string() == "1/1");
}

TEST_CASE("step evaluates the max and records the smallest argmax") {
  const auto ones = make_config({rationals({"1"}), rationals({"1"})}, rationals({"1", "1"}));
  const auto w = rationals({"1", "1"});
  auto r = step(ones, w, 1);
  CHECK(r.value.to_string() == "1/1");
  CHECK(r.argmax_delay == 1);

  const auto eq2 = make_config({rationals({"1"}), rationals({"2"})}, rationals({"1", "1"}));
  r = step(eq2, w, 1);
  CHECK(r.value.to_string() == "2/1");
  CHECK(r.argmax_delay == 2);

  // window (x_{-1}, x_0) = (2, 3): max{1/x_0, 1/x_{-1}} = max{1/3, 1/2}
  r = step(ones, rationals({"2", "3"}), 1);
  CHECK(r.value.to_string() == "1/2");
  CHECK(r.argmax_delay == 2);

  CHECK_THROWS_AS(step(ones, rationals({"1"}), 1), ConfigError);
}

TEST_CASE("simulate reproduces hand iterations") {
  const auto eq2 = make_config({rationals({"1"}), rationals({"2"})}, rationals({"1", "1"}));
  CHECK(computed(simulate(eq2, 6, Mode::Exact)) ==
        std::vector<std::string>{"2/1", "2/1", "1/1", "1/1", "2/1", "2/1"});

  const auto t1 = make_config({rationals({"1", "4"})}, rationals({"1"}));
  const auto tr = simulate(t1, 4, Mode::Exact);
  CHECK(computed(tr) == std::vector<std::string>{"1/1", "4/1", "1/4", "16/1"});
  CHECK(tr.first_index() == 0);
  CHECK(tr.config().first_computed_index() == 1);
}

TEST_CASE("one step in log mode matches the exact log") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto cfg = rand_config(rng, {1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 4});
    const auto exact = simulate(cfg, 1, Mode::Exact);
    const auto logs = simulate(cfg, 1, Mode::LogDomain);
    const std::int64_t n = cfg.first_computed_index();
    CHECK(std::abs(exact.value(n).log() - logs.log_value(n)) < 1e-9);
  }
}

TEST_CASE("delay subsets simulate against the naive oracle") {
  std::mt19937_64 rng(17);
  for (const auto& delays : {std::vector<int>{1, 3}, std::vector<int>{2, 3}, std::vector<int>{3}}) {
    std::vector<std::vector<PositiveRational>> coefs;
    for (std::size_t k = 0; k < delays.size(); ++k)
      coefs.push_back(testing::rand_values(rng, 1 + k * 2));
    const auto cfg = make_config(delays, coefs, testing::rand_values(rng, 3));
    const auto tr = simulate(cfg, 300, Mode::Exact);
    const auto oracle = testing::naive_simulate(cfg, 300);
    for (const auto& [n, v] : oracle) CHECK(tr.value(n).mpq() == v);
  }
}

TEST_CASE("index_base shifts the labels but keeps coefficient index n-1") {
  auto cfg = make_config({rationals({"1", "4"})}, rationals({"1"}));
  cfg.index_base = -1;  // x_{-1} initial, x_0 = A_{-1} / x_{-1} = A_1
  const auto tr = simulate(cfg, 3, Mode::Exact);
  CHECK(tr.value(0).to_string() == "4/1");
  const auto oracle = testing::naive_simulate(cfg, 3);
  for (const auto& [n, v] : oracle) CHECK(tr.value(n).mpq() == v);
}

TEST_CASE("bit cap truncation is reported, never silent") {
  const auto cfg = make_config({rationals({"1", "4"})}, rationals({"1"}));
  SimulationOptions opts;
  opts.bit_cap = 64;
  const auto tr = simulate(cfg, 1000, Mode::Exact, opts);
  REQUIRE(tr.truncation().has_value());
  CHECK(tr.truncation()->bits > 64);
  CHECK(tr.truncation()->index == tr.last_index() + 1);
  CHECK(tr.steps() < 1000);
  for (const auto v : tr.exact_values()) CHECK(v.bit_size() <= 64);
}

TEST_CASE("property: positivity and max-equality certificate") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const std::size_t t = 1 + rng() % 4;
    std::vector<std::size_t> periods(t);
    for (auto& p : periods) p = 1 + rng() % 5;
    const auto cfg = rand_config(rng, periods);
    const auto tr = simulate(cfg, 60, Mode::Exact);
    for (std::int64_t n = cfg.first_computed_index(); n <= tr.last_index(); ++n) {
      REQUIRE(sgn(tr.value(n).mpq()) > 0);
      const int d = tr.argmax_delay(n);
      CHECK(tr.value(n) * tr.value(n - d) == coefficient_at(cfg.schedule_for(d), n - 1));
      for (const int k : cfg.delays) {
        CHECK(tr.value(n) * tr.value(n - k) >= coefficient_at(cfg.schedule_for(k), n - 1));
        if (k < d) CHECK(tr.value(n) * tr.value(n - k) > coefficient_at(cfg.schedule_for(k), n - 1));
      }
    }
  }
}

TEST_CASE("property: homogeneity with c = 9/4, s = 3/2") {
  std::mt19937_64 rng(29);
  const auto c = PositiveRational(9, 4);
  const auto s = PositiveRational(3, 2);
  for (int i = 0; i < 100; ++i) {
    auto cfg = rand_config(rng, {1 + rng() % 3, 1 + rng() % 3});
    auto scaled = cfg;
    for (auto& sch : scaled.schedules)
      for (auto& v : sch.values) v *= c;
    for (auto& x : scaled.initial) x *= s;
    const auto a = simulate(cfg, 80, Mode::Exact);
    const auto b = simulate(scaled, 80, Mode::Exact);
    for (std::int64_t n = a.first_index(); n <= a.last_index(); ++n) {
      CHECK(b.value(n) == a.value(n) * s);
      CHECK(b.argmax_delay(n) == a.argmax_delay(n));
    }
  }
}
