#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "maxrec/cli.hpp"

using namespace maxrec;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("maxrec_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<json> records(const std::string& text) {
  std::vector<json> out;
  for (const auto& l : lines(text)) out.push_back(json::parse(l));
  return out;
}

std::string two_delay(const std::string& a1, const std::string& a2, const std::string& init) {
  return R"({"t": 2, "coefficients": [{"delay": 1, "values": [)" + a1 +
         R"(]}, {"delay": 2, "values": [)" + a2 + R"(]}], "initial": [)" + init + "]}";
}

const std::string kOnes = two_delay(R"("1")", R"("1")", R"("1", "1")");
const std::string kEq2 = two_delay(R"("1")", R"("2")", R"("1", "1")");

}  // namespace

TEST_CASE("simulate: all-ones system") {
  TempDir dir;
  const auto cfg = dir.write("ones.json", kOnes);
  const auto r = run_cli({"simulate", cfg, "--steps", "5"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "n,value,log10_value,argmax_delay");
  for (std::size_t k = 1; k < rows.size(); ++k)
    CHECK(rows[k] == std::to_string(k) + ",1/1,0,1");
}

TEST_CASE("simulate: constant-coefficient two-delay equation") {
  TempDir dir;
  const auto cfg = dir.write("eq2.json", kEq2);
  const auto out = dir.path("eq2.csv");
  const auto r = run_cli({"simulate", cfg, "--steps", "8", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = lines(text.str());
  REQUIRE(rows.size() == 9);
  const std::vector<std::string> values{"2/1", "2/1", "1/1", "1/1", "2/1", "2/1", "1/1", "1/1"};
  const std::vector<std::string> argmax{"2", "2", "2", "1", "2", "2", "2", "1"};
  for (std::size_t k = 0; k < values.size(); ++k) {
    CAPTURE(rows[k + 1]);
    std::vector<std::string> cols;
    std::istringstream row(rows[k + 1]);
    for (std::string c; std::getline(row, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 4);
    CHECK(cols[0] == std::to_string(k + 1));
    CHECK(cols[1] == values[k]);
    CHECK(cols[3] == argmax[k]);
  }
}

TEST_CASE("simulate: log mode leaves the exact column empty") {
  TempDir dir;
  const auto cfg = dir.write("eq2.json", kEq2);
  const auto r = run_cli({"simulate", cfg, "--steps", "3", "--mode", "log"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].rfind("1,,0.30102999566398", 0) == 0);
}

TEST_CASE("simulate: missing delay schedule is a usage error naming the delay") {
  TempDir dir;
  const auto cfg = dir.write("bad.json", R"({"t": 2, "coefficients": [{"delay": 1, "values": ["1"]}],
    "initial": ["1", "1"]})");
  const auto r = run_cli({"simulate", cfg, "--steps", "5"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("delay 2") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"simulate"}).code == 1);
  CHECK(run_cli({"simulate", "/nonexistent/config.json"}).code == 1);
  TempDir dir;
  const auto cfg = dir.write("ones.json", kOnes);
  CHECK(run_cli({"simulate", cfg, "--mode", "fast"}).code == 1);
  CHECK(run_cli({"simulate", cfg, "--steps", "0"}).code == 1);
  CHECK(run_cli({"reproduce", "--suite", "nope"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("simulate: no truncation warning below the bit cap") {
  TempDir dir;
  const auto cfg = dir.write("t1.json",
                             R"({"t": 1, "coefficients": [{"delay": 1, "values": ["1", "4"]}],
    "initial": ["3/7"]})");
  // Terms grow by two bits per step; a 10^6-bit cap is far away at 100 steps.
  const auto r = run_cli({"simulate", cfg, "--steps", "100"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
}

TEST_CASE("classify emits the verdict and witnesses") {
  TempDir dir;
  auto r = run_cli({"classify", dir.write("ones.json", kOnes)});
  REQUIRE(r.code == 0);
  auto doc = records(r.out).at(0);
  CHECK(doc["verdict"] == "Bounded");
  CHECK(doc["gcd_witness"]["i"] == 1);
  CHECK(doc["gcd_witness"]["P"] == 1);

  r = run_cli({"classify", dir.write("t1.json", R"({"t": 1,
    "coefficients": [{"delay": 1, "values": ["1", "4"]}], "initial": ["1"]})")});
  REQUIRE(r.code == 0);
  doc = records(r.out).at(0);
  CHECK(doc["verdict"] == "Unbounded");
  CHECK(doc["h_report"]["j"] == 2);
  CHECK(doc["h_report"]["alpha"] == "1/4");

  r = run_cli({"classify", dir.write("grove.json", two_delay(R"("1")", R"("3", "1/3", "1")",
                                                              R"("1", "1")"))});
  REQUIRE(r.code == 0);
  doc = records(r.out).at(0);
  CHECK(doc["verdict"] == "Unbounded");
  CHECK(doc["h_report"]["alpha"] == "1/3");

  r = run_cli({"classify", dir.write("partial.json", R"({"t": 3, "delays": [1, 3],
    "coefficients": [{"delay": 1, "values": ["1"]}, {"delay": 3, "values": ["2", "1/2"]}],
    "initial": ["1", "1", "1"]})")});
  REQUIRE(r.code == 0);
  CHECK(records(r.out).at(0)["verdict"] == "NotApplicable");

  // t=2 with periods (3, 3): gcd(3, 9) = 3, and (H) fails for a flat schedule
  r = run_cli({"classify", dir.write("unknown.json",
                                     two_delay(R"("1", "1", "1")", R"("1", "1", "1")",
                                               R"("1", "1")"))});
  REQUIRE(r.code == 0);
  doc = records(r.out).at(0);
  CHECK(doc["verdict"] == "Unknown");
  CHECK(doc["failed_checks"].size() == 3);
}

TEST_CASE("detect-period") {
  TempDir dir;
  auto r = run_cli({"detect-period", dir.write("eq2.json", kEq2)});
  REQUIRE(r.code == 0);
  auto doc = records(r.out).at(0);
  CHECK(doc["found"] == true);
  CHECK(doc["period"] == 4);

  r = run_cli({"detect-period", dir.write("t1.json", R"({"t": 1,
    "coefficients": [{"delay": 1, "values": ["1", "4"]}], "initial": ["1"]})"),
               "--max-steps", "500"});
  REQUIRE(r.code == 0);
  doc = records(r.out).at(0);
  CHECK(doc["found"] == false);
  CHECK(doc["steps_explored"] >= 500);
}

TEST_CASE("reproduce a single case") {
  const auto r = run_cli({"reproduce", "--suite", "BGLM-p2-eq1", "--trials", "10"});
  REQUIRE(r.code == 0);
  const auto recs = records(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["case"] == "BGLM-p2-eq1");
  CHECK(recs[0]["passed"] == true);
  CHECK(recs[0]["passed_trials"] == 10);
  const auto again = run_cli({"reproduce", "--suite", "BGLM-p2-eq1", "--trials", "10"});
  CHECK(again.out == r.out);
  const auto reseeded =
      run_cli({"reproduce", "--suite", "BGLM-p2-eq1", "--trials", "10", "--seed", "5"});
  CHECK(reseeded.code == 0);
}

TEST_CASE("sweep: 3x3 period grid matches the gcd enumeration") {
  TempDir dir;
  const auto tmpl = dir.write("tmpl.json", two_delay(R"("1")", R"("1")", R"("3/2", "5/7")"));
  const auto grid = dir.write("grid.json", R"({"axes": [{"delay": 1, "periods": [1, 2, 3]},
    {"delay": 2, "periods": [1, 2, 3]}]})");
  const auto r = run_cli({"sweep", tmpl, grid, "--seed", "4", "--steps", "2000"});
  REQUIRE(r.code == 0);
  const auto recs = records(r.out);
  REQUIRE(recs.size() == 9);
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& rec = recs[k];
    CAPTURE(rec.dump());
    CHECK(rec["point"] == k);
    const int p1 = rec["periods"]["1"];
    const int p2 = rec["periods"]["2"];
    CHECK(p1 == 1 + static_cast<int>(k / 3));
    CHECK(p2 == 1 + static_cast<int>(k % 3));
    // oracle: the only i in {1, 2} both use p1 * p2
    CHECK((rec["verdict"] == "Bounded") == ((p1 * p2) % 3 != 0));
  }
}

TEST_CASE("sweep: choices over the period-2 second coefficient") {
  TempDir dir;
  const auto tmpl = dir.write("tmpl.json", two_delay(R"("1")", R"("1")", R"("3/2", "5/7")"));
  const auto grid =
      dir.write("grid.json", R"({"axes": [{"delay": 2, "period": 2, "choices": ["1/2", "2"]}]})");
  const auto r = run_cli({"sweep", tmpl, grid, "--steps", "500"});
  REQUIRE(r.code == 0);
  const auto recs = records(r.out);
  REQUIRE(recs.size() == 4);
  // product A0 A1 = 1/4, 1, 1, 4 -> periods dividing 2, 6, 6, 4
  const std::vector<int> expected{2, 6, 6, 4};
  for (std::size_t k = 0; k < 4; ++k) {
    CAPTURE(recs[k].dump());
    REQUIRE(recs[k]["detected_period"].is_number());
    CHECK(expected[k] % recs[k]["detected_period"].get<int>() == 0);
    CHECK(recs[k]["verdict"] == "Bounded");
  }
  CHECK(recs[0]["values"]["2"] == json::array({"1/2", "1/2"}));
  CHECK(recs[1]["values"]["2"] == json::array({"1/2", "2/1"}));
  CHECK(recs[3]["detected_period"] == 4);
}

TEST_CASE("sweep: empty grid and the point cap") {
  TempDir dir;
  const auto tmpl = dir.write("tmpl.json", kOnes);
  auto r = run_cli({"sweep", tmpl, dir.write("empty.json", R"({"axes": []})")});
  CHECK(r.code == 0);
  CHECK(r.out.empty());

  const auto big = dir.write("big.json", R"({"axes": [{"delay": 1, "periods": [1, 2, 3, 4]},
    {"delay": 2, "periods": [1, 2, 3, 4]}]})");
  r = run_cli({"sweep", tmpl, big, "--max-points", "10"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("16") != std::string::npos);

  r = run_cli({"sweep", tmpl, dir.write("bad.json", R"({"axes": [{"delay": 5, "periods": [1]}]})")});
  CHECK(r.code == 1);
}

TEST_CASE("output is byte-identical for identical input") {
  TempDir dir;
  const auto tmpl = dir.write("tmpl.json", two_delay(R"("1")", R"("1")", R"("3/2", "5/7")"));
  const auto grid = dir.write("grid.json", R"({"axes": [{"delay": 1, "periods": [1, 2, 4]},
    {"delay": 2, "periods": [1, 2]}]})");
  const auto a = run_cli({"sweep", tmpl, grid, "--seed", "9", "--threads", "4", "--steps", "500"});
  const auto b = run_cli({"sweep", tmpl, grid, "--seed", "9", "--threads", "1", "--steps", "500"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto s1 = run_cli({"simulate", tmpl, "--steps", "50"});
  const auto s2 = run_cli({"simulate", tmpl, "--steps", "50"});
  CHECK(s1.out == s2.out);
}

TEST_CASE("the installed executable reports exit codes") {
  TempDir dir;
  const auto good = dir.write("ones.json", kOnes);
  const auto bad = dir.write("bad.json", "{\"t\": 2,");
  const std::string exe = MAXREC_CLI_PATH;
  auto status = [&](const std::string& args) {
    const std::string cmd = "\"" + exe + "\" " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("simulate " + good + " --steps 3") == 0);
  CHECK(status("simulate " + bad) == 1);
  CHECK(status("classify " + good) == 0);
}
