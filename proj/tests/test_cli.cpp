#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclorec/config.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/run.hpp"

using namespace cyclorec;
namespace fs = std::filesystem;

namespace {

const char* kL1 = R"({
  "field": {"conductor": 1},
  "sequence": {"f": [[1], [1]], "alpha": [[3, 1], [1, 1]]},
  "job": {"zeta": {"m": 1, "j": 0}, "n_range": [0, 3]}
})";

std::string with_job(const std::string& job) {
  return R"({"field": {"conductor": 1}, "sequence": {"f": [[1], [1]], "alpha": [[3, 1], [1, 1]]}, "job": )" + job +
         "}";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("cyclorec_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  auto p = dir / "job.json";
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CYCLOREC_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parses the L1 example") {
  const auto cfg = parse_config_text(kL1);
  const auto L = cfg.sequence();
  CHECK(L.order() == 2);
  CHECK(L.degree_bound() == 1);
  CHECK(cfg.range() == NRange{0, 3});
  CHECK(cfg.precision == 128);
  CHECK(cfg.workers == 1);
}

TEST_CASE("config rejects bad documents") {
  CHECK_THROWS_AS(parse_config_text(R"({"field": {"conductor": 1}, "sequence": {"f": [[1], [1]], "alpha": [[3, 1], [0]]}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_job(R"({"zeta": {"m": 1, "j": 0}, "colour": 3})")), ParseError);
  CHECK_THROWS_AS(parse_config_text(R"({"field": {"conductor": 1}, "sequence": )"), ParseError);
  CHECK_THROWS_AS(parse_config_text(with_job(R"({"n_range": [5, 2]})")), ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_job(R"({"S": [4]})")), ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_job(R"({"eps": 0})")), ValidationError);

  try {
    parse_config_text("{\n  \"field\": {\"conductor\": 1},\n  \"sequence\": [\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("config normalizes roots of unity") {
  const auto cfg = parse_config_text(with_job(R"({"zeta": {"m": 4, "j": 2}})"));
  REQUIRE(cfg.zeta);
  CHECK(cfg.zeta->order == 2);
  CHECK(cfg.zeta->exponent == 1);
}

TEST_CASE("config round trips through serialize") {
  const auto cfg = parse_config_text(with_job(R"({
    "zeta": {"m": 4, "j": 1}, "n_range": [1, 30], "S": [2, {"p": 5, "index": 1}],
    "r": 3, "eps": 0.25, "M_max": 12, "D_max": 4, "precision": 200,
    "height_cap": "123456789012345678901234567890", "matveev_C": "1/3", "budget_ms": 500,
    "workers": 2, "allow_zero": true, "allow_negative": false})"));
  CHECK(*cfg.eps == mpq_class(1, 4));
  const auto again = parse_config_text(serialize(cfg));
  CHECK(again == cfg);
  CHECK(serialize(again) == serialize(cfg));
}

TEST_CASE("run terms on L1 at 1") {
  const auto dir = scratch("terms");
  const auto res = run(Command::Terms, parse_config_text(kL1), dir);
  REQUIRE(res.exit_code == 0);
  CHECK(slurp(dir / "terms.csv") == "#v1 n,c0\n0,2\n1,6\n2,20\n3,72\n");
}

TEST_CASE("run factor on L1 at i") {
  const auto dir = scratch("factor");
  const auto cfg = parse_config_text(with_job(R"({"zeta": {"m": 4, "j": 1}, "n_range": [2, 2]})"));
  const auto res = run(Command::Factor, cfg, dir);
  REQUIRE(res.exit_code == 0);
  const auto text = slurp(dir / "factors.csv");
  CHECK(text.find("\n2,128,2,2,") != std::string::npos);
}

TEST_CASE("run scan reports the tie at i") {
  const auto dir = scratch("scan");
  const auto cfg = parse_config_text(
      R"({"field": {"conductor": 1}, "sequence": {"f": [[1], [1]], "alpha": [[2, 1], [1, 2]]}, "job": {"M_max": 4}})");
  const auto res = run(Command::Scan, cfg, dir);
  REQUIRE(res.exit_code == 0);
  CHECK(slurp(dir / "scan.csv") == "#v1 m,j,tie_size\n4,1,2\n4,3,2\n");
}

TEST_CASE("run maps missing inputs to usage errors") {
  const auto dir = scratch("missing");
  const auto cfg = parse_config_text(with_job(R"({"zeta": {"m": 1, "j": 0}, "n_range": [1, 4]})"));
  CHECK(run(Command::Spart, cfg, dir).exit_code == 1);
  CHECK(run(Command::Solve, cfg, dir).exit_code == 1);
}

TEST_CASE("executable exit codes") {
  const auto dir = scratch("exit");
  const auto ok = write_config(dir, kL1);
  CHECK(run_cli("terms --config " + ok.string() + " --out " + (dir / "a").string()) == 0);
  CHECK(run_cli("nonsense --config " + ok.string()) == 1);
  CHECK(run_cli("terms --config " + (dir / "absent.json").string()) == 1);
  CHECK(run_cli("terms --config " + ok.string() + " --precision 8") == 1);

  const auto tie = dir / "tie.json";
  std::ofstream(tie) << R"({"field": {"conductor": 4}, "sequence": {"f": [[1], [1]], "alpha": [[2, 1], [1, 2]]},
    "job": {"zeta": {"m": 4, "j": 1}, "n_range": [1, 10]}})";
  CHECK(run_cli("bounds --config " + tie.string() + " --out " + (dir / "b").string()) == 2);

  const auto capped = dir / "capped.json";
  std::ofstream(capped) << with_job(R"({"zeta": {"m": 1, "j": 0}, "n_range": [3, 12], "S": [2, 3], "r": 2,
    "eps": "1/2", "height_cap": 1000})");
  const auto out = dir / "c";
  CHECK(run_cli("solve --config " + capped.string() + " --out " + out.string()) == 3);
  CHECK(fs::exists(out / "solutions.csv"));
  CHECK(slurp(out / "solve.log").find("skip n=") != std::string::npos);
}

TEST_CASE("artifacts do not depend on the worker count") {
  const auto dir = scratch("workers");
  const auto cfg_path = write_config(dir, with_job(R"({"zeta": {"m": 1, "j": 0}, "n_range": [1, 25], "S": [2, 3],
    "r": 2, "eps": 1, "matveev_C": "1e11", "height_cap": "1000000000000"})"));
  for (const std::string cmd : {"factor", "bounds", "solve"}) {
    const auto one = dir / (cmd + "1"), many = dir / (cmd + "4");
    const int a = run_cli(cmd + " --config " + cfg_path.string() + " --workers 1 --out " + one.string());
    const int b = run_cli(cmd + " --config " + cfg_path.string() + " --workers 4 --out " + many.string());
    CHECK(a == b);
    for (const auto& entry : fs::directory_iterator(one)) {
      INFO(cmd << " " << entry.path().filename());
      CHECK(slurp(entry.path()) == slurp(many / entry.path().filename()));
    }
  }
}
