#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "ttbar/numkit/summation.hpp"
#include "ttbar/verify/seeds.hpp"
#include "ttbar/verify/suites.hpp"

using namespace ttbar;
using namespace ttbar::verify;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("complex number parsing") {
  CHECK(parse_complex("1.1+0.2i") == Complex(1.1, 0.2));
  CHECK(parse_complex("0.5-3i") == Complex(0.5, -3.0));
  CHECK(parse_complex(" 2i ") == Complex(0.0, 2.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("1.25") == Complex(1.25, 0.0));
  CHECK(parse_complex("1e-3+2e+1j") == Complex(1e-3, 20.0));
  CHECK(parse_complex("(1.1,-0.2)") == Complex(1.1, -0.2));
  CHECK_THROWS_AS(parse_complex(""), ConfigError);
  CHECK_THROWS_AS(parse_complex("1+x"), ConfigError);
  CHECK_THROWS_AS(parse_complex("1.1+0.2"), ConfigError);
}

TEST_CASE("grid specification") {
  GridSpec g = GridSpec::parse("0.5:1.5:3,-0.5:0.5:2");
  auto p = g.points();
  REQUIRE(p.size() == 6);
  CHECK(p[0].d1 == 0.5);
  CHECK(p[0].d2 == -0.5);
  CHECK(p[1].d2 == 0.5);
  CHECK(p[2].d1 == 1.0);
  CHECK(p[5].d1 == 1.5);
  CHECK(GridSpec::parse("1:1:1").points().size() == 1);
  CHECK(GridSpec::parse(g.to_string()).points().size() == 6);
  for (const char* bad : {"", "1:2", "1:2:0", "1:2:1.5", "-1:2:3", "2:1:3", "1:2:1", "1:2:3,0:1", "a:b:c"})
    CHECK_THROWS_AS(GridSpec::parse(bad), ConfigError);
}

TEST_CASE("run configuration from flat JSON") {
  RunConfig c = RunConfig::from_json(
      R"({"suite": "theta", "seed": "theta3", "alpha": [0.1, 0.2], "delta": "1.1+0.2i",
          "grid": "0.8:1.2:3", "tol": 1e-13, "quad-order": 64, "precision": "double-double",
          "format": "csv", "threads": 2, "wall-time": false})");
  CHECK(c.suite == "theta");
  CHECK(c.seeds == std::vector<std::string>{"theta3"});
  CHECK(c.alphas.size() == 2);
  CHECK(*c.delta == Complex(1.1, 0.2));
  CHECK(c.grid->n1 == 3);
  CHECK(c.tol == 1e-13);
  CHECK(c.quad_order == 64);
  CHECK(c.precision == numkit::PrecisionMode::double_double);
  CHECK(c.threads == 2);
  CHECK(RunConfig::from_json(c.to_json().dump()).to_json() == c.to_json());
  CHECK(RunConfig::from_json(R"({"delta": [1.0, 0.5]})").delta == Complex(1.0, 0.5));

  CHECK_THROWS_AS(RunConfig::from_json("{"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json("[1]"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"tol": 0})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"tol": "small"})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"alpha": [0.1, -0.2]})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"grid": "1:2:0"})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"suite": "everything"})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"format": "xml"})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(R"({"precision": "quad"})"), ConfigError);
}

TEST_CASE("seed lookup") {
  CHECK(load_holo_seed("theta3").weight == 0.5);
  CHECK(load_real_seed("eta-modulus-2").weight == 2.0);
  CHECK_THROWS_AS(load_seed("theta7"), ConfigError);
  CHECK_THROWS_AS(load_seed("eta-modulus-x"), ConfigError);
  CHECK_THROWS_AS(load_seed("missing.json"), ConfigError);
  CHECK_THROWS_AS(load_holo_seed("ising-Z"), ConfigError);
  CHECK_THROWS_AS(load_real_seed("eta24"), ConfigError);
}

TEST_CASE("task pool merges in task order and contains failures") {
  std::vector<CheckTask> tasks;
  for (int i = 0; i < 7; ++i) {
    tasks.push_back([i] {
      if (i == 3) throw std::runtime_error("boom");
      CheckRecord r;
      r.identity = "t" + std::to_string(i);
      r.residual = i;
      r.threshold = 10;
      r.decide();
      // the worker's default precision follows the run
      if (numkit::CompensatedSum().mode() != numkit::PrecisionMode::double_double) r.residual = 100;
      r.decide();
      return std::vector<CheckRecord>{r};
    });
  }
  for (int threads : {1, 3}) {
    auto recs = run_tasks(tasks, threads, numkit::PrecisionMode::double_double);
    REQUIRE(recs.size() == 7);
    for (int i = 0; i < 7; ++i) {
      if (i == 3) {
        CHECK_FALSE(recs[i].passed);
        CHECK(recs[i].error == "boom");
      } else {
        CHECK(recs[i].identity == "t" + std::to_string(i));
        CHECK(recs[i].passed);
      }
    }
  }
  CHECK(numkit::default_precision() == numkit::PrecisionMode::binary64);
}

TEST_CASE("theta suite passes and serializes deterministically") {
  RunConfig c;
  c.suite = "theta";
  VerificationReport a = run_suite(c);
  CHECK(a.passed());
  CHECK(a.records.size() == 6);
  CHECK_FALSE(a.wall_seconds.has_value());
  c.threads = 3;
  CHECK(run_suite(c).dump() == a.dump());
  CHECK(a.dump().find("\"precision\": \"binary64\"") != std::string::npos);
  c.wall_time = true;
  CHECK(run_suite(c).wall_seconds.has_value());
}

TEST_CASE("thm1 suite on theta3 and window exclusion") {
  RunConfig c;
  c.suite = "thm1";
  c.seeds = {"theta3"};
  VerificationReport r = run_suite(c);
  CHECK(r.passed());
  CHECK(r.records.size() == 30);
  for (const auto& rec : r.records) CHECK(rec.residual < 1e-9);

  c.seeds = {"eta-inverse"};
  c.alphas = {1.0};
  VerificationReport e = run_suite(c);
  CHECK(e.records.empty());
  REQUIRE(e.notes.size() == 1);
  CHECK(e.notes[0].find("empty") != std::string::npos);

  c.alphas = {0.2};
  c.grid = GridSpec::parse("0.5:6:2");
  VerificationReport g = run_suite(c);
  CHECK(g.records.size() == 1);
  CHECK(g.notes.size() == 1);
  CHECK(g.passed());
}

TEST_CASE("evaluator errors become failed records") {
  RunConfig c;
  c.suite = "thm1-limit";
  c.seeds = {"eta-inverse"};
  c.delta = Complex(200.0, 0.0);
  VerificationReport r = run_suite(c);
  REQUIRE(r.records.size() == 1);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.records[0].error.empty());
  CHECK(r.dump().find("\"residual\": null") != std::string::npos);

  c.seeds = {"no-such-seed"};
  CHECK_THROWS_AS(run_suite(c), ConfigError);
  RunConfig bad;
  bad.tol = -1.0;
  CHECK_THROWS_AS(run_suite(bad), ConfigError);
}

TEST_CASE("inverted threshold records") {
  RunConfig c;
  c.suite = "eisenstein-holo";
  VerificationReport r = run_suite(c);
  CHECK(r.passed());
  bool saw_above = false;
  for (const auto& rec : r.records)
    if (rec.comparison == Comparison::above) {
      saw_above = true;
      CHECK(rec.residual > rec.threshold);
    }
  CHECK(saw_above);
}

TEST_CASE("grid scans") {
  RunConfig c;
  c.delta = Complex(1.1, 0.2);
  std::string one = scan_csv(c);
  auto l = lines(one);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "delta1,delta2,alpha,value_re,value_im,residual,tail,status");
  CHECK(l[1].substr(l[1].size() - 3) == ",ok");
  CHECK(scan_csv(c) == one);

  c.delta.reset();
  c.grid = GridSpec::parse("0.5:2:4,0:0.5:2");
  c.alphas = {0.1, 0.2};
  std::string many = scan_csv(c);
  CHECK(lines(many).size() == 17);
  c.threads = 3;
  CHECK(scan_csv(c) == many);

  // eta-inverse at alpha = 0.1: window (0.105, 9.55)
  c.seeds = {"eta-inverse"};
  c.alphas = {0.1};
  c.grid = GridSpec::parse("0.05:12:3");
  auto e = lines(scan_csv(c));
  REQUIRE(e.size() == 4);
  CHECK(e[1].find("domain-violation") != std::string::npos);
  CHECK(e[2].find(",ok") != std::string::npos);
  CHECK(e[3].find("domain-violation") != std::string::npos);

  c.seeds = {"ising-Z"};
  c.grid = GridSpec::parse("1:1:1,0.25:0.25:1");
  auto z = lines(scan_csv(c));
  REQUIRE(z.size() == 2);
  CHECK(z[1].find(",ok") != std::string::npos);
}

TEST_CASE("hagedorn scan marks the far side of the window") {
  RunConfig c;
  auto l = lines(hagedorn_csv(c));
  REQUIRE(l.size() == 17);
  for (int i = 1; i <= 13; ++i) CHECK(l[i].find(",ok") != std::string::npos);
  for (int i = 14; i <= 16; ++i) CHECK(l[i].find("domain-violation") != std::string::npos);
  c.seeds = {"theta3"};
  CHECK_THROWS_AS(hagedorn_csv(c), ConfigError);
}

TEST_CASE("double-double precision runs") {
  RunConfig c;
  c.suite = "jacobi";
  c.precision = numkit::PrecisionMode::double_double;
  VerificationReport r = run_suite(c);
  CHECK(r.passed());
  CHECK(r.precision == "double-double");
}

TEST_CASE("suite names") {
  for (const char* n : {"thm1", "thm1-limit", "kernel-oracle", "thm1a", "zero-inheritance", "torus-invariance",
                        "dgh-oracle", "heat-flow", "maass-flow", "theta", "jacobi", "partition", "hagedorn",
                        "eisenstein-holo", "all", "s-invariance"})
    CHECK(is_suite(n));
  CHECK_FALSE(is_suite("thm9"));
}
