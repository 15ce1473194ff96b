#include "zslab/config.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "zslab/errors.hpp"
#include "zslab/suites.hpp"

using namespace zslab;

namespace {

std::string minimal_config() {
  return R"([semigroup P]
kind = nk
rank = 1

[group G]
kind = trivial

[zs D]
semigroup = P
group = G
builtin = trivial

[system X]
builtin = trivial
zs = D

[windows]
radius_p = 2
radius_g = 1
fock_ball = 2

[run]
suites = all
)";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string strip_wall(std::string json) {
  auto pos = json.find("\"wall_ms\"");
  REQUIRE(pos != std::string::npos);
  auto end = json.find('\n', pos);
  json.erase(pos, end - pos);
  return json;
}

}  // namespace

TEST_CASE("minimal config parses and passes") {
  RunConfig cfg = parse_config(minimal_config());
  CHECK(cfg.radius_p == 2);
  CHECK(cfg.suites.size() == all_suites().size());
  VerificationReport report = run_suites(cfg);
  CHECK(report.all_pass);
}

TEST_CASE("unknown keys are rejected with a line number") {
  std::string text = minimal_config();
  text += "\n[run]\nbogus = 1\n";
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  std::string bad = "[semigroup P]\nkind = nk\nrank = 1\ncolour = red\n";
  try {
    parse_config(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("colour") != std::string::npos);
    CHECK(msg.find("line 4") != std::string::npos);
  }
}

TEST_CASE("undefined references are named") {
  std::string text = R"([semigroup P]
kind = nk
rank = 1

[zs D]
semigroup = P
group = H
builtin = trivial
)";
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'H'") != std::string::npos);
  }
}

TEST_CASE("non-positive windows are rejected") {
  std::string text = minimal_config();
  auto pos = text.find("radius_p = 2");
  text.replace(pos, 12, "radius_p = 0");
  CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("unknown suites are rejected") {
  std::string text = minimal_config();
  auto pos = text.find("suites = all");
  text.replace(pos, 12, "suites = [bogus]");
  CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("parser rejects malformed text with line numbers") {
  CHECK_THROWS_AS(parse_config("[semigroup P\nkind = nk\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("kind = nk\n"), ConfigError);  // no section
  CHECK_THROWS_AS(parse_config("[semigroup P]\nkind\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[semigroup P]\nkind = [1, 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[semigroup P]\nalphabet = \"01\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[semigroup P]\nkind = nk\nkind = nk\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[mystery M]\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("[semigroup P]\nkind = nk\n[semigroup P]\nkind = nk\n"),
      ConfigError);
  // Quoted '#' is content, trailing '#' is a comment.
  RunConfig cfg = parse_config(
      "[semigroup P]\nkind = free_monoid\nalphabet = \"#1\"  # comment\n");
  CHECK(cfg.sections[0].at("alphabet").as_name() == "#1");
}

TEST_CASE("complex literals") {
  ConfigValue v;
  v.token = "1.5";
  CHECK(v.as_complex() == Complex(1.5, 0));
  v.token = "2i";
  CHECK(v.as_complex() == Complex(0, 2));
  v.token = "1+2i";
  CHECK(v.as_complex() == Complex(1, 2));
  v.token = "-0.5-1i";
  CHECK(v.as_complex() == Complex(-0.5, -1));
  v.token = "i";
  CHECK(v.as_complex() == Complex(0, 1));
  v.token = "xyz";
  CHECK_THROWS_AS(v.as_complex(), ConfigError);
}

TEST_CASE("shipped configs parse") {
  for (const char* name :
       {"odometer_trivial.cfg", "selfsimilar_swap.cfg", "diag_swap.cfg",
        "nk2_swap.cfg", "odometer_tampered.cfg", "kgraph_flip2.cfg"}) {
    std::string path = std::string(ZSLAB_SOURCE_DIR) + "/configs/" + name;
    CHECK_NOTHROW(parse_config(read_file(path)));
  }
}

TEST_CASE("reports are reproducible minus wall time") {
  std::string path = std::string(ZSLAB_SOURCE_DIR) + "/configs/nk2_swap.cfg";
  RunConfig cfg = parse_config(read_file(path));
  VerificationReport a = run_suites(cfg);
  VerificationReport b = run_suites(cfg);
  CHECK(a.all_pass);
  CHECK(strip_wall(a.to_json()) == strip_wall(b.to_json()));

  VerificationReport round = VerificationReport::from_json(a.to_json());
  CHECK(strip_wall(round.to_json()) == strip_wall(a.to_json()));
}

TEST_CASE("table-kind structures are reachable from configs") {
  std::string text = R"([semigroup P]
kind = table
elements = [e, a]
products = [ [e, a], [a, e] ]
identity = e

[group G]
kind = table
elements = [e, g]
products = [ [e, g], [g, e] ]
identity = e

[zs D]
semigroup = P
group = G
builtin = trivial

[system X]
builtin = trivial
zs = D

[windows]
radius_p = 1
radius_g = 1
fock_ball = 1

[run]
suites = [zs-axioms, action-axioms, bowtie, toeplitz, covariance]
)";
  RunConfig cfg = parse_config(text);
  VerificationReport report = run_suites(cfg);
  CHECK(report.all_pass);
}

TEST_CASE("action tampering through the config is caught") {
  std::string text = R"([semigroup P]
kind = free_monoid
alphabet = "01"

[group G]
kind = free_abelian
rank = 1

[zs D]
semigroup = P
group = G
builtin = odometer
tamper_action = [ [[1], "0", "0"] ]

[system X]
builtin = trivial
zs = D

[windows]
radius_p = 3
radius_g = 2
fock_ball = 2

[run]
suites = [zs-axioms]
)";
  RunConfig cfg = parse_config(text);
  VerificationReport report = run_suites(cfg);
  CHECK_FALSE(report.all_pass);
}

TEST_CASE("report parsing demands the schema version") {
  CHECK_THROWS(VerificationReport::from_json("{}"));
  CHECK_THROWS(VerificationReport::from_json("{\"schema_version\": 99}"));
  CHECK_THROWS(VerificationReport::from_json("not json"));
}

TEST_CASE("tampered restriction fails with a carry witness") {
  std::string path =
      std::string(ZSLAB_SOURCE_DIR) + "/configs/odometer_tampered.cfg";
  RunConfig cfg = parse_config(read_file(path));
  VerificationReport report = run_suites(cfg);
  CHECK_FALSE(report.all_pass);
  bool zs5 = false;
  for (const auto& s : report.suites) {
    if (s.name != "zs-axioms") continue;
    CHECK(s.status == "fail");
    zs5 = s.violation_tags.count("ZS5") != 0;
  }
  CHECK(zs5);
}

TEST_CASE("custom diagonal swap config passes end to end") {
  std::string path = std::string(ZSLAB_SOURCE_DIR) + "/configs/diag_swap.cfg";
  RunConfig cfg = parse_config(read_file(path));
  cfg.radius_p = 2;  // keep the unit test light
  cfg.fock_ball = 2;
  VerificationReport report = run_suites(cfg);
  CHECK(report.all_pass);
}
