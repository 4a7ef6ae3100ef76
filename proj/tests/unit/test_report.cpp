#include <doctest.h>

#include <cmath>
#include <limits>

#include "qhe/errors.hpp"
#include "qhe/report/config.hpp"
#include "qhe/report/output.hpp"
#include "qhe/report/suite.hpp"

using namespace qhe;
using namespace qhe::report;

TEST_CASE("empty config takes defaults and selects the full suite") {
  const RunConfig c = parse_config("");
  CHECK(c.criteria == suite_criteria());
  CHECK(c.criteria.size() == 13);
  CHECK(c.out_dir == "out");
}

TEST_CASE("config tables are parsed") {
  const RunConfig c = parse_config(R"(
[run]
fields = [50.0, 100.0]
out = "results"
threads = 2
seed = 9

[[potential]]
kind = "sharp"
width = 1.0

[[potential]]
kind = "parabolic"
stiffness = 4.0

[window]
level = 1
lower = 1.4
upper = 1.6

[packet]
gamma = "inf"
profile = "flat"

[cylinder]
circumference = 2.0

[cylinder.perturbation]
epsilon = 0.02
sine = true

[verify]
criteria = [2, 11]
)");
  CHECK(c.fields == std::vector<double>{50.0, 100.0});
  CHECK(c.out_dir == "results");
  CHECK(c.threads == 2);
  CHECK(c.seed == 9);
  REQUIRE(c.potentials.size() == 2);
  CHECK(c.potentials[0].kind == PotentialKind::Sharp);
  CHECK(c.potentials[0].build(100.0, 1, 1.6).strength() == doctest::Approx(2.0 * 3.6 * 100.0));
  CHECK(c.potentials[1].stiffness == 4.0);
  CHECK(c.window.level == 1);
  CHECK(std::isinf(c.packet.gamma));
  CHECK(c.packet.shape == ProfileShape::Flat);
  CHECK(c.cylinder.circumference == 2.0);
  REQUIRE(c.cylinder.perturbation.has_value());
  CHECK(c.cylinder.perturbation->sine);
  CHECK(c.criteria == std::vector<int>{2, 11});
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(parse_config("[run]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[mystery]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[verify]\ncriteria = []\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[verify]\ncriteria = [14]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[window]\nlower = 2.0\nupper = 1.8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[[potential]]\nkind = \"wobbly\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[packet]\ngamma = -1.0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), ConfigError);
}

TEST_CASE("numbers are written with full precision") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-1.5e-300) == "-1.5000000000000001e-300");
}

TEST_CASE("CSV rows use LF endings and reject ragged rows") {
  CsvWriter w({"a", "b"});
  w.add_row(std::vector<double>{1.0, 0.5});
  CHECK(w.str() == "a,b\n1,0.5\n");
  CHECK_THROWS(w.add_row(std::vector<double>{1.0}));
}

TEST_CASE("quantities carry units and non-finite values become null") {
  const Json q = quantity(1.5, "energy");
  CHECK(q["value"].get<double>() == 1.5);
  CHECK(q["unit"].get<std::string>() == "energy");
  CHECK(quantity(std::numeric_limits<double>::infinity(), "energy")["value"].is_null());
  Verdict v;
  v.lemma = "x";
  v.parameters = {{"B", 100.0, "field"}};
  v.status = VerdictStatus::Precondition;
  const Json j = to_json(v);
  CHECK(j["status"].get<std::string>() == "precondition");
  CHECK(j["parameters"]["B"]["unit"].get<std::string>() == "field");
}

TEST_CASE("criterion catalogue") {
  CHECK(criterion_name(1) == "parabolic oracle equivalence");
  CHECK(criterion_name(14) != "");
  CHECK_THROWS_AS(run_criterion(0), DomainError);
  CHECK_THROWS_AS(run_criterion(14), DomainError);
}

TEST_CASE("a quick criterion runs and passes") {
  const CriterionResult r = run_criterion(2);
  CHECK(r.pass());
  CHECK(r.verdicts.size() == 2);
}
