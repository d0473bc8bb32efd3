#include <doctest.h>

#include <sstream>

#include "fkm/catalog.hpp"
#include "fkm/runner.hpp"

using namespace fkm;

namespace {

RunConfig config_for(const std::string& key, std::optional<double> a = std::nullopt) {
  RunConfig c;
  c.manifold_key = key;
  c.deform_a = a;
  c.points = 8;
  c.samples = 60;
  return c;
}

nlohmann::json without_wall_time(const CheckReport& r) {
  nlohmann::json j = to_json(r);
  j.erase("wall_time");
  return j;
}

}  // namespace

TEST_CASE("deformed flat run reports the closed-form constants") {
  const CheckReport r = run(config_for("flat-contact-r3", 2.0));
  REQUIRE(r.fits.has_value());
  CHECK(r.fits->kappa == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(r.fits->mu == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.all_pass());
  CHECK(r.manifold.key == "flat-contact-r3:deformed:2");
  CHECK(r.manifold.dim == 3);
  for (const CheckRecord& c : r.checks) CHECK_MESSAGE(c.residual < 1e-6, c.name);
  CHECK(r.verdicts.is_metric_f_contact);
  CHECK_FALSE(r.verdicts.is_normal);
}

TEST_CASE("S-space-form run") {
  const CheckReport r = run(config_for("s-space-form:2,2"));
  CHECK(r.verdicts.is_s_manifold);
  REQUIRE(r.fits.has_value());
  CHECK_FALSE(r.fits->mu_determined);
  CHECK(r.all_pass());
  REQUIRE(r.H.has_value());
  CHECK(r.H->mean == doctest::Approx(-6.0));
  CHECK(r.gssf.has_value());
  REQUIRE(r.trans_s.has_value());
  CHECK(r.trans_s->residual < 1e-6);
  bool skipped_ricci = false;
  for (const auto& s : r.skipped) skipped_ricci = skipped_ricci || s.name == "ricci";
  CHECK(skipped_ricci);
}

TEST_CASE("pass flags follow from residuals and tolerances") {
  for (const char* key : {"flat-contact-r3", "flat-contact-r3:plain", "s-space-form:1,2"}) {
    const CheckReport r = run(config_for(key));
    for (const CheckRecord& c : r.checks) CHECK(c.pass == (c.residual <= c.tolerance));
    for (const CheckRecord& c : r.classifications) CHECK(c.pass == (c.residual <= c.tolerance));
  }
}

TEST_CASE("json round trip is lossless") {
  CheckReport r = run(config_for("flat-contact-r3", 0.5));
  const std::string text = emit_report(r, ReportFormat::Json);
  CHECK(report_from_json(nlohmann::json::parse(text)) == r);
  CHECK(emit_report(report_from_json(nlohmann::json::parse(text)), ReportFormat::Json) == text);

  CheckReport s = run(config_for("s-space-form:2,2"));
  CHECK(report_from_json(nlohmann::json::parse(emit_report(s, ReportFormat::Json))) == s);
}

TEST_CASE("identical seeds give identical reports") {
  RunConfig c = config_for("flat-contact-r3", 3.0);
  c.seed = 42;
  CHECK(without_wall_time(run(c)).dump() == without_wall_time(run(c)).dump());
  RunConfig other = c;
  other.seed = 43;
  CHECK(without_wall_time(run(c)).dump() != without_wall_time(run(other)).dump());
}

TEST_CASE("text report has one PASS or FAIL line per check") {
  const CheckReport r = run(config_for("flat-contact-r3:plain"));
  std::istringstream in(emit_report(r, ReportFormat::Text));
  std::string line;
  std::size_t verdict_lines = 0;
  while (std::getline(in, line))
    if (line.rfind("PASS  ", 0) == 0 || line.rfind("FAIL  ", 0) == 0) ++verdict_lines;
  CHECK(verdict_lines == r.checks.size());
  CHECK_FALSE(r.all_pass());  // HALF-only identities on a PLAIN model
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(run(RunConfig{}), ConfigError);
  RunConfig c = config_for("flat-contact-r3");
  c.points = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config_for("flat-contact-r3");
  c.tolerance = -1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config_for("flat-contact-r3");
  c.checks = {"bogus"};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config_for("flat-contact-r3:deformed:2", 2.0);
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK_THROWS_AS(run(config_for("nope")), UnknownKeyError);
}

TEST_CASE("config from json") {
  const RunConfig c = config_from_json(nlohmann::json::parse(
      R"({"manifold": "s-space-form:1,1", "a": 2, "seed": 5, "points": 3, "samples": 9, "tol": 1e-7,
          "checks": ["nullity", "rf"], "convention": "plain"})"));
  CHECK(c.manifold_key == "s-space-form:1,1");
  CHECK(*c.deform_a == 2.0);
  CHECK(c.seed == 5);
  CHECK(c.points == 3);
  CHECK(c.samples == 9);
  CHECK(c.tolerance == 1e-7);
  CHECK(c.checks == std::vector<std::string>{"nullity", "rf"});
  CHECK(*c.convention == Convention::Plain);
  CHECK(config_from_json(nlohmann::json::parse(R"({"checks": "all"})")).checks == std::vector<std::string>{"all"});
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"manifol": "x"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"points": "many"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"convention": "weird"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse("[1]")), ConfigError);
}

TEST_CASE("explicitly requested checks") {
  RunConfig c = config_for("flat-contact-r3");
  c.checks = {"gssf"};
  const CheckReport r = run(c);
  REQUIRE(r.checks.size() == 1);
  CHECK_FALSE(r.checks[0].pass);  // s = 1

  c.checks = {"trans_s"};
  CHECK_FALSE(run(c).all_pass());
  c.manifold_key = "s-space-form:1,1";
  CHECK(run(c).all_pass());

  c.checks = {"ricci"};
  CHECK_FALSE(run(c).all_pass());  // kappa = 1

  c.checks = {"nullity", "r_xi"};
  const CheckReport n = run(c);
  CHECK(n.checks.size() == 2);
  CHECK(n.all_pass());
}

TEST_CASE("convention override drives the contact check") {
  RunConfig c = config_for("s-space-form:1,1");
  c.checks = {"contact"};
  CHECK(run(c).all_pass());
  c.convention = Convention::Plain;
  const CheckReport r = run(c);
  CHECK_FALSE(r.all_pass());
  CHECK(r.checks[0].residual == doctest::Approx(1.0));
}

TEST_CASE("runner completes on every listed entry") {
  for (const CatalogEntry& e : catalog_list()) {
    RunConfig c = config_for(e.key);
    c.points = 3;
    c.samples = 20;
    CHECK_NOTHROW(run(c));
  }
}
