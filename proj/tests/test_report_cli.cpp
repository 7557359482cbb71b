#include <doctest.h>

#include <set>

#include <nlohmann/json.hpp>

#include "opuc/config.hpp"
#include "opuc/errors.hpp"
#include "opuc/report.hpp"

using namespace opuc;

TEST_CASE("suite registry is complete and self-consistent") {
  const auto& reg = suite_registry();
  CHECK(reg.size() == 14);
  std::set<std::string> names, anchors;
  for (const auto& s : reg) {
    names.insert(s.name);
    anchors.insert(s.anchor);
    CHECK(find_suite(s.name) == &s);
    CHECK(!s.description.empty());
  }
  CHECK(names.size() == reg.size());
  CHECK(anchors.size() == reg.size());
  CHECK(find_suite("no-such-suite") == nullptr);
}

TEST_CASE("default config covers every suite") {
  Config c = default_config();
  std::set<std::string> suites;
  for (const auto& r : c.suites) suites.insert(r.suite);
  CHECK(suites.size() == 14);
}

TEST_CASE("json config parsing") {
  Config c = parse_config_json(R"({
    "grid_m": 512,
    "suites": [
      {"suite": "dpii", "family": "mb", "t": 1.5, "n": 9},
      {"suite": "q-ladder", "family": "rs", "params": {"q": 0.3}, "n": 5}
    ]
  })");
  CHECK(c.grid_m == 512);
  REQUIRE(c.suites.size() == 2);
  CHECK(c.suites[0].suite == "dpii");
  CHECK(c.suites[0].params.at("t") == 1.5);
  CHECK(c.suites[1].params.at("q") == 0.3);
  CHECK_THROWS_AS((void)parse_config_json("{ not json"), IoError);
}

TEST_CASE("toml config parsing") {
  Config c = parse_config_toml(
      "# verification plan\n"
      "grid_m = 256\n"
      "\n"
      "[[suites]]\n"
      "suite = \"dpii\"\n"
      "family = \"mb\"\n"
      "t = 2.0\n"
      "n = 10\n"
      "\n"
      "[[suites]]\n"
      "suite = \"adjoint\"\n"
      "family = \"cj\"\n"
      "a = 1.0\n");
  CHECK(c.grid_m == 256);
  REQUIRE(c.suites.size() == 2);
  CHECK(c.suites[0].family == "mb");
  CHECK(c.suites[0].params.at("t") == 2.0);
  CHECK(c.suites[1].params.at("a") == 1.0);
}

TEST_CASE("malformed toml reports the line") {
  try {
    (void)parse_config_toml("grid_m = 1\nsuite broken line\n");
    CHECK(false);
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("empty config runs to an empty report") {
  Config c = parse_config_json("{}");
  CHECK(c.suites.empty());
  auto reports = run_report_all(c);
  CHECK(reports.empty());
}

TEST_CASE("unknown suite is a domain error") {
  SuiteRequest req{"bogus", "cj", {{"a", 1.0}}, 4};
  CHECK_THROWS_AS((void)run_suite(req), DomainError);
}

TEST_CASE("config hash is stable and sensitive") {
  Config a = parse_config_json(R"({"suites":[{"suite":"dpii","family":"mb","t":1.0}]})");
  Config b = parse_config_json(R"({"suites":[{"suite":"dpii","family":"mb","t":1.0}]})");
  Config c = parse_config_json(R"({"suites":[{"suite":"dpii","family":"mb","t":2.0}]})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("reports are deterministic modulo the runtime field") {
  Config c = parse_config_json(R"({
    "suites": [
      {"suite": "dpii", "family": "mb", "t": 1.0, "n": 8},
      {"suite": "recurrences", "family": "random", "n": 12},
      {"suite": "delta", "family": "cj", "a": 1.0, "n": 6}
    ]
  })");
  const std::string hash = config_hash(c);
  const std::string run1 = aggregate_to_json_deterministic(run_report_all(c), hash);
  const std::string run2 = aggregate_to_json_deterministic(run_report_all(c), hash);
  CHECK(run1 == run2);
  CHECK(!run1.empty());
}

TEST_CASE("system JSON round-trips its binary64 payload") {
  OPUCSystem sys = make_system("cj", {{"a", 1.0}}, 5, "closed");
  const std::string text = system_to_json(sys);
  auto j = nlohmann::json::parse(text);
  CHECK(j["schema"] == 1);
  CHECK(j["N"] == 5);
  CHECK(j["family"] == "cj");
  for (int n = 0; n <= 5; ++n) {
    CHECK(j["kappa"][n].get<double>() == sys.kappa[n]);
    for (int k = 0; k <= n; ++k) {
      CHECK(j["phi"][n][k][0].get<double>() == sys.phi[n].coeff(k).real());
      CHECK(j["phi"][n][k][1].get<double>() == sys.phi[n].coeff(k).imag());
    }
  }
}

TEST_CASE("custom moments wire format") {
  WeightSpec w = parse_custom_moments_json("[[1.0, 0.0], [-0.5, 0.0], [0.1, 0.02]]");
  CHECK(w.family == Family::CustomMoments);
  REQUIRE(w.custom.size() == 3);
  CHECK(w.custom[1] == cplx(-0.5, 0.0));
  CHECK_THROWS_AS((void)parse_custom_moments_json("[[1.0]]"), IoError);
  CHECK_THROWS_AS((void)parse_custom_moments_json("nope"), IoError);
}

TEST_CASE("make_system validates its inputs") {
  CHECK_THROWS_AS((void)make_system("nope", {}, 4, "closed"), DomainError);
  CHECK_THROWS_AS((void)make_system("cj", {{"a", 1.0}}, 4, "sideways"), DomainError);
}
