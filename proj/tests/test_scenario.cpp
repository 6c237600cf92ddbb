#include <filesystem>
#include <stdexcept>
#include <string>

#include "cislunar/scenario.hpp"
#include "doctest.h"

using namespace cislunar;

TEST_CASE("default scenario mirrors the published table") {
  const Scenario sc = default_scenario();
  REQUIRE(sc.satellites.size() == 21);
  CHECK(sc.satellites.front().label == "LLO-1");
  CHECK(sc.satellites.front().elements.inclination_deg == 80.0);
  CHECK(sc.satellites.back().label == "LLO-21");
  CHECK(sc.satellites.back().elements.inclination_deg == 100.0);
  for (std::size_t i = 0; i < sc.satellites.size(); ++i) {
    const OrbitalElements& el = sc.satellites[i].elements;
    CHECK(el.inclination_deg == 80.0 + static_cast<double>(i));
    CHECK(el.semi_major_axis_km == 1837.4);
    CHECK(el.eccentricity == 0.0);
    CHECK(el.raan_deg == 90.0);
    CHECK(el.arg_perigee_deg == 0.0);
    CHECK(el.true_anomaly_deg == 0.0);
    CHECK_NOTHROW(el.validate());
  }
  REQUIRE(sc.ground_stations.size() == 1);
  CHECK(sc.ground_stations[0] == GroundStation{-90.0, 0.0, 1737.4});
  CHECK(sc.duration_s == 86400.0);
  CHECK(sc.sample_interval_s == 10.0);
  CHECK(sc.carrier_frequency_hz == 20.0e9);
  CHECK(sc.gmm_components == 5);
  CHECK(sc.histogram_bins == 4000);
  CHECK(sc.reference_satellite == "LLO-1");
  CHECK(sc.min_elevation_deg == 0.0);
  CHECK(sc.isl_topology == IslTopology::kStar);
  CHECK(sc.fit == FitSettings{500, 1e-8, 5});
  CHECK(sc.samples_per_link() == 8641);
  CHECK_NOTHROW(sc.validate());
}

TEST_CASE("empty documents load the default scenario") {
  CHECK(load_scenario("") == default_scenario());
  CHECK(load_scenario("  \n\t ") == default_scenario());
  CHECK(load_scenario("{}") == default_scenario());
}

TEST_CASE("scalar overrides keep everything else at defaults") {
  const Scenario sc = load_scenario(R"({"duration_s": 3600.0})");
  CHECK(sc.duration_s == 3600.0);
  CHECK(sc.samples_per_link() == 361);
  Scenario expect = default_scenario();
  expect.duration_s = 3600.0;
  CHECK(sc == expect);

  const Scenario tuned = load_scenario(R"({"gmm_components": 3, "fit": {"restarts": 2}, "min_elevation_deg": 5.0})");
  CHECK(tuned.gmm_components == 3);
  CHECK(tuned.fit.restarts == 2);
  CHECK(tuned.fit.max_iterations == 500);
  CHECK(tuned.min_elevation_deg == 5.0);
}

TEST_CASE("satellite lists replace the default constellation") {
  const Scenario sc = load_scenario(R"({
    "satellites": [
      {"label": "A", "inclination_deg": 85.0},
      {"label": "B", "inclination_deg": 95.0, "eccentricity": 0.1}
    ]
  })");
  REQUIRE(sc.satellites.size() == 2);
  CHECK(sc.reference_satellite == "A");  // falls back to the first label
  CHECK(sc.satellites[0].elements.semi_major_axis_km == 1837.4);
  CHECK(sc.satellites[1].elements.eccentricity == 0.1);
  CHECK(sc.find("B").elements.inclination_deg == 95.0);
  CHECK_THROWS_AS(sc.find("C"), std::invalid_argument);
}

TEST_CASE("schema violations carry field paths") {
  auto message_of = [](const std::string& doc) {
    try {
      load_scenario(doc);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  CHECK(message_of(R"({"satellites": [{"label": "A"}, {"label": "A"}]})").find("satellites[1].label") !=
        std::string::npos);
  CHECK(message_of(R"({"duration_s": -4.0})").find("duration_s") != std::string::npos);
  CHECK(message_of(R"({"satellites": [{"label": "A", "eccentricity": 1.5}]})").find("satellites[0]") !=
        std::string::npos);
  CHECK(message_of(R"({"gmm_components": 0})").find("gmm_components") != std::string::npos);
  CHECK(message_of(R"({"reference_satellite": "LLO-99"})").find("reference_satellite") != std::string::npos);
  CHECK(message_of(R"({"ground_stations": [{"latitude_deg": 100.0}]})").find("ground_stations[0]") !=
        std::string::npos);
  CHECK(message_of(R"({"isl_topology": "ring"})").find("isl_topology") != std::string::npos);
  CHECK(message_of(R"({"sample_interval_s": 100000.0})").find("sample_interval_s") != std::string::npos);
  CHECK(message_of(R"({"unknown_knob": 1})").find("unknown_knob") != std::string::npos);
  CHECK(message_of(R"({"satellites": [{"label": "A", "color": "red"}]})").find("satellites[0].color") !=
        std::string::npos);
  CHECK(message_of(R"({"gmm_components": 2.5})").find("gmm_components") != std::string::npos);
  CHECK(message_of("{nope").find("malformed") != std::string::npos);
}

TEST_CASE("scenario serialization round-trips") {
  const Scenario base = default_scenario();
  CHECK(load_scenario(serialize_scenario(base)) == base);

  const std::string doc = R"({
    "duration_s": 7200.0,
    "sample_interval_s": 5.0,
    "isl_topology": "all_pairs",
    "satellites": [
      {"label": "S1", "inclination_deg": 82.0},
      {"label": "S2", "inclination_deg": 97.0}
    ],
    "ground_stations": [{"latitude_deg": -90.0, "longitude_deg": 0.0, "radius_km": 1737.4}],
    "fit": {"max_iterations": 120, "tolerance": 1e-7, "restarts": 3}
  })";
  const Scenario loaded = load_scenario(doc);
  CHECK(load_scenario(serialize_scenario(loaded)) == loaded);
}

TEST_CASE("build_links star and all-pairs topologies") {
  const Scenario sc = default_scenario();
  const LinkPlan plan = build_links(sc);
  REQUIRE(plan.isl.size() == 20);
  REQUIRE(plan.gs.size() == 21);
  for (const auto& [a, b] : plan.isl) {
    CHECK(a == "LLO-1");
    CHECK(b != "LLO-1");
  }
  CHECK(plan.isl.front().second == "LLO-2");
  CHECK(plan.isl.back().second == "LLO-21");
  CHECK(plan.gs.front() == std::pair<std::string, std::size_t>{"LLO-1", 0});

  const Scenario two = load_scenario(R"({"satellites": [{"label": "A"}, {"label": "B"}]})");
  const LinkPlan two_plan = build_links(two);
  CHECK(two_plan.isl.size() == 1);
  CHECK(two_plan.gs.size() == 2);

  const Scenario no_gs = load_scenario(R"({"ground_stations": []})");
  CHECK(build_links(no_gs).gs.empty());

  const Scenario all = load_scenario(R"({
    "isl_topology": "all_pairs",
    "satellites": [{"label": "A"}, {"label": "B"}, {"label": "C"}, {"label": "D"}]
  })");
  CHECK(build_links(all).isl.size() == 6);
}

TEST_CASE("link id helpers") {
  CHECK(isl_link_id("LLO-1", "LLO-21") == "LLO-1_LLO-21");
  CHECK(gs_link_id("LLO-3", 0) == "LLO-3_GS1");
  CHECK(gs_link_id("LLO-3", 4) == "LLO-3_GS5");
}

TEST_CASE("checked-in scenario files load") {
  const std::filesystem::path dir = CISLUNAR_SCENARIO_DIR;
  CHECK(load_scenario_file(dir / "default.json") == default_scenario());
  const Scenario smoke = load_scenario_file(dir / "smoke.json");
  CHECK(smoke.satellites.size() == 3);
  CHECK(smoke.gmm_components == 3);
  CHECK_NOTHROW(smoke.validate());
  CHECK_THROWS_AS(load_scenario_file(dir / "missing.json"), std::runtime_error);
}
