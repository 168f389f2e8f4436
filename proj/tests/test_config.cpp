#include <doctest.h>

#include "qkdcap/config.hpp"

using namespace qkdcap;

TEST_SUITE("config") {

TEST_CASE("full configuration document") {
  const AppConfig config = parse_config(R"({
    "profiles": [
      {"name": "lab", "eta_bob": 0.11, "mu": 0.48, "rate_cap_bps": 5e5},
      {"name": "experimental", "eta_bob": 0.07}
    ],
    "ring": {"n_nodes": 8, "adjacent_len_km": 2.0, "alpha_db_per_km": 0.25,
             "switch_penalty_db": 4.0, "adjacent_uses_chord": true},
    "flags": {"schedule_accounting": "verbatim"}
  })");

  REQUIRE(config.profiles.size() == 2);
  CHECK(config.profiles[0].name == "lab");
  CHECK(config.profiles[0].params.eta_bob == 0.11);
  CHECK(config.profiles[0].params.mu == 0.48);
  CHECK(config.profiles[0].params.rate_cap_bps == 5e5);
  CHECK(config.profiles[0].params.q == 0.5);  // default retained
  CHECK(config.ring.n_nodes == 8);
  CHECK(config.ring.adjacent_uses_chord);
  CHECK(config.flags.accounting == ScheduleAccounting::verbatim);

  const auto profiles = all_profiles(config);
  REQUIRE(profiles.size() == 4);  // three builtins, one overridden, one new
  CHECK(find_profile(profiles, "experimental")->params.eta_bob == 0.07);
  CHECK(find_profile(profiles, "lab") != nullptr);
  CHECK(find_profile(profiles, "high")->params.eta_bob == 0.25);
}

TEST_CASE("empty and partial documents fall back to defaults") {
  const AppConfig config = parse_config("{}");
  CHECK(config.profiles.empty());
  CHECK(config.ring.alpha_db_per_km == 0.21);
  CHECK(config.ring.switch_penalty_db == 5.0);
  CHECK(config.flags.accounting == ScheduleAccounting::duplex);
  CHECK(all_profiles(config).size() == 3);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"profils": []})"),
                       "config: unknown key 'profils' in config",
                       std::runtime_error);
  CHECK_THROWS_AS(
      parse_config(R"({"profiles": [{"name": "x", "eta": 0.1}]})"),
      std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"ring": {"nodes": 8}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"flags": {"duplex": true}})"),
                  std::runtime_error);
}

TEST_CASE("profile entries are validated") {
  CHECK_THROWS_AS(parse_config(R"({"profiles": [{"eta_bob": 0.1}]})"),
                  std::runtime_error);  // missing name
  CHECK_THROWS_AS(
      parse_config(R"({"profiles": [{"name": "x", "eta_bob": 2.0}]})"),
      std::invalid_argument);  // out of range
  CHECK_THROWS_AS(parse_config(R"({"profiles": [
        {"name": "x", "eta_bob": 0.1}, {"name": "x", "eta_bob": 0.2}]})"),
                  std::runtime_error);  // duplicate
  CHECK_THROWS_AS(
      parse_config(R"({"profiles": [{"name": "x", "eta_bob": "high"}]})"),
      std::runtime_error);  // wrong type
}

TEST_CASE("accounting flags") {
  CHECK(parse_config(R"({"flags": {"gs_factor_two": true}})")
            .flags.accounting == ScheduleAccounting::two_per_cycle);
  CHECK(parse_config(R"({"flags": {"schedule_accounting": "duplex"}})")
            .flags.accounting == ScheduleAccounting::duplex);
  CHECK(parse_config(
            R"({"flags": {"gs_factor_two": true,
                          "schedule_accounting": "two-per-cycle"}})")
            .flags.accounting == ScheduleAccounting::two_per_cycle);
  CHECK_THROWS_AS(parse_config(R"({"flags": {"gs_factor_two": true,
                       "schedule_accounting": "duplex"}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      parse_config(R"({"flags": {"schedule_accounting": "turbo"}})"),
      std::runtime_error);
}

TEST_CASE("accounting names round-trip") {
  for (auto mode :
       {ScheduleAccounting::verbatim, ScheduleAccounting::two_per_cycle,
        ScheduleAccounting::duplex})
    CHECK(accounting_from_name(accounting_name(mode)) == mode);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_config("not json"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("[1,2,3]"), std::runtime_error);
  CHECK_THROWS_WITH_AS(load_config_file("/no/such/config.json"),
                       "config: cannot open '/no/such/config.json'",
                       std::runtime_error);
}

}  // TEST_SUITE
