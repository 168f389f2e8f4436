#include <cmath>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "qkdcap/sweep.hpp"

using namespace qkdcap;

namespace {

SweepSpec default_spec(const std::string& profile = "experimental") {
  SweepSpec spec;
  spec.profile = profile;
  return spec;
}

double cell_r(const SweepGrid& grid, int n, double len) {
  for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni)
    for (std::size_t li = 0; li < grid.len_values_km.size(); ++li)
      if (grid.n_values[ni] == n &&
          std::abs(grid.len_values_km[li] - len) < 1e-9)
        return grid.r[grid.index(ni, li)];
  FAIL("cell not found");
  return 0.0;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("single-cell sweep equals the direct comparison") {
  SweepSpec spec = default_spec("high");
  spec.n_min = spec.n_max = 12;
  spec.len_min_km = spec.len_max_km = 7.0;

  const SweepGrid grid = run_sweep(spec, builtin_profiles());
  REQUIRE(grid.cells() == 1);

  RingSpec ring;
  ring.n_nodes = 12;
  ring.adjacent_len_km = 7.0;
  const ComparisonResult direct =
      compare_architectures(ring, *find_profile(builtin_profiles(), "high"));
  CHECK(grid.g_relayed[0] == direct.g_relayed);
  CHECK(grid.g_switched[0] == direct.g_switched);
  CHECK(grid.r[0] == direct.r);
}

TEST_CASE("default grid axes match the configured ranges") {
  const SweepGrid grid = run_sweep(default_spec(), builtin_profiles());
  CHECK(grid.n_values.size() == 26);
  CHECK(grid.len_values_km.size() == 39);
  CHECK(grid.n_values.front() == 5);
  CHECK(grid.n_values.back() == 30);
  CHECK(grid.len_values_km.front() == 1.0);
  CHECK(grid.len_values_km.back() == 20.0);
  CHECK(grid.cells() == 1014);
}

TEST_CASE("sweeps are deterministic") {
  const SweepGrid a = run_sweep(default_spec(), builtin_profiles());
  const SweepGrid b = run_sweep(default_spec(), builtin_profiles());
  CHECK(a.r == b.r);
  CHECK(a.g_switched == b.g_switched);
  CHECK(a.g_relayed == b.g_relayed);
  CHECK(emit_csv(a) == emit_csv(b));
}

TEST_CASE("cells are bounded and consistent with their companion rates") {
  const SweepGrid grid = run_sweep(default_spec(), builtin_profiles());
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    REQUIRE(!std::isnan(grid.r[c]));  // default grid never goes fully dead
    CHECK(std::abs(grid.r[c]) <= 1.0);
    CHECK(grid.r[c] ==
          normalized_difference(grid.g_switched[c], grid.g_relayed[c]));
  }
}

TEST_CASE("known sign structure of the experimental grid") {
  const SweepGrid grid = run_sweep(default_spec(), builtin_profiles());
  CHECK(cell_r(grid, 30, 4.0) > 0.0);
  CHECK(cell_r(grid, 10, 10.0) > 0.0);
  CHECK(cell_r(grid, 25, 10.0) < 0.0);
}

TEST_CASE("crossover curve") {
  const SweepGrid grid = run_sweep(default_spec(), builtin_profiles());
  const auto curve = crossover_curve(grid);
  REQUIRE(curve.size() == grid.len_values_km.size());

  auto at = [&](double len) -> const CrossoverPoint& {
    for (const auto& pt : curve)
      if (std::abs(pt.len_km - len) < 1e-9) return pt;
    FAIL("length column not found");
    return curve.front();
  };

  // every node count wins at 1 km: column saturates at the top of the range
  CHECK(at(1.0).max_n_positive == 30);
  CHECK(at(7.5).max_n_positive.has_value());
  CHECK(*at(7.5).max_n_positive >= 17);
  CHECK(*at(7.5).max_n_positive <= 23);
  CHECK(at(10.0).max_n_positive.has_value());
  CHECK(*at(10.0).max_n_positive >= 7);
  CHECK(*at(10.0).max_n_positive <= 13);

  // the low profile loses everywhere at 20 km
  const SweepGrid low = run_sweep(default_spec("low"), builtin_profiles());
  const auto low_curve = crossover_curve(low);
  CHECK(!low_curve.back().max_n_positive.has_value());
}

TEST_CASE("relayed-favored region only grows with length") {
  for (const char* profile : {"experimental", "low", "high"}) {
    const SweepGrid grid = run_sweep(default_spec(profile), builtin_profiles());
    for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
      bool negative_seen = false;
      double prev = 0.0;
      for (std::size_t li = 0; li < grid.len_values_km.size(); ++li) {
        const double r = grid.r[grid.index(ni, li)];
        if (negative_seen) CHECK(r <= prev + 1e-12);
        if (r < 0.0) negative_seen = true;
        prev = r;
      }
    }
  }
}

TEST_CASE("CSV emission") {
  SweepSpec tiny = default_spec();
  tiny.n_min = tiny.n_max = 9;
  tiny.len_min_km = tiny.len_max_km = 2.5;
  const SweepGrid grid = run_sweep(tiny, builtin_profiles());

  const std::string csv = emit_csv(grid);
  CHECK(count_lines(csv) == 2);
  CHECK(csv.rfind("n,length_km,g_switched_bps,g_relayed_bps,r\n", 0) == 0);
  CHECK(csv.find("9,2.5,") != std::string::npos);

  const SweepGrid full = run_sweep(default_spec(), builtin_profiles());
  CHECK(count_lines(emit_csv(full)) == 1015);
}

TEST_CASE("CSV round-trip is stable and loses at most 9 digits") {
  const SweepGrid grid = run_sweep(default_spec(), builtin_profiles());
  const std::string csv = emit_csv(grid);
  const SweepGrid parsed = parse_csv(csv);

  CHECK(parsed.n_values == grid.n_values);
  REQUIRE(parsed.cells() == grid.cells());
  CHECK(emit_csv(parsed) == csv);  // emit∘parse is the identity on documents
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    CHECK(parsed.g_switched[c] ==
          doctest::Approx(grid.g_switched[c]).epsilon(1e-8));
    CHECK(parsed.r[c] == doctest::Approx(grid.r[c]).epsilon(1e-8));
  }
}

TEST_CASE("dead cells serialize as nan and survive the round trip") {
  SweepSpec dead = default_spec();
  dead.n_min = dead.n_max = 5;
  dead.len_min_km = dead.len_max_km = 200.0;
  const SweepGrid grid = run_sweep(dead, builtin_profiles());
  REQUIRE(std::isnan(grid.r[0]));

  const std::string csv = emit_csv(grid);
  CHECK(csv.find(",nan\n") != std::string::npos);
  CHECK(std::isnan(parse_csv(csv).r[0]));

  const auto doc = nlohmann::json::parse(emit_json(grid));
  CHECK(doc.at("r").at(0).is_null());
}

TEST_CASE("JSON and CSV carry identical values") {
  SweepSpec spec = default_spec("high");
  spec.n_max = 12;
  spec.len_max_km = 6.0;
  const SweepGrid grid = run_sweep(spec, builtin_profiles());

  const SweepGrid from_csv = parse_csv(emit_csv(grid));
  const auto doc = nlohmann::json::parse(emit_json(grid));

  REQUIRE(doc.at("r").size() == from_csv.cells());
  for (std::size_t c = 0; c < from_csv.cells(); ++c) {
    CHECK(doc.at("g_switched_bps").at(c).get<double>() ==
          from_csv.g_switched[c]);
    CHECK(doc.at("g_relayed_bps").at(c).get<double>() == from_csv.g_relayed[c]);
    CHECK(doc.at("r").at(c).get<double>() == from_csv.r[c]);
  }
}

TEST_CASE("unknown profile and bad ranges are rejected") {
  CHECK_THROWS_AS(run_sweep(default_spec("no-such"), builtin_profiles()),
                  std::runtime_error);
  SweepSpec bad = default_spec();
  bad.len_step_km = 0.0;
  CHECK_THROWS_AS(run_sweep(bad, builtin_profiles()), std::invalid_argument);
  bad = default_spec();
  bad.n_min = 2;
  CHECK_THROWS_AS(run_sweep(bad, builtin_profiles()), std::invalid_argument);
}

}  // TEST_SUITE
