#include <stdexcept>
#include <cmath>

#include "doctest.h"

#include "cvwalk/experiment_io.hpp"

using namespace cvw;

TEST_CASE("config_from_json fills defaults") {
  const auto c = config_from_json("{}");
  const ExperimentConfig d;
  CHECK(c.master_seed == d.master_seed);
  CHECK(c.dt == 0x1p-20);
  CHECK(c.n_values == std::vector<std::size_t>{64, 256, 1024});
  CHECK(c.crossing == "bridge");
  CHECK_FALSE(c.grid_cache.has_value());
}

TEST_CASE("config_from_json reads every field") {
  const auto c = config_from_json(R"({
    "master_seed": 9, "dt": 0.25, "horizon": 3, "n_values": [2, 3],
    "h_values": [0, 5], "h_schedule": ["sqrt", "linear:2"], "replicates": 7,
    "t_probe": 0.5, "alpha": [1.5], "sigma": 2, "significance": 0.01,
    "isometry": true, "crossing": "node", "grid_cache": "/tmp/g"})");
  CHECK(c.master_seed == 9);
  CHECK(c.dt == 0.25);
  CHECK(c.horizon == 3.0);
  CHECK(c.n_values == std::vector<std::size_t>{2, 3});
  CHECK(c.h_values == std::vector<std::size_t>{0, 5});
  REQUIRE(c.h_schedule.size() == 2);
  CHECK(c.h_schedule[1](10) == 20);
  CHECK(c.replicates == 7);
  CHECK(c.t_probe == 0.5);
  CHECK(c.alpha == std::vector<double>{1.5});
  CHECK(c.sigma == 2.0);
  CHECK(c.significance == 0.01);
  CHECK(c.isometry);
  CHECK(c.crossing == "node");
  CHECK(c.grid_cache == std::optional<std::string>("/tmp/g"));
}

TEST_CASE("config_from_json rejects bad input") {
  CHECK_THROWS_AS(config_from_json("{"), ConfigError);
  CHECK_THROWS_AS(config_from_json("[1]"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"replicate": 3})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"n_values": "64"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"h_schedule": ["log"]})"), ConfigError);
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig c;
  c.master_seed = 123456789012345ULL;
  c.dt = 0.1;
  c.h_schedule = {HSchedule::parse("n_over_log"), HSchedule::parse("linear:0.25")};
  c.isometry = true;
  c.grid_cache = "cache";
  const auto back = config_from_json(config_to_json(c));
  CHECK(back.master_seed == c.master_seed);
  CHECK(back.dt == c.dt);
  CHECK(back.h_schedule[0].label() == "n_over_log");
  CHECK(back.h_schedule[1].label() == "linear:0.25");
  CHECK(back.isometry);
  CHECK(back.grid_cache == c.grid_cache);
  CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("CSV output") {
  std::vector<ResultRecord> rows{
      {"limit", 64, 1, 0, "sup_error", 0.1, true, {}, 0},
      {"limit", 64, 2, 3, "sup_error", NAN, false, {}, 0},
      {"regime", 8, 0, -1, "mean_T_h", 1.0 / 3.0, true, {}, 0}};
  CHECK(to_csv(rows) ==
        "experiment,n,h,replicate,metric,value,valid\n"
        "limit,64,1,0,sup_error,0.10000000000000001,1\n"
        "limit,64,2,3,sup_error,nan,0\n"
        "regime,8,0,-1,mean_T_h,0.33333333333333331,1\n");
  CHECK(to_csv({}) == "experiment,n,h,replicate,metric,value,valid\n");
}
