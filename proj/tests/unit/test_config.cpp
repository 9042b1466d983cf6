#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "qze/config.hpp"
#include "qze/error.hpp"

using namespace qze;

TEST_CASE("defaults") {
  RunConfig c;
  CHECK(c.n_points == 512);
  CHECK(c.length == 9.3);
  CHECK(c.dt == 1e-5);
  CHECK(c.unit == TimeBase::per_f);
  CHECK(c.renorm == RenormMode::bare);
  CHECK(c.n_max == 32);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("sectioned file and overrides") {
  RunConfig c;
  apply_config_text(c, R"(
# heat pump at the deep Zeno point
[cycle]
mode = engine
K = 2      ; compression
Omega = 5000
T = 0.05

[sweep]
OmegaT_values = 10, 99.6
)");
  CHECK(c.mode == MachineMode::engine);
  CHECK(c.K == 2.0);
  CHECK(c.cycle_params().M == 250);
  CHECK(c.sweep_M == std::vector<int>{10, 100});
  apply_override(c, "evolution.unit=per_omega");
  CHECK(c.step().unit.base() == TimeBase::per_omega);
  apply_override(c, "cycle.mode = heat_pump");
  CHECK(c.mode == MachineMode::heat_pump);
}

TEST_CASE("unknown keys and bad values name the key") {
  RunConfig c;
  CHECK_THROWS_WITH_AS(apply_override(c, "cycle.KK=3"), doctest::Contains("cycle.KK"), ConfigError);
  CHECK_THROWS_WITH_AS(apply_config_text(c, "[cycle]\nK = five\n"), doctest::Contains("cycle.K"),
                       ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "K = 5\n"), ConfigError);  // no section
  CHECK_THROWS_AS(apply_override(c, "cycle.K"), ConfigError);
  CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/qze.conf"), Error);
}

TEST_CASE("cross-key validation") {
  RunConfig c;
  apply_override(c, "cycle.M=100");
  apply_override(c, "cycle.Omega=1000");
  CHECK_THROWS_AS(c.validate(), ConfigError);

  RunConfig k;
  apply_override(k, "cycle.K=1");
  CHECK_THROWS_WITH_AS(k.validate(), doctest::Contains("K must exceed 1"), ConfigError);

  RunConfig s;
  apply_override(s, "sweep.K_values=");
  CHECK_THROWS_AS(s.sweep_spec().validate(), ConfigError);
}

TEST_CASE("printed configuration parses back to the same values") {
  RunConfig c;
  apply_override(c, "cycle.K=3.3000000000000003");
  apply_override(c, "sweep.T_values=0.1, 0.30000000000000004");
  apply_override(c, "output.densities=true");
  apply_override(c, "predict.M_values=5,50");
  const std::string text = format_config(c);
  RunConfig back;
  apply_config_text(back, text);
  CHECK(format_config(back) == text);
  CHECK(back.K == c.K);
  CHECK(back.sweep_T == c.sweep_T);
  CHECK(back.write_densities);

  RunConfig w;
  apply_override(w, "cycle.Omega=25000");
  RunConfig w2;
  apply_config_text(w2, format_config(w));
  CHECK(w2.cycle_params().M == w.cycle_params().M);
}

TEST_CASE("full raster flag") {
  RunConfig c;
  apply_override(c, "sweep.full_raster=true");
  auto s = c.sweep_spec();
  CHECK(s.cycles_per_point == 100);
  CHECK(s.T_values.size() == 10);
  CHECK(s.M_values.size() == 11);
}

TEST_CASE("every documented key is known") {
  const auto keys = known_keys();
  for (const char* k : {"grid.n_points", "grid.length", "evolution.dt", "evolution.unit", "cycle.mode",
                        "cycle.K", "cycle.T", "cycle.M", "cycle.Omega", "cycle.n_cycles",
                        "cycle.renorm_mode", "cycle.ladder_renorm", "cycle.n_max",
                        "output.populations", "output.population_stride", "output.densities",
                        "output.density_stride", "output.compact_densities", "sweep.K_values",
                        "sweep.T_values", "sweep.M_values", "sweep.OmegaT_values",
                        "sweep.cycles_per_point", "sweep.full_raster", "predict.level",
                        "predict.M_values", "predict.simulate"}) {
    CHECK_MESSAGE(std::find(keys.begin(), keys.end(), k) != keys.end(), k);
  }
}
