#include "qze/commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "qze/csv.hpp"
#include "qze/error.hpp"

namespace qze {

namespace {

constexpr int kPopulationColumns = 9;  // P0..P8

std::filesystem::path prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError(dir.string(), "cannot create output directory");
  }
  return dir;
}

}  // namespace

std::string cycles_csv(const RunResult& run) {
  csv::Table t({"cycle", "Q_in", "Q_out", "W_compress", "W_expand", "xi_or_eta", "survival_1",
                "survival_2", "norm_end"});
  for (const auto& r : run.records) {
    t.row()
        .add(r.index)
        .add(r.q_in)
        .add(r.q_out)
        .add(r.w_compress)
        .add(r.w_expand)
        .add(r.performance)
        .add(r.survival_first)
        .add(r.survival_second)
        .add(r.norm_end);
  }
  return t.str();
}

std::string populations_csv(const TraceSink& trace) {
  std::vector<std::string> header{"t"};
  for (int n = 0; n < kPopulationColumns; ++n) header.push_back("P" + std::to_string(n));
  header.emplace_back("residual");
  csv::Table t(std::move(header));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : trace.populations) {
    t.row().add(s.t);
    for (int n = 0; n < kPopulationColumns; ++n) {
      // levels the grid cannot resolve at this frequency are reported as nan
      t.add(n <= s.populations.resolved_cutoff() ? s.populations.levels[n] : nan);
    }
    t.add(s.populations.residual);
  }
  return t.str();
}

std::string densities_csv(const TraceSink& trace, const Grid& grid, bool compact) {
  csv::Table t({"t", "x", "density"});
  for (const auto& s : trace.densities) {
    for (std::size_t j = 0; j < s.density.size(); ++j) {
      if (compact && s.density[j] <= 1e-12) continue;
      t.row().add(s.t).add(grid.x[j]).add(s.density[j]);
    }
  }
  return t.str();
}

std::string sweep_csv(const SweepTable& table) {
  csv::Table t({"K", "T", "M", "OmegaT", "xi_bar", "xi_opt", "gap", "mean_survival",
                "adiab_param", "failed_cycles"});
  for (const auto& r : table.rows) {
    t.row()
        .add(r.K)
        .add(r.T)
        .add(r.M)
        .add(r.omega_T)
        .add(r.performance_bar)
        .add(r.performance_opt)
        .add(r.gap)
        .add(r.mean_survival)
        .add(r.adiab_param)
        .add(r.failed_cycles);
  }
  return t.str();
}

std::string predict_csv(const std::vector<PredictRow>& rows) {
  csv::Table t({"M", "leakage_per_interval", "survival_estimate", "simulated_survival", "ratio",
                "in_range"});
  for (const auto& r : rows) {
    t.row()
        .add(r.M)
        .add(r.leakage_per_interval)
        .add(r.survival_estimate)
        .add(r.simulated_survival)
        .add(r.ratio)
        .add(r.in_range ? 1 : 0);
  }
  return t.str();
}

int cmd_run_cycle(const CommandContext& ctx, std::ostream& log) {
  const RunConfig& cfg = ctx.config;
  cfg.validate();
  CycleParams params = cfg.cycle_params();
  params.record_stride = cfg.write_populations ? cfg.population_stride : 0;
  params.density_stride = cfg.write_densities ? cfg.density_stride : 0;
  const GridPtr grid = cfg.grid();
  const auto dir = prepare_out_dir(ctx.out_dir);

  RunResult run;
  try {
    run = run_cycles(params, grid);
  } catch (const RunFailedError& e) {
    log << "run-cycle failed: " << e.what() << "\n";
    return kExitRunFailed;
  }

  csv::write_atomic(dir / "cycles.csv", cycles_csv(run));
  if (params.record_stride > 0) csv::write_atomic(dir / "populations.csv", populations_csv(run.trace));
  if (params.density_stride > 0) {
    csv::write_atomic(dir / "densities.csv", densities_csv(run.trace, *grid, cfg.compact_densities));
  }
  log << to_string(params.mode) << " K=" << params.K << " T=" << params.T << " M=" << params.M
      << ": " << run.records.size() << " cycles, "
      << (params.mode == MachineMode::heat_pump ? "xi_bar=" : "eta_bar=")
      << csv::format_real(run.performance_bar) << " (optimal "
      << csv::format_real(performance_optimal(params.mode, params.K)) << ")\n";
  if (run.failed_cycles > 0) {
    log << "incomplete run: " << run.failure << "\n";
    return kExitRunFailed;
  }
  return kExitOk;
}

int cmd_sweep(const CommandContext& ctx, std::ostream& log) {
  const RunConfig& cfg = ctx.config;
  cfg.validate();
  const SweepSpec spec = cfg.sweep_spec();
  spec.validate();
  const GridPtr grid = cfg.grid();
  const auto dir = prepare_out_dir(ctx.out_dir);

  const SweepTable table = run_sweep(spec, grid, Execution::parallel);
  csv::write_atomic(dir / "sweep.csv", sweep_csv(table));
  if (ctx.reference_cutoff) {
    csv::Table ref({"T_cutoff"});
    ref.row().add(*ctx.reference_cutoff);
    csv::write_atomic(dir / "reference_cutoff.csv", ref.str());
  }
  int failed = 0;
  for (const auto& r : table.rows) {
    if (r.failed) {
      ++failed;
      log << "point K=" << r.K << " T=" << r.T << " M=" << r.M << " failed: " << r.error << "\n";
    }
  }
  log << "sweep: " << table.rows.size() << " points, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitRunFailed;
}

int cmd_predict(const CommandContext& ctx, std::ostream& log) {
  const RunConfig& cfg = ctx.config;
  // the predictor accepts K = 1 (flat trap), so cycle validation is skipped
  cfg.step().validate();
  const PredictSpec spec = cfg.predict_spec();
  const GridPtr grid = cfg.grid();
  const auto dir = prepare_out_dir(ctx.out_dir);
  const auto rows = predict_survival(spec, grid, Execution::parallel);
  csv::write_atomic(dir / "predict.csv", predict_csv(rows));
  int out_of_range = 0;
  for (const auto& r : rows) out_of_range += r.in_range ? 0 : 1;
  log << "predict: " << rows.size() << " rows, " << out_of_range << " outside the predictor range\n";
  return kExitOk;
}

int cmd_print_config(const CommandContext& ctx, std::ostream& out) {
  ctx.config.validate();
  out << format_config(ctx.config);
  return kExitOk;
}

}  // namespace qze
