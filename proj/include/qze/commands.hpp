#pragma once

// The CLI subcommands, as library functions so they can be tested in-process.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qze/config.hpp"

namespace qze {

enum ExitCode : int {
  kExitOk = 0,
  kExitRunFailed = 1,  // some cycles or sweep points did not complete
  kExitConfig = 2,
  kExitIo = 3,
};

struct CommandContext {
  RunConfig config;
  std::filesystem::path out_dir = ".";
  std::optional<double> reference_cutoff;  // external shortcut-to-adiabaticity cut-off T
};

int cmd_run_cycle(const CommandContext& ctx, std::ostream& log);
int cmd_sweep(const CommandContext& ctx, std::ostream& log);
int cmd_predict(const CommandContext& ctx, std::ostream& log);
int cmd_print_config(const CommandContext& ctx, std::ostream& out);

// CSV renderers, exposed for tests.
std::string cycles_csv(const RunResult& run);
std::string populations_csv(const TraceSink& trace);
std::string densities_csv(const TraceSink& trace, const Grid& grid, bool compact);
std::string sweep_csv(const SweepTable& table);
std::string predict_csv(const std::vector<PredictRow>& rows);

}  // namespace qze
