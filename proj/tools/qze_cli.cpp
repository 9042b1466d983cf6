// qze: run-cycle | sweep | predict | print-config

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "qze/commands.hpp"
#include "qze/error.hpp"

namespace {

void set_threads(int requested) {
  if (requested > 0) {
    omp_set_num_threads(requested);
    return;
  }
  if (const char* env = std::getenv("THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeno heat pump / engine simulator on a harmonic trap"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  int threads = 0;
  std::optional<double> reference_cutoff;

  app.add_option("--config", config_path, "configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "override, section.key=value (repeatable)");
  app.add_option("--out-dir", out_dir, "directory for CSV output");
  app.add_option("--reference-cutoff", reference_cutoff,
                 "externally computed shortcut-to-adiabaticity cut-off T, copied to the sweep output");
  app.add_option("--threads", threads, "OpenMP threads (default: $THREADS or runtime default)");

  auto* run_cycle = app.add_subcommand("run-cycle", "run n_cycles machine cycles");
  auto* sweep = app.add_subcommand("sweep", "performance over the (K, T, M) raster");
  auto* predict = app.add_subcommand("predict", "compare the survival estimate with simulation");
  auto* print_config = app.add_subcommand("print-config", "print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? qze::kExitOk : qze::kExitConfig;
  }

  set_threads(threads);

  qze::CommandContext ctx;
  ctx.out_dir = out_dir;
  ctx.reference_cutoff = reference_cutoff;
  try {
    if (!config_path.empty()) qze::apply_config_file(ctx.config, config_path);
    for (const auto& o : overrides) qze::apply_override(ctx.config, o);

    if (*run_cycle) return qze::cmd_run_cycle(ctx, std::cerr);
    if (*sweep) return qze::cmd_sweep(ctx, std::cerr);
    if (*predict) return qze::cmd_predict(ctx, std::cerr);
    if (*print_config) return qze::cmd_print_config(ctx, std::cout);
  } catch (const qze::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qze::kExitIo;
  } catch (const qze::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return qze::kExitConfig;
  } catch (const qze::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return qze::kExitConfig;
  } catch (const qze::RunFailedError& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return qze::kExitRunFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qze::kExitRunFailed;
  }
  return qze::kExitOk;
}
