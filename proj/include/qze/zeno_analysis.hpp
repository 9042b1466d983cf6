#pragma once

// Short-time perturbative predictors for Zeno strokes, and sweep orchestration.
//
// Starting in |k(t0)>, the population leaking into |n> after a short time t is
//   P_n(t) ~ (Hdot_kn / (E_n - E_k))^2 t^2,   Hdot = f fdot x^2.
// x^2 has even parity, so only n = k +- 2 are reached. With measurements every
// tau = T/M the survival over the stroke is the product over intervals of
// (1 - sum_n P_n(tau)), each interval's coefficient taken at its start.

#include <string>
#include <vector>

#include "qze/thermo_cycle.hpp"

namespace qze {

/// <m|x^2|n> at frequency f.
double x2_element(int m, int n, double f);

/// Leakage out of level k after time t, starting from t0 within the protocol.
/// Throws DomainError for k < 0.
double leakage_estimate(int k, const TrapProtocol& protocol, double t, double t0 = 0.0);

/// prod_{j<M} (1 - leakage_estimate(k, protocol, T/M, j T/M)), clipped to [0, 1].
/// Throws PredictorRangeError if any interval's leakage reaches 1.
double zeno_survival_estimate(int k, const TrapProtocol& protocol, int M);

/// (K - 1) / (M T), i.e. fdot / M.
double adiabaticity_parameter(double K, int M, double T);

struct SweepSpec {
  std::vector<double> K_values;
  std::vector<double> T_values;
  std::vector<int> M_values;
  CycleParams base{};
  int cycles_per_point = 20;

  void validate() const;
  std::size_t size() const { return K_values.size() * T_values.size() * M_values.size(); }
};

/// Reduced raster used to reproduce the COP maps: 3 K x 6 T x 6 M, 20 cycles per
/// point. With full = true: 100 cycles per point on a 10 x 11 (T, M) raster.
SweepSpec default_cop_raster(bool full = false);

struct SweepRow {
  double K = 0.0;
  double T = 0.0;
  int M = 0;
  double omega_T = 0.0;
  double performance_bar = 0.0;  // xi_bar or eta_bar
  double performance_opt = 0.0;
  double gap = 0.0;              // performance_opt - performance_bar
  double mean_survival = 0.0;
  double adiab_param = 0.0;
  int failed_cycles = 0;         // excluded + not completed
  bool failed = false;
  std::string error;
};

struct SweepTable {
  MachineMode mode = MachineMode::heat_pump;
  std::vector<SweepRow> rows;  // ordered by K, then T, then M
};

enum class Execution { serial, parallel };

/// One run_cycles per point. Points run concurrently under Execution::parallel,
/// but the rows are always in input order and bit-identical to the serial path.
SweepTable run_sweep(const SweepSpec& spec, const GridPtr& grid = default_grid(),
                     Execution exec = Execution::parallel);

struct PredictRow {
  int M = 0;
  double leakage_per_interval = 0.0;  // first interval
  double survival_estimate = 0.0;     // NaN when out of range
  bool in_range = true;
  double simulated_survival = 0.0;    // NaN unless simulated
  double ratio = 0.0;                 // (1 - simulated) / (1 - estimate), NaN if undefined
};

struct PredictSpec {
  int level = 1;
  double K = 5.0;
  double T = 5e-2;
  std::vector<int> M_values{10, 100, 1000};
  bool simulate = false;
  StepParams step{};
};

/// Compares the survival law against simulated strokes on the ramp 1 -> K
/// starting in |level(f=1)>.
std::vector<PredictRow> predict_survival(const PredictSpec& spec,
                                         const GridPtr& grid = default_grid(),
                                         Execution exec = Execution::parallel);

}  // namespace qze
