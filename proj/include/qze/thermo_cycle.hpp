#pragma once

// Otto-type cycles with Zeno strokes in place of the adiabats, and their heat
// and work bookkeeping. Heat is Q = sum_n E_n dP_n over a ladder stroke at
// fixed frequency; work is the energy change across a Zeno stroke.
//
// Heat pump (inverse Otto), starting at A = |0(f=1)>:
//   A -> D  raise at f = 1          Q_in  = sum E_n(1) [P_n(D) - P_n(A)]
//   D -> C  Zeno stroke on |1>, 1 -> K
//   C -> B  lower at f = K          Q_out = sum E_n(K) [P_n(B) - P_n(C)]
//   B -> A  Zeno stroke on |0>, K -> 1
//   xi = Q_out / (Q_out + Q_in), ideally K / (K - 1)
//
// Engine (Otto):
//   A -> B  Zeno stroke on |0>, 1 -> K
//   B -> C  raise at f = K          Q_in  = sum E_n(K) [P_n(C) - P_n(B)]
//   C -> D  Zeno stroke on |1>, K -> 1
//   D -> A  lower at f = 1          Q_out = sum E_n(1) [P_n(A) - P_n(D)]
//   eta = (Q_in + Q_out) / Q_in, ideally (K - 1) / K

#include <string>
#include <vector>

#include "qze/zeno_stroke.hpp"

namespace qze {

enum class MachineMode { heat_pump, engine };

const char* to_string(MachineMode mode);
MachineMode parse_machine_mode(const std::string& text);

/// Heat or efficiency denominators smaller than this mark a cycle as excluded.
inline constexpr double kVanishingHeat = 1e-12;

struct CycleParams {
  double K = 5.0;         // compression ratio f_max / f_min
  double T = 0.1;         // Zeno stroke duration
  int M = 2500;           // measurements per Zeno stroke
  StepParams step{};
  int n_cycles = 10;
  MachineMode mode = MachineMode::heat_pump;
  RenormMode renorm = RenormMode::bare;
  bool ladder_renorm = false;
  int n_max = kDefaultLevelCutoff;
  std::size_t record_stride = 0;
  std::size_t density_stride = 0;

  void validate() const;
};

/// M = round(Omega * T), at least 1.
int measurements_for_rate(double omega, double T);

struct CycleRecord {
  int index = 0;
  double q_in = 0.0;
  double q_out = 0.0;
  double w_compress = 0.0;  // Zeno stroke 1 -> K
  double w_expand = 0.0;    // Zeno stroke K -> 1
  double performance = 0.0;  // xi (heat pump) or eta (engine)
  bool valid = false;        // false when the performance denominator vanished
  Populations at_a, at_b, at_c, at_d;
  double survival_first = 1.0;   // first Zeno stroke of the cycle
  double survival_second = 1.0;  // second Zeno stroke of the cycle
  double norm_start = 0.0;
  double norm_end = 0.0;
  double energy_change = 0.0;     // <H(1)> at A' minus at A
  double closure_residual = 0.0;  // Q_in + Q_out + W_net - energy_change
  double back_action_energy = 0.0;
  double max_edge_density = 0.0;
};

struct TraceSink {
  std::vector<PopulationSample> populations;
  std::vector<DensitySample> densities;
};

struct CycleOutcome {
  Wavefunction state;  // state at A' (start of the next cycle)
  CycleRecord record;
};

/// Runs cycles on one grid with one propagator; keeps a global clock for traces.
class CycleRunner {
 public:
  CycleRunner(GridPtr grid, CycleParams params);

  const CycleParams& params() const { return params_; }
  Wavefunction initial_state() const;

  CycleOutcome heat_pump_cycle(const Wavefunction& psi_a, int index = 0);
  CycleOutcome engine_cycle(const Wavefunction& psi_a, int index = 0);
  CycleOutcome cycle(const Wavefunction& psi_a, int index = 0);

  const TraceSink& trace() const { return trace_; }
  TraceSink take_trace() { return std::move(trace_); }

 private:
  StrokeResult stroke(const Wavefunction& psi, double f_from, double f_to, int level);
  Wavefunction ladder(const Wavefunction& psi, double f, Ladder direction);
  void snapshot(const Wavefunction& psi, double f);

  GridPtr grid_;
  CycleParams params_;
  SplitStepPropagator propagator_;
  TraceSink trace_;
  double clock_ = 0.0;
};

CycleOutcome heat_pump_cycle(const Wavefunction& psi_a, const CycleParams& params);
CycleOutcome engine_cycle(const Wavefunction& psi_a, const CycleParams& params);

struct RunResult {
  std::vector<CycleRecord> records;
  double performance_bar = 0.0;  // mean xi or eta over valid cycles
  int excluded_cycles = 0;       // completed but with vanishing denominator
  int failed_cycles = 0;         // not completed (degenerate trajectory)
  std::string failure;
  double mean_survival = 0.0;    // over both strokes of completed cycles
  TraceSink trace;
};

/// Runs params.n_cycles cycles from |0(f=1)>, carrying the state over. Throws
/// RunFailedError if no cycle yields a valid performance value.
RunResult run_cycles(const CycleParams& params, const GridPtr& grid = default_grid());

/// K / (K - 1); throws DomainError for K <= 1.
double cop_optimal(double K);
/// (K - 1) / K; throws DomainError for K <= 1.
double eta_optimal(double K);
double performance_optimal(MachineMode mode, double K);

}  // namespace qze
