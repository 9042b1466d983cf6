#pragma once

// One Zeno stroke: a trap ramp interrupted by M selective projections onto the
// instantaneous eigenstate |n(t_k)>, t_k = k T / M for k = 1..M.

#include <string>
#include <vector>

#include "qze/error.hpp"
#include "qze/propagator.hpp"
#include "qze/qho.hpp"

namespace qze {

enum class RenormMode {
  bare,           // apply |n><n| literally; the norm tracks the survival probability
  post_selected,  // restore the pre-measurement norm after every projection
};

const char* to_string(RenormMode mode);
RenormMode parse_renorm_mode(const std::string& text);

struct ZenoConfig {
  int target_level = 0;
  int measurements = 0;  // M; 0 is a plain ramp
  RenormMode renorm = RenormMode::bare;
  std::size_t record_stride = 0;   // steps between population snapshots, 0 = off
  std::size_t density_stride = 0;  // steps between |psi|^2 snapshots, 0 = off
  int n_max = kDefaultLevelCutoff;

  void validate() const;
};

struct PopulationSample {
  double t = 0.0;
  double f = 0.0;
  Populations populations;
};

struct DensitySample {
  double t = 0.0;
  std::vector<double> density;
};

struct StrokeResult {
  explicit StrokeResult(Wavefunction psi) : psi_final(std::move(psi)) {}

  Wavefunction psi_final;
  double survival = 1.0;                  // product of per-measurement survivals
  std::vector<double> survival_factors;   // one per completed measurement
  double energy_start = 0.0;              // <H(f_start)> on entry
  double energy_end = 0.0;                // <H(f_end)> on exit
  double work = 0.0;                      // energy_end - energy_start
  double back_action_energy = 0.0;        // energy removed by the projections
  double max_edge_density = 0.0;
  std::vector<PopulationSample> population_trace;
  std::vector<DensitySample> density_trace;
};

/// Raised when a projection hits a state orthogonal to the target; carries the
/// record up to the failing measurement.
class DegenerateTrajectoryError : public Error {
 public:
  DegenerateTrajectoryError(const std::string& what, StrokeResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const StrokeResult& partial() const { return partial_; }

 private:
  StrokeResult partial_;
};

StrokeResult zeno_stroke(SplitStepPropagator& propagator, const Wavefunction& psi,
                         const TrapProtocol& protocol, const ZenoConfig& cfg);
StrokeResult zeno_stroke(const Wavefunction& psi, const TrapProtocol& protocol,
                         const ZenoConfig& cfg, const StepParams& step);

inline double survival_of(const StrokeResult& result) { return result.survival; }

}  // namespace qze
