#pragma once

#include <map>
#include <string>
#include <vector>

#include "atomsim/heating.hpp"
#include "atomsim/types.hpp"

namespace atomsim {

// Tweezer grid snapshot for the planner: per-tone positions of the AOD rows
// and columns plus relative amplitudes.
struct TonePlanEndpoint {
  std::vector<double> col_x;       // strictly increasing by column index
  std::vector<double> row_y;       // strictly increasing by row index
  std::vector<double> col_amp, row_amp;  // endpoint amplitude calibrations
};

// Sampled per-tone trajectories of one move: cubic position interpolation,
// linear amplitude interpolation, rows and columns never crossing.
struct WaveformPlan {
  double duration_us = 0;
  std::vector<double> t_us;                    // sample times
  std::vector<std::vector<double>> col_x;      // [tone][sample]
  std::vector<std::vector<double>> row_y;
  std::vector<std::vector<double>> col_amp;
  std::vector<std::vector<double>> row_amp;

  std::string to_csv() const;  // time_us, tone id, position_um, amplitude
};

struct PlanOptions {
  double sample_rate_mhz = 1.0;  // waveform sampling resolution
};

WaveformPlan plan_moves(const TonePlanEndpoint& start,
                        const TonePlanEndpoint& end, double duration_us,
                        const PlanOptions& opt = {});

// Strict row/column ordering at every sampled time.
bool validate_plan(const WaveformPlan& plan, std::string* why = nullptr);

// Per-move transport summary of a circuit: heating and retention per mobile
// atom and segment.
struct MoveCheck {
  int layer = -1;
  int atom_id = -1;
  double dx = 0, dy = 0, duration_us = 0;
  double delta_n = 0;
  double retention = 1.0;
};
std::vector<MoveCheck> check_circuit_transport(const Circuit& c,
                                               const TrapParams& traps);

}  // namespace atomsim
