#include "atomsim/waveform.hpp"

#include <cmath>
#include <sstream>

#include "atomsim/errors.hpp"

namespace atomsim {

namespace {
void require_ordering(const std::vector<double>& a, const char* what) {
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i] <= a[i - 1])
      throw OrderingViolation(std::string(what) +
                              " tones not strictly increasing");
}
}  // namespace

WaveformPlan plan_moves(const TonePlanEndpoint& start,
                        const TonePlanEndpoint& end, double duration_us,
                        const PlanOptions& opt) {
  if (start.col_x.size() != end.col_x.size() ||
      start.row_y.size() != end.row_y.size())
    throw OrderingViolation("endpoint tone counts differ");
  if (duration_us <= 0)
    throw std::invalid_argument("plan_moves: duration must be positive");
  require_ordering(start.col_x, "start column");
  require_ordering(start.row_y, "start row");
  // only stretches, compressions and translations: the target must keep the
  // tone order
  require_ordering(end.col_x, "target column");
  require_ordering(end.row_y, "target row");

  WaveformPlan plan;
  plan.duration_us = duration_us;
  size_t n_samp =
      std::max<size_t>(2, static_cast<size_t>(duration_us * opt.sample_rate_mhz) + 1);
  auto amp = [](const std::vector<double>& a, size_t i) {
    return i < a.size() ? a[i] : 1.0;
  };
  plan.col_x.assign(start.col_x.size(), {});
  plan.col_amp.assign(start.col_x.size(), {});
  plan.row_y.assign(start.row_y.size(), {});
  plan.row_amp.assign(start.row_y.size(), {});
  for (size_t k = 0; k < n_samp; ++k) {
    double s = static_cast<double>(k) / (n_samp - 1);
    double w = cubic_position(s);
    plan.t_us.push_back(s * duration_us);
    for (size_t c = 0; c < start.col_x.size(); ++c) {
      plan.col_x[c].push_back(start.col_x[c] +
                              (end.col_x[c] - start.col_x[c]) * w);
      plan.col_amp[c].push_back(amp(start.col_amp, c) +
                                (amp(end.col_amp, c) - amp(start.col_amp, c)) * s);
    }
    for (size_t r = 0; r < start.row_y.size(); ++r) {
      plan.row_y[r].push_back(start.row_y[r] +
                              (end.row_y[r] - start.row_y[r]) * w);
      plan.row_amp[r].push_back(amp(start.row_amp, r) +
                                (amp(end.row_amp, r) - amp(start.row_amp, r)) * s);
    }
  }
  std::string why;
  if (!validate_plan(plan, &why)) throw OrderingViolation(why);
  return plan;
}

bool validate_plan(const WaveformPlan& plan, std::string* why) {
  auto check = [&](const std::vector<std::vector<double>>& tones,
                   const char* what) {
    for (size_t k = 0; k < plan.t_us.size(); ++k)
      for (size_t i = 1; i < tones.size(); ++i)
        if (tones[i][k] <= tones[i - 1][k]) {
          if (why) {
            std::ostringstream ss;
            ss << what << " tones " << i - 1 << "," << i << " cross at t="
               << plan.t_us[k] << " us";
            *why = ss.str();
          }
          return false;
        }
    return true;
  };
  return check(plan.col_x, "column") && check(plan.row_y, "row");
}

std::string WaveformPlan::to_csv() const {
  std::ostringstream ss;
  ss << "time_us,tone,position_um,amplitude\n";
  char buf[128];
  for (size_t k = 0; k < t_us.size(); ++k) {
    for (size_t c = 0; c < col_x.size(); ++c) {
      snprintf(buf, sizeof buf, "%.6f,col%zu,%.6f,%.6f\n", t_us[k], c,
               col_x[c][k], col_amp[c][k]);
      ss << buf;
    }
    for (size_t r = 0; r < row_y.size(); ++r) {
      snprintf(buf, sizeof buf, "%.6f,row%zu,%.6f,%.6f\n", t_us[k], r,
               row_y[r][k], row_amp[r][k]);
      ss << buf;
    }
  }
  return ss.str();
}

std::vector<MoveCheck> check_circuit_transport(const Circuit& c,
                                               const TrapParams& traps) {
  std::vector<MoveCheck> out;
  for (size_t li = 0; li < c.layers.size(); ++li) {
    auto* mv = std::get_if<Move>(&c.layers[li]);
    if (!mv) continue;
    for (auto& w : mv->displacements) {
      MoveCheck mc;
      mc.layer = static_cast<int>(li);
      mc.atom_id = w.id;
      mc.dx = w.dx;
      mc.dy = w.dy;
      mc.duration_us = mv->duration_us;
      MoveSegment seg{w.id, w.dx, w.dy, mv->duration_us};
      mc.delta_n = heating_delta_n(seg, traps);
      mc.retention = retention(mc.delta_n, traps);
      out.push_back(mc);
    }
  }
  return out;
}

}  // namespace atomsim
