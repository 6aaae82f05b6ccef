#include "atomsim/evaluate.hpp"

#include <cmath>

#include <json.hpp>

namespace atomsim {

using nlohmann::json;

int observable_outcome(const MeasuredObservable& o, const ShotRecord& shot) {
  int parity = shot_parity(shot, o.support);
  return o.sign * (parity ? -1 : +1);
}

namespace {

Estimate mean_of(const std::vector<int>& vals) {
  Estimate e;
  e.n_shots = vals.size();
  if (vals.empty()) return e;
  long s = 0;
  for (int v : vals) s += v;
  e.mean = static_cast<double>(s) / vals.size();
  double var = 1.0 - e.mean * e.mean;
  e.stderror = std::sqrt(std::max(0.0, var) / vals.size());
  return e;
}

struct SideEval {
  std::vector<Estimate> stab_means;
  double pass_fraction = 0;
  // per logical: raw / detected / corrected outcome lists
  std::vector<std::vector<int>> raw, detected, corrected;
};

SideEval evaluate_side(const CodeSpec& code, const CompiledCircuit& cc,
                       const std::vector<ShotRecord>& shots,
                       const std::vector<MeasuredObservable>& logicals) {
  SideEval ev;
  const auto& stabs = cc.stabilizers;
  std::vector<std::vector<int>> stab_vals(stabs.size());
  ev.raw.resize(logicals.size());
  ev.detected.resize(logicals.size());
  ev.corrected.resize(logicals.size());

  // map compiled stabilizers back to positions in code.stabilizers for the
  // decoder's syndrome ordering
  std::vector<int> code_index(stabs.size(), -1);
  for (size_t i = 0; i < stabs.size(); ++i)
    for (size_t j = 0; j < code.stabilizers.size(); ++j)
      if (code.stabilizers[j].name == stabs[i].name)
        code_index[i] = static_cast<int>(j);

  size_t n_pass = 0;
  const bool can_decode = code.decoder != DecoderKind::None;
  for (auto& shot : shots) {
    bool pass = true;
    Syndrome syn;
    syn.values.assign(code.stabilizers.size(), +1);
    for (size_t i = 0; i < stabs.size(); ++i) {
      int v = observable_outcome(stabs[i], shot);
      stab_vals[i].push_back(v);
      syn.values[code_index[i]] = v;
      if (v < 0) pass = false;
    }
    if (pass) ++n_pass;

    PauliString corr;
    if (can_decode && !logicals.empty()) corr = decode(syn, code);

    for (size_t k = 0; k < logicals.size(); ++k) {
      int v = observable_outcome(logicals[k], shot);
      ev.raw[k].push_back(v);
      if (pass) ev.detected[k].push_back(v);
      if (can_decode) {
        int overlap = 0;
        for (size_t q : logicals[k].support)
          if (corr.ops.size() > q && corr.ops[q] != Pauli::I &&
              corr.ops[q] != logicals[k].code_op.ops[q])
            overlap ^= 1;
        ev.corrected[k].push_back(overlap ? -v : v);
      }
    }
  }
  ev.pass_fraction = shots.empty() ? 0.0 : double(n_pass) / shots.size();
  for (auto& vals : stab_vals) ev.stab_means.push_back(mean_of(vals));
  return ev;
}

}  // namespace

CodeReport evaluate_code(const CodeSpec& code, const CompiledCircuit& cx,
                         const std::vector<ShotRecord>& shots_x,
                         const CompiledCircuit& cz,
                         const std::vector<ShotRecord>& shots_z) {
  CodeReport rep;
  rep.code = code.name;
  rep.shots_x = shots_x.size();
  rep.shots_z = shots_z.size();

  SideEval ex = evaluate_side(code, cx, shots_x, cx.logicals_x);
  SideEval ez = evaluate_side(code, cz, shots_z, cz.logicals_z);

  for (size_t i = 0; i < cx.stabilizers.size(); ++i)
    rep.stabilizers.push_back({cx.stabilizers[i].name, 'x',
                               ex.stab_means[i].mean,
                               ex.stab_means[i].stderror});
  for (size_t i = 0; i < cz.stabilizers.size(); ++i)
    rep.stabilizers.push_back({cz.stabilizers[i].name, 'z',
                               ez.stab_means[i].mean,
                               ez.stab_means[i].stderror});

  for (size_t k = 0; k < code.logicals.size(); ++k) {
    LogicalResult lr;
    lr.index = static_cast<int>(k);
    lr.distance = code.logicals[k].distance;
    if (k < ex.raw.size()) {
      lr.x_raw = mean_of(ex.raw[k]);
      lr.x_detected = mean_of(ex.detected[k]);
      lr.x_corrected = mean_of(ex.corrected[k]);
    }
    if (k < ez.raw.size()) {
      lr.z_raw = mean_of(ez.raw[k]);
      lr.z_detected = mean_of(ez.detected[k]);
      lr.z_corrected = mean_of(ez.corrected[k]);
    }
    rep.logicals.push_back(lr);
  }

  rep.pass_fraction_x = ex.pass_fraction;
  rep.pass_fraction_z = ez.pass_fraction;
  double total = double(rep.shots_x + rep.shots_z);
  rep.pass_fraction =
      total > 0
          ? (ex.pass_fraction * rep.shots_x + ez.pass_fraction * rep.shots_z) /
                total
          : 0.0;
  return rep;
}

std::string CodeReport::to_json() const {
  json j;
  j["code"] = code;
  j["shots_x"] = shots_x;
  j["shots_z"] = shots_z;
  json stabs = json::array();
  for (auto& s : stabilizers)
    stabs.push_back({{"name", s.name},
                     {"type", std::string(1, s.type)},
                     {"mean", s.mean},
                     {"stderr", s.stderror}});
  j["stabilizers"] = stabs;
  json logi = json::array();
  for (auto& l : logicals) {
    auto est = [](const Estimate& e) {
      return json{{"mean", e.mean}, {"stderr", e.stderror}, {"n", e.n_shots}};
    };
    logi.push_back({{"index", l.index},
                    {"distance", l.distance},
                    {"x_raw", est(l.x_raw)},
                    {"x_detected", est(l.x_detected)},
                    {"x_corrected", est(l.x_corrected)},
                    {"z_raw", est(l.z_raw)},
                    {"z_detected", est(l.z_detected)},
                    {"z_corrected", est(l.z_corrected)}});
  }
  j["logicals"] = logi;
  j["pass_fraction_x"] = pass_fraction_x;
  j["pass_fraction_z"] = pass_fraction_z;
  j["pass_fraction"] = pass_fraction;
  return j.dump(2);
}

}  // namespace atomsim
