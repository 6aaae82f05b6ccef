// Batch experiment runner: named reproductions, transport checks and the
// two-qubit gate verifier. Exit codes: 0 ok, 2 validation problem, 3 runtime.

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "atomsim/circuit_io.hpp"
#include "atomsim/cz_pulse.hpp"
#include "atomsim/errors.hpp"
#include "atomsim/experiments.hpp"
#include "atomsim/heating.hpp"
#include "atomsim/layout_search.hpp"
#include "atomsim/validate.hpp"
#include "atomsim/waveform.hpp"

#include <json.hpp>

using namespace atomsim;

namespace {

int cmd_run(const ExperimentConfig& cfg) {
  RunManifest man = run_experiment(cfg);
  std::cout << "experiment " << man.experiment << " done\n";
  for (auto& f : man.outputs) std::cout << "  " << f << "\n";
  return 0;
}

int cmd_transport_check(const std::string& circuit_file, double omega_khz,
                        double n_max) {
  Circuit c = load_circuit(circuit_file);
  auto violations = validate_circuit(c);
  TrapParams traps = make_trap(2 * M_PI * omega_khz * 1e3, n_max);
  auto checks = check_circuit_transport(c, traps);
  printf("layer,atom,dx_um,dy_um,duration_us,delta_n,retention\n");
  for (auto& mc : checks)
    printf("%d,%d,%.3f,%.3f,%.3f,%.4f,%.6f\n", mc.layer, mc.atom_id, mc.dx,
           mc.dy, mc.duration_us, mc.delta_n, mc.retention);
  if (!violations.empty()) {
    fprintf(stderr, "violations:\n");
    for (auto& v : violations)
      fprintf(stderr, "  layer %d: %s (%s)\n", v.layer, v.rule.c_str(),
              v.detail.c_str());
    return 2;
  }
  return 0;
}

int cmd_transport_plan(const std::string& graph_file, double duration_us,
                       const std::string& out_csv) {
  std::ifstream in(graph_file);
  if (!in) throw std::runtime_error("cannot open " + graph_file);
  nlohmann::json j = nlohmann::json::parse(in);
  GraphSpec g;
  g.vertices = j.at("vertices").get<std::vector<int>>();
  for (auto& e : j.at("edges")) g.edges.emplace_back(e.at(0), e.at(1));
  for (auto& s : j.at("sublattice"))
    g.sublattice.push_back(s == "A" ? Sublattice::A : Sublattice::B);
  g.ancilla.assign(g.n(), 0);

  LayoutPlan plan = search_layout(g);
  printf("layers: %zu, total move distance %.1f um\n", plan.layers.size(),
         plan.total_move_distance);
  for (size_t L = 0; L < plan.layers.size(); ++L) {
    printf("layer %zu:", L);
    for (auto& [m, s] : plan.layers[L]) printf(" (%d,%d)", m, s);
    printf("\n");
  }
  if (!out_csv.empty() && plan.stage_positions.size() > 1) {
    // waveform of the first inter-layer move; tones ordered by column
    std::vector<int> order;
    for (auto& [id, p] : plan.stage_positions[0]) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return plan.stage_positions[0].at(x)[0] < plan.stage_positions[0].at(y)[0];
    });
    TonePlanEndpoint a, b;
    for (int id : order) {
      a.col_x.push_back(plan.stage_positions[0].at(id)[0]);
      b.col_x.push_back(plan.stage_positions[1].at(id)[0]);
    }
    a.row_y = {plan.stage_positions[0].at(order[0])[1]};
    b.row_y = {plan.stage_positions[1].at(order[0])[1]};
    WaveformPlan wf = plan_moves(a, b, duration_us);
    std::ofstream out(out_csv);
    out << wf.to_csv();
    printf("waveform written to %s\n", out_csv.c_str());
  }
  return 0;
}

int cmd_cz_verify(double omega_mhz, double blockade_mhz) {
  CZPulseParams p;
  p.omega = 2 * M_PI * omega_mhz * 1e6;
  CZPulseResult r = cz_pulse_unitary(p, 2 * M_PI * blockade_mhz * 1e6);
  printf("process fidelity to CZ (up to common Z(zeta)): %.6f\n",
         r.process_fidelity);
  printf("zeta: %.6f rad\n", r.zeta);
  printf("leakage: %.3e\n", r.leakage);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atom-array circuit and transport simulator"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  auto* run = app.add_subcommand("run", "run a named experiment");
  run->add_option("experiment", cfg.experiment, "experiment name")->required();
  run->add_option("--shots", cfg.shots, "shots per measurement setting");
  run->add_option("--seed", cfg.seed, "random seed");
  run->add_option("--noise", cfg.noise_file, "noise file or 'zero'");
  run->add_option("--out", cfg.out_dir, "output directory");
  run->add_option("--initial", cfg.initial, "quench initial state: ground|z2");
  run->add_option("--tmax", cfg.tmax_us, "quench sweep end, us");
  run->add_option("--dt", cfg.dt_us, "quench sweep step, us");
  run->add_option("--traj", cfg.n_traj, "noise trajectory pool size");

  std::string circuit_file, graph_file, out_csv = "";
  double omega_khz = 40.0, n_max = 26.0, plan_t = 200.0;
  auto* transport = app.add_subcommand("transport", "transport tools");
  transport->require_subcommand(1);
  auto* tcheck = transport->add_subcommand("check", "per-move heating report");
  tcheck->add_option("circuit", circuit_file)->required();
  tcheck->add_option("--omega-khz", omega_khz, "radial trap frequency");
  tcheck->add_option("--n-max", n_max, "loss threshold");
  auto* tplan = transport->add_subcommand("plan", "layout + waveform search");
  tplan->add_option("--graph", graph_file)->required();
  tplan->add_option("--T", plan_t, "move duration, us");
  tplan->add_option("--waveform-csv", out_csv);

  double omega_mhz = 3.6, blockade_mhz = 500.0;
  auto* cz = app.add_subcommand("cz-verify", "two-qubit gate verifier");
  cz->add_option("--omega-mhz", omega_mhz);
  cz->add_option("--blockade-mhz", blockade_mhz);

  ExperimentConfig qcfg;
  qcfg.experiment = "entropy-fig4";
  auto* quench = app.add_subcommand("entropy-quench",
                                    "quench entropy pipeline (entropy-fig4)");
  quench->add_option("--initial", qcfg.initial, "ground|z2");
  quench->add_option("--tmax", qcfg.tmax_us);
  quench->add_option("--dt", qcfg.dt_us);
  quench->add_option("--shots", qcfg.shots);
  quench->add_option("--noise", qcfg.noise_file, "mapping noise file or 'zero'");
  quench->add_option("--seed", qcfg.seed);
  quench->add_option("--traj", qcfg.n_traj);
  quench->add_option("--out", qcfg.out_dir);

  std::string diff_a, diff_b;
  auto* diff = app.add_subcommand("diff", "compare two report.json files");
  diff->add_option("a", diff_a)->required();
  diff->add_option("b", diff_b)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(cfg);
    if (transport->parsed()) {
      if (tcheck->parsed())
        return cmd_transport_check(circuit_file, omega_khz, n_max);
      if (tplan->parsed()) return cmd_transport_plan(graph_file, plan_t, out_csv);
    }
    if (quench->parsed()) return cmd_run(qcfg);
    if (cz->parsed()) return cmd_cz_verify(omega_mhz, blockade_mhz);
    if (diff->parsed()) {
      std::ifstream fa(diff_a), fb(diff_b);
      std::stringstream sa, sb;
      sa << fa.rdbuf();
      sb << fb.rdbuf();
      std::cout << diff_reports(sa.str(), sb.str()) << "\n";
      return 0;
    }
  } catch (const UnknownExperiment& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ExperimentMismatch& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
