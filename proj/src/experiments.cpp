#include "atomsim/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "atomsim/circuit_io.hpp"
#include "atomsim/compile.hpp"
#include "atomsim/engine.hpp"
#include "atomsim/errors.hpp"
#include "atomsim/evaluate.hpp"
#include "atomsim/heating.hpp"
#include "atomsim/interferometry.hpp"
#include "atomsim/pxp.hpp"
#include "atomsim/validate.hpp"

namespace atomsim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "";
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content,
                RunManifest& man) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  man.outputs.push_back(path);
}

std::string shots_csv(const std::vector<ShotRecord>& shots) {
  std::ostringstream ss;
  ss << "shot_id,bitstring,loss_mask\n";
  for (size_t k = 0; k < shots.size(); ++k) {
    ss << k << ",";
    for (size_t q = 0; q < shots[k].n(); ++q) ss << int(shots[k].bit(q));
    ss << ",";
    for (size_t q = 0; q < shots[k].n(); ++q) ss << int(shots[k].is_lost(q));
    ss << "\n";
  }
  return ss.str();
}

NoiseModel stabilizer_noise(const ExperimentConfig& cfg,
                            const std::string& fallback) {
  if (cfg.noise_file == "zero") return NoiseModel::zero();
  if (!cfg.noise_file.empty()) return NoiseModel::load(cfg.noise_file);
  return NoiseModel::load(data_dir() + "/noise/" + fallback + ".json");
}

// ------------------------- code experiments -------------------------

RunManifest run_code_experiment(const ExperimentConfig& cfg,
                                const std::string& code_name,
                                const std::string& default_noise) {
  RunManifest man;
  man.experiment = cfg.experiment;
  man.started = timestamp();

  CodeSpec code = load_code(code_name);
  NoiseModel noise = stabilizer_noise(cfg, default_noise);
  Layout layout = default_layout(code);
  CompiledCircuit cx = compile_code_circuit(code, layout, Setting::Xside);
  CompiledCircuit cz = compile_code_circuit(code, layout, Setting::Zside);

  auto viol = validate_circuit(cx.circuit);
  if (!viol.empty())
    throw std::runtime_error("compiled circuit invalid: " + viol[0].rule);

  auto shots_x = sample_shots(cx.circuit, noise, cfg.shots,
                              RngSpec{cfg.seed, 0});
  auto shots_z = sample_shots(cz.circuit, noise, cfg.shots,
                              RngSpec{cfg.seed, 1000000000ull});
  CodeReport rep = evaluate_code(code, cx, shots_x, cz, shots_z);

  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/report.json", rep.to_json() + "\n", man);
  write_file(cfg.out_dir + "/shots_xside.csv", shots_csv(shots_x), man);
  write_file(cfg.out_dir + "/shots_zside.csv", shots_csv(shots_z), man);
  write_file(cfg.out_dir + "/circuit_xside.json",
             circuit_to_json(cx.circuit) + "\n", man);

  man.config_echo = cfg.echo();
  man.input_hash = fnv1a(cfg.echo() + noise.to_json() +
                         slurp(data_dir() + "/codes/" + code_name + ".json"));
  man.finished = timestamp();
  write_file(cfg.out_dir + "/manifest.json", man.to_json() + "\n", man);
  return man;
}

// ------------------------- bell transport -------------------------

RunManifest run_bell_transport(const ExperimentConfig& cfg) {
  RunManifest man;
  man.experiment = cfg.experiment;
  man.started = timestamp();

  const double kDistance = 55.0;       // um moved per atom
  const double kBaseFidelity = 0.948;  // slow-move Bell fidelity plateau
  TrapParams traps = make_trap(2 * M_PI * 40e3, 26.0, 0.15);

  std::ostringstream csv;
  csv << "speed_um_per_us,duration_us,delta_n,retention,retention_sq,fidelity\n";
  char line[256];
  double knee = 0.0;
  for (int k = 0; k <= 16; ++k) {
    double speed = 0.30 + 0.05 * k;  // average separation speed 2D/T
    double t_us = 2.0 * kDistance / speed;
    MoveSegment seg{0, kDistance, 0.0, t_us};
    double dn = heating_delta_n(seg, traps);
    double ret = retention(dn, traps);
    double ret2 = ret * ret;
    if (ret2 >= 0.999) knee = speed;
    snprintf(line, sizeof line, "%.3f,%.3f,%.6f,%.6f,%.6f,%.6f\n", speed, t_us,
             dn, ret, ret2, kBaseFidelity * ret2);
    csv << line;
  }
  json summary;
  summary["experiment"] = cfg.experiment;
  summary["knee_speed_um_per_us"] = knee;
  summary["base_fidelity"] = kBaseFidelity;

  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/bell_fidelity_vs_speed.csv", csv.str(), man);
  write_file(cfg.out_dir + "/report.json", summary.dump(2) + "\n", man);
  man.config_echo = cfg.echo();
  man.input_hash = fnv1a(cfg.echo());
  man.finished = timestamp();
  write_file(cfg.out_dir + "/manifest.json", man.to_json() + "\n", man);
  return man;
}

// ------------------------- entropy pipeline -------------------------

HamiltonianParams quench_params(int n_atoms) {
  HamiltonianParams p;
  p.n_atoms = n_atoms;
  p.omega = 2 * M_PI * 3.1e6;
  p.delta = 2 * M_PI * 0.3e6;
  p.v0 = 2 * M_PI * 20e6;
  return p;
}

ThreeLevelState initial_state(const std::string& kind, int n) {
  if (kind == "z2") {
    std::vector<int> lv(n, kLvl1);
    for (int i = 0; i < n; i += 2) lv[i] = kLvlR;
    return ThreeLevelState::product(n, lv);
  }
  return ThreeLevelState::all_in(n, kLvl1);  // |gggg...>, g = |1>
}

struct EntropyPoint {
  double t_us;
  std::vector<ShotRecord> shots;
};

// trajectory pool -> pairwise joint sampling
std::vector<ShotRecord> sample_entropy_shots(const ThreeLevelState& evolved,
                                             const HamiltonianParams& p,
                                             const MappingErrorModel& errs,
                                             bool noisy, int n_traj,
                                             size_t n_shots, uint64_t seed,
                                             uint64_t stream_base) {
  std::vector<ShotRecord> shots;
  if (!noisy) {
    MappedState m = coherent_map_ideal(evolved, p);
    Rng rng(seed, stream_base);
    return interfere_and_sample(m, m, n_shots, rng);
  }
  std::vector<MappedState> pool;
  for (int k = 0; k < n_traj; ++k) {
    Rng rng(seed, stream_base + 17 * k + 1);
    pool.push_back(coherent_map(evolved, p, errs, rng));
  }
  size_t n_pairs = 0;
  for (int i = 0; i < n_traj; ++i)
    for (int j = 0; j < n_traj; ++j)
      if (i != j) ++n_pairs;
  size_t per_pair = std::max<size_t>(1, n_shots / n_pairs);
  size_t pair_idx = 0;
  for (int i = 0; i < n_traj; ++i)
    for (int j = 0; j < n_traj; ++j) {
      if (i == j) continue;
      Rng rng(seed, stream_base + 1000 + pair_idx);
      auto s = interfere_and_sample(pool[i], pool[j], per_pair, rng);
      shots.insert(shots.end(), s.begin(), s.end());
      ++pair_idx;
    }
  return shots;
}

RunManifest run_entropy_quench(const ExperimentConfig& cfg) {
  RunManifest man;
  man.experiment = cfg.experiment;
  man.started = timestamp();

  const int n = 8;
  HamiltonianParams p = quench_params(n);
  MappingErrorModel errs = mapping_noise_from_file(cfg.noise_file);
  const bool noisy = !(cfg.noise_file == "zero");

  std::vector<std::vector<int>> subsystems;
  std::vector<std::string> labels;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> left(k);
    for (int i = 0; i < k; ++i) left[i] = i;
    subsystems.push_back(left);
    labels.push_back("left" + std::to_string(k));
  }
  for (int i = 0; i < n; ++i) {
    subsystems.push_back({i});
    labels.push_back("site" + std::to_string(i));
  }

  // global t=0 entropy for the extensive classical offset
  ThreeLevelState s0 = initial_state(cfg.initial, n);
  double s2_global_t0 = 0.0;
  {
    auto shots = sample_entropy_shots(s0, p, errs, noisy, cfg.n_traj,
                                      cfg.shots, cfg.seed, 0);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    EntropyResult g = renyi_entropy(shots, all, n, 0.0);
    if (g.s2_valid) s2_global_t0 = g.s2;
  }

  std::ostringstream csv;
  csv << "t_us,subsystem,purity,s2_raw,s2_offset_subtracted,stderr\n";
  char line[256];
  ThreeLevelState s = s0;
  double t = 0.0;
  uint64_t stream = 1u << 20;
  int step = 0;
  while (t <= cfg.tmax_us + 1e-9) {
    if (step > 0) {
      s = evolve(s, p, cfg.dt_us);
      t += cfg.dt_us;
    }
    auto shots = sample_entropy_shots(s, p, errs, noisy, cfg.n_traj, cfg.shots,
                                      cfg.seed, stream);
    stream += 1u << 20;
    for (size_t a = 0; a < subsystems.size(); ++a) {
      EntropyResult r =
          renyi_entropy(shots, subsystems[a], n, s2_global_t0);
      snprintf(line, sizeof line, "%.4f,%s,%.6f,%.6f,%.6f,%.6f\n", t,
               labels[a].c_str(), r.purity, r.s2_valid ? r.s2 : NAN,
               r.s2_valid ? r.s2 - r.classical_offset : NAN, r.s2_stderror);
      csv << line;
    }
    ++step;
  }

  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/results.csv", csv.str(), man);
  json summary;
  summary["experiment"] = cfg.experiment;
  summary["initial"] = cfg.initial;
  summary["s2_global_t0"] = s2_global_t0;
  write_file(cfg.out_dir + "/report.json", summary.dump(2) + "\n", man);
  man.config_echo = cfg.echo();
  man.input_hash = fnv1a(cfg.echo());
  man.finished = timestamp();
  write_file(cfg.out_dir + "/manifest.json", man.to_json() + "\n", man);
  return man;
}

// ------------------------- scar numerics -------------------------

RunManifest run_scar(const ExperimentConfig& cfg, bool pxp) {
  RunManifest man;
  man.experiment = cfg.experiment;
  man.started = timestamp();
  std::ostringstream csv;
  char line[256];
  if (!pxp) {
    const int n = 8;
    HamiltonianParams p = quench_params(n);
    ThreeLevelState s = initial_state("z2", n);
    csv << "t_us,site,s2_exact,rydberg_population\n";
    double t = 0;
    while (t <= cfg.tmax_us + 1e-9) {
      for (int site = 0; site < n; ++site) {
        double s2 = renyi2(s, {site});
        double pr = 0;
        {
          Eigen::MatrixXcd rho = reduced_density(s, {site});
          pr = std::real(rho(kLvlR, kLvlR));
        }
        snprintf(line, sizeof line, "%.4f,%d,%.6f,%.6f\n", t, site, s2, pr);
        csv << line;
      }
      s = evolve(s, p, cfg.dt_us);
      t += cfg.dt_us;
    }
  } else {
    const int n = 24;
    PxpBasis basis = PxpBasis::build(n);
    uint32_t z2 = 0;
    for (int i = 0; i < n; i += 2) z2 |= 1u << i;
    PxpState s = pxp_initial(basis, z2);
    csv << "t,site,s2,rydberg_population\n";
    double t = 0;
    double dt = cfg.dt_us;  // here: units of 1/Omega
    while (t <= cfg.tmax_us + 1e-9) {
      for (int site : {n / 2 - 1, n / 2}) {
        snprintf(line, sizeof line, "%.4f,%d,%.6f,%.6f\n", t, site,
                 pxp_single_site_s2(basis, s, site),
                 pxp_site_population(basis, s, site));
        csv << line;
      }
      s = pxp_evolve(basis, s, dt);
      t += dt;
    }
  }
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/results.csv", csv.str(), man);
  man.config_echo = cfg.echo();
  man.input_hash = fnv1a(cfg.echo());
  man.finished = timestamp();
  write_file(cfg.out_dir + "/manifest.json", man.to_json() + "\n", man);
  return man;
}

// ------------------------- interferometry benchmark -------------------------

RunManifest run_interferometry_benchmark(const ExperimentConfig& cfg) {
  RunManifest man;
  man.experiment = cfg.experiment;
  man.started = timestamp();

  // identical single-qubit superpositions, swept by pulse area; the error
  // channel is a per-atom uniform Pauli at the rate matching the measured
  // single-particle purity
  const double kTargetPurity = 0.961;
  double mu = 1.0 - std::sqrt(std::max(0.0, 2.0 * kTargetPurity - 1.0));
  const bool noisy = cfg.noise_file != "zero";

  std::ostringstream csv;
  csv << "theta,p00,purity,stderr\n";
  char line[256];
  uint64_t stream = 0;
  for (int k = 0; k <= 12; ++k) {
    double theta = M_PI * k / 12.0;
    size_t n00 = 0;
    Rng rng(cfg.seed, 7000000 + stream++);
    for (size_t shot = 0; shot < cfg.shots; ++shot) {
      // one twin pair per shot
      Eigen::Vector2cd psi(std::cos(theta / 2),
                           Complex(0, -1) * std::sin(theta / 2));
      MappedState c1, c2;
      for (MappedState* c : {&c1, &c2}) {
        c->n_atoms = 1;
        c->lost = {0};
        Eigen::Vector2cd v = psi;
        if (noisy && rng.uniform() < mu) {
          switch (rng.uniform_int(4)) {
            case 1: v = Eigen::Vector2cd(v[1], v[0]); break;                       // X
            case 2: v = Eigen::Vector2cd(Complex(0, -1) * v[1], Complex(0, 1) * v[0]); break;  // Y
            case 3: v[1] = -v[1]; break;                                           // Z
            default: break;
          }
        }
        c->amps = v;
      }
      Rng srng(cfg.seed, 9000000 + stream * 100003 + shot);
      auto shots = interfere_and_sample(c1, c2, 1, srng);
      if (shots[0].bit(0) == 0 && shots[0].bit(1) == 0) ++n00;
    }
    double p00 = double(n00) / cfg.shots;
    double purity = 1.0 - 2.0 * p00;
    double se = 2.0 * std::sqrt(std::max(p00 * (1 - p00), 1e-12) / cfg.shots);
    snprintf(line, sizeof line, "%.6f,%.6f,%.6f,%.6f\n", theta, p00, purity, se);
    csv << line;
  }
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/results.csv", csv.str(), man);
  man.config_echo = cfg.echo();
  man.input_hash = fnv1a(cfg.echo());
  man.finished = timestamp();
  write_file(cfg.out_dir + "/manifest.json", man.to_json() + "\n", man);
  return man;
}

}  // namespace

MappingErrorModel mapping_noise_from_file(const std::string& path_or_tag) {
  if (path_or_tag == "zero") return MappingErrorModel::zero();
  MappingErrorModel m;  // defaults
  if (path_or_tag.empty()) return m;
  json j = json::parse(slurp(path_or_tag));
  m.doppler_sigma_hz = j.value("doppler_sigma_hz", m.doppler_sigma_hz);
  m.gap_time_s = j.value("gap_time_ns", m.gap_time_s * 1e9) * 1e-9;
  m.final_pulse_omega_scale =
      j.value("final_pulse_omega_scale", m.final_pulse_omega_scale);
  m.empirical_decay_rate_hz =
      j.value("empirical_decay_rate_hz", m.empirical_decay_rate_hz);
  m.t0_purity_scale = j.value("t0_purity_scale", m.t0_purity_scale);
  return m;
}

std::string ExperimentConfig::echo() const {
  json j;
  j["experiment"] = experiment;
  j["shots"] = shots;
  j["seed"] = seed;
  j["noise"] = noise_file;
  j["initial"] = initial;
  j["tmax_us"] = tmax_us;
  j["dt_us"] = dt_us;
  j["n_traj"] = n_traj;
  return j.dump();
}

std::string RunManifest::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["version"] = version;
  j["config"] = json::parse(config_echo.empty() ? "{}" : config_echo);
  j["input_hash"] = input_hash;
  j["started"] = started;
  j["finished"] = finished;
  j["outputs"] = outputs;
  return j.dump(2);
}

std::vector<std::string> known_experiments() {
  return {"cluster-fig2",        "steane-fig2",    "surface-code-ed6",
          "toric-code-ed6",      "bell-transport-fig1d",
          "entropy-fig4",        "scar-ed9",       "scar-pxp-ed9",
          "interferometry-ed8"};
}

RunManifest run_experiment(const ExperimentConfig& cfg) {
  const std::string& e = cfg.experiment;
  if (e == "cluster-fig2") return run_code_experiment(cfg, "cluster12", "ed_fig6");
  if (e == "steane-fig2") return run_code_experiment(cfg, "steane7", "ed_fig6");
  if (e == "surface-code-ed6")
    return run_code_experiment(cfg, "surface19", "ed_fig6");
  if (e == "toric-code-ed6")
    return run_code_experiment(cfg, "toric24", "ed_fig6");
  if (e == "bell-transport-fig1d") return run_bell_transport(cfg);
  if (e == "entropy-fig4") return run_entropy_quench(cfg);
  if (e == "scar-ed9") return run_scar(cfg, false);
  if (e == "scar-pxp-ed9") return run_scar(cfg, true);
  if (e == "interferometry-ed8") return run_interferometry_benchmark(cfg);
  throw UnknownExperiment("unknown experiment: " + e);
}

std::string diff_reports(const std::string& a_text, const std::string& b_text) {
  json a = json::parse(a_text), b = json::parse(b_text);
  auto name_of = [](const json& j) {
    if (j.contains("code")) return j.at("code").get<std::string>();
    if (j.contains("experiment")) return j.at("experiment").get<std::string>();
    return std::string();
  };
  if (name_of(a) != name_of(b))
    throw ExperimentMismatch("reports come from different experiments");

  json out = json::array();
  std::function<void(const json&, const json&, std::string)> walk =
      [&](const json& x, const json& y, std::string path) {
        if (x.is_object() && y.is_object()) {
          for (auto& [k, v] : x.items())
            if (y.contains(k)) walk(v, y.at(k), path + "/" + k);
          return;
        }
        if (x.is_array() && y.is_array()) {
          for (size_t i = 0; i < std::min(x.size(), y.size()); ++i)
            walk(x[i], y[i], path + "/" + std::to_string(i));
          return;
        }
        if (x.is_number() && y.is_number()) {
          double xa = x.get<double>(), yb = y.get<double>();
          if (xa == yb) return;
          json d;
          d["metric"] = path;
          d["a"] = xa;
          d["b"] = yb;
          d["delta"] = yb - xa;
          out.push_back(d);
        }
      };
  walk(a, b, "");

  // significance: pair each .../mean delta with sibling stderr values
  for (auto& d : out) {
    std::string path = d["metric"];
    if (path.size() > 5 && path.substr(path.size() - 5) == "/mean") {
      std::string se_path = path.substr(0, path.size() - 5) + "/stderr";
      auto fetch = [&](const json& root) -> double {
        const json* cur = &root;
        std::stringstream ss(se_path);
        std::string tok;
        while (std::getline(ss, tok, '/')) {
          if (tok.empty()) continue;
          if (cur->is_array())
            cur = &(*cur)[std::stoul(tok)];
          else if (cur->contains(tok))
            cur = &cur->at(tok);
          else
            return 0.0;
        }
        return cur->is_number() ? cur->get<double>() : 0.0;
      };
      double sea = fetch(a), seb = fetch(b);
      double sigma = std::sqrt(sea * sea + seb * seb);
      d["sigma"] = sigma;
      d["significant"] =
          sigma > 0 ? std::abs(d["delta"].get<double>()) > 3 * sigma : true;
    }
  }
  return out.dump(2);
}

}  // namespace atomsim
