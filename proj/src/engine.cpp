#include "atomsim/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "atomsim/errors.hpp"

namespace atomsim {

using nlohmann::json;

bool NoiseModel::is_zero() const {
  return tq_layer.total() == 0 && ambient_layer.total() == 0 && init_loss == 0;
}

void NoiseModel::validate() const {
  auto check = [](const PauliChannel& ch, const char* name) {
    for (double p : {ch.px, ch.py, ch.pz, ch.ploss})
      if (p < 0 || p > 1)
        throw std::invalid_argument(std::string("noise: ") + name +
                                    " probability out of range");
    if (ch.total() > 1.0)
      throw std::invalid_argument(std::string("noise: ") + name +
                                  " probabilities sum above 1");
  };
  check(tq_layer, "tq_layer");
  check(ambient_layer, "ambient_layer");
  if (init_loss < 0 || init_loss > 1)
    throw std::invalid_argument("noise: init_loss out of range");
}

NoiseModel NoiseModel::from_json(const std::string& text) {
  json j = json::parse(text);
  NoiseModel m;
  auto ch = [&](const char* key) {
    PauliChannel c;
    if (!j.contains(key)) return c;
    auto& v = j.at(key);
    c.px = v.value("x", 0.0);
    c.py = v.value("y", 0.0);
    c.pz = v.value("z", 0.0);
    c.ploss = v.value("loss", 0.0);
    return c;
  };
  m.tq_layer = ch("tq_layer");
  m.ambient_layer = ch("ambient_layer");
  m.init_loss = j.value("init_loss", 0.0);
  m.validate();
  return m;
}

NoiseModel NoiseModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open noise file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string NoiseModel::to_json() const {
  json j;
  j["tq_layer"] = {{"x", tq_layer.px}, {"y", tq_layer.py},
                   {"z", tq_layer.pz}, {"loss", tq_layer.ploss}};
  j["ambient_layer"] = {{"x", ambient_layer.px}, {"y", ambient_layer.py},
                        {"z", ambient_layer.pz}, {"loss", ambient_layer.ploss}};
  j["init_loss"] = init_loss;
  return j.dump(2);
}

ChannelDraw sample_channel(const PauliChannel& ch, Rng& rng) {
  double u = rng.uniform();
  ChannelDraw d;
  if (u < ch.ploss) {
    d.loss = true;
  } else if (u < ch.ploss + ch.px) {
    d.pauli = Pauli::X;
  } else if (u < ch.ploss + ch.px + ch.py) {
    d.pauli = Pauli::Y;
  } else if (u < ch.total()) {
    d.pauli = Pauli::Z;
  }
  return d;
}

namespace {

int quarter_turns_of(double angle) {
  double k = angle / (M_PI / 2.0);
  double r = std::round(k);
  if (std::abs(k - r) > 1e-9)
    throw NonCliffordAngle("rotation angle " + std::to_string(angle) +
                           " is not a multiple of pi/2");
  return static_cast<int>(r);
}

void rotate_if_alive(StabilizerState& st, size_t q, Axis axis, int turns) {
  if (st.lost(q) || turns % 4 == 0) return;
  st.rotate(q, static_cast<int>(axis), turns);
}

}  // namespace

void apply_layer(StabilizerState& state, const Circuit& c, const Layer& layer) {
  if (std::holds_alternative<MeasureAll>(layer))
    throw std::invalid_argument("apply_layer: measurement handled by sampler");

  if (auto* gr = std::get_if<GlobalRotation>(&layer)) {
    int turns = quarter_turns_of(gr->angle);
    for (size_t q = 0; q < state.n(); ++q)
      rotate_if_alive(state, q, gr->axis, turns);
  } else if (auto* sr = std::get_if<SublatticeRotation>(&layer)) {
    int turns = quarter_turns_of(sr->angle);
    for (int id : sr->targets) {
      int q = c.index_of(id);
      if (q < 0) throw std::invalid_argument("rotation targets unknown atom");
      rotate_if_alive(state, q, sr->axis, turns);
    }
  } else if (auto* cz = std::get_if<ParallelCZ>(&layer)) {
    for (auto& [ia, ib] : cz->pairs) {
      int a = c.index_of(ia), b = c.index_of(ib);
      if (a < 0 || b < 0) throw std::invalid_argument("cz pair unknown atom");
      if (state.lost(a) || state.lost(b)) continue;
      state.cz(a, b);
    }
  } else if (std::holds_alternative<EchoPulse>(layer)) {
    for (size_t q = 0; q < state.n(); ++q)
      rotate_if_alive(state, q, Axis::Y, 2);
  }
  // Move: identity on the tableau
}

ShotRecord run_single_shot(const Circuit& c, const NoiseModel& noise, Rng& rng) {
  const size_t n = c.n();
  StabilizerState st(n);

  for (size_t q = 0; q < n; ++q)
    if (noise.init_loss > 0 && rng.uniform() < noise.init_loss) st.mark_lost(q);

  MeasBasis basis = MeasBasis::Z;
  for (auto& layer : c.layers) {
    if (auto* m = std::get_if<MeasureAll>(&layer)) {
      basis = m->basis;
      break;
    }
    // Noise accounting by parallel layer, fired before the layer acts so a
    // gate error propagates through its own layer: the gate channel on CZ
    // participants, the ambient channel on every qubit once per CZ layer,
    // and a Move layer counting as one additional ambient layer.
    if (auto* cz = std::get_if<ParallelCZ>(&layer)) {
      for (auto& [ia, ib] : cz->pairs) {
        size_t qa = static_cast<size_t>(c.index_of(ia));
        size_t qb = static_cast<size_t>(c.index_of(ib));
        // gate loss takes both partners (a failed blockaded excitation
        // strands the pair); Pauli scattering stays independent per qubit
        if (noise.tq_layer.ploss > 0 && rng.uniform() < noise.tq_layer.ploss) {
          st.mark_lost(qa);
          st.mark_lost(qb);
        }
        double p_rest = noise.tq_layer.px + noise.tq_layer.py + noise.tq_layer.pz;
        for (size_t q : {qa, qb}) {
          if (st.lost(q)) continue;
          double u = rng.uniform();
          if (u < noise.tq_layer.px) st.apply_pauli(q, Pauli::X);
          else if (u < noise.tq_layer.px + noise.tq_layer.py)
            st.apply_pauli(q, Pauli::Y);
          else if (u < p_rest) st.apply_pauli(q, Pauli::Z);
        }
      }
    }
    if (std::holds_alternative<ParallelCZ>(layer) ||
        std::holds_alternative<Move>(layer)) {
      for (size_t q = 0; q < n; ++q) {
        if (st.lost(q)) continue;
        ChannelDraw d = sample_channel(noise.ambient_layer, rng);
        if (d.loss) st.mark_lost(q);
        else if (d.pauli != Pauli::I) st.apply_pauli(q, d.pauli);
      }
    }
    apply_layer(st, c, layer);
  }

  if (basis == MeasBasis::X) {
    // measure Z after Ry(-pi/2), whose inverse maps Z -> X
    for (size_t q = 0; q < n; ++q)
      if (!st.lost(q)) st.rotate(q, 1, -1);
  } else if (basis == MeasBasis::Y) {
    for (size_t q = 0; q < n; ++q)
      if (!st.lost(q)) st.rotate(q, 0, 1);
  }

  std::vector<uint8_t> bits(n, 0), lost(n, 0);
  for (size_t q = 0; q < n; ++q) {
    lost[q] = st.lost(q) ? 1 : 0;
    bits[q] = static_cast<uint8_t>(st.measure_z(q, rng));
  }
  return ShotRecord(std::move(bits), std::move(lost));
}

std::vector<ShotRecord> sample_shots(const Circuit& c, const NoiseModel& noise,
                                     size_t n_shots, RngSpec rng) {
  noise.validate();
  std::vector<ShotRecord> shots(n_shots);

  size_t n_threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("ATOMARRAY_THREADS"))
    n_threads = std::max(1, std::atoi(env));
  n_threads = std::max<size_t>(1, std::min(n_threads, n_shots == 0 ? 1 : n_shots));

  auto worker = [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      Rng r(rng.seed, rng.stream_id + k);
      shots[k] = run_single_shot(c, noise, r);
    }
  };
  if (n_threads <= 1 || n_shots < 256) {
    worker(0, n_shots);
  } else {
    std::vector<std::future<void>> futs;
    size_t chunk = (n_shots + n_threads - 1) / n_threads;
    for (size_t t = 0; t < n_threads; ++t) {
      size_t b = t * chunk, e = std::min(n_shots, b + chunk);
      if (b >= e) break;
      futs.push_back(std::async(std::launch::async, worker, b, e));
    }
    for (auto& f : futs) f.get();
  }
  return shots;
}

StabilizerState ideal_final_state(const Circuit& c) {
  StabilizerState st(c.n());
  for (auto& layer : c.layers) {
    if (std::holds_alternative<MeasureAll>(layer)) break;
    apply_layer(st, c, layer);
  }
  return st;
}

double bell_fidelity_estimator(double pop00, double pop11,
                               double parity_amplitude,
                               bool loss_skew_correction) {
  if (pop00 < 0 || pop00 > 1 || pop11 < 0 || pop11 > 1)
    throw std::invalid_argument("bell_fidelity_estimator: populations in [0,1]");
  double pops = pop00 + pop11;
  if (loss_skew_correction && (pop11 - pop00) > 0.1) pops = 2.0 * pop00;
  return pops / 2.0 + parity_amplitude / 2.0;
}

}  // namespace atomsim
