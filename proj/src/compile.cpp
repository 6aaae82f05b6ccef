#include "atomsim/compile.hpp"

#include <cmath>

#include "atomsim/errors.hpp"

namespace atomsim {

Layout default_layout(const CodeSpec& code) {
  Layout l;
  for (size_t v = 0; v < code.n(); ++v)
    l[static_cast<int>(v)] = {code.positions[v][0], code.positions[v][1]};
  return l;
}

namespace {

// Forward-conjugate a Pauli through every layer after position `from`.
void push_through(PauliOp& op, const Circuit& c, size_t from) {
  for (size_t li = from; li < c.layers.size(); ++li) {
    const Layer& layer = c.layers[li];
    if (auto* cz = std::get_if<ParallelCZ>(&layer)) {
      for (auto& [a, b] : cz->pairs)
        op.conj_cz(static_cast<size_t>(c.index_of(a)),
                   static_cast<size_t>(c.index_of(b)));
    } else if (auto* gr = std::get_if<GlobalRotation>(&layer)) {
      int turns = static_cast<int>(std::round(gr->angle / (M_PI / 2)));
      for (size_t q = 0; q < op.n(); ++q)
        op.conj_rotation(q, static_cast<int>(gr->axis), turns);
    } else if (auto* sr = std::get_if<SublatticeRotation>(&layer)) {
      int turns = static_cast<int>(std::round(sr->angle / (M_PI / 2)));
      for (int id : sr->targets)
        op.conj_rotation(static_cast<size_t>(c.index_of(id)),
                         static_cast<int>(sr->axis), turns);
    }
    // EchoPulse is itself a Pauli layer: conjugating one Pauli frame by
    // another changes at most its sign, which the frame does not carry.
    // Move and MeasureAll leave Paulis alone.
  }
}

}  // namespace

PauliOp echo_frame(const Circuit& c) {
  PauliOp frame(c.n());
  for (size_t li = 0; li < c.layers.size(); ++li) {
    if (!std::holds_alternative<EchoPulse>(c.layers[li])) continue;
    PauliOp echo(c.n());
    for (size_t q = 0; q < c.n(); ++q) echo.set(q, Pauli::Y);
    push_through(echo, c, li + 1);
    frame.lmul(echo);
  }
  return frame;
}

int measured_sign(const CodeSpec& code, const Circuit& circuit,
                  Setting setting, const PauliString& op) {
  const size_t n = code.n();
  // graph-basis form of the operator: pull back through the code rotation
  PauliOp graph_form = op.to_op();
  graph_form.set_phase(0);
  if (code.code_rotation) {
    for (int v : code.graph.in_sublattice(*code.code_rotation))
      graph_form.conj_rotation(static_cast<size_t>(v), 1, -1);
  }

  // readout parity operator pulled back through the measurement rotation
  PauliOp readout(n);
  for (size_t q = 0; q < n; ++q)
    if (op.ops[q] != Pauli::I) readout.set(q, Pauli::Z);
  PauliOp pulled = readout;
  for (int v : code.graph.in_sublattice(code.rotate_for(setting)))
    pulled.conj_rotation(static_cast<size_t>(v), 1, -1);

  if (!pulled.same_letters(graph_form))
    throw BasisMismatch("operator " + op.to_string() +
                        " not measurable in this setting");

  int s1 = pulled.sign();

  // echo frame commutation with the readout parity
  PauliOp frame = echo_frame(circuit);
  int chi = frame.commutes_with(readout) ? +1 : -1;

  // Deterministic operators (graph-group members) carry the sign that makes
  // the ideal preparation read +1: the echoes and rotation directions just
  // redefine stabilizer signs. Indeterminate operators (logical Z on a
  // |+>_L preparation) keep plain operator semantics.
  std::vector<uint8_t> want_z(n, 0);
  for (auto& [a, b] : code.graph.edges) {
    if (graph_form.xbit(b)) want_z[a] ^= 1;
    if (graph_form.xbit(a)) want_z[b] ^= 1;
  }
  bool deterministic = true;
  for (size_t q = 0; q < n; ++q)
    if (graph_form.zbit(q) != want_z[q]) deterministic = false;

  if (deterministic) {
    PauliOp prod(n);
    auto gens = graph_stabilizers(code.graph);
    for (size_t v = 0; v < n; ++v)
      if (graph_form.xbit(v)) prod.lmul(gens[v].to_op());
    int gamma = prod.sign();
    return chi * s1 * gamma;
  }
  return chi * s1 * graph_form.sign() * op.sign;
}

CompiledCircuit compile_code_circuit(const CodeSpec& code, const Layout& layout,
                                     Setting setting) {
  const size_t n = code.n();
  for (size_t v = 0; v < n; ++v)
    if (!layout.count(static_cast<int>(v)))
      throw LayoutMismatch("layout missing vertex " + std::to_string(v));
  if (layout.size() != n)
    throw LayoutMismatch("layout lists atoms outside the graph");

  CompiledCircuit out;
  out.setting = setting;
  Circuit& c = out.circuit;
  c.name = code.name + (setting == Setting::Xside ? ":Xside" : ":Zside");
  c.code_ref = code.name;

  // AOD grid assignment for the mobile sublattice: columns ordered by x,
  // rows by y of the initial layout.
  Sublattice mobile = Sublattice::A;
  {
    // mobile sublattice = the one whose atoms appear in move stages; fall
    // back to A when the code never moves.
    std::vector<uint8_t> moves_atom(n, 0);
    for (auto& st : code.moves)
      for (auto& t : st.targets) moves_atom[static_cast<size_t>(t[0])] = 1;
    int votes_a = 0, votes_b = 0;
    for (size_t v = 0; v < n; ++v)
      if (moves_atom[v])
        (code.graph.sublattice[v] == Sublattice::A ? votes_a : votes_b)++;
    mobile = votes_b > votes_a ? Sublattice::B : Sublattice::A;
  }
  std::vector<int> mob = code.graph.in_sublattice(mobile);
  std::vector<double> xs, ys;
  for (int v : mob) {
    xs.push_back(layout.at(v)[0]);
    ys.push_back(layout.at(v)[1]);
  }
  auto rank_of = [](std::vector<double> vals, double v) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               vals.end());
    for (size_t i = 0; i < vals.size(); ++i)
      if (std::abs(vals[i] - v) < 1e-9) return static_cast<int>(i);
    return -1;
  };

  for (size_t v = 0; v < n; ++v) {
    AtomRecord a;
    a.id = static_cast<int>(v);
    a.x = layout.at(a.id)[0];
    a.y = layout.at(a.id)[1];
    if (code.graph.sublattice[v] == mobile) {
      a.trap = TrapKind::MobileAOD;
      a.col = rank_of(xs, a.x);
      a.row = rank_of(ys, a.y);
    }
    c.atoms.push_back(a);
  }

  c.layers.push_back(GlobalRotation{Axis::Y, M_PI / 2});

  // track positions so move stages emit displacements
  std::map<int, std::array<double, 2>> pos;
  for (auto& [id, p] : layout) pos[id] = p;
  auto emit_move = [&](const MoveStage& st) {
    Move m;
    m.duration_us = st.duration_us;
    for (auto& t : st.targets) {
      int id = static_cast<int>(t[0]);
      double dx = t[1] - pos[id][0], dy = t[2] - pos[id][1];
      if (std::abs(dx) < 1e-12 && std::abs(dy) < 1e-12) continue;
      m.displacements.push_back({id, dx, dy});
      pos[id] = {t[1], t[2]};
    }
    if (!m.displacements.empty()) c.layers.push_back(std::move(m));
  };

  const size_t L = code.cz_layers.size();
  for (size_t k = 0; k < L; ++k) {
    c.layers.push_back(ParallelCZ{code.cz_layers[k]});
    bool last = (k + 1 == L);
    if (!last || L % 2 == 1) c.layers.push_back(EchoPulse{});
    if (!last && k < code.moves.size()) emit_move(code.moves[k]);
  }

  SublatticeRotation rot;
  rot.axis = Axis::Y;
  rot.angle = M_PI / 2;
  for (int v : code.graph.in_sublattice(code.rotate_for(setting)))
    rot.targets.push_back(v);
  c.layers.push_back(rot);
  c.layers.push_back(MeasureAll{MeasBasis::Z});

  // per-atom readout basis in the code frame: rotated-set XOR code-rotation
  out.meas.name = setting == Setting::Xside ? "Xside" : "Zside";
  out.meas.basis.assign(n, MeasBasis::Z);
  for (size_t v = 0; v < n; ++v) {
    bool in_t = code.graph.sublattice[v] == code.rotate_for(setting);
    bool in_r = code.code_rotation &&
                code.graph.sublattice[v] == *code.code_rotation;
    if (in_t != in_r) out.meas.basis[v] = MeasBasis::X;
  }

  auto make_obs = [&](const std::string& nm, char type, const PauliString& op,
                      bool logical, int lidx) {
    MeasuredObservable mo;
    mo.name = nm;
    mo.type = type;
    mo.is_logical = logical;
    mo.logical_index = lidx;
    mo.code_op = op;
    mo.support = op.support();
    mo.setting = setting;
    mo.sign = measured_sign(code, c, setting, op) ;
    return mo;
  };

  const char want = setting == Setting::Xside ? 'x' : 'z';
  for (auto& s : code.stabilizers)
    if (s.type == want)
      out.stabilizers.push_back(make_obs(s.name, s.type, s.op, false, -1));
  for (size_t k = 0; k < code.logicals.size(); ++k) {
    if (setting == Setting::Xside)
      out.logicals_x.push_back(make_obs("X_L" + std::to_string(k + 1), 'x',
                                        code.logicals[k].x_op, true,
                                        static_cast<int>(k)));
    else
      out.logicals_z.push_back(make_obs("Z_L" + std::to_string(k + 1), 'z',
                                        code.logicals[k].z_op, true,
                                        static_cast<int>(k)));
  }
  return out;
}

}  // namespace atomsim
