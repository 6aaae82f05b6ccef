#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "atomsim/circuit_io.hpp"
#include "atomsim/codes.hpp"
#include "atomsim/compile.hpp"
#include "atomsim/errors.hpp"
#include "atomsim/expectation.hpp"
#include "atomsim/rng.hpp"
#include "atomsim/validate.hpp"

using namespace atomsim;

namespace {
ShotRecord shot_of(std::initializer_list<int> bits) {
  std::vector<uint8_t> b, l;
  for (int x : bits) {
    b.push_back(static_cast<uint8_t>(x));
    l.push_back(0);
  }
  return ShotRecord(b, l);
}
}  // namespace

TEST_CASE("pauli algebra basics") {
  PauliOp a = PauliOp::from_string("XZ");
  PauliOp b = PauliOp::from_string("ZX");
  CHECK(a.commutes_with(b));
  PauliOp x = PauliOp::from_string("X"), z = PauliOp::from_string("Z");
  CHECK(!x.commutes_with(z));

  // CZ conjugation: X x I -> X x Z, X x Y -> -Y x X
  PauliOp xi = PauliOp::from_string("XI");
  xi.conj_cz(0, 1);
  CHECK(xi.to_string() == "+XZ");
  PauliOp xy = PauliOp::from_string("XY");
  xy.conj_cz(0, 1);
  CHECK(xy.to_string() == "-YX");

  // rotations: Y(pi) flips X and Z
  PauliOp p = PauliOp::from_string("X");
  p.conj_rotation(0, 1, 2);
  CHECK(p.to_string() == "-X");
  p = PauliOp::from_string("Z");
  p.conj_rotation(0, 1, 2);
  CHECK(p.to_string() == "-Z");
  p = PauliOp::from_string("Y");
  p.conj_rotation(0, 1, 2);
  CHECK(p.to_string() == "+Y");
}

TEST_CASE("shot record forces lost bits to read 1") {
  ShotRecord s({0, 0, 1}, {1, 0, 0});
  CHECK(s.bit(0) == 1);  // lost
  CHECK(s.bit(1) == 0);
  CHECK(s.is_lost(0));
}

TEST_CASE("pauli_expectation on simple shot sets") {
  MeasurementSetting z2;
  z2.name = "Z";
  z2.basis = {MeasBasis::Z, MeasBasis::Z};
  PauliString zz = PauliString::from_string("ZZ");

  // all-zero shots: parity even, mean +1, zero error
  std::vector<ShotRecord> zeros(10, shot_of({0, 0}));
  auto e = pauli_expectation(zeros, zz, z2);
  CHECK(e.mean == doctest::Approx(1.0));
  CHECK(e.stderror == doctest::Approx(0.0));

  // balanced four outcomes: mean 0, stderr of 4 fair coins
  std::vector<ShotRecord> mixed = {shot_of({0, 0}), shot_of({1, 1}),
                                   shot_of({0, 1}), shot_of({1, 0})};
  e = pauli_expectation(mixed, zz, z2);
  CHECK(e.mean == doctest::Approx(0.0));
  CHECK(e.stderror == doctest::Approx(0.5));

  // permutation invariance
  std::vector<ShotRecord> perm = {mixed[2], mixed[0], mixed[3], mixed[1]};
  auto e2 = pauli_expectation(perm, zz, z2);
  CHECK(e2.mean == doctest::Approx(e.mean));
  CHECK(e2.stderror == doctest::Approx(e.stderror));

  // basis mismatch
  PauliString xx = PauliString::from_string("XX");
  CHECK_THROWS_AS(pauli_expectation(mixed, xx, z2), BasisMismatch);
}

TEST_CASE("circuit JSON round trip is structure-exact") {
  CodeSpec code = load_code("cluster12");
  CompiledCircuit cc =
      compile_code_circuit(code, default_layout(code), Setting::Xside);
  std::string text = circuit_to_json(cc.circuit);
  Circuit back = circuit_from_json(text);
  CHECK(circuit_to_json(back) == text);
  CHECK(back.atoms.size() == cc.circuit.atoms.size());
  CHECK(back.layers.size() == cc.circuit.layers.size());
  for (size_t i = 0; i < back.atoms.size(); ++i) {
    CHECK(back.atoms[i].id == cc.circuit.atoms[i].id);
    CHECK(back.atoms[i].x == cc.circuit.atoms[i].x);
  }
}

TEST_CASE("validate_circuit accepts shipped compiled circuits") {
  for (const char* name : {"cluster12", "steane7", "surface19", "toric24"}) {
    CodeSpec code = load_code(name);
    for (Setting s : {Setting::Xside, Setting::Zside}) {
      CompiledCircuit cc = compile_code_circuit(code, default_layout(code), s);
      auto v = validate_circuit(cc.circuit);
      for (auto& viol : v)
        MESSAGE(name, " layer ", viol.layer, ": ", viol.rule, " ", viol.detail);
      CHECK(v.empty());
    }
  }
}

TEST_CASE("validate flags overlapping pairs and column crossings") {
  CodeSpec code = load_code("cluster12");
  CompiledCircuit cc =
      compile_code_circuit(code, default_layout(code), Setting::Xside);

  Circuit bad = cc.circuit;
  for (auto& layer : bad.layers)
    if (auto* cz = std::get_if<ParallelCZ>(&layer)) {
      cz->pairs = {{1, 2}, {2, 3}};
      break;
    }
  bool found = false;
  for (auto& v : validate_circuit(bad))
    if (v.rule == "pairs not disjoint") found = true;
  CHECK(found);

  Circuit crossing = cc.circuit;
  for (auto& layer : crossing.layers)
    if (auto* mv = std::get_if<Move>(&layer)) {
      // send one mobile column across its neighbour
      mv->displacements = {{1, 200.0, 0.0}};
      break;
    }
  found = false;
  for (auto& v : validate_circuit(crossing))
    if (v.rule == "column order not preserved") found = true;
  CHECK(found);
}

TEST_CASE("rng streams are deterministic and independent") {
  Rng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
  }
}
