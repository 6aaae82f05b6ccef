#include "atomsim/circuit_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace atomsim {

using nlohmann::json;

namespace {
const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}
Axis axis_from(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw std::invalid_argument("bad axis: " + s);
}
const char* basis_name(MeasBasis b) {
  switch (b) {
    case MeasBasis::X: return "x";
    case MeasBasis::Y: return "y";
    case MeasBasis::Z: return "z";
  }
  return "?";
}
MeasBasis basis_from(const std::string& s) {
  if (s == "x") return MeasBasis::X;
  if (s == "y") return MeasBasis::Y;
  if (s == "z") return MeasBasis::Z;
  throw std::invalid_argument("bad basis: " + s);
}

json layer_to_json(const Layer& layer) {
  json j;
  std::visit(
      [&](auto&& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, GlobalRotation>) {
          j["kind"] = "global_rotation";
          j["axis"] = axis_name(l.axis);
          j["angle"] = l.angle;
        } else if constexpr (std::is_same_v<T, SublatticeRotation>) {
          j["kind"] = "sublattice_rotation";
          j["targets"] = l.targets;
          j["axis"] = axis_name(l.axis);
          j["angle"] = l.angle;
        } else if constexpr (std::is_same_v<T, ParallelCZ>) {
          j["kind"] = "parallel_cz";
          json pairs = json::array();
          for (auto& [a, b] : l.pairs) pairs.push_back({a, b});
          j["pairs"] = pairs;
        } else if constexpr (std::is_same_v<T, EchoPulse>) {
          j["kind"] = "echo";
        } else if constexpr (std::is_same_v<T, Move>) {
          j["kind"] = "move";
          j["duration_us"] = l.duration_us;
          json d = json::array();
          for (auto& w : l.displacements)
            d.push_back({{"id", w.id}, {"dx", w.dx}, {"dy", w.dy}});
          j["displacements"] = d;
        } else if constexpr (std::is_same_v<T, MeasureAll>) {
          j["kind"] = "measure_all";
          j["basis"] = basis_name(l.basis);
        }
      },
      layer);
  return j;
}

Layer layer_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "global_rotation")
    return GlobalRotation{axis_from(j.at("axis")), j.at("angle")};
  if (kind == "sublattice_rotation")
    return SublatticeRotation{j.at("targets").get<std::vector<int>>(),
                              axis_from(j.at("axis")), j.at("angle")};
  if (kind == "parallel_cz") {
    ParallelCZ cz;
    for (auto& p : j.at("pairs")) cz.pairs.emplace_back(p.at(0), p.at(1));
    return cz;
  }
  if (kind == "echo") return EchoPulse{};
  if (kind == "move") {
    Move m;
    m.duration_us = j.at("duration_us");
    for (auto& d : j.at("displacements"))
      m.displacements.push_back({d.at("id"), d.at("dx"), d.at("dy")});
    return m;
  }
  if (kind == "measure_all") return MeasureAll{basis_from(j.at("basis"))};
  throw std::invalid_argument("unknown layer kind: " + kind);
}
}  // namespace

std::string circuit_to_json(const Circuit& c) {
  json j;
  j["name"] = c.name;
  j["code_ref"] = c.code_ref;
  json atoms = json::array();
  for (auto& a : c.atoms) {
    json ja = {{"id", a.id},
               {"trap", a.trap == TrapKind::MobileAOD ? "mobile" : "static"},
               {"x", a.x},
               {"y", a.y}};
    if (a.trap == TrapKind::MobileAOD) {
      ja["row"] = a.row;
      ja["col"] = a.col;
    }
    atoms.push_back(ja);
  }
  j["atoms"] = atoms;
  json layers = json::array();
  for (auto& l : c.layers) layers.push_back(layer_to_json(l));
  j["layers"] = layers;
  return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
  json j = json::parse(text);
  Circuit c;
  c.name = j.value("name", "");
  c.code_ref = j.value("code_ref", "");
  for (auto& ja : j.at("atoms")) {
    AtomRecord a;
    a.id = ja.at("id");
    a.trap = ja.at("trap") == "mobile" ? TrapKind::MobileAOD : TrapKind::StaticSLM;
    a.x = ja.at("x");
    a.y = ja.at("y");
    if (a.trap == TrapKind::MobileAOD) {
      a.row = ja.at("row");
      a.col = ja.at("col");
    }
    c.atoms.push_back(a);
  }
  for (auto& jl : j.at("layers")) c.layers.push_back(layer_from_json(jl));
  return c;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return circuit_from_json(ss.str());
}

void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file: " + path);
  out << circuit_to_json(c) << "\n";
}

}  // namespace atomsim
