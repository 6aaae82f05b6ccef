#include "atomsim/codes.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "atomsim/errors.hpp"

namespace atomsim {

using nlohmann::json;

namespace {
Sublattice sub_from(const std::string& s) {
  if (s == "A") return Sublattice::A;
  if (s == "B") return Sublattice::B;
  throw std::invalid_argument("bad sublattice tag: " + s);
}
}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("ATOMARRAY_DATA")) return env;
  return ATOMSIM_DATA_DIR;
}

Sublattice CodeSpec::rotate_for(Setting s) const {
  return s == Setting::Xside ? xside_rotates : zside_rotates;
}

void CodeSpec::check() const {
  if (!graph.bipartite_by_sublattice())
    throw NonBipartite("code " + name + ": graph not bipartite by sublattice");

  // every edge gated exactly once, pairs disjoint within a layer
  std::set<std::pair<int, int>> edge_set;
  for (auto [a, b] : graph.edges)
    edge_set.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  std::set<std::pair<int, int>> gated;
  for (auto& layer : cz_layers) {
    std::set<int> used;
    for (auto [a, b] : layer) {
      if (!used.insert(a).second || !used.insert(b).second)
        throw std::invalid_argument("code " + name + ": layer pairs overlap");
      auto e = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      if (!edge_set.count(e))
        throw std::invalid_argument("code " + name + ": gate on non-edge");
      if (!gated.insert(e).second)
        throw std::invalid_argument("code " + name + ": edge gated twice");
    }
  }
  if (gated.size() != edge_set.size())
    throw std::invalid_argument("code " + name + ": edges missing from layers");

  for (size_t i = 0; i < stabilizers.size(); ++i)
    for (size_t j = i + 1; j < stabilizers.size(); ++j)
      if (!stabilizers[i].op.commutes_with(stabilizers[j].op))
        throw std::invalid_argument("code " + name + ": stabilizers do not commute");

  for (auto& l : logicals) {
    for (auto& s : stabilizers) {
      if (!l.x_op.commutes_with(s.op) || !l.z_op.commutes_with(s.op))
        throw std::invalid_argument("code " + name +
                                    ": logical does not commute with stabilizers");
    }
    if (l.x_op.commutes_with(l.z_op))
      throw std::invalid_argument("code " + name + ": X_L must anticommute with Z_L");
  }

  // Shipped X-type content must come from the graph-state group: pull each
  // operator back to the graph basis and confirm its Z part equals the
  // adjacency image of its X part.
  auto in_graph_group = [&](const PauliString& ps) {
    PauliOp op = ps.to_op();
    if (code_rotation) {
      for (int v : graph.in_sublattice(*code_rotation))
        op.conj_rotation(static_cast<size_t>(v), 1, -1);
    }
    size_t n = graph.n();
    std::vector<uint8_t> want_z(n, 0);
    for (auto& [a, b] : graph.edges) {
      if (op.xbit(b)) want_z[a] ^= 1;
      if (op.xbit(a)) want_z[b] ^= 1;
    }
    for (size_t q = 0; q < n; ++q)
      if (op.zbit(q) != want_z[q]) return false;
    return true;
  };
  for (auto& s : stabilizers)
    if (!in_graph_group(s.op))
      throw std::invalid_argument("code " + name + ": stabilizer " + s.name +
                                  " not generated by the graph state");
  for (auto& l : logicals)
    if (!in_graph_group(l.x_op))
      throw std::invalid_argument("code " + name +
                                  ": X_L not generated by the graph state");
}

CodeSpec code_from_json(const std::string& text) {
  json j = json::parse(text);
  CodeSpec c;
  c.name = j.at("name");
  auto verts = j.at("vertices").get<std::vector<int>>();
  c.graph.vertices = verts;
  for (size_t v = 0; v < verts.size(); ++v)
    if (verts[v] != static_cast<int>(v))
      throw std::invalid_argument("code vertices must be 0..n-1");
  for (auto& e : j.at("edges"))
    c.graph.edges.emplace_back(e.at(0), e.at(1));
  for (auto& s : j.at("sublattice"))
    c.graph.sublattice.push_back(sub_from(s));
  for (auto b : j.at("ancilla"))
    c.graph.ancilla.push_back(b.get<bool>() ? 1 : 0);
  for (auto& p : j.at("positions"))
    c.positions.push_back({p.at(0), p.at(1)});

  for (auto& layer : j.at("layers")) {
    std::vector<std::pair<int, int>> pairs;
    for (auto& p : layer) pairs.emplace_back(p.at(0), p.at(1));
    c.cz_layers.push_back(std::move(pairs));
  }
  c.move_duration_us = j.value("move_duration_us", 200.0);
  if (j.contains("moves")) {
    for (auto& m : j.at("moves")) {
      MoveStage st;
      st.duration_us = m.value("duration_us", c.move_duration_us);
      for (auto& t : m.at("targets"))
        st.targets.push_back({t.at(0).get<double>(), t.at(1), t.at(2)});
      c.moves.push_back(std::move(st));
    }
  }

  for (auto& s : j.at("stabilizers")) {
    StabilizerDef d;
    d.name = s.at("name");
    d.op = PauliString::from_string(s.at("paulis").get<std::string>());
    d.type = s.at("type").get<std::string>()[0];
    c.stabilizers.push_back(std::move(d));
  }
  if (j.contains("logicals")) {
    auto dists = j.value("distances", std::vector<int>{});
    size_t k = 0;
    for (auto& l : j.at("logicals")) {
      LogicalPair p;
      p.x_op = PauliString::from_string(l.at("x").get<std::string>());
      p.z_op = PauliString::from_string(l.at("z").get<std::string>());
      p.distance = k < dists.size() ? dists[k] : 0;
      ++k;
      c.logicals.push_back(std::move(p));
    }
  }

  c.matching_boundary = j.value("matching_boundary", true);
  std::string dec = j.value("decoder", "none");
  c.decoder = dec == "steane_lookup" ? DecoderKind::SteaneLookup
              : dec == "mwpm"        ? DecoderKind::MWPM
                                     : DecoderKind::None;

  if (j.contains("code_rotation") && !j.at("code_rotation").is_null())
    c.code_rotation = sub_from(j.at("code_rotation"));
  c.xside_rotates = sub_from(j.at("settings").at("xside_rotates"));
  c.zside_rotates = sub_from(j.at("settings").at("zside_rotates"));

  c.check();
  return c;
}

CodeSpec load_code(const std::string& name_or_path) {
  std::string path = name_or_path;
  if (path.find('/') == std::string::npos &&
      path.find(".json") == std::string::npos)
    path = data_dir() + "/codes/" + path + ".json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return code_from_json(ss.str());
}

}  // namespace atomsim
