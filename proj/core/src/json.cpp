#include "mealy/json.hpp"

#include "mealy/error.hpp"
#include "mealy/io.hpp"

namespace mealy {

Json to_json(const Automaton& m) {
  Json j;
  j["states"] = m.states();
  j["alphabet"] = m.alphabet();
  j["sink"] = m.sink() ? Json(m.state_name(*m.sink())) : Json(nullptr);
  Json tr = Json::array();
  for (StateId q = 0; q < m.state_count(); ++q)
    for (LetterId a = 0; a < m.letter_count(); ++a)
      tr.push_back({m.state_name(q), m.letter_name(a), m.state_name(m.next(q, a)), m.letter_name(m.out(q, a))});
  j["transitions"] = std::move(tr);
  return j;
}

Automaton automaton_from_json(const Json& j) {
  try {
    const auto states = j.at("states").get<std::vector<std::string>>();
    const auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    auto index = [](const std::vector<std::string>& v, const std::string& s, const char* what) {
      const auto it = std::find(v.begin(), v.end(), s);
      if (it == v.end()) throw ParseError(std::string("unknown ") + what + " '" + s + "'", 0);
      return static_cast<std::uint32_t>(it - v.begin());
    };
    const std::size_t nx = alphabet.size();
    std::vector<StateId> delta(states.size() * nx);
    std::vector<LetterId> rho(states.size() * nx);
    std::vector<bool> seen(states.size() * nx, false);
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 4) throw ParseError("transition must be [q, a, p, b]", 0);
      const auto q = index(states, t[0].get<std::string>(), "state");
      const auto a = index(alphabet, t[1].get<std::string>(), "letter");
      const std::size_t cell = q * nx + a;
      if (seen[cell]) throw ParseError("duplicate transition for (" + states[q] + ", " + alphabet[a] + ")", 0);
      seen[cell] = true;
      delta[cell] = index(states, t[2].get<std::string>(), "state");
      rho[cell] = index(alphabet, t[3].get<std::string>(), "letter");
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
      if (!seen[c]) throw ParseError("missing transition for (" + states[c / nx] + ", " + alphabet[c % nx] + ")", 0);
    std::optional<StateId> sink;
    if (j.contains("sink") && !j["sink"].is_null()) sink = index(states, j["sink"].get<std::string>(), "state");
    return Automaton(states, alphabet, std::move(delta), std::move(rho), sink);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 0);
  }
}

Json to_json(const ClassReport& r, const Automaton& m) {
  Json j;
  j["invertible"] = r.invertible;
  j["reversible"] = r.reversible;
  j["bireversible"] = r.bireversible;
  j["has_sink"] = r.has_sink;
  j["sink"] = m.sink() ? Json(m.state_name(*m.sink())) : Json(nullptr);
  j["sink_accessible"] = r.sink_accessible;
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json names = Json::array();
    for (auto q : c.states) names.push_back(m.state_name(q));
    comps.push_back({{"states", names}, {"bireversible", c.bireversible}});
  }
  j["components"] = std::move(comps);
  return j;
}

Json to_json(const Automaton& m, const WitnessReport& r) {
  Json j;
  j["found"] = r.found;
  if (r.found) {
    Json w;
    w["u"] = format_state_word(m, r.u);
    if (r.v) w["v"] = format_letter_word(m, *r.v);
    w["n"] = r.n ? Json(*r.n) : Json(nullptr);
    if (r.pi_u_trivial) w["pi_u_trivial"] = *r.pi_u_trivial;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  if (!r.shifted_preperiod.empty()) j["shifted_preperiod"] = format_letter_word(m, r.shifted_preperiod);
  j["budget_exhausted"] = r.budget_exhausted;
  return j;
}

Json to_json(const Automaton& m, const CommutingPair& p) {
  Json j;
  j["u"] = format_state_word(m, p.u);
  j["v"] = format_letter_word(m, p.v);
  j["pi_u_trivial"] = p.pi_u_trivial ? Json(*p.pi_u_trivial) : Json(nullptr);
  return j;
}

Json to_json(const Automaton& m, const HelixGraph& h) {
  Json j;
  j["k"] = h.k;
  j["n"] = h.n;
  j["signed"] = h.signed_states;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < h.size(); ++i)
    nodes.push_back({{"node", helix_node_name(m, h, i)}, {"next", helix_node_name(m, h, h.succ[i])}});
  j["nodes"] = std::move(nodes);
  Json cycles = Json::array();
  for (const auto& c : h.cycles()) {
    Json names = Json::array();
    for (auto x : c) names.push_back(helix_node_name(m, h, x));
    cycles.push_back(std::move(names));
  }
  j["cycles"] = std::move(cycles);
  return j;
}

Json to_json(const Automaton& m, const Nucleus& n) {
  Json j;
  Json elems = Json::array();
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto& e = n.elements[i];
    Json tr = Json::array();
    for (LetterId a = 0; a < e.output.size(); ++a)
      tr.push_back({m.letter_name(a), n.element_name(m, e.section[a]), m.letter_name(e.output[a])});
    elems.push_back({{"name", n.element_name(m, i)}, {"transitions", std::move(tr)}});
  }
  j["size"] = n.size();
  j["identity"] = n.element_name(m, n.sink_index);
  j["elements"] = std::move(elems);
  return j;
}

Json to_json(const Automaton& m, const Nucleus& n, const SingularDescription& s) {
  Json j;
  j["language"] = s.language.empty ? "empty" : (s.language.uncountable ? "uncountable" : "countable");
  Json lassos = Json::array();
  for (const auto& l : s.language.lassos)
    lassos.push_back({{"state", n.element_name(m, l.state)}, {"cycle", format_letter_word(m, l.cycle)}});
  j["lassos"] = std::move(lassos);
  Json points = Json::array();
  for (const auto& p : s.points) points.push_back(format_epw(m, p));
  j["points"] = std::move(points);
  j["exact"] = s.exact;
  j["closure"] = "cofinal";
  j["self_replicating"] = s.replication.holds;
  j["orbit_matches_cofinality"] = s.orbit_matches_cofinality;
  j["truncated"] = s.language.truncated;
  return j;
}

Json to_json(const LabeledDigraph& g) {
  Json j;
  j["vertices"] = g.vertices;
  j["labels"] = g.labels;
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({g.vertices[e.source], g.labels[e.label], g.vertices[e.target]});
  j["edges"] = std::move(edges);
  j["root"] = g.root ? Json(g.vertices[*g.root]) : Json(nullptr);
  j["truncated"] = g.truncated;
  j["exact_radius"] = g.exact_radius ? Json(*g.exact_radius) : Json(nullptr);
  return j;
}

Json to_json(const WangTileset& t) {
  Json j;
  Json tiles = Json::array();
  for (const auto& x : t.tiles) tiles.push_back({{"w", x.w}, {"s", x.s}, {"e", x.e}, {"n", x.n}});
  j["tiles"] = std::move(tiles);
  j["mode"] = t.mode == AdjacencyMode::kp ? "kp" : "plain";
  return j;
}

WangTileset tileset_from_json(const Json& j) {
  try {
    WangTileset t;
    for (const auto& x : j.at("tiles"))
      t.tiles.push_back({x.at("w").get<std::string>(), x.at("s").get<std::string>(), x.at("e").get<std::string>(),
                         x.at("n").get<std::string>()});
    const std::string mode = j.value("mode", std::string("plain"));
    if (mode == "kp")
      t.mode = AdjacencyMode::kp;
    else if (mode != "plain")
      throw ParseError("unknown tiling mode '" + mode + "'", 0);
    t.reflected.assign(t.tiles.size(), false);
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

Json to_json(const TilingWitness& w) {
  Json j;
  switch (w.kind) {
    case TilingWitness::Kind::periodic:
      j["kind"] = "periodic";
      j["px"] = w.px;
      j["py"] = w.py;
      break;
    case TilingWitness::Kind::square:
      j["kind"] = "square";
      j["m"] = w.m;
      break;
    case TilingWitness::Kind::none:
      j["kind"] = "none";
      j["m"] = w.m;
      break;
  }
  Json grid = Json::array();
  for (const auto& row : w.grid) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back({{"w", x.w}, {"s", x.s}, {"e", x.e}, {"n", x.n}});
    grid.push_back(std::move(r));
  }
  j["grid"] = std::move(grid);
  return j;
}

Json to_json(const TilingStatus& s) {
  Json j;
  switch (s.kind) {
    case TilingStatus::Kind::periodic:
      j["status"] = "periodic";
      j["witness"] = to_json(s.witness);
      break;
    case TilingStatus::Kind::no_tiling:
      j["status"] = "no_tiling";
      j["m"] = s.m;
      break;
    case TilingStatus::Kind::unknown:
      j["status"] = "unknown";
      j["m_reached"] = s.m_reached;
      j["k_max"] = s.k_max;
      j["n_max"] = s.n_max;
      break;
  }
  j["budget_exhausted"] = s.budget_exhausted;
  return j;
}

}  // namespace mealy
