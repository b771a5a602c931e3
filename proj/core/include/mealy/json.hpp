#pragma once

#include <json.hpp>

#include "mealy/automaton.hpp"
#include "mealy/contracting.hpp"
#include "mealy/group.hpp"
#include "mealy/helix.hpp"
#include "mealy/tilings.hpp"

namespace mealy {

using Json = nlohmann::ordered_json;

// {states, alphabet, sink, transitions: [[q, a, p, b], ...]}
Json to_json(const Automaton& m);
Automaton automaton_from_json(const Json& j);

Json to_json(const ClassReport& r, const Automaton& m);
Json to_json(const Automaton& m, const WitnessReport& r);
Json to_json(const Automaton& m, const CommutingPair& p);
Json to_json(const Automaton& m, const HelixGraph& h);
Json to_json(const Automaton& m, const Nucleus& n);
Json to_json(const Automaton& m, const Nucleus& n, const SingularDescription& s);
Json to_json(const LabeledDigraph& g);

// {tiles: [{w, s, e, n}], mode}
Json to_json(const WangTileset& t);
WangTileset tileset_from_json(const Json& j);
Json to_json(const TilingWitness& w);
Json to_json(const TilingStatus& s);

}  // namespace mealy
