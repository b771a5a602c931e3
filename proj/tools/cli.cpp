#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mealy/contracting.hpp"
#include "mealy/error.hpp"
#include "mealy/group.hpp"
#include "mealy/helix.hpp"
#include "mealy/io.hpp"
#include "mealy/tilings.hpp"

namespace mealy::cli {

int exit_code(Status s) {
  switch (s) {
    case Status::ok:
    case Status::false_result:
      return 0;
    case Status::usage_error:
      return 64;
    case Status::parse_error:
      return 65;
    case Status::budget_exhausted:
      return 75;
    case Status::internal_error:
      return 70;
  }
  return 70;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::ok:
      return "ok";
    case Status::false_result:
      return "false_result";
    case Status::usage_error:
      return "usage_error";
    case Status::parse_error:
      return "parse_error";
    case Status::budget_exhausted:
      return "budget_exhausted";
    case Status::internal_error:
      return "internal_error";
  }
  return "internal_error";
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Automaton load(const std::string& path) {
  if (ends_with(path, ".json")) {
    try {
      return automaton_from_json(read_json(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  return load_automaton(path);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << text;
}

struct Budgets {
  std::size_t kmax = 4;
  std::size_t nmax = 6;
  std::size_t mmax = 6;
  std::size_t cap = 64;
  std::size_t nodes = 10000;
};

void add_budgets(CLI::App* sub, Budgets& b) {
  sub->add_option("--kmax", b.kmax, "Maximal state-word length")->capture_default_str();
  sub->add_option("--nmax", b.nmax, "Maximal letter-word length")->capture_default_str();
  sub->add_option("--mmax", b.mmax, "Maximal square side")->capture_default_str();
  sub->add_option("--cap", b.cap, "Order and size cap")->capture_default_str();
  sub->add_option("--nodes", b.nodes, "Vertex cap for graph exploration")->capture_default_str();
}

struct Options {
  Budgets budgets;
  std::string file;
  std::string word;
  std::string input;
  std::string point;
  std::string out;
  std::string dot;
  std::string ascii;
  std::string state;
  std::string label;
  std::string variant = "plain";
  std::string mode = "singular";
  std::string axes = "both";
  std::string restrict_to;
  std::size_t k = 1;
  std::size_t n = 1;
  std::size_t m = 2;
  std::size_t depth = 3;
  std::size_t radius = 2;
  bool is_signed = false;
  bool all = false;
  bool reduced = false;
  bool kp = false;
  bool complete = false;
};

Json automaton_payload(const Automaton& m, const Options& o) {
  if (!o.out.empty()) write_text(o.out, to_mealy_text(m));
  if (!o.dot.empty()) write_text(o.dot, to_dot(m));
  return to_json(m);
}

Status bool_status(bool b) { return b ? Status::ok : Status::false_result; }

std::vector<StateId> parse_state_list(const Automaton& m, const std::string& text) {
  std::vector<StateId> ids;
  for (const auto& s : parse_state_word(m, text)) {
    if (s.inverse) throw ValidationError("state list must not contain inverses");
    ids.push_back(s.base);
  }
  return ids;
}

WangTileset load_tileset(const Options& o) {
  WangTileset t;
  if (ends_with(o.file, ".json")) {
    try {
      t = tileset_from_json(read_json(o.file));
    } catch (const ParseError& e) {
      throw ParseError(o.file + ": " + e.what());
    }
  } else {
    t = tileset_from(load(o.file), o.reduced);
  }
  if (o.kp && t.mode != AdjacencyMode::kp) t = reflection_close(t, ReflectionAxes::both);
  return t;
}

Json graph_payload(const LabeledDigraph& g, const Options& o) {
  if (!o.dot.empty()) write_text(o.dot, to_dot(g));
  return to_json(g);
}

std::size_t label_index(const LabeledDigraph& g, const std::string& name) {
  const auto it = std::find(g.labels.begin(), g.labels.end(), name);
  if (it == g.labels.end()) throw ValidationError("unknown label '" + name + "'");
  return static_cast<std::size_t>(it - g.labels.begin());
}

using Handler = std::function<CommandResult(const Options&)>;

CommandResult ok(Json payload) { return {Status::ok, std::move(payload), {}}; }

std::map<std::string, Handler> handlers() {
  std::map<std::string, Handler> h;
  h["classify"] = [](const Options& o) {
    const auto m = load(o.file);
    return ok(to_json(classify(m), m));
  };
  h["dual"] = [](const Options& o) { return ok(automaton_payload(dual(load(o.file)), o)); };
  h["inverse"] = [](const Options& o) { return ok(automaton_payload(inverse(load(o.file)), o)); };
  h["enrich"] = [](const Options& o) { return ok(automaton_payload(enrich(load(o.file)), o)); };
  h["union"] = [](const Options& o) { return ok(automaton_payload(union_identify_sinks(load(o.file)), o)); };
  h["minimize"] = [](const Options& o) { return ok(automaton_payload(minimize(load(o.file)), o)); };
  h["act"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = act(m, parse_state_word(m, o.word), parse_letter_word(m, o.input));
    return ok(Json{{"output", format_letter_word(m, r.output)}, {"residual", format_state_word(m, r.residual)}});
  };
  h["identity"] = [](const Options& o) {
    const auto m = load(o.file);
    const bool id = is_identity(m, parse_state_word(m, o.word));
    return CommandResult{bool_status(id), Json{{"word", o.word}, {"identity", id}}, {}};
  };
  h["order"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = order(m, parse_state_word(m, o.word), o.budgets.cap);
    return ok(Json{{"word", o.word}, {"order", r.value}, {"exact", r.exact}});
  };
  h["helix"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto g = build_helix(m, o.k, o.n, o.is_signed);
    if (!o.dot.empty()) write_text(o.dot, to_dot(m, g));
    return ok(to_json(m, g));
  };
  h["commuting"] = [](const Options& o) {
    const auto m = load(o.file);
    if (!o.restrict_to.empty()) {
      const auto r = restricted_commuting_pair(m, parse_state_list(m, o.restrict_to), o.budgets.kmax, o.budgets.nmax);
      return CommandResult{r.budget_exhausted && !r.found ? Status::budget_exhausted : Status::ok, to_json(m, r), {}};
    }
    Json pairs = Json::array();
    for (const auto& p : cycles_to_pairs(m, build_helix(m, o.k, o.n, o.is_signed), o.all)) pairs.push_back(to_json(m, p));
    return ok(Json{{"k", o.k}, {"n", o.n}, {"pairs", pairs}});
  };
  h["nucleus"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = nucleus(m, o.budgets.cap);
    if (!r.verified)
      return CommandResult{Status::budget_exhausted, Json{{"verified", false}, {"reason", r.reason}}, {}};
    const auto a = r.nucleus.to_automaton(m);
    if (!o.out.empty()) write_text(o.out, to_mealy_text(a));
    if (!o.dot.empty()) write_text(o.dot, to_dot(a));
    Json j = to_json(m, r.nucleus);
    j["verified"] = true;
    return ok(j);
  };
  h["stable"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = nucleus(m, o.budgets.cap);
    if (!r.verified)
      return CommandResult{Status::budget_exhausted, Json{{"verified", false}, {"reason", r.reason}}, {}};
    const auto s = stable_automaton(m, r.nucleus);
    const auto lang = buchi_language(s);
    if (!o.out.empty()) write_text(o.out, to_mealy_text(s.automaton));
    Json lassos = Json::array();
    for (const auto& l : lang.lassos)
      lassos.push_back({{"state", s.automaton.states[l.state]}, {"cycle", format_letter_word(m, l.cycle)}});
    return ok(Json{{"language", lang.empty ? "empty" : (lang.uncountable ? "uncountable" : "countable")},
                   {"lassos", lassos},
                   {"truncated", lang.truncated},
                   {"automaton", to_mealy_text(s.automaton)}});
  };
  h["singular"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = nucleus(m, o.budgets.cap);
    if (!r.verified)
      return CommandResult{Status::budget_exhausted, Json{{"verified", false}, {"reason", r.reason}}, {}};
    SingularOptions so;
    so.replication_depth = o.depth;
    so.node_cap = o.budgets.nodes;
    return ok(to_json(m, r.nucleus, singular_set(m, r.nucleus, so)));
  };
  h["schreier"] = [](const Options& o) {
    SchreierOptions so;
    so.vertex_cap = o.budgets.nodes;
    return ok(graph_payload(schreier_level(load(o.file), o.depth, so), o));
  };
  h["orbit"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto xi = parse_epw(m, o.point);
    const auto g = orbit_ball(Engine(m), xi, o.depth, o.budgets.nodes);
    return ok(graph_payload(g.graph, o));
  };
  h["upsilon"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto xi = parse_epw(m, o.point);
    const auto g = orbit_ball(Engine(m), xi, o.depth, o.budgets.nodes).graph;
    return ok(graph_payload(upsilon(g, *g.root, label_index(g, o.label)), o));
  };
  h["tileset"] = [](const Options& o) {
    if (ends_with(o.file, ".json")) {
      const auto t = load_tileset(o);
      return ok(automaton_payload(automaton_from_tileset(t, o.complete), o));
    }
    const auto m = load(o.file);
    std::optional<std::vector<StateId>> keep;
    if (!o.restrict_to.empty()) keep = parse_state_list(m, o.restrict_to);
    auto t = tileset_from(m, o.reduced, keep);
    if (o.kp) t = reflection_close(t, ReflectionAxes::both);
    const auto d = determinism(t);
    Json j = to_json(t);
    j["determinism"] = {{"ws", d.ws}, {"es", d.es}, {"wn", d.wn}, {"en", d.en}, {"four_way", d.four_way}};
    if (!o.out.empty()) write_text(o.out, to_json(t).dump(2) + "\n");
    return ok(j);
  };
  h["reflect"] = [](const Options& o) {
    ReflectionAxes axes = ReflectionAxes::both;
    if (o.axes == "h")
      axes = ReflectionAxes::h;
    else if (o.axes == "v")
      axes = ReflectionAxes::v;
    return ok(to_json(reflection_close(load_tileset(o), axes)));
  };
  h["tile"] = [](const Options& o) {
    const auto t = load_tileset(o);
    const auto s = tiling_status(t, o.budgets.mmax, o.budgets.kmax, o.budgets.nmax);
    if (!o.ascii.empty() && s.kind == TilingStatus::Kind::periodic) write_text(o.ascii, render_ascii(s.witness));
    const Status st = s.kind == TilingStatus::Kind::unknown && s.budget_exhausted ? Status::budget_exhausted
                                                                                   : Status::ok;
    return CommandResult{st, to_json(s), {}};
  };
  h["square"] = [](const Options& o) {
    const auto t = load_tileset(o);
    const auto w = can_tile_square(t, o.m);
    if (!o.ascii.empty()) write_text(o.ascii, render_ascii(w));
    return CommandResult{bool_status(w.kind != TilingWitness::Kind::none), to_json(w), {}};
  };
  h["sync"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto w = synchronizing_word(m);
    return CommandResult{bool_status(w.has_value()),
                         Json{{"synchronizing", w.has_value()}, {"word", w ? Json(format_letter_word(m, *w)) : Json()}},
                         {}};
  };
  h["maxsync"] = [](const Options& o) {
    const auto m = load(o.file);
    MaxSyncVariant v = MaxSyncVariant::plain;
    if (o.variant == "h")
      v = MaxSyncVariant::h;
    else if (o.variant == "kp")
      v = MaxSyncVariant::kp;
    else if (o.variant != "plain")
      throw CLI::ValidationError("--variant", "expected plain, h or kp");
    const bool r = maxsync(m, o.m, v);
    return CommandResult{bool_status(r), Json{{"m", o.m}, {"variant", o.variant}, {"maxsync", r}}, {}};
  };
  h["witness"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = singular_witness(m, parse_epw(m, o.point), o.budgets.kmax, o.budgets.nmax);
    const Status st = r.found ? Status::ok : (r.budget_exhausted ? Status::budget_exhausted : Status::false_result);
    return CommandResult{st, to_json(m, r), {}};
  };
  h["posrel"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = positive_relation_search(m, o.budgets.kmax);
    const Status st = r.found ? Status::ok : (r.budget_exhausted ? Status::budget_exhausted : Status::false_result);
    return CommandResult{st, to_json(m, r), {}};
  };
  h["nonelementary"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = non_elementary_commuting_pair(m, o.budgets.kmax, o.budgets.nmax, o.is_signed);
    const Status st = r.found ? Status::ok : (r.budget_exhausted ? Status::budget_exhausted : Status::false_result);
    return CommandResult{st, to_json(m, r), {}};
  };
  h["lambda"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = edge_lambda_psi(m, parse_epw(m, o.point), o.radius, o.budgets.nodes);
    Json edges = Json::array();
    const auto& g = r.ball.graph;
    for (const auto& e : r.edges)
      edges.push_back({g.vertices[e.source], g.labels[e.label], g.vertices[e.target],
                       e.lambda ? Json(*e.lambda) : Json("inf")});
    return ok(Json{{"radius", o.radius}, {"edges", edges}, {"psi", r.psi ? Json(*r.psi) : Json("inf")}});
  };
  h["isolated"] = [](const Options& o) {
    const auto m = load(o.file);
    const auto r = isolated_point(m, m.state_id(o.state), parse_letter_word(m, o.word));
    return CommandResult{bool_status(r.isolated), Json{{"isolated", r.isolated}, {"vacuous", r.vacuous}}, {}};
  };
  h["shape"] = [](const Options& o) {
    const auto m = load(o.file);
    HelixMode mode = HelixMode::singular;
    if (o.mode == "strong")
      mode = HelixMode::strongly_singular;
    else if (o.mode == "essential")
      mode = HelixMode::essentially_singular;
    else if (o.mode != "singular")
      throw CLI::ValidationError("--mode", "expected singular, strong or essential");
    const auto r = helix_shape(m, o.k, o.n, mode);
    return CommandResult{bool_status(r.holds),
                         Json{{"mode", o.mode}, {"holds", r.holds}, {"cycles", r.cycles},
                              {"reduction_depth", r.reduction_depth}},
                         {}};
  };
  h["elementary"] = [](const Options& o) {
    const auto m = load(o.file);
    const bool r = is_elementary_relation(m, parse_state_word(m, o.word));
    return CommandResult{bool_status(r), Json{{"word", o.word}, {"elementary", r}}, {}};
  };
  h["replicating"] = [](const Options& o) {
    const auto r = is_self_replicating(load(o.file), o.depth);
    const Status st = r.holds ? Status::ok : (r.budget_exhausted ? Status::budget_exhausted : Status::false_result);
    return CommandResult{st, Json{{"self_replicating", r.holds}, {"transitive", r.transitive}, {"depth", r.depth}}, {}};
  };
  return h;
}

struct Spec {
  const char* name;
  const char* help;
  std::vector<std::string> flags;
};

// Subcommand name, description and accepted options.
const std::vector<Spec>& specs() {
  static const std::vector<Spec> s = {
      {"classify", "Invertibility, reversibility, sink and components", {}},
      {"dual", "Dual automaton", {"out", "dot"}},
      {"inverse", "Inverse automaton", {"out", "dot"}},
      {"enrich", "Automaton with formal inverses adjoined", {"out", "dot"}},
      {"union", "Automaton with inverses adjoined and sinks identified", {"out", "dot"}},
      {"minimize", "Minimal automaton", {"out", "dot"}},
      {"act", "Action of a state word on a letter word", {"word", "input"}},
      {"identity", "Whether a state word acts trivially", {"word"}},
      {"order", "Order of a state word", {"word", "budgets"}},
      {"helix", "Helix graph H_{k,n}", {"k", "n", "signed", "dot"}},
      {"commuting", "Commuting pairs from helix cycles", {"k", "n", "signed", "all", "restrict", "budgets"}},
      {"nucleus", "Nucleus of a contracting automaton", {"out", "dot", "budgets"}},
      {"stable", "Stable automaton and its language", {"out", "budgets"}},
      {"singular", "Singular set description", {"depth", "budgets"}},
      {"schreier", "Schreier graph on a level", {"depth", "dot", "budgets"}},
      {"orbit", "Orbital graph of a boundary point", {"point", "depth", "dot", "budgets"}},
      {"upsilon", "Two-copy gluing of an orbital graph at its root loop", {"point", "depth", "label", "dot", "budgets"}},
      {"tileset", "Tileset of an automaton, or automaton of a tileset", {"reduced", "kp", "restrict", "complete", "out", "dot"}},
      {"reflect", "Reflection closure of a tileset", {"axes", "reduced"}},
      {"tile", "Periodic tiling or failing square", {"reduced", "kp", "ascii", "budgets"}},
      {"square", "Tiling of one square", {"m", "reduced", "kp", "ascii"}},
      {"sync", "Synchronizing word", {}},
      {"maxsync", "MaxSync predicate at one size", {"m", "variant"}},
      {"witness", "Singularity witness for a boundary point", {"point", "budgets"}},
      {"posrel", "Positive relation search", {"budgets"}},
      {"nonelementary", "Non-elementary commuting pair search", {"signed", "budgets"}},
      {"lambda", "Edge lambda values and psi around a point", {"point", "radius", "budgets"}},
      {"isolated", "Isolated point test", {"state", "word"}},
      {"shape", "Helix shape test", {"k", "n", "mode"}},
      {"elementary", "Elementary relation test", {"word"}},
      {"replicating", "Self-replication test", {"depth"}},
  };
  return s;
}

void add_flags(CLI::App* sub, const Spec& spec, Options& o) {
  sub->add_option("file", o.file, "Input .mealy, automaton .json or tileset .json")->required();
  for (const auto& f : spec.flags) {
    if (f == "out") sub->add_option("-o,--out", o.out, "Write the result in its text format");
    if (f == "dot") sub->add_option("--dot", o.dot, "Write a DOT rendering");
    if (f == "ascii") sub->add_option("--ascii", o.ascii, "Write an ASCII rendering");
    if (f == "word") sub->add_option("-w,--word", o.word, "Word")->required();
    if (f == "input") sub->add_option("-i,--input", o.input, "Letter word")->required();
    if (f == "point") sub->add_option("-p,--point", o.point, "Boundary point pre|period")->required();
    if (f == "state") sub->add_option("-s,--state", o.state, "State")->required();
    if (f == "label") sub->add_option("-l,--label", o.label, "Loop label")->required();
    if (f == "k") sub->add_option("-k", o.k, "State-word length")->capture_default_str();
    if (f == "n") sub->add_option("-n", o.n, "Letter-word length")->capture_default_str();
    if (f == "m") sub->add_option("-m", o.m, "Square side")->capture_default_str();
    if (f == "depth") sub->add_option("-d,--depth", o.depth, "Depth")->capture_default_str();
    if (f == "radius") sub->add_option("-r,--radius", o.radius, "Radius")->capture_default_str();
    if (f == "signed") sub->add_flag("--signed", o.is_signed, "Use reduced words over states and inverses");
    if (f == "all") sub->add_flag("--all", o.all, "One pair per cycle node");
    if (f == "reduced") sub->add_flag("--reduced", o.reduced, "Drop sink tiles");
    if (f == "kp") sub->add_flag("--kp", o.kp, "Reflection-closed tileset with the reflection rule");
    if (f == "complete") sub->add_flag("--complete", o.complete, "Complete with a fresh sink");
    if (f == "restrict") sub->add_option("--restrict", o.restrict_to, "Allowed states");
    if (f == "variant") sub->add_option("--variant", o.variant, "plain, h or kp")->capture_default_str();
    if (f == "mode") sub->add_option("--mode", o.mode, "singular, strong or essential")->capture_default_str();
    if (f == "axes") sub->add_option("--axes", o.axes, "h, v or both")->capture_default_str();
    if (f == "budgets") add_budgets(sub, o.budgets);
  }
}

Json error_payload(const std::string& message) { return Json{{"error", message}}; }

}  // namespace

CommandResult run(const std::vector<std::string>& argv) {
  CLI::App app{"Mealy automata toolkit", "mealy"};
  app.require_subcommand(1);
  Options o;
  for (const auto& s : specs()) add_flags(app.add_subcommand(s.name, s.help), s, o);
  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    return {Status::ok, nullptr, app.help()};
  } catch (const CLI::ParseError& e) {
    return {Status::usage_error, error_payload(e.what()), app.help()};
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    auto result = handlers().at(name)(o);
    return result;
  } catch (const CLI::ParseError& e) {
    return {Status::usage_error, error_payload(e.what()), {}};
  } catch (const ParseError& e) {
    Json j = error_payload(e.what());
    if (e.line()) j["line"] = e.line();
    return {Status::parse_error, j, {}};
  } catch (const ValidationError& e) {
    return {Status::parse_error, error_payload(e.what()), {}};
  } catch (const BudgetExhausted& e) {
    return {Status::budget_exhausted, error_payload(e.what()), {}};
  } catch (const std::exception& e) {
    return {Status::internal_error, error_payload(e.what()), {}};
  }
}

}  // namespace mealy::cli
