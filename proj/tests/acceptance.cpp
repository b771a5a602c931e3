// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <iostream>
#include <set>
#include <sstream>

#include "mealy/contracting.hpp"
#include "mealy/group.hpp"
#include "mealy/helix.hpp"
#include "mealy/tilings.hpp"
#include "support.hpp"

using namespace mealy;
using namespace testing_support;

namespace {

// Collects the first few failed checks of one criterion.
struct Checker {
  std::vector<std::string> failures;
  void operator()(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

std::set<std::string> element_names(const Automaton& m, const Nucleus& n) {
  std::set<std::string> s;
  for (std::size_t i = 0; i < n.size(); ++i) s.insert(n.element_name(m, i));
  return s;
}

using Edge = std::tuple<std::string, std::string, std::string>;

std::set<Edge> stable_edges(const StableAutomaton& s) {
  std::set<Edge> out;
  const auto& p = s.automaton;
  for (StateId q = 0; q < p.states.size(); ++q)
    for (LetterId a = 0; a < p.alphabet.size(); ++a)
      if (const auto& c = p.at(q, a)) out.insert({p.states[q], p.alphabet[a], p.states[c->target]});
  return out;
}

void basilica_singular_set(Checker& check) {
  const auto m = fixture("basilica");
  const auto r = nucleus(m);
  check(r.verified, "nucleus verified");
  check(element_names(m, r.nucleus) == std::set<std::string>{"e", "a", "b", "a^-1", "b^-1", "ab^-1", "ba^-1"},
        "nucleus has the seven expected elements");
  const auto s = stable_automaton(m, r.nucleus);
  check(stable_edges(s) == std::set<Edge>{{"a", "0", "b"},
                                          {"a", "1", "e"},
                                          {"a^-1", "0", "b^-1"},
                                          {"a^-1", "1", "e"},
                                          {"e", "0", "e"},
                                          {"e", "1", "e"}},
        "stable transitions");
  check(buchi_language(s).empty, "accepted language is empty");
  const auto d = singular_set(m, r.nucleus);
  check(d.points.empty() && d.language.empty, "singular set is empty");
}

void hanoi_singular_set(Checker& check) {
  const auto m = fixture("hanoi3");
  const auto r = nucleus(m);
  check(r.verified, "nucleus verified");
  check(element_names(m, r.nucleus) == std::set<std::string>{"e", "a", "b", "c"}, "nucleus {e,a,b,c}");
  const auto s = stable_automaton(m, r.nucleus);
  check(stable_edges(s) == std::set<Edge>{{"a", "2", "a"},
                                          {"b", "1", "b"},
                                          {"c", "0", "c"},
                                          {"e", "0", "e"},
                                          {"e", "1", "e"},
                                          {"e", "2", "e"}},
        "stable automaton has three loops plus sink loops");
  const auto lang = buchi_language(s);
  std::set<std::pair<std::string, LetterWord>> lassos;
  for (const auto& l : lang.lassos) lassos.insert({s.automaton.states[l.state], l.cycle});
  check(lassos == std::set<std::pair<std::string, LetterWord>>{{"a", {2}}, {"b", {1}}, {"c", {0}}},
        "lassos certify 0^w, 1^w, 2^w");
  const auto d = singular_set(m, r.nucleus);
  check(std::set<Epw>(d.points.begin(), d.points.end()) == std::set<Epw>{Epw({}, {0}), Epw({}, {1}), Epw({}, {2})},
        "three periodic points");
  check(d.replication.holds, "self-replicating");
  check(d.exact, "description is exact");
}

void hanoi_isolated(Checker& check) {
  const auto m = fixture("hanoi3");
  for (auto [q, a] : {std::pair{"a", 2u}, std::pair{"b", 1u}, std::pair{"c", 0u}}) {
    const auto v = isolated_point(m, m.state_id(q), {a});
    check(v.isolated && !v.vacuous, std::string("isolated (") + q + "," + std::to_string(a) + ")");
  }
}

void upsilon_convergence(Checker& check) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = fixture("hanoi3");
  SchreierOptions opts;
  opts.include_inverses = false;
  opts.include_trivial = false;
  for (std::size_t k = 2; k <= 5; ++k) {
    const auto radius = k - 1;
    const auto ball = orbit_ball(Engine(m), Epw({}, {2}), radius + 1, 100000, opts);
    const auto& g = ball.graph;
    const auto a = std::find(g.labels.begin(), g.labels.end(), "a") - g.labels.begin();
    const auto ups = upsilon(g, *g.root, static_cast<std::size_t>(a));
    const auto level = schreier_level(m, 2 * k, opts);
    LetterWord eta(k, 2);
    eta.insert(eta.end(), k, 0);
    const auto root = level.find_vertex(format_letter_word(m, eta));
    check(root.has_value(), "level vertex exists for k=" + std::to_string(k));
    if (!root) continue;
    check(rooted_ball_isomorphic(level, *root, ups, *ups.root, radius),
          "ball isomorphism for k=" + std::to_string(k));
    // 0^{2k} carries a loop, so its ball must differ.
    const auto other = level.find_vertex(format_letter_word(m, LetterWord(2 * k, 0)));
    check(other && !rooted_ball_isomorphic(level, *other, ups, *ups.root, radius),
          "distinct ball at 0^(2k) for k=" + std::to_string(k));
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(secs < 60.0, "runtime under 60 s");
}

void helix_fidelity(Checker& check) {
  const auto m = fixture("lamplighter");
  const auto h = build_helix(m, 1, 1, false);
  auto node = [&](const char* u, const char* v) { return h.find(parse_state_word(m, u), parse_letter_word(m, v)); };
  check(h.size() == 4, "four nodes");
  const std::vector<std::pair<std::pair<const char*, const char*>, std::pair<const char*, const char*>>> edges = {
      {{"x", "0"}, {"y", "1"}}, {{"x", "1"}, {"x", "0"}}, {{"y", "0"}, {"x", "0"}}, {{"y", "1"}, {"y", "1"}}};
  for (const auto& [from, to] : edges) {
    const auto f = node(from.first, from.second), t = node(to.first, to.second);
    check(f && t && h.succ[*f] == *t, std::string("edge (") + from.first + "," + from.second + ")");
  }
  const auto pairs = cycles_to_pairs(m, h);
  check(pairs.size() == 1 && format_state_word(m, pairs[0].u) == "y" && format_letter_word(m, pairs[0].v) == "1",
        "single pair (y,1)");
  const auto w = periodic_tiling(m);
  check(w.px == 1 && w.py == 1 && w.grid.size() == 1 && w.grid[0][0] == WangTile{"y", "1", "y", "1"},
        "1x1 domain (y,1,y,1)");
}

void tiling_dictionary(Checker& check) {
  std::vector<Automaton> ms;
  for (const auto& n : corpus_names()) ms.push_back(fixture(n));
  std::mt19937 rng(6);
  for (int i = 0; i < 200; ++i) ms.push_back(random_automaton(rng, 4, 4, i % 2 == 0));
  for (const auto& m : ms) {
    const auto t = tileset_from(m);
    const auto d = determinism(t);
    const auto c = classify(m);
    check(d.ws && d.es == c.reversible && d.wn == c.invertible && d.en == is_coreversible(m) &&
              d.four_way == c.bireversible,
          "determinism flags for\n" + to_mealy_text(m));
    const auto w = periodic_tiling(m);
    check(w.kind == TilingWitness::Kind::periodic && validate_witness(t, w), "periodic tiling for\n" + to_mealy_text(m));
  }
}

void commuting_completeness(Checker& check) {
  for (const auto& name : corpus_names()) {
    const auto m = fixture(name);
    BruteAction b{m};
    for (std::size_t k = 1; k <= 2; ++k)
      for (std::size_t n = 1; n <= 2; ++n) {
        std::set<std::pair<StateWord, LetterWord>> brute, found;
        for (const auto& u : all_state_words(m.state_count(), k, false))
          for (const auto& v : all_words(m.letter_count(), n)) {
            const auto [out, res] = b.act(u, v);
            if (out == v && res == u) brute.insert({u, v});
          }
        const auto h = build_helix(m, k, n, false);
        for (const auto& p : cycles_to_pairs(m, h, true))
          if (p.u.size() == k && p.v.size() == n) found.insert({p.u, p.v});
        check(found == brute, name + " k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
  }
}

void identity_oracle(Checker& check) {
  std::mt19937 rng(8);
  std::vector<std::string> names;
  for (const auto& n : corpus_names()) names.push_back(n);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::uniform_int_distribution<int> len(0, 3), coin(0, 1);
  std::map<std::string, Automaton> cache;
  for (int i = 0; i < 500; ++i) {
    const auto& name = names[pick(rng)];
    const auto& m = cache.try_emplace(name, fixture(name)).first->second;
    std::uniform_int_distribution<StateId> q(0, static_cast<StateId>(m.state_count() - 1));
    const bool inv = is_invertible(m);
    StateWord u(len(rng));
    for (auto& s : u) s = {q(rng), inv && coin(rng) == 1};
    check(is_identity(m, u) == acts_trivially_to_depth(m, u, 6), name + " " + format_state_word(m, u));
  }
  const auto h = fixture("hanoi3");
  for (const char* w : {"aa", "bb", "cc"}) check(is_identity(h, parse_state_word(h, w)), std::string("hanoi ") + w);
}

void singularity_witnesses(Checker& check) {
  const auto h = fixture("hanoi3");
  const auto r = singular_witness(h, Epw({}, {2}), 4, 4);
  check(r.found && format_state_word(h, r.u) == "a" && r.n == 1u, "hanoi 2^w gives (a, n=1)");
  const auto b = fixture("basilica");
  for (const auto& xi : {Epw({}, {0, 1}), Epw({}, {0}), Epw({}, {1})}) {
    const auto rb = singular_witness(b, xi, 4, 4);
    check(!rb.found && !rb.budget_exhausted, "basilica " + format_epw(b, xi));
  }
}

void synchronization(Checker& check) {
  for (const auto& name : corpus_names()) {
    const auto m = fixture(name);
    if (!classify(m).sink_accessible) continue;
    const auto w = synchronizing_word(m);
    check(w && synchronizes(m, *w), name + " has a synchronizing word");
  }
  check(!synchronizing_word(fixture("lamplighter")).has_value(), "lamplighter has none");
  const auto b = fixture("basilica");
  const auto w = synchronizing_word(b);
  if (w) {
    std::set<StateId> ends;
    for (StateId q = 0; q < b.state_count(); ++q) {
      StateId p = q;
      for (auto a : *w) p = b.next(p, a);
      ends.insert(p);
    }
    check(ends.size() == 1, "basilica word merges all states");
  }
}

void round_trips(Checker& check) {
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto m = random_automaton(rng, 4, 4, i % 2 == 0);
    const auto dd = dual(dual(m));
    check(dd.states() == m.states() && dd.delta() == m.delta() && dd.rho() == m.rho(), "dual of dual");
    if (is_invertible(m)) check(inverse(inverse(m)) == m, "inverse of inverse");
    const auto back = automaton_from_tileset(tileset_from(m), false);
    check(back.delta() == m.delta() && back.rho() == m.rho() && back.states() == m.states(), "tileset round trip");
    const auto mm = minimize(m);
    const auto cls = refine_partition(m.state_count(), m.letter_count(), m.delta(), m.rho());
    BruteAction bm{m}, bmm{mm};
    for (const auto& v : all_words(m.letter_count(), 3))
      for (StateId q = 0; q < m.state_count(); ++q)
        check(bm.act({{q, false}}, v).first == bmm.act({{static_cast<StateId>(cls[q]), false}}, v).first,
              "minimize preserves the action");
  }
}

void elementary_engine(Checker& check) {
  const auto flip = fixture("flip");
  const auto loop = fixture("involution_loop");
  const auto hanoi = fixture("hanoi3");
  for (const auto& [m, w] : {std::pair{&flip, "tt"}, std::pair{&loop, "aa"}, std::pair{&hanoi, "aa"}}) {
    const auto u = parse_state_word(*m, w);
    check(is_elementary_relation(*m, u) == elementary_oracle(*m, u), std::string("fixture ") + w);
  }
  std::mt19937 rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto m = random_sa_automaton(rng, 3, 2);
    for (std::size_t len = 1; len <= 2; ++len)
      for (const auto& u : all_state_words(m.state_count() - 1, len, true))
        if (is_identity(m, u)) check(is_elementary_relation(m, u) == elementary_oracle(m, u), to_mealy_text(m));
  }
  const auto b = fixture("basilica");
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto v = helix_shape(b, k, n, HelixMode::singular);
      const auto r = non_elementary_commuting_pair(b, k, n, false);
      check(v.holds && !r.found, "basilica shape at k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria = {
      {"Basilica singular set is empty", basilica_singular_set},
      {"Hanoi singular set is the three constant points", hanoi_singular_set},
      {"Hanoi points are isolated", hanoi_isolated},
      {"Schreier balls converge to the glued orbital graph", upsilon_convergence},
      {"Lamplighter helix graph and tiling", helix_fidelity},
      {"Tiling dictionary on corpus and random automata", tiling_dictionary},
      {"Commuting pairs match brute force", commuting_completeness},
      {"Identity test matches brute force", identity_oracle},
      {"Singularity witnesses", singularity_witnesses},
      {"Synchronizing words", synchronization},
      {"Round trips", round_trips},
      {"Elementary relations and singular helices", elementary_engine},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = check.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << "\n";
    for (const auto& f : check.failures) std::cout << "    " << f << "\n";
  }
  return failed == 0 ? 0 : 1;
}
