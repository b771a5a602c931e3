#include <gtest/gtest.h>

#include <set>

#include "mealy/contracting.hpp"
#include "mealy/error.hpp"
#include "support.hpp"

using namespace mealy;
using namespace testing_support;

namespace {

std::set<std::string> element_names(const Automaton& m, const Nucleus& n) {
  std::set<std::string> s;
  for (std::size_t i = 0; i < n.size(); ++i) s.insert(n.element_name(m, i));
  return s;
}

// (source, letter, target) for every defined stable transition, by name.
std::set<std::tuple<std::string, std::string, std::string>> stable_edges(const StableAutomaton& s) {
  std::set<std::tuple<std::string, std::string, std::string>> out;
  const auto& p = s.automaton;
  for (StateId q = 0; q < p.states.size(); ++q)
    for (LetterId a = 0; a < p.alphabet.size(); ++a)
      if (const auto& c = p.at(q, a)) {
        EXPECT_EQ(c->output, a);
        out.insert({p.states[q], p.alphabet[a], p.states[c->target]});
      }
  return out;
}

}  // namespace

TEST(Nucleus, Basilica) {
  const auto m = fixture("basilica");
  const auto r = nucleus(m);
  ASSERT_TRUE(r.verified) << r.reason;
  EXPECT_EQ(element_names(m, r.nucleus),
            (std::set<std::string>{"e", "a", "b", "a^-1", "b^-1", "ab^-1", "ba^-1"}));
  EXPECT_EQ(r.nucleus.element_name(m, r.nucleus.sink_index), "e");
}

TEST(Nucleus, HanoiAndOdometer) {
  const auto h = fixture("hanoi3");
  const auto r = nucleus(h);
  ASSERT_TRUE(r.verified);
  EXPECT_EQ(element_names(h, r.nucleus), (std::set<std::string>{"e", "a", "b", "c"}));
  const auto t = fixture("adding_machine");
  const auto rt = nucleus(t);
  ASSERT_TRUE(rt.verified);
  EXPECT_EQ(element_names(t, rt.nucleus), (std::set<std::string>{"e", "t", "t^-1"}));
}

TEST(Nucleus, LamplighterIsNotContracting) {
  const auto r = nucleus(fixture("lamplighter"), 32, 16);
  EXPECT_FALSE(r.verified);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Nucleus, ElementsActAsTheirRepresentatives) {
  for (const auto& name : {"basilica", "hanoi3", "adding_machine", "flip"}) {
    const auto m = fixture(name);
    const auto r = nucleus(m);
    ASSERT_TRUE(r.verified) << name;
    const auto& n = r.nucleus;
    BruteAction b{m};
    const auto a = n.to_automaton(m);
    BruteAction ba{a};
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto& el = n.elements[i];
      for (LetterId x = 0; x < m.letter_count(); ++x) {
        ASSERT_LT(el.section[x], n.size());
        EXPECT_EQ(a.next(static_cast<StateId>(i), x), el.section[x]);
      }
      for (const auto& v : all_words(m.letter_count(), 5))
        ASSERT_EQ(b.act(el.rep, v).first, ba.act({{static_cast<StateId>(i), false}}, v).first) << name;
    }
    // Distinct elements act differently.
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t j = i + 1; j < n.size(); ++j) {
        StateWord w = n.elements[i].rep;
        const auto inv = inverse_word(n.elements[j].rep);
        w.insert(w.end(), inv.begin(), inv.end());
        EXPECT_FALSE(acts_trivially_to_depth(m, w, 6)) << name << " " << i << " " << j;
      }
  }
}

TEST(Nucleus, ContainsEveryLongSection) {
  // Sections of products of generators eventually fall into the nucleus.
  const auto m = fixture("basilica");
  const auto n = nucleus(m).nucleus;
  std::set<std::string> names = element_names(m, n);
  for (const auto& u : all_state_words(m.state_count(), 3, true)) {
    for (const auto& v : all_words(m.letter_count(), 8)) {
      auto s = act(m, u, v).residual;
      bool found = false;
      for (std::size_t i = 0; i < n.size() && !found; ++i) {
        StateWord w = s;
        const auto inv = inverse_word(n.elements[i].rep);
        w.insert(w.end(), inv.begin(), inv.end());
        found = acts_trivially_to_depth(m, w, 5);
      }
      ASSERT_TRUE(found) << format_state_word(m, u);
    }
  }
}

TEST(Nucleus, TwistedGrigorchukNeedsALargerCap) {
  const auto m = fixture("grigorchuk_twisted");
  EXPECT_FALSE(nucleus(m).verified);
  const auto r = nucleus(m, 2000);
  ASSERT_TRUE(r.verified) << r.reason;
  const auto lang = buchi_language(stable_automaton(m, r.nucleus));
  EXPECT_FALSE(lang.empty);
  EXPECT_TRUE(lang.uncountable);
}

TEST(Stable, BasilicaTransitions) {
  const auto m = fixture("basilica");
  const auto n = nucleus(m).nucleus;
  const auto s = stable_automaton(m, n);
  using E = std::tuple<std::string, std::string, std::string>;
  EXPECT_EQ(stable_edges(s), (std::set<E>{{"a", "0", "b"},
                                          {"a", "1", "e"},
                                          {"a^-1", "0", "b^-1"},
                                          {"a^-1", "1", "e"},
                                          {"e", "0", "e"},
                                          {"e", "1", "e"}}));
  EXPECT_FALSE(s.accepting[s.sink]);
  const auto lang = buchi_language(s);
  EXPECT_TRUE(lang.empty);
  EXPECT_TRUE(lang.lassos.empty());
}

TEST(Stable, HanoiLoops) {
  const auto m = fixture("hanoi3");
  const auto s = stable_automaton(m, nucleus(m).nucleus);
  using E = std::tuple<std::string, std::string, std::string>;
  EXPECT_EQ(stable_edges(s), (std::set<E>{{"a", "2", "a"},
                                          {"b", "1", "b"},
                                          {"c", "0", "c"},
                                          {"e", "0", "e"},
                                          {"e", "1", "e"},
                                          {"e", "2", "e"}}));
  const auto lang = buchi_language(s);
  EXPECT_FALSE(lang.empty);
  EXPECT_FALSE(lang.uncountable);
  ASSERT_EQ(lang.lassos.size(), 3u);
}

TEST(Buchi, BranchingComponentIsUncountable) {
  StableAutomaton s;
  s.automaton.states = {"p", "e"};
  s.automaton.alphabet = {"0", "1"};
  s.automaton.cells = {PartialAutomaton::Cell{0, 0}, PartialAutomaton::Cell{0, 1}, PartialAutomaton::Cell{1, 0},
                       PartialAutomaton::Cell{1, 1}};
  s.sink = 1;
  s.accepting = {true, false};
  const auto lang = buchi_language(s);
  EXPECT_FALSE(lang.empty);
  EXPECT_TRUE(lang.uncountable);
  EXPECT_EQ(lang.lassos.size(), 2u);
}

TEST(Buchi, PropertyLassosAreAcceptedCycles) {
  std::mt19937 rng(71);
  for (int i = 0; i < 300; ++i) {
    StableAutomaton s;
    const std::size_t nq = 1 + rng() % 4, nx = 1 + rng() % 3;
    s.automaton.states = names("s", nq);
    s.automaton.alphabet = names("x", nx);
    s.automaton.cells.resize(nq * nx);
    for (auto& c : s.automaton.cells)
      if (rng() % 2) c = PartialAutomaton::Cell{static_cast<StateId>(rng() % nq), 0};
    for (std::size_t q = 0; q < nq; ++q)
      for (std::size_t a = 0; a < nx; ++a)
        if (auto& c = s.automaton.cells[q * nx + a]) c->output = static_cast<LetterId>(a);
    s.sink = 0;
    s.accepting.assign(nq, true);
    s.accepting[0] = false;
    const auto lang = buchi_language(s);
    EXPECT_EQ(lang.empty, lang.lassos.empty());
    for (const auto& l : lang.lassos) {
      std::size_t q = l.state;
      ASSERT_FALSE(l.cycle.empty());
      for (auto a : l.cycle) {
        ASSERT_TRUE(s.accepting[q]);
        const auto& c = s.automaton.at(static_cast<StateId>(q), a);
        ASSERT_TRUE(c.has_value());
        q = c->target;
      }
      EXPECT_EQ(q, l.state);
    }
  }
}

TEST(Replication, KnownVerdicts) {
  EXPECT_TRUE(is_self_replicating(fixture("hanoi3"), 3).holds);
  EXPECT_TRUE(is_self_replicating(fixture("basilica"), 4).holds);
  EXPECT_TRUE(is_self_replicating(fixture("adding_machine"), 3).holds);
  const auto id = is_self_replicating(fixture("identity"), 3);
  EXPECT_FALSE(id.transitive);
  EXPECT_FALSE(id.holds);
}

TEST(Singular, BasilicaIsEmpty) {
  const auto m = fixture("basilica");
  const auto d = singular_set(m, nucleus(m).nucleus);
  EXPECT_TRUE(d.language.empty);
  EXPECT_TRUE(d.points.empty());
  EXPECT_TRUE(d.exact);
}

TEST(Singular, HanoiThreePoints) {
  const auto m = fixture("hanoi3");
  const auto d = singular_set(m, nucleus(m).nucleus);
  const std::set<Epw> pts(d.points.begin(), d.points.end());
  EXPECT_EQ(pts, (std::set<Epw>{Epw({}, {0}), Epw({}, {1}), Epw({}, {2})}));
  EXPECT_TRUE(d.replication.holds);
  EXPECT_TRUE(d.exact);
  EXPECT_TRUE(d.orbit_matches_cofinality);
  for (const auto& xi : d.points) EXPECT_TRUE(singular_witness(m, xi, 2, 2).found);
}

TEST(Isolated, HanoiPoints) {
  const auto m = fixture("hanoi3");
  EXPECT_TRUE(isolated_point(m, m.state_id("a"), {2}).isolated);
  EXPECT_TRUE(isolated_point(m, m.state_id("b"), {1}).isolated);
  EXPECT_TRUE(isolated_point(m, m.state_id("c"), {0}).isolated);
  EXPECT_FALSE(isolated_point(m, m.state_id("a"), {0}).isolated);
  EXPECT_FALSE(isolated_point(m, m.state_id("a"), {2}).vacuous);
}

TEST(Isolated, SingleStateIsVacuous) {
  const auto m = fixture("involution_loop");
  const auto v = isolated_point(m, m.state_id("a"), {2});
  EXPECT_TRUE(v.isolated);
  EXPECT_TRUE(v.vacuous);
}
