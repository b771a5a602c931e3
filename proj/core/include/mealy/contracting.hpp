#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/group.hpp"

namespace mealy {

struct NucleusElement {
  StateWord rep;                      // shortest, then lexicographically least, word found
  std::vector<std::size_t> section;   // letter -> element index
  LetterWord output;                  // letter -> letter
};

struct Nucleus {
  std::vector<NucleusElement> elements;
  std::size_t sink_index = 0;  // the identity element

  std::size_t size() const { return elements.size(); }
  std::string element_name(const Automaton& m, std::size_t i) const;
  std::optional<std::size_t> find(const Automaton& m, const std::string& name) const;
  Automaton to_automaton(const Automaton& m) const;
};

struct NucleusResult {
  bool verified = false;
  Nucleus nucleus;     // partial set when not verified
  std::string reason;  // why verification failed
  std::size_t rounds = 0;
};

NucleusResult nucleus(const Automaton& m, std::size_t size_cap = 64, std::size_t depth_cap = 32);

// Nucleus transitions restricted to a|a; every state but the sink accepts.
struct StableAutomaton {
  PartialAutomaton automaton;
  std::size_t sink = 0;
  std::vector<bool> accepting;
};

StableAutomaton stable_automaton(const Automaton& m, const Nucleus& n);

struct Lasso {
  std::size_t state = 0;  // entry state of the cycle
  LetterWord cycle;
  bool operator==(const Lasso&) const = default;
};

struct BuchiLanguage {
  bool empty = true;
  std::vector<Lasso> lassos;  // elementary cycles inside the accepting states
  bool uncountable = false;   // some accepting strongly connected part branches
  bool truncated = false;     // cycle enumeration hit its cap
};

BuchiLanguage buchi_language(const StableAutomaton& p, std::size_t cycle_cap = 1000);

struct ReplicationVerdict {
  bool holds = false;
  bool transitive = false;  // first-level transitivity
  std::size_t depth = 0;    // maximal length of the searched h
  bool budget_exhausted = false;
};

ReplicationVerdict is_self_replicating(const Automaton& m, std::size_t depth, const SearchBudget& budget = {});

struct SingularOptions {
  std::size_t replication_depth = 4;
  std::size_t cofinal_check_depth = 3;  // prefixes replaced when comparing orbit and cofinality class
  std::size_t node_cap = 10000;
  std::size_t cycle_cap = 1000;
};

struct SingularDescription {
  BuchiLanguage language;
  std::vector<Epw> points;  // lasso cycles as periodic points
  ReplicationVerdict replication;
  // True when κ is exactly the cofinality closure of the language; otherwise
  // the language gives a lower bound and its cofinality closure an upper bound.
  bool exact = false;
  // Every lasso point's orbit contains all cofinal words differing in the
  // first cofinal_check_depth letters.
  bool orbit_matches_cofinality = false;
};

SingularDescription singular_set(const Automaton& m, const Nucleus& n, const SingularOptions& opts = {});

struct IsolationVerdict {
  bool isolated = false;
  bool vacuous = false;  // no other nontrivial state to compare against
};

// q∘w = w, q·w = q, and p·w ≠ p for every other nontrivial state p.
IsolationVerdict isolated_point(const Automaton& m, StateId q, const LetterWord& w);

}  // namespace mealy
