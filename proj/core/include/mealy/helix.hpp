#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/group.hpp"

namespace mealy {

// Functional digraph on (state word, letter word) pairs with edge
// (u, v) -> (u·v, u∘v). In the signed variant state words range over reduced
// words on Q̃; successors are reduced again, so the node set holds the reduced
// words of length k and every shorter word they reach.
struct HelixGraph {
  std::size_t k = 0;
  std::size_t n = 0;
  bool signed_states = false;
  std::vector<StateWord> node_u;
  std::vector<LetterWord> node_v;
  std::vector<std::size_t> succ;

  std::size_t size() const { return succ.size(); }
  std::optional<std::size_t> find(const StateWord& u, const LetterWord& v) const;
  // Each cycle listed from its least node (lexicographic on (u, v)) along succ.
  std::vector<std::vector<std::size_t>> cycles() const;
};

HelixGraph build_helix(const Automaton& m, std::size_t k, std::size_t n, bool signed_states,
                       std::size_t node_cap = 1u << 20);

struct CommutingPair {
  StateWord u;
  LetterWord v;
  std::optional<bool> pi_u_trivial;
  bool operator==(const CommutingPair&) const = default;
};

// Checks u·v = u and u∘v = v.
bool commutes(const Automaton& m, const StateWord& u, const LetterWord& v);

// One pair per cycle (u_0,v_0) -> ... -> (u_m,v_m): u = u_m...u_0, v = v_0...v_m,
// anchored at the cycle's least node. With all_rotations, one pair per cycle node.
std::vector<CommutingPair> cycles_to_pairs(const Automaton& m, const HelixGraph& h, bool all_rotations = false,
                                           const SearchBudget& budget = {});

WitnessReport restricted_commuting_pair(const Automaton& m, const std::vector<StateId>& allowed, std::size_t k_max,
                                        std::size_t n_max, const SearchBudget& budget = {});
WitnessReport non_elementary_commuting_pair(const Automaton& m, std::size_t k_max, std::size_t n_max,
                                            bool signed_states, const SearchBudget& budget = {});

bool is_elementary_relation(const Automaton& m, const StateWord& u, const SearchBudget& budget = {});

enum class HelixMode { singular, strongly_singular, essentially_singular };

struct ShapeVerdict {
  bool holds = false;
  // Depth of the free-reduction test on v^m prefixes (essentially_singular only).
  std::size_t reduction_depth = 0;
  std::size_t cycles = 0;
};

ShapeVerdict helix_shape(const Automaton& m, std::size_t k, std::size_t n, HelixMode mode,
                         std::size_t reduction_depth = 8, const SearchBudget& budget = {});

std::string helix_node_name(const Automaton& m, const HelixGraph& h, std::size_t node);
std::string to_dot(const Automaton& m, const HelixGraph& h, const std::string& name = "H");

}  // namespace mealy
