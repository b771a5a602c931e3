#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mealy/automaton.hpp"

namespace mealy {

// Boundary point preperiod · period^ω in canonical form: the period is
// primitive and the preperiod cannot be shortened by rotating the period.
class EventuallyPeriodicWord {
 public:
  EventuallyPeriodicWord(LetterWord preperiod, LetterWord period);

  const LetterWord& preperiod() const { return pre_; }
  const LetterWord& period() const { return period_; }
  LetterId at(std::size_t i) const;
  LetterWord prefix(std::size_t n) const;
  // The suffix starting after the first n letters.
  EventuallyPeriodicWord shift(std::size_t n) const;

  auto operator<=>(const EventuallyPeriodicWord&) const = default;

 private:
  LetterWord pre_;
  LetterWord period_;
};

using Epw = EventuallyPeriodicWord;

// Length of the primitive root of w (failure-function test).
std::size_t primitive_root_length(const LetterWord& w);

struct SearchBudget {
  std::size_t closure_cap = 1u << 16;      // section-closure size per identity test
  std::size_t candidate_cap = 1u << 20;    // candidates examined per search
};

bool is_identity(const Automaton& m, const StateWord& u, const SearchBudget& budget = {});
bool is_identity(const Engine& engine, const Engine::Word& w, std::size_t closure_cap);

struct Order {
  std::size_t value = 0;
  bool exact = false;  // false: order is at least value
  bool operator==(const Order&) const = default;
};

Order order(const Automaton& m, const StateWord& u, std::size_t cap, const SearchBudget& budget = {});

Epw act_epw(const Automaton& m, const StateWord& u, const Epw& xi);
Epw act_epw(const Engine& engine, const Engine::Word& w, const Epw& xi);
bool stabilizes(const Automaton& m, const StateWord& u, const Epw& xi);

struct WitnessReport {
  bool found = false;
  StateWord u;
  std::optional<LetterWord> v;        // commuting-pair letter word, when relevant
  std::optional<std::size_t> n;       // exponent of the period, when relevant
  std::optional<bool> pi_u_trivial;   // whether u acts trivially
  LetterWord shifted_preperiod;       // preperiod dropped before a periodic search
  bool budget_exhausted = false;
};

WitnessReport singular_witness(const Automaton& m, const Epw& xi, std::size_t k_max, std::size_t n_max,
                               const SearchBudget& budget = {});

struct LabeledEdge {
  std::size_t source = 0;
  std::size_t label = 0;
  std::size_t target = 0;
  auto operator<=>(const LabeledEdge&) const = default;
};

struct LabeledDigraph {
  std::vector<std::string> vertices;
  std::vector<std::string> labels;
  // Label of the reverse edge, when edges come in inverse pairs.
  std::vector<std::optional<std::size_t>> label_inverse;
  std::vector<LabeledEdge> edges;
  std::optional<std::size_t> root;
  bool truncated = false;
  // All vertices within this distance of the root are present together with
  // every edge between them. Unset means the graph is complete.
  std::optional<std::size_t> exact_radius;

  std::optional<std::size_t> find_vertex(const std::string& name) const;
  std::optional<std::size_t> target(std::size_t vertex, std::size_t label) const;
  bool has_cycle_with_labels(const std::vector<bool>& allowed) const;
};

struct SchreierOptions {
  bool include_inverses = true;   // labels over Q̃ rather than Q
  bool include_trivial = true;    // keep labels of states acting trivially
  std::size_t vertex_cap = 1u << 20;
};

LabeledDigraph schreier_level(const Automaton& m, std::size_t depth, const SchreierOptions& opts = {});

struct OrbitGraph {
  LabeledDigraph graph;
  std::vector<Epw> points;
  std::vector<std::size_t> depth;    // BFS distance from the root
  std::vector<bool> positive_label;  // label is a state of Q (not an inverse)
  LabeledDigraph positive_subgraph() const;
  // Directed cycle among positive edges of nontrivial states, within the explored ball.
  bool positive_cycle_in_ball() const;
};

OrbitGraph orbit_epw(const Automaton& m, const Epw& xi, std::size_t node_cap, const SchreierOptions& opts = {});
// Orbit BFS limited to vertices within max_depth of the root; edges from the
// outermost layer back into the explored set are kept.
OrbitGraph orbit_ball(const Engine& engine, const Epw& xi, std::size_t max_depth, std::size_t node_cap,
                      const SchreierOptions& opts = {});

WitnessReport positive_relation_search(const Automaton& m, std::size_t len_max, const SearchBudget& budget = {});
WitnessReport positive_completion(const Automaton& m, const StateWord& u, std::size_t len_max,
                                  const SearchBudget& budget = {});

struct EdgeLambda {
  std::size_t source = 0;
  std::size_t label = 0;
  std::size_t target = 0;
  std::optional<std::size_t> lambda;  // empty means infinite
};

struct LambdaPsi {
  OrbitGraph ball;
  std::vector<EdgeLambda> edges;
  std::optional<std::size_t> psi;  // empty when every λ in the ball is infinite
};

// λ(q, η): least n with q·η[:n] trivial, empty when no such n exists.
std::optional<std::size_t> edge_lambda(const Engine& engine, std::uint32_t q, const Epw& eta);
LambdaPsi edge_lambda_psi(const Automaton& m, const Epw& xi, std::size_t radius, std::size_t node_cap = 100000);

// Two copies of the graph with the loop at looped_vertex erased in each, joined
// by an edge labelled loop_label (and its inverse label) between the copies.
// Vertices of the second copy get the suffix "'". The root is the first copy's
// looped vertex.
LabeledDigraph upsilon(const LabeledDigraph& g, std::size_t looped_vertex, std::size_t loop_label);

// Radius-r ball around a root: vertices within undirected distance r and the
// edges between them. Vertex 0 of the result is the root.
LabeledDigraph rooted_ball(const LabeledDigraph& g, std::size_t root, std::size_t radius);
bool rooted_ball_isomorphic(const LabeledDigraph& g1, std::size_t r1, const LabeledDigraph& g2, std::size_t r2,
                            std::size_t radius);

}  // namespace mealy
