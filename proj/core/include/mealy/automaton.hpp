#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mealy {

using StateId = std::uint32_t;
using LetterId = std::uint32_t;
using LetterWord = std::vector<LetterId>;

struct SignedState {
  StateId base = 0;
  bool inverse = false;
  auto operator<=>(const SignedState&) const = default;
};

// Stored left to right, composed right to left: the last entry acts first,
// so [h, g] acting on a is h∘(g∘a).
using StateWord = std::vector<SignedState>;

bool is_reduced(const StateWord& u);
StateWord reduce(const StateWord& u);
StateWord inverse_word(const StateWord& u);
StateWord positive_word(const std::vector<StateId>& states);

// Name of the formal inverse: "q" <-> "q^-1".
std::string inverse_name(std::string_view name);

// Complete deterministic letter-to-letter transducer with an optional sink.
class Automaton {
 public:
  // Transition tables are indexed by q * |X| + a. When sink is empty a sink is
  // auto-detected (first state fixing every letter with self-loops); an explicit
  // sink that does not satisfy the sink law is rejected.
  Automaton(std::vector<std::string> states, std::vector<std::string> alphabet,
            std::vector<StateId> delta, std::vector<LetterId> rho,
            std::optional<StateId> sink = std::nullopt);

  std::size_t state_count() const { return states_.size(); }
  std::size_t letter_count() const { return alphabet_.size(); }

  StateId next(StateId q, LetterId a) const { return delta_[q * alphabet_.size() + a]; }
  LetterId out(StateId q, LetterId a) const { return rho_[q * alphabet_.size() + a]; }

  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::string& letter_name(LetterId a) const { return alphabet_.at(a); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<StateId>& delta() const { return delta_; }
  const std::vector<LetterId>& rho() const { return rho_; }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<LetterId> find_letter(std::string_view name) const;
  StateId state_id(std::string_view name) const;    // throws ValidationError
  LetterId letter_id(std::string_view name) const;  // throws ValidationError

  std::optional<StateId> sink() const { return sink_; }
  bool is_sink_like(StateId q) const;

  bool operator==(const Automaton& other) const = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<StateId> delta_;
  std::vector<LetterId> rho_;
  std::optional<StateId> sink_;
};

// Deterministic transducer whose transitions may be missing.
struct PartialAutomaton {
  struct Cell {
    StateId target = 0;
    LetterId output = 0;
    bool operator==(const Cell&) const = default;
  };
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<std::optional<Cell>> cells;  // indexed by q * |X| + a
  std::optional<StateId> sink;

  const std::optional<Cell>& at(StateId q, LetterId a) const { return cells[q * alphabet.size() + a]; }
  bool complete() const;
  bool operator==(const PartialAutomaton&) const = default;
};

PartialAutomaton to_partial(const Automaton& m);
// Throws ValidationError listing the missing (state, letter) pairs.
Automaton to_complete(const PartialAutomaton& p);

struct Component {
  std::vector<StateId> states;
  bool bireversible = false;
};

struct ClassReport {
  bool invertible = false;
  bool reversible = false;
  // Reversible, invertible, and each (output letter, target state) pair is
  // produced by at most one transition.
  bool bireversible = false;
  bool has_sink = false;
  bool sink_accessible = false;
  std::vector<Component> components;
};

ClassReport classify(const Automaton& m);
bool is_invertible(const Automaton& m);
bool is_reversible(const Automaton& m);
// Each (target state, output letter) pair is produced by at most one transition.
bool is_coreversible(const Automaton& m);

Automaton dual(const Automaton& m);
Automaton inverse(const Automaton& m);
// M ⊔ M^-1: states q_0..q_{n-1} followed by their inverses in the same order.
Automaton enrich(const Automaton& m);
// M ⊔ M^-1 with e and e^-1 merged: Q followed by the inverses of Q \ {e}.
Automaton union_identify_sinks(const Automaton& m);
Automaton minimize(const Automaton& m);

// Class index per state for the coarsest congruence refining output rows.
std::vector<std::size_t> refine_partition(std::size_t states, std::size_t letters,
                                          const std::vector<std::uint32_t>& delta,
                                          const std::vector<std::uint32_t>& rho);

struct ActResult {
  LetterWord output;
  StateWord residual;
  bool operator==(const ActResult&) const = default;
};

ActResult act(const Automaton& m, const StateWord& u, const LetterWord& v);

// Action engine over the enriched stateset: indices [0, n) are Q and [n, 2n)
// are Q^-1 (present only for invertible automata). Words of indices follow the
// StateWord order convention.
class Engine {
 public:
  using Word = std::vector<std::uint32_t>;

  explicit Engine(const Automaton& m);

  const Automaton& automaton() const { return base_; }
  bool invertible() const { return invertible_; }
  std::size_t base_size() const { return base_.state_count(); }
  std::size_t size() const { return size_; }
  std::size_t letters() const { return letters_; }

  std::uint32_t next(std::uint32_t q, LetterId a) const { return delta_[q * letters_ + a]; }
  LetterId out(std::uint32_t q, LetterId a) const { return rho_[q * letters_ + a]; }
  bool trivial(std::uint32_t q) const { return trivial_[q]; }
  std::uint32_t inverse_of(std::uint32_t q) const;
  std::string name(std::uint32_t q) const;

  std::uint32_t index(SignedState s) const;
  SignedState signed_state(std::uint32_t q) const;
  Word encode(const StateWord& u) const;
  StateWord decode(const Word& w) const;

  // Acts with w on v in place; w becomes the residual w·v.
  void apply(Word& w, LetterWord& v) const;
  // Output and residual of w on a single letter.
  LetterId apply_letter(const Word& w, LetterId a, Word* residual) const;

  // Drops trivial states and cancels adjacent inverse pairs. The group element
  // is unchanged and normalization commutes with taking sections.
  Word normalize(Word w) const;

 private:
  Automaton base_;
  bool invertible_;
  std::size_t size_;
  std::size_t letters_;
  std::vector<std::uint32_t> delta_;
  std::vector<LetterId> rho_;
  std::vector<bool> trivial_;
};

}  // namespace mealy
