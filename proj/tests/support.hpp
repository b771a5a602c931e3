#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/io.hpp"

namespace testing_support {

using namespace mealy;

inline std::string corpus(const std::string& name) { return std::string(MEALY_CORPUS_DIR) + "/" + name; }
inline Automaton fixture(const std::string& name) { return load_automaton(corpus(name + ".mealy")); }

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"lamplighter", "basilica", "hanoi3", "grigorchuk_twisted",
                                                 "identity",    "flip",     "involution_loop", "adding_machine"};
  return names;
}

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

// Random complete automaton; invertible rows are random permutations.
inline Automaton random_automaton(std::mt19937& rng, std::size_t max_states, std::size_t max_letters,
                                  bool invertible) {
  std::uniform_int_distribution<std::size_t> nq_d(1, max_states), nx_d(1, max_letters);
  const std::size_t nq = nq_d(rng), nx = nx_d(rng);
  std::vector<StateId> delta(nq * nx);
  std::vector<LetterId> rho(nq * nx);
  std::uniform_int_distribution<StateId> q_d(0, static_cast<StateId>(nq - 1));
  std::uniform_int_distribution<LetterId> a_d(0, static_cast<LetterId>(nx - 1));
  for (std::size_t q = 0; q < nq; ++q) {
    std::vector<LetterId> perm(nx);
    for (LetterId a = 0; a < nx; ++a) perm[a] = a;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t a = 0; a < nx; ++a) {
      delta[q * nx + a] = q_d(rng);
      rho[q * nx + a] = invertible ? perm[a] : a_d(rng);
    }
  }
  return Automaton(names("q", nq), names("x", nx), delta, rho);
}

// Invertible automaton whose last state is a sink reachable from every state.
inline Automaton random_sa_automaton(std::mt19937& rng, std::size_t max_states, std::size_t max_letters) {
  std::uniform_int_distribution<std::size_t> nq_d(1, max_states), nx_d(2, max_letters);
  const std::size_t nq = nq_d(rng) + 1, nx = nx_d(rng);
  std::vector<StateId> delta(nq * nx);
  std::vector<LetterId> rho(nq * nx);
  std::uniform_int_distribution<StateId> q_d(0, static_cast<StateId>(nq - 1));
  const auto e = static_cast<StateId>(nq - 1);
  for (std::size_t q = 0; q < nq; ++q) {
    std::vector<LetterId> perm(nx);
    for (LetterId a = 0; a < nx; ++a) perm[a] = a;
    if (q != e) std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t a = 0; a < nx; ++a) {
      delta[q * nx + a] = q == e ? e : q_d(rng);
      rho[q * nx + a] = perm[a];
    }
    if (q != e) delta[q * nx + nx - 1] = e;  // direct edge to the sink
  }
  auto st = names("q", nq - 1);
  st.push_back("e");
  return Automaton(st, names("x", nx), delta, rho, e);
}

// Letter-by-letter action computed straight from the transition tables.
struct BruteAction {
  const Automaton& m;

  // Inverse state q^-1 on b: the unique a with q∘a = b, moving to (q·a)^-1.
  std::pair<SignedState, LetterId> step(SignedState s, LetterId a) const {
    if (!s.inverse) return {{m.next(s.base, a), false}, m.out(s.base, a)};
    for (LetterId x = 0; x < m.letter_count(); ++x)
      if (m.out(s.base, x) == a) return {{m.next(s.base, x), true}, x};
    throw std::logic_error("state is not invertible");
  }

  // Returns (u∘v, u·v).
  std::pair<LetterWord, StateWord> act(StateWord u, LetterWord v) const {
    for (std::size_t i = u.size(); i-- > 0;)
      for (auto& a : v) {
        auto [s, b] = step(u[i], a);
        u[i] = s;
        a = b;
      }
    return {v, u};
  }
};

inline std::vector<LetterWord> all_words(std::size_t nx, std::size_t len) {
  std::vector<LetterWord> out{{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<LetterWord> next;
    for (const auto& w : out)
      for (LetterId a = 0; a < nx; ++a) {
        auto x = w;
        x.push_back(a);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<StateWord> all_state_words(std::size_t nq, std::size_t len, bool with_inverses) {
  std::vector<StateWord> out{{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<StateWord> next;
    for (const auto& w : out)
      for (StateId q = 0; q < nq; ++q)
        for (int inv = 0; inv < (with_inverses ? 2 : 1); ++inv) {
          auto x = w;
          x.push_back({q, inv == 1});
          next.push_back(std::move(x));
        }
    out = std::move(next);
  }
  return out;
}

// Trivial on every word of length exactly `depth` (hence on all shorter ones).
inline bool acts_trivially_to_depth(const Automaton& m, const StateWord& u, std::size_t depth) {
  BruteAction b{m};
  for (const auto& v : all_words(m.letter_count(), depth))
    if (b.act(u, v).first != v) return false;
  return true;
}

// Layered oracle: the set of sections after exactly n letters eventually
// consists of all-trivial words.
inline bool elementary_oracle(const Automaton& m, const StateWord& u) {
  BruteAction b{m};
  auto all_trivial = [&](const StateWord& w) {
    for (auto s : w)
      if (!acts_trivially_to_depth(m, {s}, 5)) return false;
    return true;
  };
  std::set<StateWord> layer{u};
  std::set<std::set<StateWord>> seen_layers;
  while (seen_layers.insert(layer).second) {
    if (std::all_of(layer.begin(), layer.end(), all_trivial)) return true;
    std::set<StateWord> next;
    for (const auto& w : layer)
      for (LetterId a = 0; a < m.letter_count(); ++a) next.insert(b.act(w, {a}).second);
    layer = std::move(next);
  }
  return false;
}

}  // namespace testing_support
