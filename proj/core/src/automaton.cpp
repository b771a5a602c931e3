#include "mealy/automaton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mealy/error.hpp"

namespace mealy {

namespace {

constexpr std::string_view kInverseSuffix = "^-1";

bool is_permutation_of(std::vector<std::uint32_t> values, std::size_t n) {
  if (values.size() != n) return false;
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < n; ++i)
    if (values[i] != i) return false;
  return true;
}

}  // namespace

bool is_reduced(const StateWord& u) {
  for (std::size_t i = 1; i < u.size(); ++i)
    if (u[i].base == u[i - 1].base && u[i].inverse != u[i - 1].inverse) return false;
  return true;
}

StateWord reduce(const StateWord& u) {
  StateWord out;
  for (const auto& s : u) {
    if (!out.empty() && out.back().base == s.base && out.back().inverse != s.inverse)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

StateWord inverse_word(const StateWord& u) {
  StateWord out(u.rbegin(), u.rend());
  for (auto& s : out) s.inverse = !s.inverse;
  return out;
}

StateWord positive_word(const std::vector<StateId>& states) {
  StateWord out;
  for (auto q : states) out.push_back({q, false});
  return out;
}

std::string inverse_name(std::string_view name) {
  if (name.size() > kInverseSuffix.size() && name.ends_with(kInverseSuffix))
    return std::string(name.substr(0, name.size() - kInverseSuffix.size()));
  return std::string(name) + std::string(kInverseSuffix);
}

Automaton::Automaton(std::vector<std::string> states, std::vector<std::string> alphabet,
                     std::vector<StateId> delta, std::vector<LetterId> rho,
                     std::optional<StateId> sink)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      delta_(std::move(delta)),
      rho_(std::move(rho)) {
  if (states_.empty()) throw ValidationError("automaton has no states");
  if (alphabet_.empty()) throw ValidationError("automaton has an empty alphabet");
  const std::size_t cells = states_.size() * alphabet_.size();
  if (delta_.size() != cells || rho_.size() != cells)
    throw ValidationError("transition tables do not cover states x alphabet");
  std::set<std::string> seen;
  for (const auto& s : states_)
    if (s.empty() || !seen.insert(s).second) throw ValidationError("duplicate or empty state '" + s + "'");
  for (const auto& a : alphabet_)
    if (a.empty() || !seen.insert(a).second)
      throw ValidationError("letter '" + a + "' is empty, repeated, or also a state");
  for (std::size_t i = 0; i < cells; ++i) {
    if (delta_[i] >= states_.size()) throw ValidationError("transition target out of range");
    if (rho_[i] >= alphabet_.size()) throw ValidationError("transition output out of range");
  }
  if (sink) {
    if (*sink >= states_.size()) throw ValidationError("sink index out of range");
    if (!is_sink_like(*sink))
      throw ValidationError("declared sink '" + states_[*sink] + "' does not fix every letter with a self-loop");
    sink_ = sink;
  } else {
    for (StateId q = 0; q < states_.size(); ++q)
      if (is_sink_like(q)) {
        sink_ = q;
        break;
      }
  }
}

bool Automaton::is_sink_like(StateId q) const {
  for (LetterId a = 0; a < alphabet_.size(); ++a)
    if (next(q, a) != q || out(q, a) != a) return false;
  return true;
}

std::optional<StateId> Automaton::find_state(std::string_view name) const {
  for (StateId q = 0; q < states_.size(); ++q)
    if (states_[q] == name) return q;
  return std::nullopt;
}

std::optional<LetterId> Automaton::find_letter(std::string_view name) const {
  for (LetterId a = 0; a < alphabet_.size(); ++a)
    if (alphabet_[a] == name) return a;
  return std::nullopt;
}

StateId Automaton::state_id(std::string_view name) const {
  if (auto q = find_state(name)) return *q;
  throw ValidationError("unknown state '" + std::string(name) + "'");
}

LetterId Automaton::letter_id(std::string_view name) const {
  if (auto a = find_letter(name)) return *a;
  throw ValidationError("unknown letter '" + std::string(name) + "'");
}

namespace {

bool invertible_on(const Automaton& m, const std::vector<StateId>& qs) {
  for (auto q : qs) {
    std::vector<std::uint32_t> row;
    for (LetterId a = 0; a < m.letter_count(); ++a) row.push_back(m.out(q, a));
    if (!is_permutation_of(row, m.letter_count())) return false;
  }
  return true;
}

bool reversible_on(const Automaton& m, const std::vector<StateId>& qs) {
  for (LetterId a = 0; a < m.letter_count(); ++a) {
    std::set<StateId> targets;
    for (auto q : qs) targets.insert(m.next(q, a));
    if (targets.size() != qs.size()) return false;
    for (auto p : targets)
      if (!std::binary_search(qs.begin(), qs.end(), p)) return false;
  }
  return true;
}

bool coreversible_on(const Automaton& m, const std::vector<StateId>& qs) {
  std::set<std::pair<StateId, LetterId>> produced;
  for (auto q : qs)
    for (LetterId a = 0; a < m.letter_count(); ++a)
      if (!produced.insert({m.next(q, a), m.out(q, a)}).second) return false;
  return true;
}

std::vector<StateId> all_states(const Automaton& m) {
  std::vector<StateId> qs(m.state_count());
  std::iota(qs.begin(), qs.end(), 0);
  return qs;
}

}  // namespace

bool is_invertible(const Automaton& m) { return invertible_on(m, all_states(m)); }
bool is_reversible(const Automaton& m) { return reversible_on(m, all_states(m)); }
bool is_coreversible(const Automaton& m) { return coreversible_on(m, all_states(m)); }

ClassReport classify(const Automaton& m) {
  ClassReport r;
  const auto qs = all_states(m);
  r.invertible = invertible_on(m, qs);
  r.reversible = reversible_on(m, qs);
  r.bireversible = r.invertible && r.reversible && coreversible_on(m, qs);
  r.has_sink = m.sink().has_value();
  if (r.has_sink) {
    // Reverse reachability from the sink.
    std::vector<bool> reaches(m.state_count(), false);
    reaches[*m.sink()] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (StateId q = 0; q < m.state_count(); ++q) {
        if (reaches[q]) continue;
        for (LetterId a = 0; a < m.letter_count(); ++a)
          if (reaches[m.next(q, a)]) {
            reaches[q] = changed = true;
            break;
          }
      }
    }
    r.sink_accessible = std::all_of(reaches.begin(), reaches.end(), [](bool b) { return b; });
  }
  std::vector<StateId> parent(qs);
  auto find = [&](StateId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (StateId q = 0; q < m.state_count(); ++q)
    for (LetterId a = 0; a < m.letter_count(); ++a) {
      auto x = find(q), y = find(m.next(q, a));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  std::map<StateId, std::size_t> slot;
  for (StateId q = 0; q < m.state_count(); ++q) {
    auto root = find(q);
    auto [it, fresh] = slot.try_emplace(root, r.components.size());
    if (fresh) r.components.emplace_back();
    r.components[it->second].states.push_back(q);
  }
  for (auto& c : r.components)
    c.bireversible = invertible_on(m, c.states) && reversible_on(m, c.states) && coreversible_on(m, c.states);
  return r;
}

Automaton dual(const Automaton& m) {
  const std::size_t nq = m.state_count(), nx = m.letter_count();
  std::vector<StateId> delta(nx * nq);
  std::vector<LetterId> rho(nx * nq);
  for (StateId q = 0; q < nq; ++q)
    for (LetterId a = 0; a < nx; ++a) {
      delta[a * nq + q] = m.out(q, a);
      rho[a * nq + q] = m.next(q, a);
    }
  return Automaton(m.alphabet(), m.states(), std::move(delta), std::move(rho));
}

namespace {

void require_invertible(const Automaton& m) {
  for (StateId q = 0; q < m.state_count(); ++q)
    if (!invertible_on(m, {q}))
      throw NotInvertibleError("state '" + m.state_name(q) + "' does not permute the alphabet");
}

}  // namespace

Automaton inverse(const Automaton& m) {
  require_invertible(m);
  const std::size_t nq = m.state_count(), nx = m.letter_count();
  std::vector<std::string> names;
  for (const auto& s : m.states()) names.push_back(inverse_name(s));
  std::vector<StateId> delta(nq * nx);
  std::vector<LetterId> rho(nq * nx);
  for (StateId q = 0; q < nq; ++q)
    for (LetterId a = 0; a < nx; ++a) {
      const LetterId b = m.out(q, a);
      delta[q * nx + b] = m.next(q, a);
      rho[q * nx + b] = a;
    }
  return Automaton(std::move(names), m.alphabet(), std::move(delta), std::move(rho), m.sink());
}

Automaton enrich(const Automaton& m) {
  const Automaton inv = inverse(m);
  const std::size_t nq = m.state_count(), nx = m.letter_count();
  std::vector<std::string> names = m.states();
  names.insert(names.end(), inv.states().begin(), inv.states().end());
  std::vector<StateId> delta = m.delta();
  std::vector<LetterId> rho = m.rho();
  for (StateId q = 0; q < nq; ++q)
    for (LetterId a = 0; a < nx; ++a) {
      delta.push_back(static_cast<StateId>(nq + inv.next(q, a)));
      rho.push_back(inv.out(q, a));
    }
  return Automaton(std::move(names), m.alphabet(), std::move(delta), std::move(rho), m.sink());
}

Automaton union_identify_sinks(const Automaton& m) {
  if (!m.sink()) throw PreconditionError("automaton has no sink");
  const Automaton inv = inverse(m);
  const StateId e = *m.sink();
  const std::size_t nq = m.state_count(), nx = m.letter_count();
  std::vector<StateId> slot(nq);
  std::vector<std::string> names = m.states();
  for (StateId q = 0; q < nq; ++q) {
    if (q == e) {
      slot[q] = e;
      continue;
    }
    slot[q] = static_cast<StateId>(names.size());
    names.push_back(inv.state_name(q));
  }
  std::vector<StateId> delta = m.delta();
  std::vector<LetterId> rho = m.rho();
  for (StateId q = 0; q < nq; ++q) {
    if (q == e) continue;
    for (LetterId a = 0; a < nx; ++a) {
      delta.push_back(slot[inv.next(q, a)]);
      rho.push_back(inv.out(q, a));
    }
  }
  return Automaton(std::move(names), m.alphabet(), std::move(delta), std::move(rho), e);
}

std::vector<std::size_t> refine_partition(std::size_t states, std::size_t letters,
                                          const std::vector<std::uint32_t>& delta,
                                          const std::vector<std::uint32_t>& rho) {
  std::vector<std::size_t> cls(states);
  std::size_t count = 0;
  {
    std::map<std::vector<std::uint32_t>, std::size_t> ids;
    for (std::size_t q = 0; q < states; ++q) {
      std::vector<std::uint32_t> row(rho.begin() + q * letters, rho.begin() + (q + 1) * letters);
      cls[q] = ids.try_emplace(std::move(row), ids.size()).first->second;
    }
    count = ids.size();
  }
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(states);
    for (std::size_t q = 0; q < states; ++q) {
      std::vector<std::size_t> sig{cls[q]};
      for (std::size_t a = 0; a < letters; ++a) sig.push_back(cls[delta[q * letters + a]]);
      next[q] = ids.try_emplace(std::move(sig), ids.size()).first->second;
    }
    cls.swap(next);
    if (ids.size() == count) break;
    count = ids.size();
  }
  // Renumber classes by first occurrence.
  std::vector<std::size_t> renum(count, states);
  std::size_t fresh = 0;
  for (auto& c : cls) {
    if (renum[c] == states) renum[c] = fresh++;
    c = renum[c];
  }
  return cls;
}

Automaton minimize(const Automaton& m) {
  const std::size_t nx = m.letter_count();
  auto cls = refine_partition(m.state_count(), nx, m.delta(), m.rho());
  const std::size_t k = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::string> names(k);
  std::vector<StateId> delta(k * nx);
  std::vector<LetterId> rho(k * nx);
  std::vector<bool> done(k, false);
  for (StateId q = 0; q < m.state_count(); ++q) {
    const auto c = cls[q];
    if (done[c]) continue;
    done[c] = true;
    names[c] = m.state_name(q);
    for (LetterId a = 0; a < nx; ++a) {
      delta[c * nx + a] = static_cast<StateId>(cls[m.next(q, a)]);
      rho[c * nx + a] = m.out(q, a);
    }
  }
  std::optional<StateId> sink;
  if (m.sink()) sink = static_cast<StateId>(cls[*m.sink()]);
  return Automaton(std::move(names), m.alphabet(), std::move(delta), std::move(rho), sink);
}

ActResult act(const Automaton& m, const StateWord& u, const LetterWord& v) {
  for (auto a : v)
    if (a >= m.letter_count()) throw ValidationError("letter index out of range");
  for (auto s : u)
    if (s.base >= m.state_count()) throw ValidationError("state index out of range");
  const bool signed_word = std::any_of(u.begin(), u.end(), [](SignedState s) { return s.inverse; });
  if (!signed_word) {
    ActResult r{v, u};
    for (std::size_t i = u.size(); i-- > 0;) {
      StateId q = u[i].base;
      for (auto& a : r.output) {
        const LetterId b = m.out(q, a);
        q = m.next(q, a);
        a = b;
      }
      r.residual[i].base = q;
    }
    return r;
  }
  Engine engine(m);
  Engine::Word w = engine.encode(u);
  LetterWord out = v;
  engine.apply(w, out);
  return {out, engine.decode(w)};
}

Engine::Engine(const Automaton& m) : base_(m), invertible_(is_invertible(m)), letters_(m.letter_count()) {
  if (invertible_) {
    const Automaton e = enrich(m);
    delta_ = e.delta();
    rho_ = e.rho();
    size_ = e.state_count();
  } else {
    delta_ = m.delta();
    rho_ = m.rho();
    size_ = m.state_count();
  }
  // Greatest set of states with identity output rows closed under transitions.
  trivial_.assign(size_, true);
  for (std::uint32_t q = 0; q < size_; ++q)
    for (LetterId a = 0; a < letters_; ++a)
      if (out(q, a) != a) trivial_[q] = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t q = 0; q < size_; ++q) {
      if (!trivial_[q]) continue;
      for (LetterId a = 0; a < letters_; ++a)
        if (!trivial_[next(q, a)]) {
          trivial_[q] = false;
          changed = true;
          break;
        }
    }
  }
}

std::uint32_t Engine::inverse_of(std::uint32_t q) const {
  if (!invertible_) throw NotInvertibleError("automaton is not invertible");
  const auto n = static_cast<std::uint32_t>(base_size());
  return q < n ? q + n : q - n;
}

std::string Engine::name(std::uint32_t q) const {
  const auto s = signed_state(q);
  const auto& base = base_.state_name(s.base);
  return s.inverse ? inverse_name(base) : base;
}

std::uint32_t Engine::index(SignedState s) const {
  if (s.base >= base_size()) throw ValidationError("state index out of range");
  if (!s.inverse) return s.base;
  if (!invertible_) throw NotInvertibleError("signed state used with a non-invertible automaton");
  return static_cast<std::uint32_t>(s.base + base_size());
}

SignedState Engine::signed_state(std::uint32_t q) const {
  const auto n = static_cast<std::uint32_t>(base_size());
  return q < n ? SignedState{q, false} : SignedState{q - n, true};
}

Engine::Word Engine::encode(const StateWord& u) const {
  Word w;
  w.reserve(u.size());
  for (auto s : u) w.push_back(index(s));
  return w;
}

StateWord Engine::decode(const Word& w) const {
  StateWord u;
  u.reserve(w.size());
  for (auto q : w) u.push_back(signed_state(q));
  return u;
}

void Engine::apply(Word& w, LetterWord& v) const {
  for (std::size_t i = w.size(); i-- > 0;) {
    std::uint32_t q = w[i];
    for (auto& a : v) {
      const LetterId b = out(q, a);
      q = next(q, a);
      a = b;
    }
    w[i] = q;
  }
}

LetterId Engine::apply_letter(const Word& w, LetterId a, Word* residual) const {
  if (residual) residual->resize(w.size());
  for (std::size_t i = w.size(); i-- > 0;) {
    const std::uint32_t q = w[i];
    if (residual) (*residual)[i] = next(q, a);
    a = out(q, a);
  }
  return a;
}

Engine::Word Engine::normalize(Word w) const {
  Word out;
  out.reserve(w.size());
  const auto n = static_cast<std::uint32_t>(base_size());
  for (auto q : w) {
    if (trivial_[q]) continue;
    if (!out.empty() && invertible_ && out.back() % n == q % n && out.back() != q)
      out.pop_back();
    else
      out.push_back(q);
  }
  return out;
}

}  // namespace mealy

namespace mealy {

bool PartialAutomaton::complete() const {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.has_value(); });
}

PartialAutomaton to_partial(const Automaton& m) {
  PartialAutomaton p{m.states(), m.alphabet(), {}, m.sink()};
  for (StateId q = 0; q < m.state_count(); ++q)
    for (LetterId a = 0; a < m.letter_count(); ++a)
      p.cells.push_back(PartialAutomaton::Cell{m.next(q, a), m.out(q, a)});
  return p;
}

Automaton to_complete(const PartialAutomaton& p) {
  std::string missing;
  std::vector<StateId> delta;
  std::vector<LetterId> rho;
  for (StateId q = 0; q < p.states.size(); ++q)
    for (LetterId a = 0; a < p.alphabet.size(); ++a) {
      const auto& c = p.at(q, a);
      if (!c) {
        missing += (missing.empty() ? "" : ", ") + ("(" + p.states[q] + "," + p.alphabet[a] + ")");
        delta.push_back(0);
        rho.push_back(0);
      } else {
        delta.push_back(c->target);
        rho.push_back(c->output);
      }
    }
  if (!missing.empty()) throw ValidationError("incomplete automaton, missing transitions: " + missing);
  return Automaton(p.states, p.alphabet, std::move(delta), std::move(rho), p.sink);
}

}  // namespace mealy
