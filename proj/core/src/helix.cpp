#include "mealy/helix.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mealy/error.hpp"
#include "mealy/io.hpp"

namespace mealy {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) throw BudgetExhausted("helix node count exceeds the cap of " + std::to_string(cap));
  }
  return r;
}

LetterWord letters_of(std::size_t x, std::size_t n, std::size_t nx) {
  LetterWord v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = static_cast<LetterId>(x % nx);
    x /= nx;
  }
  return v;
}

std::vector<Engine::Word> all_words(const Engine& engine, const std::vector<std::uint32_t>& alphabet,
                                    std::size_t length, bool reduced_only) {
  std::vector<Engine::Word> out;
  std::vector<Engine::Word> layer{{}};
  const auto n = engine.base_size();
  for (std::size_t len = 0; len < length; ++len) {
    std::vector<Engine::Word> next;
    for (const auto& w : layer)
      for (auto q : alphabet) {
        if (reduced_only && !w.empty() && w.back() % n == q % n && w.back() != q) continue;
        auto x = w;
        x.push_back(q);
        next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
  return layer;
}

Engine::Word free_reduce(const Engine& engine, const Engine::Word& w) {
  Engine::Word out;
  const auto n = engine.base_size();
  for (auto q : w) {
    if (!out.empty() && out.back() % n == q % n && out.back() != q)
      out.pop_back();
    else
      out.push_back(q);
  }
  return out;
}

}  // namespace

std::optional<std::size_t> HelixGraph::find(const StateWord& u, const LetterWord& v) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (node_u[i] == u && node_v[i] == v) return i;
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> HelixGraph::cycles() const {
  std::vector<std::size_t> stamp(size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < size(); ++start) {
    std::size_t x = start;
    while (stamp[x] == SIZE_MAX) {
      stamp[x] = start;
      x = succ[x];
    }
    if (stamp[x] != start) continue;
    std::vector<std::size_t> cyc{x};
    for (std::size_t y = succ[x]; y != x; y = succ[y]) cyc.push_back(y);
    auto less = [&](std::size_t a, std::size_t b) {
      return std::tie(node_u[a], node_v[a]) < std::tie(node_u[b], node_v[b]);
    };
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end(), less), cyc.end());
    out.push_back(std::move(cyc));
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return std::tie(node_u[a[0]], node_v[a[0]]) < std::tie(node_u[b[0]], node_v[b[0]]);
  });
  return out;
}

HelixGraph build_helix(const Automaton& m, std::size_t k, std::size_t n, bool signed_states, std::size_t node_cap) {
  const Engine engine(m);
  if (signed_states && !engine.invertible()) throw NotInvertibleError("signed helix needs an invertible automaton");
  HelixGraph h;
  h.k = k;
  h.n = n;
  h.signed_states = signed_states;
  const std::size_t nx = m.letter_count();
  const std::size_t letter_nodes = checked_power(nx, n, node_cap);
  std::vector<std::uint32_t> alphabet;
  for (std::uint32_t q = 0; q < (signed_states ? engine.size() : engine.base_size()); ++q) alphabet.push_back(q);
  checked_power(alphabet.size(), k, node_cap / std::max<std::size_t>(letter_nodes, 1));
  const auto seeds = all_words(engine, alphabet, k, signed_states);

  std::map<std::pair<Engine::Word, LetterWord>, std::size_t> index;
  std::vector<Engine::Word> words;
  auto intern = [&](Engine::Word w, LetterWord v) {
    auto [it, fresh] = index.try_emplace({w, v}, words.size());
    if (fresh) {
      if (words.size() >= node_cap) throw BudgetExhausted("helix node count exceeds the cap");
      words.push_back(std::move(w));
      h.node_v.push_back(std::move(v));
    }
    return it->second;
  };
  for (const auto& w : seeds)
    for (std::size_t x = 0; x < letter_nodes; ++x) intern(w, letters_of(x, n, nx));
  for (std::size_t i = 0; i < words.size(); ++i) {
    Engine::Word r = words[i];
    LetterWord v = h.node_v[i];
    engine.apply(r, v);
    if (signed_states) r = free_reduce(engine, r);
    h.succ.push_back(intern(std::move(r), std::move(v)));
  }
  for (const auto& w : words) h.node_u.push_back(engine.decode(w));
  return h;
}

bool commutes(const Automaton& m, const StateWord& u, const LetterWord& v) {
  const auto r = act(m, u, v);
  return r.output == v && r.residual == u;
}

std::vector<CommutingPair> cycles_to_pairs(const Automaton& m, const HelixGraph& h, bool all_rotations,
                                           const SearchBudget& budget) {
  const Engine engine(m);
  std::vector<CommutingPair> out;
  for (const auto& cyc : h.cycles()) {
    for (std::size_t start = 0; start < (all_rotations ? cyc.size() : 1); ++start) {
      CommutingPair p;
      for (std::size_t j = cyc.size(); j-- > 0;) {
        const auto& u = h.node_u[cyc[(start + j) % cyc.size()]];
        p.u.insert(p.u.end(), u.begin(), u.end());
      }
      for (std::size_t j = 0; j < cyc.size(); ++j) {
        const auto& v = h.node_v[cyc[(start + j) % cyc.size()]];
        p.v.insert(p.v.end(), v.begin(), v.end());
      }
      if (!commutes(m, p.u, p.v)) throw Error("internal: helix cycle does not yield a commuting pair");
      try {
        p.pi_u_trivial = is_identity(engine, engine.encode(p.u), budget.closure_cap);
      } catch (const BudgetExhausted&) {
        p.pi_u_trivial.reset();
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

// Bounded search over helix graphs of the partial transducer on `allowed`.
WitnessReport search_partial_helix(const Automaton& m, const Engine& engine, const std::vector<std::uint32_t>& allowed,
                                   std::size_t k_max, std::size_t n_max, bool signed_states,
                                   const SearchBudget& budget) {
  WitnessReport report;
  if (allowed.empty()) return report;
  std::vector<bool> ok(engine.size(), false);
  for (auto q : allowed) ok[q] = true;
  const std::size_t nx = m.letter_count();
  std::size_t examined = 0;
  for (std::size_t total = 2; total <= k_max + n_max; ++total) {
    for (std::size_t k = 1; k <= std::min(k_max, total - 1); ++k) {
      const std::size_t n = total - k;
      if (n > n_max) continue;
      const auto words = all_words(engine, allowed, k, signed_states);
      std::size_t letter_nodes = 1;
      for (std::size_t i = 0; i < n; ++i) letter_nodes *= nx;
      const std::size_t nodes = words.size() * letter_nodes;
      examined += nodes;
      if (examined > budget.candidate_cap) {
        report.budget_exhausted = true;
        return report;
      }
      std::map<Engine::Word, std::size_t> word_index;
      for (std::size_t i = 0; i < words.size(); ++i) word_index.emplace(words[i], i);
      auto encode_v = [&](const LetterWord& v) {
        std::size_t x = 0;
        for (auto a : v) x = x * nx + a;
        return x;
      };
      constexpr std::size_t kDead = SIZE_MAX;
      std::vector<std::size_t> succ(nodes, kDead);
      for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t x = 0; x < letter_nodes; ++x) {
          Engine::Word r = words[i];
          LetterWord v = letters_of(x, n, nx);
          engine.apply(r, v);
          if (!std::all_of(r.begin(), r.end(), [&](std::uint32_t q) { return ok[q]; })) continue;
          auto it = word_index.find(r);
          if (it == word_index.end()) continue;
          succ[i * letter_nodes + x] = it->second * letter_nodes + encode_v(v);
        }
      std::vector<std::size_t> stamp(nodes, kDead);
      for (std::size_t start = 0; start < nodes; ++start) {
        std::size_t x = start;
        while (x != kDead && stamp[x] == kDead) {
          stamp[x] = start;
          x = succ[x];
        }
        if (x == kDead || stamp[x] != start) continue;
        std::vector<std::size_t> cyc{x};
        for (std::size_t y = succ[x]; y != x; y = succ[y]) cyc.push_back(y);
        std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
        Engine::Word u;
        LetterWord v;
        for (std::size_t j = cyc.size(); j-- > 0;) {
          const auto& w = words[cyc[j] / letter_nodes];
          u.insert(u.end(), w.begin(), w.end());
        }
        for (auto c : cyc) {
          const auto part = letters_of(c % letter_nodes, n, nx);
          v.insert(v.end(), part.begin(), part.end());
        }
        if (signed_states) {
          u = free_reduce(engine, u);
          if (u.empty()) continue;
        }
        report.u = engine.decode(u);
        report.v = v;
        if (!commutes(m, report.u, v)) throw Error("internal: restricted helix cycle does not commute");
        report.found = true;
        try {
          report.pi_u_trivial = is_identity(engine, u, budget.closure_cap);
        } catch (const BudgetExhausted&) {
          report.budget_exhausted = true;
        }
        return report;
      }
    }
  }
  return report;
}

}  // namespace

WitnessReport restricted_commuting_pair(const Automaton& m, const std::vector<StateId>& allowed, std::size_t k_max,
                                        std::size_t n_max, const SearchBudget& budget) {
  if (allowed.empty()) throw PreconditionError("allowed state set is empty");
  const Engine engine(m);
  std::vector<std::uint32_t> idx;
  for (auto q : allowed) {
    if (q >= m.state_count()) throw ValidationError("allowed state out of range");
    idx.push_back(q);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return search_partial_helix(m, engine, idx, k_max, n_max, false, budget);
}

WitnessReport non_elementary_commuting_pair(const Automaton& m, std::size_t k_max, std::size_t n_max,
                                            bool signed_states, const SearchBudget& budget) {
  if (!m.sink()) throw PreconditionError("non-elementary commuting pairs need a sink");
  const Engine engine(m);
  if (signed_states && !engine.invertible()) throw NotInvertibleError("signed search needs an invertible automaton");
  std::vector<std::uint32_t> idx;
  const auto limit = signed_states ? engine.size() : engine.base_size();
  const auto n = engine.base_size();
  for (std::uint32_t q = 0; q < limit; ++q)
    if (q % n != *m.sink()) idx.push_back(q);
  return search_partial_helix(m, engine, idx, k_max, n_max, signed_states, budget);
}

bool is_elementary_relation(const Automaton& m, const StateWord& u, const SearchBudget& budget) {
  const Engine engine(m);
  const auto w = engine.encode(u);
  if (!is_identity(engine, w, budget.closure_cap)) throw PreconditionError("word is not a relation");
  // Exact section closure, without normalization.
  std::map<Engine::Word, std::size_t> index{{w, 0}};
  std::vector<Engine::Word> nodes{w};
  std::vector<std::vector<std::size_t>> succ;
  Engine::Word r;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    succ.emplace_back();
    for (LetterId a = 0; a < m.letter_count(); ++a) {
      engine.apply_letter(nodes[i], a, &r);
      auto [it, fresh] = index.try_emplace(r, nodes.size());
      if (fresh) {
        if (nodes.size() >= budget.closure_cap) throw BudgetExhausted("section closure exceeds the cap");
        nodes.push_back(r);
      }
      succ[i].push_back(it->second);
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const bool trivial = std::all_of(nodes[i].begin(), nodes[i].end(), [&](auto q) { return engine.trivial(q); });
    if (trivial) continue;
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::size_t> stack(succ[i].begin(), succ[i].end());
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      if (x == i) return false;
      if (seen[x]) continue;
      seen[x] = true;
      stack.insert(stack.end(), succ[x].begin(), succ[x].end());
    }
  }
  return true;
}

ShapeVerdict helix_shape(const Automaton& m, std::size_t k, std::size_t n, HelixMode mode,
                         std::size_t reduction_depth, const SearchBudget& budget) {
  if (!classify(m).sink_accessible) throw PreconditionError("helix shapes need an automaton in S_a");
  const Engine engine(m);
  ShapeVerdict verdict;
  verdict.holds = true;
  const bool signed_states = mode != HelixMode::singular;
  const auto h = build_helix(m, k, n, signed_states);
  const StateId e = *m.sink();
  auto all_sink = [&](const StateWord& u) {
    return std::all_of(u.begin(), u.end(), [&](SignedState s) { return s.base == e; });
  };
  for (const auto& cyc : h.cycles()) {
    ++verdict.cycles;
    if (mode == HelixMode::singular) {
      if (cyc.size() != 1 || !all_sink(h.node_u[cyc[0]])) verdict.holds = false;
      continue;
    }
    for (auto node : cyc) {
      const auto& u = h.node_u[node];
      if (all_sink(u) || is_identity(engine, engine.encode(u), budget.closure_cap)) continue;
      // Helix letters are positive, so every v^ω is essentially non-trivial:
      // the reduced prefix of v^m keeps length m|v| at every tested depth.
      verdict.holds = false;
    }
  }
  if (mode == HelixMode::essentially_singular) verdict.reduction_depth = reduction_depth;
  return verdict;
}

std::string helix_node_name(const Automaton& m, const HelixGraph& h, std::size_t node) {
  return "(" + format_state_word(m, h.node_u[node]) + "," + format_letter_word(m, h.node_v[node]) + ")";
}

std::string to_dot(const Automaton& m, const HelixGraph& h, const std::string& name) {
  std::vector<bool> on_cycle(h.size(), false);
  for (const auto& c : h.cycles())
    for (auto x : c) on_cycle[x] = true;
  std::string s = "digraph \"" + name + "\" {\n";
  for (std::size_t i = 0; i < h.size(); ++i) {
    s += "  \"" + helix_node_name(m, h, i) + "\"";
    if (on_cycle[i]) s += " [style=filled, fillcolor=lightgray]";
    s += ";\n";
  }
  for (std::size_t i = 0; i < h.size(); ++i)
    s += "  \"" + helix_node_name(m, h, i) + "\" -> \"" + helix_node_name(m, h, h.succ[i]) + "\";\n";
  return s + "}\n";
}

}  // namespace mealy
