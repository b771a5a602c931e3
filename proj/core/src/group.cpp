#include "mealy/group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mealy/error.hpp"
#include "mealy/io.hpp"

namespace mealy {

std::size_t primitive_root_length(const LetterWord& w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = fail[k];
    if (w[i] == w[k]) ++k;
    fail[i + 1] = k;
  }
  const std::size_t p = n - fail[n];
  return n % p == 0 ? p : n;
}

EventuallyPeriodicWord::EventuallyPeriodicWord(LetterWord preperiod, LetterWord period)
    : pre_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw ValidationError("boundary point needs a nonempty period");
  period_.resize(primitive_root_length(period_));
  while (!pre_.empty() && pre_.back() == period_.back()) {
    pre_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

LetterId EventuallyPeriodicWord::at(std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return period_[(i - pre_.size()) % period_.size()];
}

LetterWord EventuallyPeriodicWord::prefix(std::size_t n) const {
  LetterWord w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
  return w;
}

EventuallyPeriodicWord EventuallyPeriodicWord::shift(std::size_t n) const {
  if (n <= pre_.size()) return {LetterWord(pre_.begin() + n, pre_.end()), period_};
  LetterWord p = period_;
  std::rotate(p.begin(), p.begin() + (n - pre_.size()) % p.size(), p.end());
  return {{}, p};
}

bool is_identity(const Engine& engine, const Engine::Word& w, std::size_t closure_cap) {
  std::set<Engine::Word> seen{engine.normalize(w)};
  std::vector<Engine::Word> todo(seen.begin(), seen.end());
  Engine::Word residual;
  while (!todo.empty()) {
    const Engine::Word x = std::move(todo.back());
    todo.pop_back();
    for (LetterId a = 0; a < engine.letters(); ++a) {
      if (engine.apply_letter(x, a, &residual) != a) return false;
      auto y = engine.normalize(residual);
      if (seen.insert(y).second) {
        if (seen.size() > closure_cap)
          throw BudgetExhausted("section closure exceeds " + std::to_string(closure_cap) + " words");
        todo.push_back(std::move(y));
      }
    }
  }
  return true;
}

bool is_identity(const Automaton& m, const StateWord& u, const SearchBudget& budget) {
  const Engine engine(m);
  return is_identity(engine, engine.encode(u), budget.closure_cap);
}

Order order(const Automaton& m, const StateWord& u, std::size_t cap, const SearchBudget& budget) {
  if (cap == 0) throw PreconditionError("order cap must be positive");
  const Engine engine(m);
  const auto w = engine.encode(u);
  Engine::Word power;
  for (std::size_t n = 1; n <= cap; ++n) {
    power.insert(power.end(), w.begin(), w.end());
    power = engine.normalize(power);
    if (is_identity(engine, power, budget.closure_cap)) return {n, true};
  }
  return {cap, false};
}

Epw act_epw(const Engine& engine, const Engine::Word& w, const Epw& xi) {
  Engine::Word r = w;
  LetterWord head = xi.preperiod();
  engine.apply(r, head);
  std::map<Engine::Word, std::size_t> seen;
  std::vector<LetterWord> blocks;
  while (true) {
    auto [it, fresh] = seen.try_emplace(r, blocks.size());
    if (!fresh) {
      for (std::size_t i = 0; i < it->second; ++i) head.insert(head.end(), blocks[i].begin(), blocks[i].end());
      LetterWord period;
      for (std::size_t i = it->second; i < blocks.size(); ++i)
        period.insert(period.end(), blocks[i].begin(), blocks[i].end());
      return Epw(std::move(head), std::move(period));
    }
    LetterWord block = xi.period();
    engine.apply(r, block);
    blocks.push_back(std::move(block));
  }
}

Epw act_epw(const Automaton& m, const StateWord& u, const Epw& xi) {
  const Engine engine(m);
  return act_epw(engine, engine.encode(u), xi);
}

bool stabilizes(const Automaton& m, const StateWord& u, const Epw& xi) { return act_epw(m, u, xi) == xi; }

namespace {

// Indices usable in searches: nontrivial states, with inverses when allowed.
std::vector<std::uint32_t> search_alphabet(const Engine& engine, bool with_inverses) {
  std::vector<std::uint32_t> s;
  const auto limit = with_inverses && engine.invertible() ? engine.size() : engine.base_size();
  for (std::uint32_t q = 0; q < limit; ++q)
    if (!engine.trivial(q)) s.push_back(q);
  return s;
}

// Calls f on every word of the given length over alphabet in lexicographic
// order, optionally skipping non-reduced words. Stops when f returns false.
template <class F>
bool for_each_word(const Engine& engine, const std::vector<std::uint32_t>& alphabet, std::size_t length,
                   bool reduced_only, F&& f) {
  if (alphabet.empty()) return length == 0 ? f(Engine::Word{}) : true;
  std::vector<std::size_t> digits(length, 0);
  Engine::Word w(length);
  const auto n = engine.base_size();
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < length; ++i) {
      w[i] = alphabet[digits[i]];
      if (reduced_only && i > 0 && w[i] % n == w[i - 1] % n && w[i] != w[i - 1]) ok = false;
    }
    if (ok && !f(w)) return false;
    std::size_t i = length;
    while (i > 0 && ++digits[i - 1] == alphabet.size()) digits[--i] = 0;
    if (i == 0) return true;
  }
}

}  // namespace

WitnessReport singular_witness(const Automaton& m, const Epw& xi, std::size_t k_max, std::size_t n_max,
                               const SearchBudget& budget) {
  const Engine engine(m);
  WitnessReport report;
  report.shifted_preperiod = xi.preperiod();
  const LetterWord& v = xi.period();
  const auto alphabet = search_alphabet(engine, true);
  std::size_t candidates = 0;
  for (std::size_t total = 2; total <= k_max + n_max && !report.found; ++total) {
    for (std::size_t k = 1; k <= std::min(k_max, total - 1) && !report.found; ++k) {
      const std::size_t n = total - k;
      if (n > n_max) continue;
      LetterWord vn;
      for (std::size_t i = 0; i < n; ++i) vn.insert(vn.end(), v.begin(), v.end());
      const bool complete = for_each_word(engine, alphabet, k, true, [&](const Engine::Word& w) {
        if (++candidates > budget.candidate_cap) {
          report.budget_exhausted = true;
          return false;
        }
        Engine::Word r = w;
        LetterWord out = vn;
        engine.apply(r, out);
        if (r != w || out != vn) return true;
        bool trivial = false;
        try {
          trivial = is_identity(engine, w, budget.closure_cap);
        } catch (const BudgetExhausted&) {
          report.budget_exhausted = true;
          return true;
        }
        if (trivial) return true;
        report.found = true;
        report.u = engine.decode(w);
        report.n = n;
        report.v = v;
        report.pi_u_trivial = false;
        return false;
      });
      if (!complete && !report.found) return report;
    }
  }
  if (report.found) {
    // Certificate: u fixes v^ω and none of its sections along v^n is trivial.
    const auto w = engine.encode(report.u);
    if (act_epw(engine, w, Epw({}, v)) != Epw({}, v))
      throw Error("internal: singular witness does not stabilize the point");
    Engine::Word r = w;
    for (std::size_t i = 0; i < *report.n * v.size(); ++i) {
      if (is_identity(engine, r, budget.closure_cap)) throw Error("internal: singular witness has a trivial section");
      engine.apply_letter(Engine::Word(r), v[i % v.size()], &r);
    }
  }
  return report;
}

namespace {

std::vector<std::uint32_t> label_states(const Engine& engine, const SchreierOptions& opts) {
  std::vector<std::uint32_t> labels;
  const auto limit = opts.include_inverses && engine.invertible() ? engine.size() : engine.base_size();
  for (std::uint32_t q = 0; q < limit; ++q)
    if (opts.include_trivial || !engine.trivial(q)) labels.push_back(q);
  return labels;
}

void fill_labels(const Engine& engine, const std::vector<std::uint32_t>& states, const SchreierOptions& opts,
                 LabeledDigraph& g) {
  for (auto q : states) g.labels.push_back(engine.name(q));
  g.label_inverse.assign(states.size(), std::nullopt);
  if (!opts.include_inverses || !engine.invertible()) return;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto it = std::find(states.begin(), states.end(), engine.inverse_of(states[i]));
    if (it != states.end()) g.label_inverse[i] = static_cast<std::size_t>(it - states.begin());
  }
}

}  // namespace

LabeledDigraph schreier_level(const Automaton& m, std::size_t depth, const SchreierOptions& opts) {
  const Engine engine(m);
  if (opts.include_inverses && !engine.invertible()) throw NotInvertibleError("Schreier graphs need an invertible automaton");
  std::size_t count = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    count *= m.letter_count();
    if (count > opts.vertex_cap) throw BudgetExhausted("level " + std::to_string(depth) + " exceeds the vertex cap");
  }
  LabeledDigraph g;
  const auto states = label_states(engine, opts);
  fill_labels(engine, states, opts, g);
  auto decode = [&](std::size_t x) {
    LetterWord w(depth);
    for (std::size_t i = depth; i-- > 0;) {
      w[i] = static_cast<LetterId>(x % m.letter_count());
      x /= m.letter_count();
    }
    return w;
  };
  auto encode = [&](const LetterWord& w) {
    std::size_t x = 0;
    for (auto a : w) x = x * m.letter_count() + a;
    return x;
  };
  for (std::size_t x = 0; x < count; ++x) g.vertices.push_back(format_letter_word(m, decode(x)));
  for (std::size_t x = 0; x < count; ++x)
    for (std::size_t l = 0; l < states.size(); ++l) {
      Engine::Word w{states[l]};
      LetterWord v = decode(x);
      engine.apply(w, v);
      g.edges.push_back({x, l, encode(v)});
    }
  return g;
}

OrbitGraph orbit_ball(const Engine& engine, const Epw& xi, std::size_t max_depth, std::size_t node_cap,
                      const SchreierOptions& opts) {
  if (!engine.invertible()) throw NotInvertibleError("orbit graphs need an invertible automaton");
  const Automaton& m = engine.automaton();
  OrbitGraph o;
  const auto states = label_states(engine, opts);
  fill_labels(engine, states, opts, o.graph);
  for (auto q : states) o.positive_label.push_back(q < engine.base_size() && !engine.trivial(q));
  std::map<Epw, std::size_t> index;
  auto add = [&](const Epw& p, std::size_t d) {
    index.emplace(p, o.points.size());
    o.points.push_back(p);
    o.depth.push_back(d);
    o.graph.vertices.push_back(format_epw(m, p));
  };
  add(xi, 0);
  o.graph.root = 0;
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    for (std::size_t l = 0; l < states.size(); ++l) {
      const Epw t = act_epw(engine, {states[l]}, o.points[i]);
      auto it = index.find(t);
      if (it == index.end()) {
        if (o.depth[i] >= max_depth) continue;
        if (o.points.size() >= node_cap) {
          if (!o.graph.truncated) o.graph.exact_radius = o.depth[i];
          o.graph.truncated = true;
          continue;
        }
        add(t, o.depth[i] + 1);
        it = index.find(t);
      }
      o.graph.edges.push_back({i, l, it->second});
    }
  }
  if (!o.graph.truncated && max_depth != SIZE_MAX) {
    o.graph.truncated = true;
    o.graph.exact_radius = max_depth;
  }
  return o;
}

OrbitGraph orbit_epw(const Automaton& m, const Epw& xi, std::size_t node_cap, const SchreierOptions& opts) {
  const Engine engine(m);
  return orbit_ball(engine, xi, SIZE_MAX, node_cap, opts);
}

LabeledDigraph OrbitGraph::positive_subgraph() const {
  LabeledDigraph g = graph;
  g.edges.clear();
  for (const auto& e : graph.edges)
    if (positive_label[e.label]) g.edges.push_back(e);
  g.label_inverse.assign(g.labels.size(), std::nullopt);
  return g;
}

bool OrbitGraph::positive_cycle_in_ball() const { return graph.has_cycle_with_labels(positive_label); }

WitnessReport positive_relation_search(const Automaton& m, std::size_t len_max, const SearchBudget& budget) {
  const Engine engine(m);
  const auto alphabet = search_alphabet(engine, false);
  WitnessReport report;
  std::size_t candidates = 0;
  for (std::size_t len = 1; len <= len_max && !report.found; ++len) {
    const bool complete = for_each_word(engine, alphabet, len, false, [&](const Engine::Word& w) {
      if (++candidates > budget.candidate_cap) {
        report.budget_exhausted = true;
        return false;
      }
      try {
        if (is_identity(engine, w, budget.closure_cap)) {
          report.found = true;
          report.u = engine.decode(w);
          report.pi_u_trivial = true;
          return false;
        }
      } catch (const BudgetExhausted&) {
        report.budget_exhausted = true;
      }
      return true;
    });
    if (!complete) break;
  }
  return report;
}

WitnessReport positive_completion(const Automaton& m, const StateWord& u, std::size_t len_max,
                                  const SearchBudget& budget) {
  for (auto s : u)
    if (s.inverse) throw PreconditionError("positive_completion expects a positive word");
  const Engine engine(m);
  const auto prefix = engine.encode(u);
  const auto alphabet = search_alphabet(engine, false);
  WitnessReport report;
  std::size_t candidates = 0;
  for (std::size_t len = 0; len <= len_max && !report.found; ++len) {
    const bool complete = for_each_word(engine, alphabet, len, false, [&](const Engine::Word& w) {
      if (++candidates > budget.candidate_cap) {
        report.budget_exhausted = true;
        return false;
      }
      Engine::Word uv = prefix;
      uv.insert(uv.end(), w.begin(), w.end());
      try {
        if (is_identity(engine, uv, budget.closure_cap)) {
          report.found = true;
          report.u = engine.decode(w);
          report.pi_u_trivial = true;
          return false;
        }
      } catch (const BudgetExhausted&) {
        report.budget_exhausted = true;
      }
      return true;
    });
    if (!complete) break;
  }
  return report;
}

std::optional<std::size_t> edge_lambda(const Engine& engine, std::uint32_t q, const Epw& eta) {
  if (engine.trivial(q)) return 0;
  std::set<std::uint32_t> at_period_start;
  const std::size_t pre = eta.preperiod().size(), per = eta.period().size();
  for (std::size_t i = 0;; ++i) {
    if (i >= pre && (i - pre) % per == 0 && !at_period_start.insert(q).second) return std::nullopt;
    q = engine.next(q, eta.at(i));
    if (engine.trivial(q)) return i + 1;
  }
}

LambdaPsi edge_lambda_psi(const Automaton& m, const Epw& xi, std::size_t radius, std::size_t node_cap) {
  const Engine engine(m);
  if (!classify(m).sink_accessible) throw PreconditionError("edge statistics need an automaton in S_a");
  SchreierOptions opts;
  LambdaPsi r{orbit_ball(engine, xi, radius + 1, node_cap, opts), {}, std::nullopt};
  if (r.ball.graph.exact_radius && *r.ball.graph.exact_radius < radius + 1)
    throw BudgetExhausted("orbit ball of radius " + std::to_string(radius + 1) + " exceeds the node cap");
  const auto states = label_states(engine, opts);
  for (const auto& e : r.ball.graph.edges) {
    if (r.ball.depth[e.source] > radius && r.ball.depth[e.target] > radius) continue;
    auto lambda = edge_lambda(engine, states[e.label], r.ball.points[e.source]);
    r.edges.push_back({e.source, e.label, e.target, lambda});
    if (lambda && (!r.psi || *lambda > *r.psi)) r.psi = lambda;
  }
  return r;
}

}  // namespace mealy
