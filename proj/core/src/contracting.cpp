#include "mealy/contracting.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mealy/error.hpp"

namespace mealy {

namespace {

bool word_less(const Engine::Word& a, const Engine::Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Element {
  Engine::Word rep;
  std::vector<std::size_t> sec;
  LetterWord out;
};

Nucleus finish(const Engine& engine, std::vector<Element> elems) {
  std::vector<std::size_t> order(elems.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return word_less(elems[a].rep, elems[b].rep); });
  std::vector<std::size_t> slot(elems.size());
  for (std::size_t i = 0; i < order.size(); ++i) slot[order[i]] = i;
  Nucleus n;
  for (auto i : order) {
    NucleusElement e{engine.decode(elems[i].rep), {}, elems[i].out};
    for (auto s : elems[i].sec) e.section.push_back(slot[s]);
    n.elements.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < n.elements.size(); ++i)
    if (n.elements[i].rep.empty()) n.sink_index = i;
  return n;
}

}  // namespace

NucleusResult nucleus(const Automaton& m, std::size_t size_cap, std::size_t depth_cap) {
  const Engine engine(m);
  if (!engine.invertible()) throw NotInvertibleError("nucleus needs an invertible automaton");
  const std::size_t nx = m.letter_count();

  // Seed: Q̃ plus an explicit identity, merged by action equivalence.
  std::vector<Element> elems;
  {
    const std::size_t s = engine.size() + 1;
    std::vector<std::uint32_t> delta(s * nx), rho(s * nx);
    for (std::uint32_t q = 0; q < engine.size(); ++q)
      for (LetterId a = 0; a < nx; ++a) {
        delta[q * nx + a] = engine.next(q, a);
        rho[q * nx + a] = engine.out(q, a);
      }
    for (LetterId a = 0; a < nx; ++a) {
      delta[(s - 1) * nx + a] = static_cast<std::uint32_t>(s - 1);
      rho[(s - 1) * nx + a] = a;
    }
    const auto cls = refine_partition(s, nx, delta, rho);
    const std::size_t k = *std::max_element(cls.begin(), cls.end()) + 1;
    elems.resize(k);
    std::vector<bool> seen(k, false);
    for (std::size_t q = 0; q < s; ++q) {
      auto& e = elems[cls[q]];
      Engine::Word rep = q + 1 == s ? Engine::Word{} : engine.normalize({static_cast<std::uint32_t>(q)});
      if (!seen[cls[q]]) {
        seen[cls[q]] = true;
        e.rep = rep;
        for (LetterId a = 0; a < nx; ++a) {
          e.sec.push_back(cls[delta[q * nx + a]]);
          e.out.push_back(rho[q * nx + a]);
        }
      } else if (word_less(rep, e.rep)) {
        e.rep = rep;
      }
    }
  }

  NucleusResult result;
  for (std::size_t round = 1;; ++round) {
    result.rounds = round;
    if (elems.size() > size_cap) {
      result.reason = "element count " + std::to_string(elems.size()) + " exceeds the size cap";
      result.nucleus = finish(engine, std::move(elems));
      return result;
    }
    if (round > depth_cap) {
      result.reason = "closure not reached within the depth cap";
      result.nucleus = finish(engine, std::move(elems));
      return result;
    }
    // Joint automaton: elements, then every product g h (h acts first).
    const std::size_t s = elems.size();
    const std::size_t total = s + s * s;
    auto pair_id = [&](std::size_t g, std::size_t h) { return s + g * s + h; };
    std::vector<std::uint32_t> delta(total * nx), rho(total * nx);
    for (std::size_t i = 0; i < s; ++i)
      for (LetterId a = 0; a < nx; ++a) {
        delta[i * nx + a] = static_cast<std::uint32_t>(elems[i].sec[a]);
        rho[i * nx + a] = elems[i].out[a];
      }
    for (std::size_t g = 0; g < s; ++g)
      for (std::size_t h = 0; h < s; ++h)
        for (LetterId a = 0; a < nx; ++a) {
          const LetterId b = elems[h].out[a];
          const auto p = pair_id(g, h);
          delta[p * nx + a] = static_cast<std::uint32_t>(pair_id(elems[g].sec[b], elems[h].sec[a]));
          rho[p * nx + a] = elems[g].out[b];
        }
    const auto cls = refine_partition(total, nx, delta, rho);

    // Pairs reachable from a cycle of the product section graph: peel off
    // pairs without remaining predecessors.
    std::vector<std::size_t> indeg(s * s, 0);
    for (std::size_t p = s; p < total; ++p)
      for (LetterId a = 0; a < nx; ++a) ++indeg[delta[p * nx + a] - s];
    std::vector<bool> alive(s * s, true);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < s * s; ++i)
      if (indeg[i] == 0) stack.push_back(i);
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      alive[i] = false;
      for (LetterId a = 0; a < nx; ++a)
        if (--indeg[delta[(i + s) * nx + a] - s] == 0) stack.push_back(delta[(i + s) * nx + a] - s);
    }

    std::map<std::size_t, std::size_t> element_of_class;
    for (std::size_t i = 0; i < s; ++i) element_of_class.emplace(cls[i], i);
    std::map<std::size_t, std::size_t> fresh_class;  // class -> representative pair
    std::map<std::size_t, Engine::Word> fresh_rep;
    for (std::size_t i = 0; i < s * s; ++i) {
      if (!alive[i]) continue;
      const auto c = cls[s + i];
      if (element_of_class.count(c)) continue;
      Engine::Word w = elems[i / s].rep;
      w.insert(w.end(), elems[i % s].rep.begin(), elems[i % s].rep.end());
      w = engine.normalize(w);
      auto [it, inserted] = fresh_class.try_emplace(c, s + i);
      if (inserted || word_less(w, fresh_rep[c])) fresh_rep[c] = w;
    }
    if (fresh_class.empty()) break;
    for (const auto& [c, p] : fresh_class) {
      element_of_class.emplace(c, elems.size());
      elems.push_back({fresh_rep[c], {}, {}});
    }
    for (const auto& [c, p] : fresh_class) {
      auto& e = elems[element_of_class.at(c)];
      for (LetterId a = 0; a < nx; ++a) {
        e.sec.push_back(element_of_class.at(cls[delta[p * nx + a]]));
        e.out.push_back(rho[p * nx + a]);
      }
    }
  }
  result.verified = true;
  result.nucleus = finish(engine, std::move(elems));
  return result;
}

std::string Nucleus::element_name(const Automaton& m, std::size_t i) const {
  const auto& rep = elements.at(i).rep;
  if (rep.empty()) return m.sink() ? m.state_name(*m.sink()) : "id";
  const bool single =
      std::all_of(m.states().begin(), m.states().end(), [](const std::string& s) { return s.size() == 1; });
  std::string s;
  for (auto q : rep) {
    if (!s.empty() && !single) s += '.';
    s += q.inverse ? inverse_name(m.state_name(q.base)) : m.state_name(q.base);
  }
  return s;
}

std::optional<std::size_t> Nucleus::find(const Automaton& m, const std::string& name) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (element_name(m, i) == name) return i;
  return std::nullopt;
}

Automaton Nucleus::to_automaton(const Automaton& m) const {
  std::vector<std::string> names;
  std::vector<StateId> delta;
  std::vector<LetterId> rho;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    names.push_back(element_name(m, i));
    for (LetterId a = 0; a < m.letter_count(); ++a) {
      delta.push_back(static_cast<StateId>(elements[i].section[a]));
      rho.push_back(elements[i].output[a]);
    }
  }
  return Automaton(std::move(names), m.alphabet(), std::move(delta), std::move(rho),
                   static_cast<StateId>(sink_index));
}

StableAutomaton stable_automaton(const Automaton& m, const Nucleus& n) {
  StableAutomaton p;
  for (std::size_t i = 0; i < n.size(); ++i) p.automaton.states.push_back(n.element_name(m, i));
  p.automaton.alphabet = m.alphabet();
  p.automaton.sink = static_cast<StateId>(n.sink_index);
  p.sink = n.sink_index;
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (LetterId a = 0; a < m.letter_count(); ++a) {
      if (n.elements[i].output[a] == a)
        p.automaton.cells.push_back(PartialAutomaton::Cell{static_cast<StateId>(n.elements[i].section[a]), a});
      else
        p.automaton.cells.push_back(std::nullopt);
    }
    p.accepting.push_back(i != n.sink_index);
  }
  return p;
}

BuchiLanguage buchi_language(const StableAutomaton& p, std::size_t cycle_cap) {
  const std::size_t n = p.automaton.states.size(), nx = p.automaton.alphabet.size();
  auto edge = [&](std::size_t q, LetterId a) -> std::optional<std::size_t> {
    if (!p.accepting[q]) return std::nullopt;
    const auto& c = p.automaton.at(static_cast<StateId>(q), a);
    if (!c || !p.accepting[c->target]) return std::nullopt;
    return c->target;
  };
  BuchiLanguage lang;
  // Elementary cycles through s whose other vertices all exceed s.
  for (std::size_t s = 0; s < n && !lang.truncated; ++s) {
    struct Frame {
      std::size_t vertex;
      LetterId next_letter;
    };
    std::vector<Frame> path{{s, 0}};
    std::vector<bool> on_path(n, false);
    on_path[s] = true;
    LetterWord word;
    while (!path.empty() && !lang.truncated) {
      auto& f = path.back();
      if (f.next_letter == nx) {
        on_path[f.vertex] = false;
        path.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      const LetterId a = f.next_letter++;
      const auto t = edge(f.vertex, a);
      if (!t) continue;
      if (*t == s) {
        LetterWord cycle = word;
        cycle.push_back(a);
        lang.lassos.push_back({s, std::move(cycle)});
        if (lang.lassos.size() >= cycle_cap) lang.truncated = true;
      } else if (*t > s && !on_path[*t]) {
        on_path[*t] = true;
        word.push_back(a);
        path.push_back({*t, 0});
      }
    }
  }
  lang.empty = lang.lassos.empty();
  // Uncountability: a strongly connected accepting part with more edges than vertices.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t q = 0; q < n; ++q)
    for (LetterId a = 0; a < nx; ++a)
      if (auto t = edge(q, a)) reach[q][*t] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::vector<bool> done(n, false);
  for (std::size_t q = 0; q < n; ++q) {
    if (done[q] || !reach[q][q]) continue;
    std::vector<std::size_t> comp;
    for (std::size_t r = 0; r < n; ++r)
      if (r == q || (reach[q][r] && reach[r][q])) comp.push_back(r), done[r] = true;
    std::size_t edges = 0;
    for (auto x : comp)
      for (LetterId a = 0; a < nx; ++a)
        if (auto t = edge(x, a); t && std::find(comp.begin(), comp.end(), *t) != comp.end()) ++edges;
    if (edges > comp.size()) lang.uncountable = true;
  }
  return lang;
}

ReplicationVerdict is_self_replicating(const Automaton& m, std::size_t depth, const SearchBudget& budget) {
  const Engine engine(m);
  if (!engine.invertible()) throw NotInvertibleError("self-replication needs an invertible automaton");
  ReplicationVerdict v;
  v.depth = depth;
  const std::size_t nx = m.letter_count();
  std::vector<std::size_t> parent(nx);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (StateId q = 0; q < m.state_count(); ++q)
    for (LetterId a = 0; a < nx; ++a) parent[find(a)] = find(m.out(q, a));
  v.transitive = true;
  for (LetterId a = 0; a < nx; ++a)
    if (find(a) != find(0)) v.transitive = false;
  if (!v.transitive) return v;

  std::vector<std::uint32_t> generators, alphabet;
  for (std::uint32_t q = 0; q < engine.size(); ++q) {
    if (engine.trivial(q)) continue;
    alphabet.push_back(q);
    if (q < engine.base_size()) generators.push_back(q);
  }
  std::size_t candidates = 0;
  for (LetterId a = 0; a < nx; ++a) {
    std::vector<bool> reached(generators.size(), false);
    std::set<Engine::Word> sections;
    // Reduced words of length up to depth, breadth first.
    std::vector<Engine::Word> layer{{}};
    for (std::size_t len = 0; len <= depth; ++len) {
      for (const auto& h : layer) {
        if (++candidates > budget.candidate_cap) {
          v.budget_exhausted = true;
          return v;
        }
        Engine::Word r;
        if (engine.apply_letter(h, a, &r) != a) continue;
        auto s = engine.normalize(r);
        if (!sections.insert(s).second) continue;
        for (std::size_t i = 0; i < generators.size(); ++i) {
          if (reached[i]) continue;
          Engine::Word check{engine.inverse_of(generators[i])};
          check.insert(check.end(), s.begin(), s.end());
          try {
            if (is_identity(engine, check, budget.closure_cap)) reached[i] = true;
          } catch (const BudgetExhausted&) {
            v.budget_exhausted = true;
          }
        }
      }
      if (std::all_of(reached.begin(), reached.end(), [](bool b) { return b; })) break;
      if (len == depth) return v;
      std::vector<Engine::Word> next;
      for (const auto& h : layer)
        for (auto q : alphabet) {
          if (!h.empty() && engine.inverse_of(h.back()) == q) continue;
          auto x = h;
          x.push_back(q);
          next.push_back(std::move(x));
        }
      layer = std::move(next);
    }
  }
  v.holds = true;
  return v;
}

SingularDescription singular_set(const Automaton& m, const Nucleus& n, const SingularOptions& opts) {
  const Engine engine(m);
  SingularDescription d;
  const auto stable = stable_automaton(m, n);
  d.language = buchi_language(stable, opts.cycle_cap);
  for (const auto& lasso : d.language.lassos) {
    const Epw xi({}, lasso.cycle);
    // Certificate: the entry element fixes the point and never trivializes along it.
    const auto w = engine.encode(n.elements[lasso.state].rep);
    if (act_epw(engine, w, xi) != xi) throw Error("internal: lasso element does not fix its point");
    std::size_t g = lasso.state;
    for (std::size_t i = 0; i < xi.period().size(); ++i) {
      if (g == n.sink_index) throw Error("internal: lasso passes through the sink");
      g = n.elements[g].section[xi.period()[i]];
    }
    if (std::find(d.points.begin(), d.points.end(), xi) == d.points.end()) d.points.push_back(xi);
  }
  d.replication = is_self_replicating(m, opts.replication_depth);
  d.exact = d.replication.holds;
  d.orbit_matches_cofinality = !d.points.empty();
  for (const auto& xi : d.points) {
    if (!d.orbit_matches_cofinality) break;
    const auto orbit = orbit_ball(engine, xi, SIZE_MAX, opts.node_cap);
    std::set<Epw> members(orbit.points.begin(), orbit.points.end());
    const auto tail = xi.shift(opts.cofinal_check_depth);
    std::size_t total = 1;
    for (std::size_t i = 0; i < opts.cofinal_check_depth; ++i) total *= m.letter_count();
    for (std::size_t x = 0; x < total; ++x) {
      LetterWord pre(opts.cofinal_check_depth);
      for (std::size_t i = opts.cofinal_check_depth, y = x; i-- > 0; y /= m.letter_count())
        pre[i] = static_cast<LetterId>(y % m.letter_count());
      LetterWord full = pre;
      full.insert(full.end(), tail.preperiod().begin(), tail.preperiod().end());
      if (!members.count(Epw(full, tail.period()))) {
        d.orbit_matches_cofinality = false;
        break;
      }
    }
  }
  return d;
}

IsolationVerdict isolated_point(const Automaton& m, StateId q, const LetterWord& w) {
  const Engine engine(m);
  IsolationVerdict v;
  auto run = [&](StateId p) {
    Engine::Word word{p};
    LetterWord x = w;
    engine.apply(word, x);
    return std::pair{word[0], x};
  };
  const auto [qr, qo] = run(q);
  if (qr != q || qo != w) return v;
  v.vacuous = true;
  v.isolated = true;
  for (StateId p = 0; p < m.state_count(); ++p) {
    if (p == q || engine.trivial(p)) continue;
    v.vacuous = false;
    if (run(p).first == p) v.isolated = false;
  }
  return v;
}

}  // namespace mealy
