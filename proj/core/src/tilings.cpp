#include "mealy/tilings.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "mealy/error.hpp"
#include "mealy/helix.hpp"

namespace mealy {

bool WangTileset::contains(const WangTile& t) const {
  return std::find(tiles.begin(), tiles.end(), t) != tiles.end();
}

WangTile reflect_h(const WangTile& t) { return {inverse_name(t.w), t.n, inverse_name(t.e), t.s}; }
WangTile reflect_v(const WangTile& t) { return {t.e, inverse_name(t.s), t.w, inverse_name(t.n)}; }

WangTileset tileset_from(const Automaton& m, bool reduced, const std::optional<std::vector<StateId>>& restrict) {
  if (reduced && !m.sink()) throw PreconditionError("reduced tileset needs a sink");
  std::vector<bool> keep(m.state_count(), !restrict.has_value());
  if (restrict)
    for (auto q : *restrict) keep.at(q) = true;
  if (reduced) keep[*m.sink()] = false;
  WangTileset t;
  for (StateId q = 0; q < m.state_count(); ++q)
    for (LetterId a = 0; a < m.letter_count(); ++a) {
      const StateId p = m.next(q, a);
      if (!keep[q] || !keep[p]) continue;
      t.tiles.push_back({m.state_name(q), m.letter_name(a), m.state_name(p), m.letter_name(m.out(q, a))});
    }
  t.reflected.assign(t.tiles.size(), false);
  return t;
}

DeterminismFlags determinism(const WangTileset& t) {
  auto unique = [&](auto key) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& x : t.tiles)
      if (!seen.insert(key(x)).second) return false;
    return true;
  };
  DeterminismFlags f;
  f.ws = unique([](const WangTile& x) { return std::pair{x.w, x.s}; });
  f.es = unique([](const WangTile& x) { return std::pair{x.e, x.s}; });
  f.wn = unique([](const WangTile& x) { return std::pair{x.w, x.n}; });
  f.en = unique([](const WangTile& x) { return std::pair{x.e, x.n}; });
  f.four_way = f.ws && f.es && f.wn && f.en;
  return f;
}

PartialAutomaton transducer_from_tileset(const WangTileset& t) {
  PartialAutomaton p;
  auto add = [](std::vector<std::string>& v, const std::string& c) {
    if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
  };
  for (const auto& x : t.tiles) add(p.states, x.w);
  for (const auto& x : t.tiles) add(p.states, x.e);
  for (const auto& x : t.tiles) add(p.alphabet, x.s);
  for (const auto& x : t.tiles) add(p.alphabet, x.n);
  auto pos = [](const std::vector<std::string>& v, const std::string& c) {
    return static_cast<std::uint32_t>(std::find(v.begin(), v.end(), c) - v.begin());
  };
  p.cells.assign(p.states.size() * p.alphabet.size(), std::nullopt);
  for (const auto& x : t.tiles) {
    auto& cell = p.cells[pos(p.states, x.w) * p.alphabet.size() + pos(p.alphabet, x.s)];
    const PartialAutomaton::Cell c{pos(p.states, x.e), pos(p.alphabet, x.n)};
    if (cell && *cell != c)
      throw ValidationError("tileset is not ws-deterministic at (" + x.w + "," + x.s + ")");
    cell = c;
  }
  return p;
}

Automaton automaton_from_tileset(const WangTileset& t, bool sink_complete) {
  if (t.tiles.empty()) throw ValidationError("empty tileset has no automaton");
  std::set<std::string> state_side, letter_side;
  for (const auto& x : t.tiles) {
    state_side.insert({x.w, x.e});
    letter_side.insert({x.s, x.n});
  }
  for (const auto& c : state_side)
    if (letter_side.count(c)) throw ValidationError("color '" + c + "' appears on both state and letter sides");
  PartialAutomaton p = transducer_from_tileset(t);
  if (p.complete()) return to_complete(p);
  if (!sink_complete) return to_complete(p);  // throws, naming the missing pairs
  if (!determinism(t).four_way) throw PreconditionError("sink completion needs a 4-way deterministic tileset");
  std::string sink = "e";
  while (state_side.count(sink) || letter_side.count(sink)) sink += "'";
  const auto e = static_cast<StateId>(p.states.size());
  p.states.push_back(sink);
  const std::size_t nx = p.alphabet.size();
  for (LetterId a = 0; a < nx; ++a) p.cells.push_back(PartialAutomaton::Cell{e, a});
  for (StateId q = 0; q < e; ++q) {
    std::vector<bool> used(nx, false);
    for (LetterId a = 0; a < nx; ++a)
      if (const auto& c = p.at(q, a)) {
        if (used[c->output]) throw ValidationError("state '" + p.states[q] + "' repeats an output letter");
        used[c->output] = true;
      }
    LetterId b = 0;
    for (LetterId a = 0; a < nx; ++a) {
      if (p.at(q, a)) continue;
      while (b < nx && used[b]) ++b;
      if (b == nx) throw ValidationError("state '" + p.states[q] + "' cannot be completed invertibly");
      used[b] = true;
      p.cells[q * nx + a] = PartialAutomaton::Cell{e, b};
    }
  }
  p.sink = e;
  return to_complete(p);
}

namespace {

bool kp_clash(const WangTile& a, const WangTile& b) { return b == reflect_h(a) || b == reflect_v(a); }

// Cross-diagram of u (last entry acts first, bottom row) on v over a partial
// transducer; empty when a transition is missing.
std::optional<std::vector<std::vector<WangTile>>> cross_diagram(const PartialAutomaton& p,
                                                                const std::vector<StateId>& u,
                                                                const LetterWord& v) {
  std::vector<std::vector<WangTile>> grid;
  LetterWord cur = v;
  for (std::size_t r = 0; r < u.size(); ++r) {
    StateId q = u[u.size() - 1 - r];
    std::vector<WangTile> row;
    for (auto& a : cur) {
      const auto& c = p.at(q, a);
      if (!c) return std::nullopt;
      row.push_back({p.states[q], p.alphabet[a], p.states[c->target], p.alphabet[c->output]});
      q = c->target;
      a = c->output;
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

}  // namespace

bool validate_witness(const WangTileset& t, const TilingWitness& w) {
  if (w.kind == TilingWitness::Kind::none) return true;
  const bool torus = w.kind == TilingWitness::Kind::periodic;
  const std::size_t rows = torus ? w.py : w.m, cols = torus ? w.px : w.m;
  if (rows == 0 || cols == 0 || w.grid.size() != rows) return false;
  const bool kp = t.mode == AdjacencyMode::kp;
  for (std::size_t r = 0; r < rows; ++r) {
    if (w.grid[r].size() != cols) return false;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& x = w.grid[r][c];
      if (!t.contains(x)) return false;
      if (c + 1 < cols || torus) {
        const auto& right = w.grid[r][(c + 1) % cols];
        if (x.e != right.w || (kp && kp_clash(x, right))) return false;
      }
      if (r + 1 < rows || torus) {
        const auto& up = w.grid[(r + 1) % rows][c];
        if (x.n != up.s || (kp && kp_clash(x, up))) return false;
      }
    }
  }
  return true;
}

std::string render_ascii(const TilingWitness& w) {
  std::string s;
  for (std::size_t r = w.grid.size(); r-- > 0;) {
    for (std::size_t c = 0; c < w.grid[r].size(); ++c) {
      const auto& t = w.grid[r][c];
      s += (c ? " | " : "") + t.w + " " + t.s + " " + t.e + " " + t.n;
    }
    s += "\n";
  }
  return s;
}

TilingWitness periodic_tiling(const Automaton& m) {
  const auto h = build_helix(m, 1, 1, false);
  const auto cyc = h.cycles().front();
  std::vector<StateId> u;
  LetterWord v;
  for (std::size_t j = cyc.size(); j-- > 0;) u.push_back(h.node_u[cyc[j]][0].base);
  for (auto c : cyc) v.push_back(h.node_v[c][0]);
  TilingWitness w;
  w.kind = TilingWitness::Kind::periodic;
  w.px = v.size();
  w.py = u.size();
  w.grid = *cross_diagram(to_partial(m), u, v);
  if (!validate_witness(tileset_from(m), w)) throw Error("internal: periodic witness fails validation");
  return w;
}

namespace {

class RowSearch {
 public:
  RowSearch(const WangTileset& t, std::size_t cols, bool wrap, const TilingBudget& budget, std::size_t& rows_made)
      : t_(t), cols_(cols), wrap_(wrap), budget_(budget), rows_made_(rows_made) {}

  // Rows whose south colors match `south` (unless null) and whose tiles do not
  // clash with `below` in kp mode.
  std::vector<std::vector<std::size_t>> rows(const std::vector<std::string>* south,
                                             const std::vector<std::size_t>* below) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> row;
    extend(row, south, below, out);
    return out;
  }

 private:
  void extend(std::vector<std::size_t>& row, const std::vector<std::string>* south,
              const std::vector<std::size_t>* below, std::vector<std::vector<std::size_t>>& out) {
    const std::size_t c = row.size();
    if (c == cols_) {
      if (wrap_) {
        const auto& first = t_.tiles[row.front()];
        const auto& last = t_.tiles[row.back()];
        if (last.e != first.w || (kp() && kp_clash(last, first))) return;
      }
      if (++rows_made_ > budget_.row_cap) throw BudgetExhausted("square search exceeds the row budget");
      out.push_back(row);
      return;
    }
    for (std::size_t i = 0; i < t_.tiles.size(); ++i) {
      const auto& x = t_.tiles[i];
      if (south && x.s != (*south)[c]) continue;
      if (c > 0) {
        const auto& left = t_.tiles[row.back()];
        if (left.e != x.w || (kp() && kp_clash(left, x))) continue;
      }
      if (below && kp() && kp_clash(t_.tiles[(*below)[c]], x)) continue;
      row.push_back(i);
      extend(row, south, below, out);
      row.pop_back();
    }
  }

  bool kp() const { return t_.mode == AdjacencyMode::kp; }

  const WangTileset& t_;
  std::size_t cols_;
  bool wrap_;
  const TilingBudget& budget_;
  std::size_t& rows_made_;
};

using Profile = std::vector<std::size_t>;

std::vector<std::string> north_of(const WangTileset& t, const Profile& row) {
  std::vector<std::string> n;
  for (auto i : row) n.push_back(t.tiles[i].n);
  return n;
}

std::vector<std::string> south_of(const WangTileset& t, const Profile& row) {
  std::vector<std::string> s;
  for (auto i : row) s.push_back(t.tiles[i].s);
  return s;
}

// Stacks `height` rows of width `cols`. Profiles carry the previous row, keyed
// by north colors in plain mode and by the tiles themselves in kp mode. With
// `first`, the bottom row is fixed and the top row must close the torus.
std::optional<std::vector<Profile>> stack_rows(const WangTileset& t, std::size_t cols, std::size_t height, bool wrap,
                                               const std::optional<Profile>& first, const TilingBudget& budget,
                                               std::size_t& rows_made) {
  RowSearch search(t, cols, wrap, budget, rows_made);
  const bool kp = t.mode == AdjacencyMode::kp;
  auto key = [&](const Profile& row) {
    if (kp) return row;
    Profile k;
    for (auto i : row) k.push_back(i);
    // Plain mode: rows with equal north colors are interchangeable.
    std::vector<std::string> n = north_of(t, row);
    Profile canon;
    for (const auto& c : n) {
      std::size_t id = 0;
      for (; id < t.tiles.size(); ++id)
        if (t.tiles[id].n == c) break;
      canon.push_back(id);
    }
    return canon;
  };
  struct Back {
    Profile row;
    Profile prev_key;
  };
  std::vector<std::map<Profile, Back>> levels(1);
  if (first) {
    levels[0].emplace(key(*first), Back{*first, {}});
  } else {
    for (auto& row : search.rows(nullptr, nullptr)) levels[0].try_emplace(key(row), Back{row, {}});
  }
  std::map<Profile, std::vector<Profile>> cache;
  for (std::size_t r = 1; r < height; ++r) {
    if (levels.back().empty()) return std::nullopt;
    std::map<Profile, Back> next;
    for (const auto& [k, back] : levels.back()) {
      auto it = cache.find(back.row);
      if (kp || it == cache.end()) {
        const auto south = north_of(t, back.row);
        auto rows = search.rows(&south, kp ? &back.row : nullptr);
        it = cache.insert_or_assign(kp ? back.row : k, std::move(rows)).first;
      }
      for (const auto& row : it->second) next.try_emplace(key(row), Back{row, k});
    }
    levels.push_back(std::move(next));
  }
  if (levels.back().empty()) return std::nullopt;
  auto pick = levels.back().begin();
  if (first) {
    // The torus closes when the top row's north matches the bottom row's south.
    const auto bottom_south = south_of(t, *first);
    pick = std::find_if(levels.back().begin(), levels.back().end(), [&](const auto& kv) {
      if (north_of(t, kv.second.row) != bottom_south) return false;
      if (kp)
        for (std::size_t c = 0; c < cols; ++c)
          if (kp_clash(t.tiles[kv.second.row[c]], t.tiles[(*first)[c]])) return false;
      return true;
    });
    if (pick == levels.back().end()) return std::nullopt;
  }
  std::vector<Profile> rows(height);
  Profile k = pick->first;
  for (std::size_t r = height; r-- > 0;) {
    const auto& back = levels[r].at(k);
    rows[r] = back.row;
    k = back.prev_key;
  }
  return rows;
}

TilingWitness to_witness(const WangTileset& t, const std::vector<Profile>& rows) {
  TilingWitness w;
  for (const auto& row : rows) {
    std::vector<WangTile> tiles;
    for (auto i : row) tiles.push_back(t.tiles[i]);
    w.grid.push_back(std::move(tiles));
  }
  return w;
}

}  // namespace

TilingWitness can_tile_square(const WangTileset& t, std::size_t m, const TilingBudget& budget) {
  if (m == 0) throw PreconditionError("square side must be positive");
  std::size_t rows_made = 0;
  TilingWitness w;
  w.m = m;
  if (t.tiles.empty()) return w;
  auto rows = stack_rows(t, m, m, false, std::nullopt, budget, rows_made);
  if (!rows) return w;
  w = to_witness(t, *rows);
  w.kind = TilingWitness::Kind::square;
  w.m = m;
  if (!validate_witness(t, w)) throw Error("internal: square witness fails validation");
  return w;
}

namespace {

// Commuting pair of the partial transducer with |u| <= k_max, |v| <= n_max,
// searched by increasing |u| + |v|.
std::optional<std::pair<std::vector<StateId>, LetterWord>> partial_commuting_pair(const PartialAutomaton& p,
                                                                                  std::size_t k_max,
                                                                                  std::size_t n_max) {
  const std::size_t nq = p.states.size(), nx = p.alphabet.size();
  auto digits = [](std::size_t x, std::size_t len, std::size_t base) {
    std::vector<std::uint32_t> d(len);
    for (std::size_t i = len; i-- > 0; x /= base) d[i] = static_cast<std::uint32_t>(x % base);
    return d;
  };
  auto number = [](const std::vector<std::uint32_t>& d, std::size_t base) {
    std::size_t x = 0;
    for (auto y : d) x = x * base + y;
    return x;
  };
  for (std::size_t total = 2; total <= k_max + n_max; ++total)
    for (std::size_t k = 1; k <= std::min(k_max, total - 1); ++k) {
      const std::size_t n = total - k;
      if (n > n_max) continue;
      std::size_t su = 1, sv = 1;
      for (std::size_t i = 0; i < k; ++i) su *= nq;
      for (std::size_t i = 0; i < n; ++i) sv *= nx;
      constexpr std::size_t kDead = SIZE_MAX;
      std::vector<std::size_t> succ(su * sv, kDead);
      for (std::size_t x = 0; x < su * sv; ++x) {
        auto u = digits(x / sv, k, nq);
        auto v = digits(x % sv, n, nx);
        bool alive = true;
        for (std::size_t i = k; i-- > 0 && alive;) {
          StateId q = u[i];
          for (auto& a : v) {
            const auto& c = p.at(q, a);
            if (!c) {
              alive = false;
              break;
            }
            q = c->target;
            a = c->output;
          }
          u[i] = q;
        }
        if (alive) succ[x] = number(u, nq) * sv + number(v, nx);
      }
      std::vector<std::size_t> stamp(su * sv, kDead);
      for (std::size_t start = 0; start < su * sv; ++start) {
        std::size_t x = start;
        while (x != kDead && stamp[x] == kDead) {
          stamp[x] = start;
          x = succ[x];
        }
        if (x == kDead || stamp[x] != start) continue;
        std::vector<std::size_t> cyc{x};
        for (std::size_t y = succ[x]; y != x; y = succ[y]) cyc.push_back(y);
        std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
        std::vector<StateId> u;
        LetterWord v;
        for (std::size_t j = cyc.size(); j-- > 0;)
          for (auto q : digits(cyc[j] / sv, k, nq)) u.push_back(q);
        for (auto c : cyc)
          for (auto a : digits(c % sv, n, nx)) v.push_back(a);
        return std::pair{u, v};
      }
    }
  return std::nullopt;
}

}  // namespace

TilingStatus tiling_status(const WangTileset& t, std::size_t m_max, std::size_t k_max, std::size_t n_max,
                           const TilingBudget& budget) {
  TilingStatus st;
  st.k_max = k_max;
  st.n_max = n_max;
  if (!t.tiles.empty()) {
    std::optional<TilingWitness> periodic;
    if (t.mode == AdjacencyMode::plain && determinism(t).ws) {
      const auto p = transducer_from_tileset(t);
      if (auto pair = partial_commuting_pair(p, k_max, n_max)) {
        TilingWitness w;
        w.kind = TilingWitness::Kind::periodic;
        w.grid = *cross_diagram(p, pair->first, pair->second);
        w.px = pair->second.size();
        w.py = pair->first.size();
        periodic = std::move(w);
      }
    } else {
      // Direct torus search: rows x columns fundamental domains by size.
      try {
        for (std::size_t total = 2; total <= k_max + n_max && !periodic; ++total)
          for (std::size_t rows = 1; rows <= std::min(k_max, total - 1) && !periodic; ++rows) {
            const std::size_t cols = total - rows;
            if (cols > n_max) continue;
            std::size_t made = 0;
            RowSearch search(t, cols, true, budget, made);
            for (const auto& first : search.rows(nullptr, nullptr)) {
              auto found = stack_rows(t, cols, rows, true, first, budget, made);
              if (!found) continue;
              TilingWitness w = to_witness(t, *found);
              w.kind = TilingWitness::Kind::periodic;
              w.px = cols;
              w.py = rows;
              periodic = std::move(w);
              break;
            }
          }
      } catch (const BudgetExhausted&) {
        st.budget_exhausted = true;
      }
    }
    if (periodic) {
      if (!validate_witness(t, *periodic)) throw Error("internal: periodic witness fails validation");
      st.kind = TilingStatus::Kind::periodic;
      st.witness = std::move(*periodic);
      return st;
    }
  }
  for (std::size_t m = 1; m <= m_max; ++m) {
    try {
      auto w = can_tile_square(t, m, budget);
      if (w.kind == TilingWitness::Kind::none) {
        st.kind = TilingStatus::Kind::no_tiling;
        st.m = m;
        st.witness = std::move(w);
        return st;
      }
      st.m_reached = m;
    } catch (const BudgetExhausted&) {
      st.budget_exhausted = true;
      break;
    }
  }
  return st;
}

bool synchronizes(const Automaton& m, const LetterWord& w) {
  std::set<StateId> image;
  for (StateId q = 0; q < m.state_count(); ++q) {
    StateId p = q;
    for (auto a : w) p = m.next(p, a);
    image.insert(p);
  }
  return image.size() == 1;
}

std::optional<LetterWord> synchronizing_word(const Automaton& m) {
  const std::size_t nq = m.state_count(), nx = m.letter_count();
  auto id = [&](StateId p, StateId q) { return std::min(p, q) * nq + std::max(p, q); };
  // Backward BFS from the diagonal over the pair automaton.
  std::vector<std::vector<std::pair<std::size_t, LetterId>>> pred(nq * nq);
  for (StateId p = 0; p < nq; ++p)
    for (StateId q = p + 1; q < nq; ++q)
      for (LetterId a = 0; a < nx; ++a) pred[id(m.next(p, a), m.next(q, a))].push_back({id(p, q), a});
  std::vector<std::size_t> dist(nq * nq, SIZE_MAX);
  std::deque<std::size_t> queue;
  for (StateId p = 0; p < nq; ++p) {
    dist[id(p, p)] = 0;
    queue.push_back(id(p, p));
  }
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto [y, a] : pred[x])
      if (dist[y] == SIZE_MAX) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  std::set<StateId> current;
  for (StateId q = 0; q < nq; ++q) current.insert(q);
  LetterWord word;
  while (current.size() > 1) {
    std::pair<StateId, StateId> best{0, 0};
    std::size_t best_dist = SIZE_MAX;
    for (auto p : current)
      for (auto q : current)
        if (p < q && dist[id(p, q)] < best_dist) {
          best_dist = dist[id(p, q)];
          best = {p, q};
        }
    if (best_dist == SIZE_MAX) return std::nullopt;
    auto [p, q] = best;
    LetterWord piece;
    while (p != q) {
      for (LetterId a = 0; a < nx; ++a) {
        const StateId p2 = m.next(p, a), q2 = m.next(q, a);
        if (dist[id(p2, q2)] + 1 == dist[id(p, q)]) {
          piece.push_back(a);
          p = p2;
          q = q2;
          break;
        }
      }
    }
    std::set<StateId> image;
    for (auto s : current) {
      for (auto a : piece) s = m.next(s, a);
      image.insert(s);
    }
    current = std::move(image);
    word.insert(word.end(), piece.begin(), piece.end());
  }
  return word;
}

bool maxsync(const Automaton& m, std::size_t side, MaxSyncVariant variant, std::size_t step_cap) {
  if (!classify(m).sink_accessible) throw PreconditionError("MaxSync needs an automaton in S_a");
  if (side == 0) throw PreconditionError("side must be positive");
  const std::size_t nx = m.letter_count();
  const bool signed_rows = variant != MaxSyncVariant::plain;
  const Automaton b = signed_rows ? union_identify_sinks(m) : m;
  const StateId e = *b.sink();
  // Row states: Q \ {e}, or its signed closure for the reflection variants.
  std::vector<StateId> domain;
  for (StateId q = 0; q < b.state_count(); ++q)
    if (q != e) domain.push_back(q);
  auto inverse_state = [&](StateId q) -> std::optional<StateId> {
    return b.find_state(inverse_name(b.state_name(q)));
  };

  std::size_t steps = 0;
  auto total_words = std::size_t{1};
  for (std::size_t i = 0; i < side; ++i) {
    total_words *= nx;
    if (total_words > step_cap) throw BudgetExhausted("MaxSync side too large");
  }
  auto row = [&](StateId q, LetterWord w) {
    for (auto& a : w) {
      const LetterId out = b.out(q, a);
      q = b.next(q, a);
      a = out;
    }
    return w;
  };
  // u ranges over row words of length <= side - 2 whose every prefix image
  // stays non-synchronizing; at full length every extension must synchronize.
  std::set<std::tuple<std::size_t, LetterWord, std::optional<StateId>>> visited;
  std::function<bool(const LetterWord&, std::size_t, std::optional<StateId>)> holds =
      [&](const LetterWord& cur, std::size_t depth, std::optional<StateId> last) -> bool {
    if (++steps > step_cap) throw BudgetExhausted("MaxSync search exceeds the step budget");
    if (!visited.insert({depth, cur, last}).second) return true;
    for (auto q : domain) {
      if (signed_rows && last && inverse_state(*last) == q) continue;
      const LetterWord next = row(q, cur);
      if (synchronizes(b, next)) continue;
      if (depth + 2 == side) return false;
      if (!holds(next, depth + 1, q)) return false;
    }
    return true;
  };
  for (std::size_t x = 0; x < total_words; ++x) {
    LetterWord v(side);
    for (std::size_t i = side, y = x; i-- > 0; y /= nx) v[i] = static_cast<LetterId>(y % nx);
    if (synchronizes(b, v)) continue;
    if (side == 1) return false;
    if (!holds(v, 0, std::nullopt)) return false;
  }
  return true;
}

WangTileset reflection_close(const WangTileset& t, ReflectionAxes axes) {
  WangTileset out;
  out.mode = AdjacencyMode::kp;
  std::set<WangTile> seen;
  for (std::size_t i = 0; i < t.tiles.size(); ++i)
    if (seen.insert(t.tiles[i]).second) {
      out.tiles.push_back(t.tiles[i]);
      out.reflected.push_back(i < t.reflected.size() && t.reflected[i]);
    }
  for (std::size_t i = 0; i < out.tiles.size(); ++i) {
    std::vector<WangTile> images;
    if (axes != ReflectionAxes::v) images.push_back(reflect_h(out.tiles[i]));
    if (axes != ReflectionAxes::h) images.push_back(reflect_v(out.tiles[i]));
    for (auto& x : images)
      if (seen.insert(x).second) {
        out.tiles.push_back(x);
        out.reflected.push_back(true);
      }
  }
  return out;
}

}  // namespace mealy
