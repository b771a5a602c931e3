#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "mealy/error.hpp"
#include "mealy/group.hpp"

namespace mealy {

std::optional<std::size_t> LabeledDigraph::find_vertex(const std::string& name) const {
  auto it = std::find(vertices.begin(), vertices.end(), name);
  if (it == vertices.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

std::optional<std::size_t> LabeledDigraph::target(std::size_t vertex, std::size_t label) const {
  for (const auto& e : edges)
    if (e.source == vertex && e.label == label) return e.target;
  return std::nullopt;
}

bool LabeledDigraph::has_cycle_with_labels(const std::vector<bool>& allowed) const {
  // Kahn's algorithm on the allowed subgraph: a cycle remains iff some vertex is never freed.
  std::vector<std::size_t> indeg(vertices.size(), 0);
  std::vector<std::vector<std::size_t>> succ(vertices.size());
  for (const auto& e : edges) {
    if (e.label >= allowed.size() || !allowed[e.label]) continue;
    succ[e.source].push_back(e.target);
    ++indeg[e.target];
  }
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::size_t freed = 0;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    ++freed;
    for (auto w : succ[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return freed != vertices.size();
}

LabeledDigraph upsilon(const LabeledDigraph& g, std::size_t looped_vertex, std::size_t loop_label) {
  if (looped_vertex >= g.vertices.size() || loop_label >= g.labels.size())
    throw PreconditionError("upsilon: vertex or label out of range");
  const std::size_t loops = std::count(g.edges.begin(), g.edges.end(),
                                       LabeledEdge{looped_vertex, loop_label, looped_vertex});
  if (loops != 1)
    throw PreconditionError("upsilon: vertex '" + g.vertices[looped_vertex] + "' has no loop labelled '" +
                            g.labels[loop_label] + "'");
  std::optional<std::size_t> inv = loop_label < g.label_inverse.size() ? g.label_inverse[loop_label] : std::nullopt;
  const std::size_t back_label = inv.value_or(loop_label);

  LabeledDigraph out;
  out.labels = g.labels;
  out.label_inverse = g.label_inverse;
  const std::size_t n = g.vertices.size();
  out.vertices = g.vertices;
  for (const auto& v : g.vertices) out.vertices.push_back(v + "'");
  for (std::size_t copy = 0; copy < 2; ++copy)
    for (const auto& e : g.edges) {
      const bool erased = e.source == looped_vertex && e.target == looped_vertex &&
                          (e.label == loop_label || e.label == back_label);
      if (!erased) out.edges.push_back({e.source + copy * n, e.label, e.target + copy * n});
    }
  out.edges.push_back({looped_vertex, loop_label, looped_vertex + n});
  out.edges.push_back({looped_vertex + n, back_label, looped_vertex});
  out.root = looped_vertex;
  out.truncated = g.truncated;
  out.exact_radius = g.exact_radius;
  return out;
}

LabeledDigraph rooted_ball(const LabeledDigraph& g, std::size_t root, std::size_t radius) {
  std::vector<std::vector<std::size_t>> adj(g.vertices.size());
  for (const auto& e : g.edges) {
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  std::vector<std::size_t> dist(g.vertices.size(), SIZE_MAX), order{root};
  dist[root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = order[i];
    if (dist[v] == radius) continue;
    for (auto w : adj[v])
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[v] + 1;
        order.push_back(w);
      }
  }
  std::vector<std::size_t> slot(g.vertices.size(), SIZE_MAX);
  LabeledDigraph b;
  b.labels = g.labels;
  b.label_inverse = g.label_inverse;
  for (auto v : order) {
    slot[v] = b.vertices.size();
    b.vertices.push_back(g.vertices[v]);
  }
  for (const auto& e : g.edges)
    if (slot[e.source] != SIZE_MAX && slot[e.target] != SIZE_MAX)
      b.edges.push_back({slot[e.source], e.label, slot[e.target]});
  b.root = 0;
  return b;
}

namespace {

struct BallIndex {
  std::vector<std::map<std::string, std::size_t>> out;
  std::vector<std::map<std::string, std::vector<std::size_t>>> in;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> signature;
  std::set<std::tuple<std::size_t, std::string, std::size_t>> edges;

  explicit BallIndex(const LabeledDigraph& b)
      : out(b.vertices.size()), in(b.vertices.size()), signature(b.vertices.size()) {
    for (const auto& e : b.edges) {
      const auto& l = b.labels[e.label];
      out[e.source][l] = e.target;
      in[e.target][l].push_back(e.source);
      edges.insert({e.source, l, e.target});
    }
    for (std::size_t v = 0; v < b.vertices.size(); ++v) {
      for (const auto& [l, _] : out[v]) signature[v].push_back({"+" + l, 1});
      for (const auto& [l, src] : in[v]) signature[v].push_back({"-" + l, src.size()});
    }
  }
};

bool extend(const BallIndex& a, const BallIndex& b, std::vector<std::size_t> fwd, std::vector<std::size_t> bwd,
            std::deque<std::pair<std::size_t, std::size_t>> pending) {
  auto bind = [&](std::size_t x, std::size_t y) {
    if (fwd[x] == y && bwd[y] == x) return true;
    if (fwd[x] != SIZE_MAX || bwd[y] != SIZE_MAX) return false;
    if (a.signature[x] != b.signature[y]) return false;
    fwd[x] = y;
    bwd[y] = x;
    pending.push_back({x, y});
    return true;
  };
  while (!pending.empty()) {
    auto [x, y] = pending.front();
    pending.pop_front();
    for (const auto& [l, xt] : a.out[x]) {
      auto it = b.out[y].find(l);
      if (it == b.out[y].end() || !bind(xt, it->second)) return false;
    }
    for (const auto& [l, xs] : a.in[x]) {
      auto it = b.in[y].find(l);
      if (it == b.in[y].end() || it->second.size() != xs.size()) return false;
      if (xs.size() == 1 && !bind(xs[0], it->second[0])) return false;
    }
  }
  const std::size_t n = fwd.size();
  std::size_t x = 0;
  while (x < n && fwd[x] != SIZE_MAX) ++x;
  if (x == n) {
    for (const auto& [s, l, t] : a.edges)
      if (!b.edges.count({fwd[s], l, fwd[t]})) return false;
    return true;
  }
  for (std::size_t y = 0; y < n; ++y) {
    if (bwd[y] != SIZE_MAX || a.signature[x] != b.signature[y]) continue;
    auto f = fwd, g = bwd;
    f[x] = y;
    g[y] = x;
    if (extend(a, b, std::move(f), std::move(g), {{x, y}})) return true;
  }
  return false;
}

}  // namespace

bool rooted_ball_isomorphic(const LabeledDigraph& g1, std::size_t r1, const LabeledDigraph& g2, std::size_t r2,
                            std::size_t radius) {
  const auto b1 = rooted_ball(g1, r1, radius);
  const auto b2 = rooted_ball(g2, r2, radius);
  if (b1.vertices.size() != b2.vertices.size() || b1.edges.size() != b2.edges.size()) return false;
  const BallIndex a(b1), b(b2);
  if (a.edges.size() != b.edges.size()) return false;
  const std::size_t n = b1.vertices.size();
  std::vector<std::size_t> fwd(n, SIZE_MAX), bwd(n, SIZE_MAX);
  if (a.signature[0] != b.signature[0]) return false;
  fwd[0] = 0;
  bwd[0] = 0;
  return extend(a, b, std::move(fwd), std::move(bwd), {{0, 0}});
}

}  // namespace mealy
