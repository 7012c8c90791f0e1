#pragma once

// Finite graphs in the half-edge model: oriented edges come in reversal
// pairs 2k / 2k+1, and a direction is an oriented edge viewed at its origin.

#include <functional>
#include <optional>
#include <queue>
#include <utility>

#include "endofold/words.hpp"

namespace endofold {

using Vertex = std::int32_t;
using Edge = std::int32_t;  // oriented edge id

inline Edge reversed(Edge e) { return e ^ 1; }
inline std::int32_t edge_pair(Edge e) { return e >> 1; }
inline Edge positive(std::int32_t pair) { return pair << 1; }
inline bool is_positive(Edge e) { return (e & 1) == 0; }

class Graph {
 public:
  Graph() = default;
  Graph(int num_vertices, const std::vector<std::pair<Vertex, Vertex>>& pairs)
      : num_vertices_(num_vertices) {
    origin_.reserve(pairs.size() * 2);
    for (auto [o, t] : pairs) {
      if (o < 0 || o >= num_vertices_ || t < 0 || t >= num_vertices_)
        throw Error("graph: edge endpoint out of range");
      origin_.push_back(o);
      origin_.push_back(t);
    }
  }

  int num_vertices() const { return num_vertices_; }
  int num_pairs() const { return static_cast<int>(origin_.size() / 2); }
  int num_oriented() const { return static_cast<int>(origin_.size()); }
  bool empty() const { return num_vertices_ == 0; }

  Vertex origin(Edge e) const { return origin_[static_cast<std::size_t>(e)]; }
  Vertex terminus(Edge e) const { return origin_[static_cast<std::size_t>(reversed(e))]; }

  std::vector<Edge> star(Vertex v) const {
    std::vector<Edge> out;
    for (Edge e = 0; e < num_oriented(); ++e)
      if (origin(e) == v) out.push_back(e);
    return out;
  }

  int valence(Vertex v) const { return static_cast<int>(star(v).size()); }

  std::vector<int> component_of() const {
    std::vector<int> comp(static_cast<std::size_t>(num_vertices_), -1);
    int c = 0;
    for (Vertex s = 0; s < num_vertices_; ++s) {
      if (comp[static_cast<std::size_t>(s)] != -1) continue;
      std::queue<Vertex> q;
      q.push(s);
      comp[static_cast<std::size_t>(s)] = c;
      while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Edge e = 0; e < num_oriented(); ++e) {
          if (origin(e) != u) continue;
          Vertex w = terminus(e);
          if (comp[static_cast<std::size_t>(w)] == -1) {
            comp[static_cast<std::size_t>(w)] = c;
            q.push(w);
          }
        }
      }
      ++c;
    }
    return comp;
  }

  int num_components() const {
    auto c = component_of();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
  }

  bool is_connected() const { return num_vertices_ <= 1 || num_components() == 1; }

  // First Betti number: rank of the fundamental group(oid).
  int rank() const { return num_pairs() - num_vertices() + num_components(); }

  bool is_core() const {
    for (Vertex v = 0; v < num_vertices_; ++v)
      if (valence(v) < 2) return false;
    return true;
  }

  bool operator==(const Graph&) const = default;

 private:
  int num_vertices_ = 0;
  std::vector<Vertex> origin_;
};

inline Graph rose(int rank) {
  std::vector<std::pair<Vertex, Vertex>> pairs(static_cast<std::size_t>(rank), {0, 0});
  return Graph(1, pairs);
}

// Unordered pair of directions at a common vertex.
struct Turn {
  Edge a, b;
  bool degenerate() const { return a == b; }
  bool operator==(const Turn&) const = default;
  bool operator<(const Turn& o) const { return std::pair(a, b) < std::pair(o.a, o.b); }
};

inline Turn make_turn(Edge x, Edge y) { return x <= y ? Turn{x, y} : Turn{y, x}; }

// --- edge paths -------------------------------------------------------------

using EdgePath = std::vector<Edge>;

inline bool is_path(const Graph& g, const EdgePath& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (g.terminus(p[i]) != g.origin(p[i + 1])) return false;
  return true;
}

inline bool is_reduced_path(const EdgePath& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i + 1] == reversed(p[i])) return false;
  return true;
}

inline EdgePath reduce_path(const EdgePath& p) {
  EdgePath out;
  out.reserve(p.size());
  for (Edge e : p) {
    if (!out.empty() && out.back() == reversed(e))
      out.pop_back();
    else
      out.push_back(e);
  }
  return out;
}

inline EdgePath reversed_path(const EdgePath& p) {
  EdgePath out(p.rbegin(), p.rend());
  for (Edge& e : out) e = reversed(e);
  return out;
}

inline EdgePath concat(const EdgePath& a, const EdgePath& b) {
  EdgePath out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Contiguous oriented occurrence of needle in haystack.
inline bool is_subpath(const EdgePath& needle, const EdgePath& haystack) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

// --- core -------------------------------------------------------------------

struct CoreResult {
  Graph graph;
  std::vector<Vertex> vertex_map;  // old -> new, -1 if pruned
  std::vector<int> pair_map;       // old pair -> new pair, -1 if pruned
};

// Iteratively removes valence<2 vertices (and their edges). `keep`, when
// present, is never pruned, so the result is the pointed core.
inline CoreResult core_with_maps(const Graph& g, std::optional<Vertex> keep = std::nullopt) {
  std::vector<bool> vertex_alive(static_cast<std::size_t>(g.num_vertices()), true);
  std::vector<bool> pair_alive(static_cast<std::size_t>(g.num_pairs()), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (!vertex_alive[static_cast<std::size_t>(v)]) continue;
      if (keep && *keep == v) continue;
      int val = 0;
      Edge last = -1;
      for (Edge e = 0; e < g.num_oriented(); ++e) {
        if (!pair_alive[static_cast<std::size_t>(edge_pair(e))]) continue;
        if (g.origin(e) == v) {
          ++val;
          last = e;
        }
      }
      if (val >= 2) continue;
      vertex_alive[static_cast<std::size_t>(v)] = false;
      if (val == 1) pair_alive[static_cast<std::size_t>(edge_pair(last))] = false;
      changed = true;
    }
  }

  CoreResult res;
  res.vertex_map.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  res.pair_map.assign(static_cast<std::size_t>(g.num_pairs()), -1);
  int nv = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (vertex_alive[static_cast<std::size_t>(v)]) res.vertex_map[static_cast<std::size_t>(v)] = nv++;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  int np = 0;
  for (int k = 0; k < g.num_pairs(); ++k) {
    if (!pair_alive[static_cast<std::size_t>(k)]) continue;
    res.pair_map[static_cast<std::size_t>(k)] = np++;
    pairs.emplace_back(res.vertex_map[static_cast<std::size_t>(g.origin(positive(k)))],
                       res.vertex_map[static_cast<std::size_t>(g.terminus(positive(k)))]);
  }
  res.graph = Graph(nv, pairs);
  return res;
}

inline Graph core(const Graph& g) { return core_with_maps(g).graph; }

// --- isomorphism enumeration ------------------------------------------------

// Visits every graph isomorphism g1 -> g2 as (vertex map, oriented edge map).
// The visitor returns true to stop the search; the function reports whether
// any visit stopped it.
inline bool for_each_isomorphism(
    const Graph& g1, const Graph& g2,
    const std::function<bool(const std::vector<Vertex>&, const std::vector<Edge>&)>& visit) {
  if (g1.num_vertices() != g2.num_vertices() || g1.num_pairs() != g2.num_pairs()) return false;
  int n = g1.num_vertices();

  // group pairs of g1 by unordered endpoints
  auto key_of = [](const Graph& g, int k) {
    Vertex o = g.origin(positive(k)), t = g.terminus(positive(k));
    return o <= t ? std::pair(o, t) : std::pair(t, o);
  };

  std::vector<Vertex> vmap(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  std::function<bool()> assign_edges = [&]() {
    // bucket pairs of g2 by mapped endpoint key
    std::vector<std::vector<int>> bucket1, bucket2;
    std::vector<std::pair<Vertex, Vertex>> keys;
    for (int k = 0; k < g1.num_pairs(); ++k) {
      auto [o, t] = key_of(g1, k);
      std::pair<Vertex, Vertex> mk = {vmap[static_cast<std::size_t>(o)], vmap[static_cast<std::size_t>(t)]};
      if (mk.first > mk.second) std::swap(mk.first, mk.second);
      std::size_t bi = 0;
      for (; bi < keys.size(); ++bi)
        if (keys[bi] == mk) break;
      if (bi == keys.size()) {
        keys.push_back(mk);
        bucket1.emplace_back();
        bucket2.emplace_back();
      }
      bucket1[bi].push_back(k);
    }
    for (int k = 0; k < g2.num_pairs(); ++k) {
      auto mk = key_of(g2, k);
      std::size_t bi = 0;
      for (; bi < keys.size(); ++bi)
        if (keys[bi] == mk) break;
      if (bi == keys.size()) return false;  // unmatched bucket
      bucket2[bi].push_back(k);
    }
    for (std::size_t bi = 0; bi < keys.size(); ++bi)
      if (bucket1[bi].size() != bucket2[bi].size()) return false;

    // enumerate per-bucket bijections with orientation choices
    std::vector<Edge> emap(static_cast<std::size_t>(g1.num_oriented()), -1);
    std::vector<std::vector<bool>> taken;
    for (const auto& b : bucket2) taken.emplace_back(b.size(), false);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t bi,
                                                            std::size_t idx) -> bool {
      if (bi == bucket1.size()) return visit(vmap, emap);
      if (idx == bucket1[bi].size()) return rec(bi + 1, 0);
      int k1 = bucket1[bi][idx];
      Vertex o1 = g1.origin(positive(k1));
      for (std::size_t j = 0; j < bucket2[bi].size(); ++j) {
        if (taken[bi][j]) continue;
        int k2 = bucket2[bi][j];
        for (int flip = 0; flip < 2; ++flip) {
          Edge img = flip ? reversed(positive(k2)) : positive(k2);
          if (g2.origin(img) != vmap[static_cast<std::size_t>(o1)]) continue;
          if (g2.terminus(img) != vmap[static_cast<std::size_t>(g1.terminus(positive(k1)))]) continue;
          emap[static_cast<std::size_t>(positive(k1))] = img;
          emap[static_cast<std::size_t>(reversed(positive(k1)))] = reversed(img);
          taken[bi][j] = true;
          if (rec(bi, idx + 1)) return true;
          taken[bi][j] = false;
        }
      }
      return false;
    };
    return rec(0, 0);
  };

  std::function<bool(Vertex)> assign_vertex = [&](Vertex v) -> bool {
    if (v == n) return assign_edges();
    for (Vertex w = 0; w < n; ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      if (g1.valence(v) != g2.valence(w)) continue;
      vmap[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = true;
      if (assign_vertex(v + 1)) return true;
      used[static_cast<std::size_t>(w)] = false;
      vmap[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  };

  return assign_vertex(0);
}

}  // namespace endofold
