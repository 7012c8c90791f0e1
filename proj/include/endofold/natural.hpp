#pragma once

// Natural form of a graph (bivalent vertices suppressed), transport of maps
// through the suppression, collapse of invariant forests, and marked-graph
// comparison: graph isomorphism intertwining markings up to one inner
// automorphism.

#include "endofold/traintrack.hpp"

namespace endofold {

// Suppression of bivalent vertices. Each natural edge contracts a chain of
// input edges whose interior vertices are bivalent; maps are transported by
// sliding vertex images that land on suppressed vertices to the end of their
// chain.
struct Naturalization {
  Graph input;
  Graph natural;
  std::vector<EdgePath> chains;            // per natural pair: the contracted input path
  std::vector<Vertex> vertex_to_natural;   // input vertex -> natural vertex, -1 if suppressed
  std::vector<Vertex> natural_to_input;    // natural vertex -> input vertex
  std::vector<EdgePath> slides;            // per input vertex: path to its slide target
  std::vector<std::pair<Edge, std::size_t>> edge_position;  // input edge -> (natural edge, index)

  // Where an input vertex ends up after sliding, as an input vertex.
  Vertex slide_end(Vertex u) const {
    const EdgePath& s = slides[static_cast<std::size_t>(u)];
    return s.empty() ? u : input.terminus(s.back());
  }

  // ... and as a natural vertex.
  Vertex slide_target(Vertex u) const {
    return vertex_to_natural[static_cast<std::size_t>(slide_end(u))];
  }

  // Rewrites a reduced input path with natural endpoints as a natural path.
  EdgePath rewrite(const EdgePath& p) const {
    EdgePath out;
    std::size_t i = 0;
    while (i < p.size()) {
      auto [q, pos] = edge_position[static_cast<std::size_t>(p[i])];
      if (pos != 0) throw std::logic_error("naturalization: path does not start a chain");
      EdgePath chain = is_positive(q) ? chains[static_cast<std::size_t>(edge_pair(q))]
                                      : reversed_path(chains[static_cast<std::size_t>(edge_pair(q))]);
      for (std::size_t t = 0; t < chain.size(); ++t, ++i)
        if (i >= p.size() || p[i] != chain[t])
          throw std::logic_error("naturalization: path leaves its chain");
      out.push_back(q);
    }
    return out;
  }
};

inline Naturalization naturalize(const Graph& g) {
  Naturalization nat;
  nat.input = g;
  std::vector<bool> is_natural(static_cast<std::size_t>(g.num_vertices()), false);
  int count = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.valence(v) != 2) {
      is_natural[static_cast<std::size_t>(v)] = true;
      ++count;
    }
  if (count == 0) throw Error("naturalize: graph is a circle");

  nat.vertex_to_natural.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (is_natural[static_cast<std::size_t>(v)]) {
      nat.vertex_to_natural[static_cast<std::size_t>(v)] = static_cast<Vertex>(nat.natural_to_input.size());
      nat.natural_to_input.push_back(v);
    }

  // walk chains from natural vertices; each pair is visited once
  std::vector<bool> pair_done(static_cast<std::size_t>(g.num_pairs()), false);
  std::vector<std::pair<Vertex, Vertex>> npairs;
  nat.edge_position.assign(static_cast<std::size_t>(g.num_oriented()), {-1, 0});
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!is_natural[static_cast<std::size_t>(v)]) continue;
    for (Edge start : g.star(v)) {
      if (pair_done[static_cast<std::size_t>(edge_pair(start))]) continue;
      EdgePath chain = {start};
      Vertex cur = g.terminus(start);
      while (!is_natural[static_cast<std::size_t>(cur)]) {
        Edge back = reversed(chain.back());
        Edge next = -1;
        for (Edge e : g.star(cur))
          if (e != back) next = e;
        chain.push_back(next);
        cur = g.terminus(next);
      }
      for (Edge e : chain) pair_done[static_cast<std::size_t>(edge_pair(e))] = true;
      int k = static_cast<int>(npairs.size());
      npairs.emplace_back(nat.vertex_to_natural[static_cast<std::size_t>(v)],
                          nat.vertex_to_natural[static_cast<std::size_t>(cur)]);
      for (std::size_t i = 0; i < chain.size(); ++i) {
        nat.edge_position[static_cast<std::size_t>(chain[i])] = {positive(k), i};
        nat.edge_position[static_cast<std::size_t>(reversed(chain[i]))] = {
            reversed(positive(k)), chain.size() - 1 - i};
      }
      nat.chains.push_back(chain);
    }
  }
  nat.natural = Graph(static_cast<int>(nat.natural_to_input.size()), npairs);

  // slides: from a suppressed vertex, follow the chain forward to its end
  nat.slides.assign(static_cast<std::size_t>(g.num_vertices()), {});
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (is_natural[static_cast<std::size_t>(u)]) continue;
    EdgePath s;
    Vertex cur = u;
    Edge prev = -1;
    // deterministic: leave through the smallest direction
    while (!is_natural[static_cast<std::size_t>(cur)]) {
      Edge next = -1;
      for (Edge e : g.star(cur))
        if (e != prev && next == -1) next = e;
      s.push_back(next);
      prev = reversed(next);
      cur = g.terminus(next);
    }
    nat.slides[static_cast<std::size_t>(u)] = s;
  }
  return nat;
}

namespace detail {

inline EdgePath slide_adjusted(const Naturalization& nat, const EdgePath& image, Vertex img_from,
                               Vertex img_to) {
  EdgePath p = concat(concat(reversed_path(nat.slides[static_cast<std::size_t>(img_from)]), image),
                      nat.slides[static_cast<std::size_t>(img_to)]);
  return nat.rewrite(reduce_path(p));
}

}  // namespace detail

// Transport a self map of the input graph to a self map of the natural graph.
inline GraphMap transport_self_map(const Naturalization& nat, const GraphMap& m) {
  std::vector<Vertex> vimg;
  for (Vertex q = 0; q < nat.natural.num_vertices(); ++q) {
    Vertex u = nat.natural_to_input[static_cast<std::size_t>(q)];
    vimg.push_back(nat.slide_target(m.vertex_image(u)));
  }
  std::vector<EdgePath> pimg;
  for (int k = 0; k < nat.natural.num_pairs(); ++k) {
    const EdgePath& chain = nat.chains[static_cast<std::size_t>(k)];
    Vertex from = m.vertex_image(m.domain().origin(chain.front()));
    Vertex to = m.vertex_image(m.domain().terminus(chain.back()));
    pimg.push_back(detail::slide_adjusted(nat, reduce_path(m.image_of_path(chain)), from, to));
  }
  return GraphMap(nat.natural, nat.natural, std::move(vimg), std::move(pimg));
}

// Transport a map into the input graph (e.g. a marking) to a map into the
// natural graph.
inline GraphMap transport_into(const Naturalization& nat, const GraphMap& m) {
  std::vector<Vertex> vimg;
  for (Vertex v = 0; v < m.domain().num_vertices(); ++v)
    vimg.push_back(nat.slide_target(m.vertex_image(v)));
  std::vector<EdgePath> pimg;
  for (int k = 0; k < m.domain().num_pairs(); ++k) {
    Vertex from = m.vertex_image(m.domain().origin(positive(k)));
    Vertex to = m.vertex_image(m.domain().terminus(positive(k)));
    pimg.push_back(detail::slide_adjusted(nat, reduce_path(m.positive_image(k)), from, to));
  }
  return GraphMap(m.domain(), nat.natural, std::move(vimg), std::move(pimg));
}

// Transport a map out of the input graph (e.g. an immersion to the previous
// graph) to a map out of the natural graph.
inline GraphMap transport_out_of(const Naturalization& nat, const GraphMap& m) {
  std::vector<Vertex> vimg;
  for (Vertex q = 0; q < nat.natural.num_vertices(); ++q)
    vimg.push_back(m.vertex_image(nat.natural_to_input[static_cast<std::size_t>(q)]));
  std::vector<EdgePath> pimg;
  for (int k = 0; k < nat.natural.num_pairs(); ++k)
    pimg.push_back(reduce_path(m.image_of_path(nat.chains[static_cast<std::size_t>(k)])));
  return GraphMap(nat.natural, m.codomain(), std::move(vimg), std::move(pimg));
}

// --- invariant forest collapse -----------------------------------------------

struct Collapse {
  Graph quotient;
  GraphMap projection;  // input -> quotient; collapsed pairs have empty images
};

// Collapses the marked pairs; their components must be trees.
inline Collapse collapse_forest(const Graph& g, const std::vector<bool>& collapse_pair) {
  detail::UnionFind verts(static_cast<std::size_t>(g.num_vertices()));
  int collapsed_count = 0;
  for (int k = 0; k < g.num_pairs(); ++k)
    if (collapse_pair[static_cast<std::size_t>(k)]) {
      verts.unite(g.origin(positive(k)), g.terminus(positive(k)));
      ++collapsed_count;
    }
  // tree check: collapsed components must have (vertices - 1) edges
  {
    std::map<int, std::pair<int, int>> comp;  // root -> (vertices touched, edges)
    std::vector<bool> touched(static_cast<std::size_t>(g.num_vertices()), false);
    for (int k = 0; k < g.num_pairs(); ++k)
      if (collapse_pair[static_cast<std::size_t>(k)]) {
        for (Vertex v : {g.origin(positive(k)), g.terminus(positive(k))})
          if (!touched[static_cast<std::size_t>(v)]) {
            touched[static_cast<std::size_t>(v)] = true;
            ++comp[verts.find(v)].first;
          }
        ++comp[verts.find(g.origin(positive(k)))].second;
      }
    for (auto& [root, ve] : comp)
      if (ve.second != ve.first - 1) throw Error("collapse_forest: subgraph is not a forest");
  }

  std::vector<Vertex> vmap(static_cast<std::size_t>(g.num_vertices()));
  int nv = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (verts.find(v) == v) vmap[static_cast<std::size_t>(v)] = nv++;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    vmap[static_cast<std::size_t>(v)] = vmap[static_cast<std::size_t>(verts.find(v))];

  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<EdgePath> proj_images;
  std::vector<int> pair_map(static_cast<std::size_t>(g.num_pairs()), -1);
  for (int k = 0; k < g.num_pairs(); ++k) {
    if (collapse_pair[static_cast<std::size_t>(k)]) {
      proj_images.push_back({});
      continue;
    }
    int nk = static_cast<int>(pairs.size());
    pair_map[static_cast<std::size_t>(k)] = nk;
    pairs.emplace_back(vmap[static_cast<std::size_t>(g.origin(positive(k)))],
                       vmap[static_cast<std::size_t>(g.terminus(positive(k)))]);
    proj_images.push_back({positive(nk)});
  }
  Collapse out;
  out.quotient = Graph(nv, pairs);
  out.projection = GraphMap(g, out.quotient, vmap, proj_images);
  return out;
}

// Pushes a self map through a collapse whose collapsed set is invariant.
inline GraphMap push_self_map(const Collapse& c, const GraphMap& m) {
  const Graph& q = c.quotient;
  std::vector<Vertex> vimg(static_cast<std::size_t>(q.num_vertices()), -1);
  for (Vertex v = 0; v < m.domain().num_vertices(); ++v) {
    Vertex qc = c.projection.vertex_image(v);
    Vertex target = c.projection.vertex_image(m.vertex_image(v));
    if (vimg[static_cast<std::size_t>(qc)] == -1)
      vimg[static_cast<std::size_t>(qc)] = target;
    else if (vimg[static_cast<std::size_t>(qc)] != target)
      throw std::logic_error("push_self_map: collapsed set is not invariant");
  }
  std::vector<EdgePath> pimg(static_cast<std::size_t>(q.num_pairs()));
  for (int k = 0; k < m.domain().num_pairs(); ++k) {
    EdgePath pe = c.projection.positive_image(k);
    if (pe.empty()) continue;
    pimg[static_cast<std::size_t>(edge_pair(pe.front()))] =
        reduce_path(c.projection.image_of_path(m.positive_image(k)));
  }
  return GraphMap(q, q, std::move(vimg), std::move(pimg));
}

// Pairs whose iterated images never meet an expanding stratum; their total
// length stays bounded under iteration, so they carry no weight in the limit
// metric.
inline std::vector<bool> bounded_growth_pairs(const TransitionMatrix& a) {
  int n = a.n;
  // strongly connected components of the digraph j -> i (i in the image of j)
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  {
    std::vector<int> order;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::function<void(int)> dfs1 = [&](int u) {
      seen[static_cast<std::size_t>(u)] = true;
      for (int v = 0; v < n; ++v)
        if (a.at(v, u) > 0 && !seen[static_cast<std::size_t>(v)]) dfs1(v);
      order.push_back(u);
    };
    for (int u = 0; u < n; ++u)
      if (!seen[static_cast<std::size_t>(u)]) dfs1(u);
    int c = 0;
    std::function<void(int, int)> dfs2 = [&](int u, int cid) {
      comp[static_cast<std::size_t>(u)] = cid;
      for (int v = 0; v < n; ++v)
        if (a.at(u, v) > 0 && comp[static_cast<std::size_t>(v)] == -1) dfs2(v, cid);
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (comp[static_cast<std::size_t>(*it)] == -1) dfs2(*it, c++);
  }

  int ncomp = 1 + *std::max_element(comp.begin(), comp.end());
  // a stratum is expanding unless its submatrix is a permutation (or trivial)
  std::vector<bool> expanding(static_cast<std::size_t>(ncomp), false);
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> members;
    for (int u = 0; u < n; ++u)
      if (comp[static_cast<std::size_t>(u)] == c) members.push_back(u);
    long long internal = 0;
    bool perm = true;
    for (int j : members) {
      long long colsum = 0;
      for (int i : members) colsum += a.at(i, j);
      internal += colsum;
      if (colsum > 1) perm = false;
    }
    if (internal == 0) continue;                            // transient stratum
    if (!perm || internal != static_cast<long long>(members.size())) expanding[static_cast<std::size_t>(c)] = true;
    if (perm && internal == static_cast<long long>(members.size())) {
      // permutation stratum: rows must also sum to one inside
      for (int i : members) {
        long long rowsum = 0;
        for (int j : members) rowsum += a.at(i, j);
        if (rowsum > 1) expanding[static_cast<std::size_t>(c)] = true;
      }
    }
  }

  // j is bounded iff no expanding stratum is reachable from j via j -> i
  std::vector<bool> reaches(static_cast<std::size_t>(n), false);
  std::function<bool(int, std::vector<int>&)> reach = [&](int u, std::vector<int>& memo) -> bool {
    if (memo[static_cast<std::size_t>(u)] != -1) return memo[static_cast<std::size_t>(u)] == 1;
    memo[static_cast<std::size_t>(u)] = expanding[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])] ? 1 : 0;
    if (memo[static_cast<std::size_t>(u)] == 1) return true;
    for (int v = 0; v < n; ++v)
      if (a.at(v, u) > 0 && reach(v, memo)) memo[static_cast<std::size_t>(u)] = 1;
    return memo[static_cast<std::size_t>(u)] == 1;
  };
  std::vector<int> memo(static_cast<std::size_t>(n), -1);
  std::vector<bool> bounded(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) bounded[static_cast<std::size_t>(u)] = !reach(u, memo);
  return bounded;
}

// --- marked graphs -------------------------------------------------------------

// A graph with basis loops at a base vertex; the markings of two such are
// compared up to graph isomorphism and a single inner automorphism.
struct MarkedGraph {
  Graph graph;
  Vertex base = 0;
  std::vector<EdgePath> loops;
};

namespace detail {

// BFS spanning tree; returns per-pair flag and a generator index for
// non-tree pairs.
struct TreeData {
  std::vector<bool> in_tree;
  std::vector<int> gen_index;  // -1 for tree pairs
  int rank = 0;
};

inline TreeData spanning_tree(const Graph& g, Vertex root) {
  TreeData td;
  td.in_tree.assign(static_cast<std::size_t>(g.num_pairs()), false);
  td.gen_index.assign(static_cast<std::size_t>(g.num_pairs()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  seen[static_cast<std::size_t>(root)] = true;
  std::vector<Vertex> order = {root};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Edge e : g.star(order[head]))
      if (!seen[static_cast<std::size_t>(g.terminus(e))]) {
        seen[static_cast<std::size_t>(g.terminus(e))] = true;
        td.in_tree[static_cast<std::size_t>(edge_pair(e))] = true;
        order.push_back(g.terminus(e));
      }
  for (int k = 0; k < g.num_pairs(); ++k)
    if (!td.in_tree[static_cast<std::size_t>(k)]) td.gen_index[static_cast<std::size_t>(k)] = td.rank++;
  return td;
}

inline Word tree_collapse_word(const TreeData& td, const EdgePath& p) {
  std::vector<Letter> raw;
  for (Edge e : p) {
    int gi = td.gen_index[static_cast<std::size_t>(edge_pair(e))];
    if (gi == -1) continue;
    raw.push_back(is_positive(e) ? static_cast<Letter>(gi + 1) : static_cast<Letter>(-(gi + 1)));
  }
  return Word::reduce(raw);
}

}  // namespace detail

struct MarkedIso {
  std::vector<Vertex> vertex_map;
  std::vector<Edge> edge_map;
  Word conjugator;  // in the tree-collapsed basis of the target
};

inline std::optional<MarkedIso> marked_iso(const MarkedGraph& a, const MarkedGraph& b) {
  if (a.loops.size() != b.loops.size()) return std::nullopt;
  detail::TreeData tree = detail::spanning_tree(b.graph, b.base);
  std::vector<Word> ws;
  for (const EdgePath& L : b.loops) ws.push_back(detail::tree_collapse_word(tree, L));

  std::optional<MarkedIso> found;
  for_each_isomorphism(a.graph, b.graph, [&](const std::vector<Vertex>& vmap,
                                             const std::vector<Edge>& emap) {
    std::vector<Word> us;
    for (const EdgePath& L : a.loops) {
      EdgePath img;
      for (Edge e : L) img.push_back(emap[static_cast<std::size_t>(e)]);
      us.push_back(detail::tree_collapse_word(tree, img));
    }
    auto x = tuple_conjugator(us, ws);
    if (x) {
      found = MarkedIso{vmap, emap, *x};
      return true;
    }
    return false;
  });
  return found;
}

inline bool marked_equal(const MarkedGraph& a, const MarkedGraph& b) {
  return marked_iso(a, b).has_value();
}

// The marked graph a pointed graph with marking loops determines: take the
// unpointed core (conjugating the loops along the basepoint tail when the
// basepoint is pruned), then suppress bivalent vertices. This forgets the
// metric, which is exactly the subdivision data.
inline MarkedGraph marked_graph_of(const Graph& g, Vertex base, std::vector<EdgePath> loops) {
  CoreResult cr = core_with_maps(g, std::nullopt);
  if (cr.graph.empty()) return MarkedGraph{Graph(), 0, {}};
  // strip the basepoint tail: every loop leaves and returns through the same
  // direction until the basepoint lands in the core
  Vertex b = base;
  std::vector<EdgePath> ls = loops;
  while (cr.vertex_map[static_cast<std::size_t>(b)] == -1) {
    Edge exit = -1;
    for (const EdgePath& L : ls)
      if (!L.empty()) {
        exit = L.front();
        break;
      }
    if (exit == -1) throw Error("marked_graph_of: basepoint disconnected from core");
    for (EdgePath& L : ls) {
      if (L.empty()) continue;
      if (L.front() != exit || L.back() != reversed(exit))
        throw Error("marked_graph_of: loop does not follow the basepoint tail");
      L = EdgePath(L.begin() + 1, L.end() - 1);
    }
    b = g.terminus(exit);
  }
  Vertex core_base = cr.vertex_map[static_cast<std::size_t>(b)];
  std::vector<EdgePath> core_loops;
  for (const EdgePath& L : ls) {
    EdgePath mapped;
    for (Edge e : L) {
      int k = cr.pair_map[static_cast<std::size_t>(edge_pair(e))];
      if (k == -1) throw Error("marked_graph_of: loop leaves the core");
      mapped.push_back(is_positive(e) ? positive(k) : reversed(positive(k)));
    }
    core_loops.push_back(mapped);
  }

  Naturalization nat = naturalize(cr.graph);
  MarkedGraph out;
  out.graph = nat.natural;
  out.base = nat.slide_target(core_base);
  const EdgePath& s = nat.slides[static_cast<std::size_t>(core_base)];
  for (const EdgePath& L : core_loops)
    out.loops.push_back(nat.rewrite(reduce_path(concat(concat(reversed_path(s), L), s))));
  return out;
}

}  // namespace endofold
