#pragma once

// Stallings folding. A labeled graph is a graph with a simplicial map to a
// base graph (every edge maps to a single base edge). Folding identifies, at
// a common vertex, distinct directions carrying the same label until the
// label map is an immersion. Any tightened graph map factors through this
// after subdividing its edges, which yields the fold / immersion
// factorization used throughout.

#include "endofold/graph_map.hpp"

namespace endofold {

struct LabeledGraph {
  Graph graph;
  Graph base;
  std::vector<Edge> pair_label;     // base edge carried by the positive orientation
  std::vector<Vertex> vertex_base;  // base vertex under each vertex

  Edge label(Edge e) const {
    Edge l = pair_label.at(static_cast<std::size_t>(edge_pair(e)));
    return is_positive(e) ? l : reversed(l);
  }

  void validate() const {
    if (static_cast<int>(pair_label.size()) != graph.num_pairs() ||
        static_cast<int>(vertex_base.size()) != graph.num_vertices())
      throw Error("labeled graph: size mismatch");
    for (Edge e = 0; e < graph.num_oriented(); ++e) {
      if (vertex_base[static_cast<std::size_t>(graph.origin(e))] != base.origin(label(e)))
        throw Error("labeled graph: label origin mismatch");
    }
  }

  // True iff no vertex has two distinct directions with equal labels.
  bool is_folded() const {
    for (Vertex v = 0; v < graph.num_vertices(); ++v) {
      std::vector<Edge> st = graph.star(v);
      for (std::size_t i = 0; i < st.size(); ++i)
        for (std::size_t j = i + 1; j < st.size(); ++j)
          if (label(st[i]) == label(st[j])) return false;
    }
    return true;
  }

  GraphMap to_graph_map() const {
    std::vector<EdgePath> images;
    for (int k = 0; k < graph.num_pairs(); ++k)
      images.push_back({pair_label[static_cast<std::size_t>(k)]});
    return GraphMap(graph, base, vertex_base, std::move(images));
  }
};

struct FoldStep {
  Edge a, b;   // the two directions identified (class representatives)
  Edge label;  // their common label in the base
};

enum class FoldOrder { Forward, Reverse };  // vertex scan direction; folding is confluent

struct FoldOutcome {
  LabeledGraph folded;
  std::vector<Vertex> vertex_map;  // input vertex -> folded vertex
  std::vector<Edge> edge_map;      // input oriented edge -> folded oriented edge
  std::vector<FoldStep> steps;
  // First fold that identified two edges whose endpoints already coincided.
  // Such a fold kills a loop, so the map on fundamental groups has nontrivial
  // kernel.
  std::optional<std::size_t> rank_drop;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }
  int find(int x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)];
    return x;
  }
  // The smaller root wins, keeping class representatives deterministic.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

 private:
  mutable std::vector<int> parent_;
};

}  // namespace detail

inline FoldOutcome fold(const LabeledGraph& in, FoldOrder order = FoldOrder::Forward) {
  in.validate();
  const int nv = in.graph.num_vertices();
  const int ne = in.graph.num_oriented();
  detail::UnionFind vertices(static_cast<std::size_t>(nv));
  detail::UnionFind edges(static_cast<std::size_t>(ne));

  FoldOutcome out;

  auto origin_class = [&](int edge_class) {
    return vertices.find(in.graph.origin(static_cast<Edge>(edge_class)));
  };
  auto terminus_class = [&](int edge_class) {
    return vertices.find(in.graph.terminus(static_cast<Edge>(edge_class)));
  };

  for (;;) {
    // collect current edge classes and bucket them by (origin class, label)
    std::vector<int> reps;
    for (Edge e = 0; e < ne; ++e)
      if (edges.find(e) == e) reps.push_back(e);

    bool folded_something = false;
    std::vector<Vertex> vertex_order;
    for (Vertex v = 0; v < nv; ++v)
      if (vertices.find(v) == v) vertex_order.push_back(v);
    if (order == FoldOrder::Reverse) std::reverse(vertex_order.begin(), vertex_order.end());

    for (Vertex v : vertex_order) {
      // directions at v: edge classes whose origin class is v
      std::optional<std::pair<Edge, Edge>> best;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (origin_class(reps[i]) != v) continue;
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
          if (origin_class(reps[j]) != v) continue;
          if (in.label(reps[i]) != in.label(reps[j])) continue;
          std::pair<Edge, Edge> cand{reps[i], reps[j]};
          if (!best || cand < *best) best = cand;
        }
      }
      if (!best) continue;

      auto [e1, e2] = *best;
      out.steps.push_back({e1, e2, in.label(e1)});
      if (terminus_class(e1) == terminus_class(e2) && !out.rank_drop)
        out.rank_drop = out.steps.size() - 1;
      vertices.unite(terminus_class(e1), terminus_class(e2));
      edges.unite(e1, e2);
      edges.unite(reversed(e1), reversed(e2));
      folded_something = true;
      break;
    }
    if (!folded_something) break;
  }

  // compact classes into a fresh labeled graph
  std::vector<Vertex> vclass(static_cast<std::size_t>(nv));
  int nnv = 0;
  for (Vertex v = 0; v < nv; ++v)
    if (vertices.find(v) == v) vclass[static_cast<std::size_t>(v)] = nnv++;
  out.vertex_map.resize(static_cast<std::size_t>(nv));
  for (Vertex v = 0; v < nv; ++v)
    out.vertex_map[static_cast<std::size_t>(v)] = vclass[static_cast<std::size_t>(vertices.find(v))];

  // each surviving pair is represented by the smallest oriented edge in it
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<Edge> labels;
  std::vector<Edge> oriented_of_class(static_cast<std::size_t>(ne), -1);
  for (Edge e = 0; e < ne; ++e) {
    if (edges.find(e) != e) continue;
    if (oriented_of_class[static_cast<std::size_t>(e)] != -1) continue;
    Edge r = static_cast<Edge>(edges.find(reversed(e)));
    int k = static_cast<int>(pairs.size());
    pairs.emplace_back(out.vertex_map[static_cast<std::size_t>(in.graph.origin(e))],
                       out.vertex_map[static_cast<std::size_t>(in.graph.origin(r))]);
    labels.push_back(in.label(e));
    oriented_of_class[static_cast<std::size_t>(e)] = positive(k);
    oriented_of_class[static_cast<std::size_t>(r)] = reversed(positive(k));
  }

  out.edge_map.resize(static_cast<std::size_t>(ne));
  for (Edge e = 0; e < ne; ++e)
    out.edge_map[static_cast<std::size_t>(e)] =
        oriented_of_class[static_cast<std::size_t>(edges.find(e))];

  std::vector<Vertex> vbase(static_cast<std::size_t>(nnv));
  for (Vertex v = 0; v < nv; ++v)
    vbase[static_cast<std::size_t>(out.vertex_map[static_cast<std::size_t>(v)])] =
        in.vertex_base[static_cast<std::size_t>(v)];

  out.folded = LabeledGraph{Graph(nnv, pairs), in.base, labels, vbase};
  out.folded.validate();
  if (!out.folded.is_folded()) throw std::logic_error("fold: result not folded");
  return out;
}

// --- the fold / immersion factorization of a graph map -----------------------

struct FoldResult {
  Graph graph;        // the folded graph S
  GraphMap fold_map;  // h : domain -> S, a composition of folds
  GraphMap immersion; // v : S -> codomain, simplicial
  std::vector<FoldStep> steps;
  std::optional<std::size_t> noninjective;  // fold index witnessing a kernel

  bool is_injective() const { return !noninjective.has_value(); }
  LabeledGraph labeled() const {
    std::vector<Edge> labels;
    for (int k = 0; k < graph.num_pairs(); ++k)
      labels.push_back(immersion.positive_image(k).front());
    return LabeledGraph{graph, immersion.codomain(), labels, immersion.vertex_images()};
  }
};

// Subdivide so every edge maps to a single edge, then fold to completion.
// The factorization v o h equals the input map on the nose.
inline FoldResult fold_to_immersion(const GraphMap& m_in, FoldOrder order = FoldOrder::Forward) {
  GraphMap m = tighten(m_in);
  if (m.has_collapsed_edge()) throw Error("fold_to_immersion: edge image collapses to a point");

  // subdivided domain, one piece per image letter
  const Graph& dom = m.domain();
  int nv = dom.num_vertices();
  std::vector<std::pair<Vertex, Vertex>> pieces;
  std::vector<Edge> labels;
  std::vector<Vertex> vbase(static_cast<std::size_t>(nv));
  for (Vertex v = 0; v < nv; ++v) vbase[static_cast<std::size_t>(v)] = m.vertex_image(v);
  std::vector<std::vector<Edge>> piece_path;  // per domain pair: its pieces, oriented forward
  int next_vertex = nv;
  for (int k = 0; k < dom.num_pairs(); ++k) {
    const EdgePath& p = m.positive_image(k);
    Vertex from = dom.origin(positive(k));
    Vertex to = dom.terminus(positive(k));
    std::vector<Edge> chain;
    Vertex cur = from;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Vertex nxt;
      if (i + 1 == p.size())
        nxt = to;
      else {
        nxt = next_vertex++;
        vbase.push_back(m.codomain().terminus(p[i]));
      }
      int piece = static_cast<int>(pieces.size());
      pieces.emplace_back(cur, nxt);
      labels.push_back(p[i]);
      chain.push_back(positive(piece));
      cur = nxt;
    }
    piece_path.push_back(chain);
  }

  LabeledGraph subdivided{Graph(next_vertex, pieces), m.codomain(), labels, vbase};
  FoldOutcome fo = fold(subdivided, order);

  FoldResult res;
  res.graph = fo.folded.graph;
  res.steps = fo.steps;
  res.noninjective = fo.rank_drop;

  std::vector<Vertex> h_vertices;
  for (Vertex v = 0; v < nv; ++v)
    h_vertices.push_back(fo.vertex_map[static_cast<std::size_t>(v)]);
  std::vector<EdgePath> h_images;
  for (int k = 0; k < dom.num_pairs(); ++k) {
    EdgePath path;
    for (Edge piece : piece_path[static_cast<std::size_t>(k)])
      path.push_back(fo.edge_map[static_cast<std::size_t>(piece)]);
    h_images.push_back(path);
  }
  res.fold_map = GraphMap(dom, res.graph, std::move(h_vertices), std::move(h_images));
  res.immersion = fo.folded.to_graph_map();
  return res;
}

}  // namespace endofold
