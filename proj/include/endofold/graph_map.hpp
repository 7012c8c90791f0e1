#pragma once

// Graph maps: vertices to vertices, oriented edges to edge paths, with the
// image of a reversed edge equal to the reversed image path by construction.
// Empty edge images are allowed (collapse maps); topological representatives
// reject them at the point of use.

#include "endofold/graph.hpp"

namespace endofold {

class GraphMap {
 public:
  GraphMap() = default;
  GraphMap(Graph domain, Graph codomain, std::vector<Vertex> vertex_image,
           std::vector<EdgePath> pair_image)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        vertex_image_(std::move(vertex_image)),
        pair_image_(std::move(pair_image)) {
    if (static_cast<int>(vertex_image_.size()) != domain_.num_vertices())
      throw Error("graph map: vertex image count mismatch");
    if (static_cast<int>(pair_image_.size()) != domain_.num_pairs())
      throw Error("graph map: edge image count mismatch");
    for (Vertex v : vertex_image_)
      if (v < 0 || v >= codomain_.num_vertices()) throw Error("graph map: vertex image out of range");
    for (int k = 0; k < domain_.num_pairs(); ++k) {
      const EdgePath& p = pair_image_[static_cast<std::size_t>(k)];
      for (Edge e : p)
        if (e < 0 || e >= codomain_.num_oriented()) throw Error("graph map: edge image out of range");
      if (!is_path(codomain_, p)) throw Error("graph map: image is not a path");
      Vertex from = vertex_image_[static_cast<std::size_t>(domain_.origin(positive(k)))];
      Vertex to = vertex_image_[static_cast<std::size_t>(domain_.terminus(positive(k)))];
      if (p.empty()) {
        if (from != to) throw Error("graph map: collapsed edge with distinct endpoint images");
      } else {
        if (codomain_.origin(p.front()) != from || codomain_.terminus(p.back()) != to)
          throw Error("graph map: image path endpoints disagree with vertex images");
      }
    }
  }

  static GraphMap identity(const Graph& g) {
    std::vector<Vertex> vi(static_cast<std::size_t>(g.num_vertices()));
    for (Vertex v = 0; v < g.num_vertices(); ++v) vi[static_cast<std::size_t>(v)] = v;
    std::vector<EdgePath> pi;
    for (int k = 0; k < g.num_pairs(); ++k) pi.push_back({positive(k)});
    return GraphMap(g, g, std::move(vi), std::move(pi));
  }

  const Graph& domain() const { return domain_; }
  const Graph& codomain() const { return codomain_; }
  Vertex vertex_image(Vertex v) const { return vertex_image_.at(static_cast<std::size_t>(v)); }
  const std::vector<Vertex>& vertex_images() const { return vertex_image_; }
  const EdgePath& positive_image(int pair) const { return pair_image_.at(static_cast<std::size_t>(pair)); }

  EdgePath image(Edge e) const {
    const EdgePath& p = pair_image_.at(static_cast<std::size_t>(edge_pair(e)));
    return is_positive(e) ? p : reversed_path(p);
  }

  EdgePath image_of_path(const EdgePath& p) const {
    EdgePath out;
    for (Edge e : p) {
      EdgePath q = image(e);
      out.insert(out.end(), q.begin(), q.end());
    }
    return out;
  }

  bool has_collapsed_edge() const {
    for (const EdgePath& p : pair_image_)
      if (p.empty()) return true;
    return false;
  }

  bool operator==(const GraphMap&) const = default;

 private:
  Graph domain_, codomain_;
  std::vector<Vertex> vertex_image_;
  std::vector<EdgePath> pair_image_;
};

// Free reduction of every edge image; homotopic to the input rel vertices.
inline GraphMap tighten(const GraphMap& m) {
  std::vector<EdgePath> images;
  for (int k = 0; k < m.domain().num_pairs(); ++k)
    images.push_back(reduce_path(m.positive_image(k)));
  return GraphMap(m.domain(), m.codomain(), m.vertex_images(), std::move(images));
}

// First oriented edge of the image of a direction; empty for collapsed edges.
inline std::optional<Edge> direction_image(const GraphMap& m, Edge d) {
  EdgePath p = m.image(d);
  if (p.empty()) return std::nullopt;
  return p.front();
}

struct ImmersionCheck {
  bool ok = false;
  std::optional<Turn> witness;   // degenerate-image turn when not an immersion
  std::optional<Vertex> vertex;  // where the witness lives
};

// Locally injective: reduced nonempty edge images and an injective direction
// map at every vertex.
inline ImmersionCheck is_immersion(const GraphMap& m) {
  for (int k = 0; k < m.domain().num_pairs(); ++k) {
    const EdgePath& p = m.positive_image(k);
    if (p.empty()) return {false, std::nullopt, m.domain().origin(positive(k))};
    if (!is_reduced_path(p)) return {false, std::nullopt, std::nullopt};
  }
  for (Vertex v = 0; v < m.domain().num_vertices(); ++v) {
    std::vector<Edge> st = m.domain().star(v);
    for (std::size_t i = 0; i < st.size(); ++i)
      for (std::size_t j = i + 1; j < st.size(); ++j)
        if (*direction_image(m, st[i]) == *direction_image(m, st[j]))
          return {false, make_turn(st[i], st[j]), v};
  }
  return {true, std::nullopt, std::nullopt};
}

// then o first; the composite is tightened.
inline GraphMap compose(const GraphMap& first, const GraphMap& then) {
  if (!(first.codomain() == then.domain())) throw Error("compose: mismatched graphs");
  std::vector<Vertex> vi;
  for (Vertex v = 0; v < first.domain().num_vertices(); ++v)
    vi.push_back(then.vertex_image(first.vertex_image(v)));
  std::vector<EdgePath> pi;
  for (int k = 0; k < first.domain().num_pairs(); ++k)
    pi.push_back(reduce_path(then.image_of_path(first.positive_image(k))));
  return GraphMap(first.domain(), then.codomain(), std::move(vi), std::move(pi));
}

inline GraphMap iterate(const GraphMap& m, int n) {
  if (n < 1) throw Error("iterate: need n >= 1");
  GraphMap r = m;
  for (int i = 1; i < n; ++i) r = compose(r, m);
  return r;
}

// --- words as rose paths ------------------------------------------------------

inline Edge edge_of_letter(Letter x) {
  return x > 0 ? positive(x - 1) : reversed(positive(-x - 1));
}

inline Letter letter_of_edge(Edge e) {
  return is_positive(e) ? static_cast<Letter>(edge_pair(e) + 1)
                        : static_cast<Letter>(-(edge_pair(e) + 1));
}

inline EdgePath path_of_word(const Word& w) {
  EdgePath p;
  p.reserve(w.length());
  for (Letter x : w.letters()) p.push_back(edge_of_letter(x));
  return p;
}

inline Word word_of_path(const EdgePath& p) {
  std::vector<Letter> raw;
  raw.reserve(p.size());
  for (Edge e : p) raw.push_back(letter_of_edge(e));
  return Word::reduce(raw);
}

// The standard representative of an endomorphism on the rose.
inline GraphMap rose_map(const Endomorphism& e) {
  Graph r = rose(e.rank());
  std::vector<EdgePath> images;
  for (int i = 0; i < e.rank(); ++i) {
    if (e.image(i).empty()) throw Error("rose_map: generator image is trivial");
    images.push_back(path_of_word(e.image(i)));
  }
  return GraphMap(r, r, {0}, std::move(images));
}

}  // namespace endofold
