#pragma once

// Stallings subgroup graphs: folded labeled graphs over a base graph, with
// an optional basepoint. Pointed graphs decide membership; unpointed ones
// represent conjugacy classes of subgroups. Also: iterated images of an
// endomorphism, fiber products, covering indices and preimages of
// finite-index subgroups under an endomorphism.

#include <map>

#include "endofold/fold.hpp"

namespace endofold {

class SubgroupGraph {
 public:
  SubgroupGraph() = default;
  SubgroupGraph(LabeledGraph lg, std::optional<Vertex> base_vertex)
      : lg_(std::move(lg)), base_vertex_(base_vertex) {
    lg_.validate();
    if (!lg_.is_folded()) throw Error("subgroup graph: not folded");
    if (base_vertex_ && (*base_vertex_ < 0 || *base_vertex_ >= lg_.graph.num_vertices()))
      throw Error("subgroup graph: basepoint out of range");
  }

  const Graph& graph() const { return lg_.graph; }
  const Graph& base() const { return lg_.base; }
  const LabeledGraph& labeled() const { return lg_; }
  Edge label(Edge e) const { return lg_.label(e); }
  Vertex vertex_base(Vertex v) const { return lg_.vertex_base.at(static_cast<std::size_t>(v)); }
  bool pointed() const { return base_vertex_.has_value(); }
  Vertex base_vertex() const {
    if (!base_vertex_) throw Error("subgroup graph: no basepoint");
    return *base_vertex_;
  }
  SubgroupGraph without_basepoint() const { return SubgroupGraph(lg_, std::nullopt); }

  bool is_trivial() const { return lg_.graph.num_pairs() == 0; }
  int rank() const { return lg_.graph.rank(); }

  GraphMap to_graph_map() const { return lg_.to_graph_map(); }

  // Unique direction at v carrying the given base edge, if any.
  std::optional<Edge> step(Vertex v, Edge base_edge) const {
    for (Edge e : lg_.graph.star(v))
      if (lg_.label(e) == base_edge) return e;
    return std::nullopt;
  }

  std::optional<Vertex> trace(Vertex from, const EdgePath& base_path) const {
    Vertex cur = from;
    for (Edge b : base_path) {
      auto e = step(cur, b);
      if (!e) return std::nullopt;
      cur = lg_.graph.terminus(*e);
    }
    return cur;
  }

  bool operator==(const SubgroupGraph&) const = default;

 private:
  LabeledGraph lg_;
  std::optional<Vertex> base_vertex_;
};

// Membership for pointed subgroup graphs over a rose.
inline bool membership(const SubgroupGraph& sg, const Word& w) {
  if (!sg.pointed()) throw Error("membership: needs a pointed subgroup graph");
  auto end = sg.trace(sg.base_vertex(), path_of_word(w));
  return end && *end == sg.base_vertex();
}

namespace detail {

// Restrict a labeled graph to the vertices/pairs kept by a CoreResult.
inline LabeledGraph restrict_labels(const LabeledGraph& lg, const CoreResult& cr) {
  std::vector<Edge> labels;
  std::vector<Vertex> vbase;
  for (int k = 0; k < lg.graph.num_pairs(); ++k)
    if (cr.pair_map[static_cast<std::size_t>(k)] != -1)
      labels.push_back(lg.pair_label[static_cast<std::size_t>(k)]);
  for (Vertex v = 0; v < lg.graph.num_vertices(); ++v)
    if (cr.vertex_map[static_cast<std::size_t>(v)] != -1)
      vbase.push_back(lg.vertex_base[static_cast<std::size_t>(v)]);
  return LabeledGraph{cr.graph, lg.base, labels, vbase};
}

inline EdgePath map_path(const EdgePath& p, const CoreResult& cr) {
  EdgePath out;
  for (Edge e : p) {
    int k = cr.pair_map[static_cast<std::size_t>(edge_pair(e))];
    if (k == -1) throw Error("map_path: path leaves the core");
    out.push_back(is_positive(e) ? positive(k) : reversed(positive(k)));
  }
  return out;
}

}  // namespace detail

struct WedgeFold {
  SubgroupGraph sg;                   // pointed core
  std::vector<EdgePath> loop_images;  // folded image of each input loop
  std::vector<FoldStep> steps;
  std::optional<std::size_t> rank_drop;  // normal when generators are not a free basis
};

// Folds a wedge of loops at a base vertex into the subgroup graph of the
// subgroup those loops generate, tracking where each loop ends up.
inline WedgeFold subgroup_graph_of_loops(const Graph& base, Vertex basepoint,
                                         const std::vector<EdgePath>& loops) {
  // wedge: one shared basepoint plus a subdivided loop per generator
  std::vector<std::pair<Vertex, Vertex>> pieces;
  std::vector<Edge> labels;
  std::vector<Vertex> vbase = {basepoint};
  std::vector<std::vector<Edge>> loop_pieces;
  int next_vertex = 1;
  for (const EdgePath& loop_raw : loops) {
    EdgePath loop = reduce_path(loop_raw);
    if (!loop.empty() &&
        (base.origin(loop.front()) != basepoint || base.terminus(loop.back()) != basepoint))
      throw Error("subgroup_graph: generator is not a loop at the basepoint");
    std::vector<Edge> chain;
    Vertex cur = 0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      Vertex nxt;
      if (i + 1 == loop.size())
        nxt = 0;
      else {
        nxt = next_vertex++;
        vbase.push_back(base.terminus(loop[i]));
      }
      int piece = static_cast<int>(pieces.size());
      pieces.emplace_back(cur, nxt);
      labels.push_back(loop[i]);
      chain.push_back(positive(piece));
      cur = nxt;
    }
    loop_pieces.push_back(chain);
  }

  LabeledGraph wedge{Graph(next_vertex, pieces), base, labels, vbase};
  FoldOutcome fo = fold(wedge);

  // pointed core of the folded wedge
  Vertex folded_base = fo.vertex_map[0];
  CoreResult cr = core_with_maps(fo.folded.graph, folded_base);
  LabeledGraph lg = detail::restrict_labels(fo.folded, cr);

  WedgeFold out;
  out.sg = SubgroupGraph(lg, cr.vertex_map[static_cast<std::size_t>(folded_base)]);
  out.steps = fo.steps;
  out.rank_drop = fo.rank_drop;
  for (const auto& chain : loop_pieces) {
    EdgePath folded;
    for (Edge piece : chain) folded.push_back(fo.edge_map[static_cast<std::size_t>(piece)]);
    out.loop_images.push_back(detail::map_path(reduce_path(folded), cr));
  }
  return out;
}

inline SubgroupGraph subgroup_graph(const Basis& basis, const std::vector<Word>& generators) {
  std::vector<EdgePath> loops;
  for (const Word& w : generators) loops.push_back(path_of_word(w));
  return subgroup_graph_of_loops(rose(basis.rank()), 0, loops).sg;
}

// --- canonical forms and equality --------------------------------------------

// BFS from `start`, exploring directions in label order. Folded connected
// graphs get a canonical vertex numbering this way, so two pointed subgroup
// graphs are label-isomorphic iff their serializations agree.
inline std::vector<int> canonical_serialization(const SubgroupGraph& sg, Vertex start) {
  const Graph& g = sg.graph();
  std::vector<Vertex> order;
  std::vector<int> id(static_cast<std::size_t>(g.num_vertices()), -1);
  id[static_cast<std::size_t>(start)] = 0;
  order.push_back(start);
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex u = order[head];
    std::vector<std::pair<Edge, Edge>> st;  // (label, direction), label-sorted
    for (Edge e : g.star(u)) st.emplace_back(sg.label(e), e);
    std::sort(st.begin(), st.end());
    for (auto [lab, e] : st) {
      Vertex w = g.terminus(e);
      if (id[static_cast<std::size_t>(w)] == -1) {
        id[static_cast<std::size_t>(w)] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  std::vector<int> out;
  out.push_back(static_cast<int>(order.size()));
  for (Vertex u : order) {
    std::vector<std::pair<Edge, int>> row;
    for (Edge e : sg.graph().star(u)) row.emplace_back(sg.label(e), id[static_cast<std::size_t>(sg.graph().terminus(e))]);
    std::sort(row.begin(), row.end());
    out.push_back(static_cast<int>(row.size()));
    for (auto [lab, t] : row) {
      out.push_back(lab);
      out.push_back(t);
    }
  }
  return out;
}

// Basepoint-respecting label isomorphism (same subgroup, not just conjugate).
inline bool pointed_equal(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (!a.pointed() || !b.pointed()) throw Error("pointed_equal: needs basepoints");
  if (!(a.base() == b.base())) return false;
  if (a.graph().num_vertices() != b.graph().num_vertices() ||
      a.graph().num_pairs() != b.graph().num_pairs())
    return false;
  return canonical_serialization(a, a.base_vertex()) == canonical_serialization(b, b.base_vertex());
}

// Label isomorphism ignoring basepoints (conjugacy classes of subgroups).
inline bool unpointed_label_iso(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (!(a.base() == b.base())) return false;
  if (a.graph().num_vertices() != b.graph().num_vertices() ||
      a.graph().num_pairs() != b.graph().num_pairs())
    return false;
  if (a.graph().num_vertices() == 0) return true;
  auto ca = canonical_serialization(a, 0);
  for (Vertex u = 0; u < b.graph().num_vertices(); ++u)
    if (canonical_serialization(b, u) == ca) return true;
  return false;
}

// --- covering index -----------------------------------------------------------

// Finite index iff the label map is locally bijective everywhere.
inline std::optional<long long> covering_index(const SubgroupGraph& sg) {
  if (sg.graph().empty()) return std::nullopt;
  for (Vertex v = 0; v < sg.graph().num_vertices(); ++v) {
    std::vector<Edge> have;
    for (Edge e : sg.graph().star(v)) have.push_back(sg.label(e));
    std::vector<Edge> want = sg.base().star(sg.vertex_base(v));
    std::sort(have.begin(), have.end());
    std::sort(want.begin(), want.end());
    if (have != want) return std::nullopt;
  }
  return sg.graph().num_vertices() / sg.base().num_vertices();
}

// --- iterated images ----------------------------------------------------------

struct IterateImages {
  std::vector<SubgroupGraph> graphs;  // S_1 .. S_k, pointed, subdivided over the base
  // Basis loops pushed through the folds: the marking each S_i inherits.
  std::vector<std::vector<EdgePath>> marking_loops;
  std::vector<int> edge_pair_counts;
  bool surjective = false;  // the first image already covers the base
};

// S_i for the subgroup e^i(F), computed incrementally by composing the
// representative with the previous immersion and folding.
inline IterateImages iterate_image(const Endomorphism& e, int k) {
  GraphMap f = rose_map(e);
  IterateImages out;
  SubgroupGraph current(
      LabeledGraph{f.domain(), f.domain(),
                   [&] {
                     std::vector<Edge> l;
                     for (int p = 0; p < f.domain().num_pairs(); ++p) l.push_back(positive(p));
                     return l;
                   }(),
                   std::vector<Vertex>(static_cast<std::size_t>(f.domain().num_vertices()), 0)},
      0);
  std::vector<EdgePath> loops;
  for (int p = 0; p < f.domain().num_pairs(); ++p) loops.push_back({positive(p)});
  for (int i = 1; i <= k; ++i) {
    GraphMap m = compose(current.to_graph_map(), f);
    FoldResult fr = fold_to_immersion(m);
    Vertex folded_base = fr.fold_map.vertex_image(current.base_vertex());
    CoreResult cr = core_with_maps(fr.graph, folded_base);
    LabeledGraph lg = detail::restrict_labels(fr.labeled(), cr);
    std::vector<EdgePath> next_loops;
    for (const EdgePath& L : loops)
      next_loops.push_back(detail::map_path(reduce_path(fr.fold_map.image_of_path(L)), cr));
    loops = std::move(next_loops);
    current = SubgroupGraph(lg, cr.vertex_map[static_cast<std::size_t>(folded_base)]);
    out.graphs.push_back(current);
    out.marking_loops.push_back(loops);
    out.edge_pair_counts.push_back(current.graph().num_pairs());
    if (i == 1) out.surjective = covering_index(current) == 1;
  }
  return out;
}

// --- fiber products -----------------------------------------------------------

struct PullbackComponent {
  SubgroupGraph sg;  // core of the component, over the same base
  std::vector<Vertex> proj1, proj2;  // vertex projections to the two factors
  bool pointed = false;
};

struct PullbackResult {
  // Pointed component at (base1, base2): realizes the intersection. A trivial
  // intersection shows up as a single-vertex graph.
  std::optional<SubgroupGraph> intersection;
  std::vector<PullbackComponent> components;  // all components with nonempty core
};

inline PullbackResult pullback(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (!(a.base() == b.base())) throw Error("pullback: different base graphs");
  const Graph& ga = a.graph();
  const Graph& gb = b.graph();

  // product vertices: pairs over a common base vertex
  std::map<std::pair<Vertex, Vertex>, Vertex> vid;
  std::vector<std::pair<Vertex, Vertex>> vlist;
  for (Vertex u = 0; u < ga.num_vertices(); ++u)
    for (Vertex w = 0; w < gb.num_vertices(); ++w)
      if (a.vertex_base(u) == b.vertex_base(w)) {
        vid[{u, w}] = static_cast<Vertex>(vlist.size());
        vlist.emplace_back(u, w);
      }

  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<Edge> labels;
  for (int ka = 0; ka < ga.num_pairs(); ++ka) {
    Edge ea = positive(ka);
    for (Edge eb = 0; eb < gb.num_oriented(); ++eb) {
      if (b.label(eb) != a.label(ea)) continue;
      auto o = vid.find({ga.origin(ea), gb.origin(eb)});
      auto t = vid.find({ga.terminus(ea), gb.terminus(eb)});
      if (o == vid.end() || t == vid.end()) continue;
      pairs.emplace_back(o->second, t->second);
      labels.push_back(a.label(ea));
    }
  }
  Graph product(static_cast<int>(vlist.size()), pairs);
  std::vector<Vertex> vbase;
  for (auto [u, w] : vlist) vbase.push_back(a.vertex_base(u));
  LabeledGraph plg{product, a.base(), labels, vbase};

  std::optional<Vertex> diag;
  if (a.pointed() && b.pointed()) {
    auto it = vid.find({a.base_vertex(), b.base_vertex()});
    if (it != vid.end()) diag = it->second;
  }

  std::vector<int> comp = product.component_of();
  int ncomp = product.num_components();

  PullbackResult out;
  for (int c = 0; c < ncomp; ++c) {
    // restrict to the component, then take its core
    std::vector<Vertex> cvmap(vlist.size(), -1);
    std::vector<std::pair<Vertex, Vertex>> cpairs;
    std::vector<Edge> clabels;
    std::vector<Vertex> cvbase;
    std::vector<std::pair<Vertex, Vertex>> cproj;
    int nv = 0;
    for (std::size_t v = 0; v < vlist.size(); ++v)
      if (comp[v] == c) {
        cvmap[v] = nv++;
        cvbase.push_back(vbase[v]);
        cproj.push_back(vlist[v]);
      }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      Vertex o = pairs[k].first;
      if (comp[static_cast<std::size_t>(o)] != c) continue;
      cpairs.emplace_back(cvmap[static_cast<std::size_t>(pairs[k].first)],
                          cvmap[static_cast<std::size_t>(pairs[k].second)]);
      clabels.push_back(labels[k]);
    }
    Graph cg(nv, cpairs);
    LabeledGraph clg{cg, a.base(), clabels, cvbase};

    bool is_pointed = diag && comp[static_cast<std::size_t>(*diag)] == c;
    std::optional<Vertex> keep;
    if (is_pointed) keep = cvmap[static_cast<std::size_t>(*diag)];
    CoreResult cr = core_with_maps(cg, keep);

    if (cr.graph.empty() && !is_pointed) continue;
    LabeledGraph core_lg = detail::restrict_labels(clg, cr);
    PullbackComponent pc;
    std::optional<Vertex> pc_base;
    if (is_pointed) pc_base = cr.vertex_map[static_cast<std::size_t>(*keep)];
    pc.sg = SubgroupGraph(core_lg, pc_base);
    pc.pointed = is_pointed;
    for (std::size_t v = 0; v < cproj.size(); ++v)
      if (cr.vertex_map[v] != -1) {
        pc.proj1.push_back(cproj[v].first);
        pc.proj2.push_back(cproj[v].second);
      }
    if (is_pointed) out.intersection = pc.sg;
    if (!cr.graph.empty()) out.components.push_back(std::move(pc));
  }
  return out;
}

// Finite index of the projection of a pullback component onto its first
// factor, when that projection is a covering.
inline std::optional<long long> projection_index(const PullbackComponent& comp,
                                                 const SubgroupGraph& first) {
  const Graph& g = comp.sg.graph();
  if (g.empty()) return std::nullopt;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::vector<Edge> have;
    for (Edge e : g.star(v)) have.push_back(comp.sg.label(e));
    std::vector<Edge> want;
    for (Edge e : first.graph().star(comp.proj1[static_cast<std::size_t>(v)]))
      want.push_back(first.label(e));
    std::sort(have.begin(), have.end());
    std::sort(want.begin(), want.end());
    if (have != want) return std::nullopt;
  }
  if (first.graph().num_vertices() == 0) return std::nullopt;
  return g.num_vertices() / first.graph().num_vertices();
}

// --- preimages of finite-index subgroups ---------------------------------------

// phi^-1(H') via the coset action: states are the vertices of the covering
// H' -> rose, and a generator g moves a state by reading phi(g).
inline SubgroupGraph preimage_subgroup(const Endomorphism& e, const SubgroupGraph& cover) {
  if (!(cover.base() == rose(e.rank()))) throw Error("preimage_subgroup: base must be the rose");
  if (!cover.pointed()) throw Error("preimage_subgroup: needs a pointed cover");
  if (!covering_index(cover)) throw Error("preimage_subgroup: subgroup has infinite index");

  int n = cover.graph().num_vertices();
  std::vector<std::vector<Vertex>> delta(static_cast<std::size_t>(e.rank()),
                                         std::vector<Vertex>(static_cast<std::size_t>(n)));
  for (int g = 0; g < e.rank(); ++g) {
    EdgePath p = path_of_word(e.image(g));
    for (Vertex u = 0; u < n; ++u) {
      auto t = cover.trace(u, p);
      if (!t) throw std::logic_error("preimage_subgroup: covering trace failed");
      delta[static_cast<std::size_t>(g)][static_cast<std::size_t>(u)] = *t;
    }
  }

  // reachable part from the basepoint
  std::vector<int> newid(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> order;
  newid[static_cast<std::size_t>(cover.base_vertex())] = 0;
  order.push_back(cover.base_vertex());
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex u = order[head];
    for (int g = 0; g < e.rank(); ++g) {
      for (Vertex w :
           {delta[static_cast<std::size_t>(g)][static_cast<std::size_t>(u)],
            [&] {  // inverse step: the unique x with delta(x) = u
              for (Vertex x = 0; x < n; ++x)
                if (delta[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)] == u) return x;
              throw std::logic_error("preimage_subgroup: action not a permutation");
            }()}) {
        if (newid[static_cast<std::size_t>(w)] == -1) {
          newid[static_cast<std::size_t>(w)] = static_cast<int>(order.size());
          order.push_back(w);
        }
      }
    }
  }

  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<Edge> labels;
  for (Vertex u : order)
    for (int g = 0; g < e.rank(); ++g) {
      Vertex w = delta[static_cast<std::size_t>(g)][static_cast<std::size_t>(u)];
      pairs.emplace_back(newid[static_cast<std::size_t>(u)], newid[static_cast<std::size_t>(w)]);
      labels.push_back(positive(g));
    }
  Graph g(static_cast<int>(order.size()), pairs);
  LabeledGraph lg{g, rose(e.rank()), labels,
                  std::vector<Vertex>(order.size(), 0)};
  return SubgroupGraph(lg, 0);
}

struct StabilizedPreimage {
  int k = 0, j = 0;                 // first repetition: phi^-k(H') = phi^-j(H')
  SubgroupGraph stable;             // K = phi^-k(H')
  std::vector<Vertex> coset_map;    // induced bijection of cosets (vertices of S(K))
  bool square_commutes = false;     // pi o phi^(j-k) = induced o pi, checked on generators
};

inline StabilizedPreimage stabilized_preimage(const Endomorphism& e, const SubgroupGraph& cover,
                                              int cap = 100000) {
  std::vector<SubgroupGraph> chain = {cover};
  int k = -1, j = -1;
  for (int t = 1; t <= cap; ++t) {
    chain.push_back(preimage_subgroup(e, chain.back()));
    for (int s = 0; s < t; ++s)
      if (pointed_equal(chain[static_cast<std::size_t>(s)], chain.back())) {
        k = s;
        j = t;
        break;
      }
    if (k >= 0) break;
  }
  if (k < 0) throw Error("stabilized_preimage: no repetition within cap");

  StabilizedPreimage out;
  out.k = k;
  out.j = j;
  out.stable = chain[static_cast<std::size_t>(k)];

  // representative word per coset: BFS tree from the basepoint
  const SubgroupGraph& K = out.stable;
  int n = K.graph().num_vertices();
  std::vector<std::optional<Word>> rep(static_cast<std::size_t>(n));
  rep[static_cast<std::size_t>(K.base_vertex())] = Word();
  std::vector<Vertex> order = {K.base_vertex()};
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex u = order[head];
    for (Edge d : K.graph().star(u)) {
      Vertex w = K.graph().terminus(d);
      if (!rep[static_cast<std::size_t>(w)]) {
        rep[static_cast<std::size_t>(w)] =
            *rep[static_cast<std::size_t>(u)] * Word::reduce({letter_of_edge(K.label(d))});
        order.push_back(w);
      }
    }
  }

  Endomorphism power = iterate(e, j - k);
  auto sigma = [&](Vertex u) {
    auto t = K.trace(K.base_vertex(), path_of_word(power.apply(*rep[static_cast<std::size_t>(u)])));
    if (!t) throw std::logic_error("stabilized_preimage: trace failed in covering");
    return *t;
  };
  out.coset_map.resize(static_cast<std::size_t>(n));
  for (Vertex u = 0; u < n; ++u) out.coset_map[static_cast<std::size_t>(u)] = sigma(u);

  // verify: bijection + commuting square on every generator at every coset
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  bool bijective = true;
  for (Vertex u = 0; u < n; ++u) {
    Vertex s = out.coset_map[static_cast<std::size_t>(u)];
    if (hit[static_cast<std::size_t>(s)]) bijective = false;
    hit[static_cast<std::size_t>(s)] = true;
  }
  bool commutes = true;
  for (Vertex u = 0; u < n && commutes; ++u)
    for (int g = 0; g < e.rank() && commutes; ++g) {
      auto via_gen = K.trace(u, path_of_word(Word::generator(g)));
      auto lhs = out.coset_map[static_cast<std::size_t>(*via_gen)];
      auto rhs = K.trace(out.coset_map[static_cast<std::size_t>(u)],
                         path_of_word(power.apply(Word::generator(g))));
      commutes = rhs && lhs == *rhs;
    }
  out.square_commutes = bijective && commutes;
  return out;
}

// A pointed covering from a transitive permutation action on cosets
// (generator g sends state s to perms[g][s]); the stabilizer of state 0.
inline SubgroupGraph from_coset_action(int rank, const std::vector<std::vector<Vertex>>& perms) {
  if (static_cast<int>(perms.size()) != rank) throw Error("from_coset_action: one permutation per generator");
  int n = static_cast<int>(perms[0].size());
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<Edge> labels;
  for (int g = 0; g < rank; ++g)
    for (Vertex s = 0; s < n; ++s) {
      pairs.emplace_back(s, perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(s)]);
      labels.push_back(positive(g));
    }
  Graph gr(n, pairs);
  if (!gr.is_connected()) throw Error("from_coset_action: action is not transitive");
  LabeledGraph lg{gr, rose(rank), labels, std::vector<Vertex>(static_cast<std::size_t>(n), 0)};
  return SubgroupGraph(lg, 0);
}

}  // namespace endofold
