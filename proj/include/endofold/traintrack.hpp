#pragma once

// Train track analysis for self graph maps: transition matrices and their
// Perron-Frobenius data, turn legality, Whitehead graphs (plain and relative),
// the clean / weakly clean test, certified cancellation bounds from the fold
// factorization, and finite leaf segments of the attracting lamination.

#include <numeric>
#include <set>

#include "endofold/stallings.hpp"

namespace endofold {

struct TransitionMatrix {
  int n = 0;
  std::vector<std::vector<long long>> entries;  // entries[i][j]: pair i in the image of pair j

  static TransitionMatrix zero(int n) {
    return {n, std::vector<std::vector<long long>>(static_cast<std::size_t>(n),
                                                   std::vector<long long>(static_cast<std::size_t>(n), 0))};
  }
  long long at(int i, int j) const { return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  bool operator==(const TransitionMatrix&) const = default;
};

inline TransitionMatrix transition_matrix(const GraphMap& m) {
  if (!(m.domain() == m.codomain())) throw Error("transition_matrix: map must be a self map");
  int n = m.domain().num_pairs();
  TransitionMatrix a = TransitionMatrix::zero(n);
  for (int j = 0; j < n; ++j)
    for (Edge e : m.positive_image(j))
      ++a.entries[static_cast<std::size_t>(edge_pair(e))][static_cast<std::size_t>(j)];
  return a;
}

inline TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b) {
  TransitionMatrix c = TransitionMatrix::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      long long v = a.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < a.n; ++j) c.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += v * b.at(k, j);
    }
  return c;
}

// Strong connectivity of the digraph with an arc j -> i when pair i appears
// in the image of pair j.
inline bool is_irreducible(const TransitionMatrix& a) {
  if (a.n == 0) return false;
  auto reach_all = [&](int s, bool transpose) {
    std::vector<bool> seen(static_cast<std::size_t>(a.n), false);
    std::vector<int> stack = {s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < a.n; ++v) {
        long long w = transpose ? a.at(u, v) : a.at(v, u);
        if (w > 0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
  };
  return reach_all(0, false) && reach_all(0, true);
}

// Irreducible with cycle-length gcd 1; checked by boolean powers up to the
// Wielandt exponent (n-1)^2 + 1.
inline bool is_primitive(const TransitionMatrix& a) {
  if (!is_irreducible(a)) return false;
  int n = a.n;
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.at(i, j) > 0;
  auto cur = adj;
  int cap = (n - 1) * (n - 1) + 1;
  for (int pow = 1; pow <= cap; ++pow) {
    bool all = true;
    for (auto& row : cur)
      for (bool x : row)
        if (!x) all = false;
    if (all) return true;
    std::vector<std::vector<bool>> nxt(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (cur[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          for (int j = 0; j < n; ++j)
            if (adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) nxt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    cur = nxt;
  }
  return false;
}

struct Rational {
  long long num = 0, den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct PFData {
  double lambda = 1.0;
  std::vector<double> left_eigenvector;  // positive; the train track metric
  Rational lower{1, 1}, upper{1, 1};     // certified Collatz-Wielandt bounds
};

// Power iteration with certified Collatz-Wielandt bounds. Iterates with
// A^T + I so that periodic matrices converge too; the bounds are evaluated
// exactly on an integer rounding of the iterate, so lower <= lambda <= upper
// holds unconditionally.
inline PFData pf_eigenvalue(const TransitionMatrix& a, double tol = 1e-12) {
  if (!is_irreducible(a)) throw Error("pf_eigenvalue: matrix is reducible");
  int n = a.n;
  std::vector<double> v(static_cast<std::size_t>(n), 1.0);

  auto apply_t = [&](const std::vector<double>& x) {  // y = A^T x
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] += static_cast<double>(a.at(i, j)) * x[static_cast<std::size_t>(i)];
    return y;
  };

  auto exact_bounds = [&](const std::vector<double>& x) {
    // scale to integers; CW bounds are valid for any positive vector
    std::vector<long long> u(static_cast<std::size_t>(n));
    double mx = *std::max_element(x.begin(), x.end());
    for (int i = 0; i < n; ++i)
      u[static_cast<std::size_t>(i)] = std::max<long long>(1, static_cast<long long>(std::llround(x[static_cast<std::size_t>(i)] / mx * (1LL << 40))));
    std::vector<long long> au(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) au[static_cast<std::size_t>(j)] += a.at(i, j) * u[static_cast<std::size_t>(i)];
    auto less = [](long long p1, long long q1, long long p2, long long q2) {
      return static_cast<__int128>(p1) * q2 < static_cast<__int128>(p2) * q1;
    };
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < static_cast<std::size_t>(n); ++i) {
      if (less(au[i], u[i], au[lo], u[lo])) lo = i;
      if (less(au[hi], u[hi], au[i], u[i])) hi = i;
    }
    auto reduced = [](long long p, long long q) {
      long long g = std::gcd(p, q);
      return Rational{p / std::max<long long>(1, g), q / std::max<long long>(1, g)};
    };
    return std::pair<Rational, Rational>{reduced(au[lo], u[lo]), reduced(au[hi], u[hi])};
  };

  PFData out;
  for (int it = 0; it < 20000; ++it) {
    auto [lo, hi] = exact_bounds(v);
    out.lower = lo;
    out.upper = hi;
    if (hi.value() - lo.value() <= tol) break;
    std::vector<double> w = apply_t(v);
    double s = 0;
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)], s += w[static_cast<std::size_t>(i)];
    for (double& x : w) x /= s;
    v = w;
  }
  if (out.upper.value() - out.lower.value() > tol)
    throw Error("pf_eigenvalue: did not converge to requested tolerance");
  out.lambda = 0.5 * (out.lower.value() + out.upper.value());
  double mn = *std::min_element(v.begin(), v.end());
  for (double& x : v) x /= mn;
  out.left_eigenvector = v;
  return out;
}

// --- turns and legality ---------------------------------------------------

// Turns crossed in the interior of the image paths.
inline std::vector<Turn> crossing_turns(const GraphMap& m) {
  std::set<Turn> turns;
  for (int k = 0; k < m.domain().num_pairs(); ++k) {
    const EdgePath& p = m.positive_image(k);
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      turns.insert(make_turn(reversed(p[i]), p[i + 1]));
  }
  return {turns.begin(), turns.end()};
}

inline std::optional<Turn> turn_image(const GraphMap& m, const Turn& t) {
  auto a = direction_image(m, t.a);
  auto b = direction_image(m, t.b);
  if (!a || !b) return std::nullopt;
  return make_turn(*a, *b);
}

// Follows a turn under the direction map until it repeats or degenerates.
inline bool is_legal(const GraphMap& m, Turn t) {
  std::set<Turn> seen;
  while (seen.insert(t).second) {
    if (t.degenerate()) return false;
    auto nt = turn_image(m, t);
    if (!nt) throw Error("is_legal: collapsed edge in direction map");
    t = *nt;
  }
  return !t.degenerate();
}

struct TrainTrackCheck {
  bool ok = false;
  std::optional<Turn> witness;  // a taken turn whose iterate degenerates
};

// All iterates are locally injective on edge interiors and at bivalent
// vertices iff the taken turns (seeded by crossing turns and the turns at
// bivalent vertices) stay nondegenerate under the direction map.
inline TrainTrackCheck is_train_track(const GraphMap& m_in) {
  GraphMap m = tighten(m_in);
  if (m.has_collapsed_edge()) throw Error("is_train_track: collapsed edge");
  std::vector<Turn> seeds = crossing_turns(m);
  for (Vertex v = 0; v < m.domain().num_vertices(); ++v) {
    auto st = m.domain().star(v);
    if (st.size() == 2) seeds.push_back(make_turn(st[0], st[1]));
  }
  for (const Turn& seed : seeds)
    if (!is_legal(m, seed)) return {false, seed};
  return {true, std::nullopt};
}

// --- Whitehead graphs -------------------------------------------------------

struct WhiteheadGraph {
  Vertex vertex = 0;
  std::vector<Edge> nodes;  // directions at the vertex
  std::vector<Turn> edges;  // taken turns based there

  bool connected() const {
    if (nodes.size() <= 1) return true;
    std::map<Edge, int> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = static_cast<int>(i);
    std::vector<int> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : find(parent[static_cast<std::size_t>(x)]); };
    for (const Turn& t : edges) parent[static_cast<std::size_t>(find(idx.at(t.a)))] = find(idx.at(t.b));
    int root = find(0);
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (find(static_cast<int>(i)) != root) return false;
    return true;
  }

  // Articulation point anywhere in the graph (computed per component).
  bool has_cut_vertex() const {
    int n = static_cast<int>(nodes.size());
    if (n <= 2) return false;
    std::map<Edge, int> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = static_cast<int>(i);
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (const Turn& t : edges) {
      adj[static_cast<std::size_t>(idx.at(t.a))].insert(idx.at(t.b));
      adj[static_cast<std::size_t>(idx.at(t.b))].insert(idx.at(t.a));
    }
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    int timer = 0;
    bool found = false;
    std::function<void(int, int)> dfs = [&](int u, int parent) {
      disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
      int children = 0;
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (w == parent) continue;
        if (disc[static_cast<std::size_t>(w)] != -1) {
          low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(w)]);
          continue;
        }
        ++children;
        dfs(w, u);
        low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
        if (parent != -1 && low[static_cast<std::size_t>(w)] >= disc[static_cast<std::size_t>(u)]) found = true;
      }
      if (parent == -1 && children > 1) found = true;
    };
    for (int s = 0; s < n; ++s)
      if (disc[static_cast<std::size_t>(s)] == -1) dfs(s, -1);
    return found;
  }
};

// Taken turns: crossing turns of the edge images, closed under the direction
// map, bucketed by vertex.
inline std::vector<WhiteheadGraph> whitehead_graphs(const GraphMap& m) {
  TrainTrackCheck tt = is_train_track(m);
  if (!tt.ok) throw Error("whitehead_graphs: map is not a train track");
  std::set<Turn> closed;
  std::vector<Turn> work = crossing_turns(m);
  for (const Turn& t : work) closed.insert(t);
  while (!work.empty()) {
    Turn t = work.back();
    work.pop_back();
    auto nt = turn_image(m, t);
    if (nt && closed.insert(*nt).second) work.push_back(*nt);
  }
  std::vector<WhiteheadGraph> out;
  for (Vertex v = 0; v < m.domain().num_vertices(); ++v) {
    WhiteheadGraph wg;
    wg.vertex = v;
    wg.nodes = m.domain().star(v);
    for (const Turn& t : closed)
      if (m.domain().origin(t.a) == v) wg.edges.push_back(t);
    out.push_back(std::move(wg));
  }
  return out;
}

// --- clean / weakly clean ----------------------------------------------------

enum class CleanVerdict { Clean, WeaklyCleanOnly, NotWeaklyClean, NotIrreducible };

inline const char* to_string(CleanVerdict v) {
  switch (v) {
    case CleanVerdict::Clean: return "Clean";
    case CleanVerdict::WeaklyCleanOnly: return "WeaklyCleanOnly";
    case CleanVerdict::NotWeaklyClean: return "NotWeaklyClean";
    case CleanVerdict::NotIrreducible: return "NotIrreducible";
  }
  return "?";
}

struct CleanCheck {
  CleanVerdict verdict = CleanVerdict::NotIrreducible;
  std::optional<Vertex> disconnected_at;  // witness for NotWeaklyClean
  TransitionMatrix matrix;
  std::vector<WhiteheadGraph> whitehead;
  bool is_clean() const { return verdict == CleanVerdict::Clean; }
  bool no_cut_vertices() const {
    for (const auto& wg : whitehead)
      if (wg.has_cut_vertex()) return false;
    return true;
  }
};

// Irreducible transition matrix + connected Whitehead graphs; primitivity is
// then verified rather than assumed (an irreducible train track with
// connected Whitehead graphs always has a primitive matrix, so the
// WeaklyCleanOnly verdict signals a bug).
inline CleanCheck is_clean(const GraphMap& m) {
  CleanCheck out;
  out.matrix = transition_matrix(m);
  out.whitehead = whitehead_graphs(m);
  if (!is_irreducible(out.matrix)) {
    out.verdict = CleanVerdict::NotIrreducible;
    return out;
  }
  for (const auto& wg : out.whitehead)
    if (!wg.connected()) {
      out.verdict = CleanVerdict::NotWeaklyClean;
      out.disconnected_at = wg.vertex;
      return out;
    }
  out.verdict = is_primitive(out.matrix) ? CleanVerdict::Clean : CleanVerdict::WeaklyCleanOnly;
  return out;
}

// --- relative Whitehead graphs -------------------------------------------------

struct RelativeWhiteheadGraph {
  Vertex vertex = 0;
  std::vector<Edge> nodes;
  std::vector<Turn> edges;
  bool edges_legal = true;  // every edge maps to a legal turn downstairs

  bool connected() const {
    WhiteheadGraph wg{vertex, nodes, edges};
    return wg.connected();
  }
};

// For a factorization g : G -> X, h : X -> G of an iterate of a train track,
// the turns appearing in g(f^j(e)) = (g h)^j (g(e)), closed under the
// direction map of g h; legality of each edge is checked under h.
inline std::vector<RelativeWhiteheadGraph> relative_whitehead_graphs(const GraphMap& g,
                                                                     const GraphMap& h) {
  if (!(g.codomain() == h.domain()) || !(h.codomain() == g.domain()))
    throw Error("relative_whitehead_graphs: maps do not compose both ways");
  GraphMap up = tighten(compose(h, g));    // g h : X -> X
  GraphMap down = tighten(compose(g, h));  // h g : G -> G, the train track iterate

  // Seeds: crossings of the g(e), plus crossings of the upstairs images
  // (g is surjective, so every edge of X appears in some g(e) and its
  // upstairs image crossings occur in g(f(e))).
  std::set<Turn> closed;
  std::vector<Turn> work;
  auto seed_path = [&](const EdgePath& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      Turn t = make_turn(reversed(p[i]), p[i + 1]);
      if (closed.insert(t).second) work.push_back(t);
    }
  };
  for (int k = 0; k < g.domain().num_pairs(); ++k) seed_path(reduce_path(g.positive_image(k)));
  for (int k = 0; k < up.domain().num_pairs(); ++k) seed_path(up.positive_image(k));
  while (!work.empty()) {
    Turn t = work.back();
    work.pop_back();
    auto nt = turn_image(up, t);
    if (nt && closed.insert(*nt).second) work.push_back(*nt);
  }

  std::vector<RelativeWhiteheadGraph> out;
  for (Vertex v = 0; v < g.codomain().num_vertices(); ++v) {
    RelativeWhiteheadGraph rw;
    rw.vertex = v;
    rw.nodes = g.codomain().star(v);
    for (const Turn& t : closed)
      if (g.codomain().origin(t.a) == v) {
        rw.edges.push_back(t);
        auto img = turn_image(h, t);
        if (!img || !is_legal(down, *img)) rw.edges_legal = false;
      }
    out.push_back(std::move(rw));
  }
  return out;
}

// The induced representative h_i o v_i on the iterated image S_i; clean
// whenever the input representative is clean.
struct InducedMap {
  Graph graph;
  GraphMap map;
  CleanCheck clean;
};

inline InducedMap induced_map_on_image(const Endomorphism& e, int i) {
  GraphMap f = rose_map(e);
  FoldResult fr = fold_to_immersion(iterate(f, i));
  if (fr.noninjective) throw Error("induced_map_on_image: endomorphism is not injective");
  if (!fr.graph.is_core())
    throw Error("induced_map_on_image: folded image is not a core graph (representative not clean)");
  InducedMap out;
  out.graph = fr.graph;
  out.map = tighten(compose(fr.immersion, fr.fold_map));
  out.clean = is_clean(out.map);
  return out;
}

// --- bounded cancellation -------------------------------------------------------

struct CancellationBounds {
  double constant = 0.0;              // C, in the given metric
  std::optional<double> critical;     // 2C/(lambda-1) when lambda > 1
};

inline double path_length(const EdgePath& p, const std::vector<double>& metric) {
  double s = 0;
  for (Edge e : p) s += metric[static_cast<std::size_t>(edge_pair(e))];
  return s;
}

// Upper bound from the fold factorization: each elementary fold can cancel at
// most the segment it identifies, so C is the total metric length of the
// identified labels.
inline CancellationBounds cancellation_bounds(const GraphMap& m, const PFData& pf) {
  if (!(m.domain() == m.codomain())) throw Error("cancellation_bounds: map must be a self map");
  if (static_cast<int>(pf.left_eigenvector.size()) != m.domain().num_pairs())
    throw Error("cancellation_bounds: metric size mismatch");
  FoldResult fr = fold_to_immersion(m);
  CancellationBounds out;
  for (const FoldStep& s : fr.steps)
    out.constant += pf.left_eigenvector[static_cast<std::size_t>(edge_pair(s.label))];
  if (pf.lambda > 1.0 + 1e-9) out.critical = 2.0 * out.constant / (pf.lambda - 1.0);
  return out;
}

inline double critical_constant(const CancellationBounds& b) {
  if (!b.critical) throw Error("critical constant undefined: lambda <= 1");
  return *b.critical;
}

// --- leaf segments ---------------------------------------------------------------

struct LeafSegment {
  int seed_pair = 0;   // edge whose interior holds the periodic point
  int period = 0;      // p with the seed edge inside f^p(seed)
  int depth = 0;       // k: the segment is the tightened f^(k p) image
  EdgePath path;
};

// Smallest (period, edge) seed whose oriented edge reappears in its own
// f^p-image, unless a seed edge is forced by the caller.
inline LeafSegment leaf_segment(const GraphMap& m, int depth,
                                std::optional<int> seed = std::nullopt) {
  TrainTrackCheck tt = is_train_track(m);
  if (!tt.ok) throw Error("leaf_segment: map is not a train track");
  int n = m.domain().num_pairs();
  int cap = 2 * n + 2;
  std::optional<std::pair<int, int>> found;  // (period, pair)
  for (int p = 1; p <= cap && !found; ++p) {
    GraphMap fp = iterate(m, p);
    for (int k = 0; k < n && !found; ++k) {
      if (seed && *seed != k) continue;
      EdgePath img = fp.positive_image(k);
      if (is_subpath({positive(k)}, img)) found = {p, k};
    }
  }
  if (!found) throw Error("leaf_segment: no expanding periodic edge found");
  auto [p, k] = *found;
  LeafSegment out;
  out.seed_pair = k;
  out.period = p;
  out.depth = depth;
  if (depth == 0)
    out.path = {positive(k)};
  else
    out.path = iterate(m, depth * p).positive_image(k);
  return out;
}

}  // namespace endofold
