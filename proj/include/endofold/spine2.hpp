#pragma once

// The simplicial action of an injective endomorphism on the spine of rank-2
// outer space. A simplex is a marked natural graph of rank two: rose, theta,
// or barbell. The action folds the wedge of the twisted marking loops and
// reads off the new marked graph.

#include "endofold/certify.hpp"

namespace endofold {

enum class Shape { Rose, Theta, Barbell };

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::Rose: return "Rose";
    case Shape::Theta: return "Theta";
    case Shape::Barbell: return "Barbell";
  }
  return "?";
}

inline Shape classify_shape(const Graph& g) {
  if (g.num_vertices() == 1 && g.num_pairs() == 2) return Shape::Rose;
  if (g.num_vertices() == 2 && g.num_pairs() == 3) {
    for (int k = 0; k < 3; ++k)
      if (g.origin(positive(k)) == g.terminus(positive(k))) return Shape::Barbell;
    return Shape::Theta;
  }
  throw Error("classify_shape: not a natural rank-2 graph");
}

struct SpineSimplex {
  Shape shape = Shape::Rose;
  MarkedGraph marked;

  const Graph& graph() const { return marked.graph; }
};

inline SpineSimplex make_simplex(MarkedGraph m) {
  if (m.graph.rank() != 2) throw Error("spine simplex: rank must be 2");
  if (m.loops.size() != 2) throw Error("spine simplex: need two marking loops");
  SpineSimplex s;
  s.shape = classify_shape(m.graph);
  s.marked = std::move(m);
  return s;
}

// The rose marked by an automorphism given as generator images.
inline SpineSimplex rose_simplex(const Endomorphism& marking) {
  if (marking.rank() != 2) throw Error("rose_simplex: rank must be 2");
  MarkedGraph m;
  m.graph = rose(2);
  m.base = 0;
  for (int i = 0; i < 2; ++i) m.loops.push_back(path_of_word(marking.image(i)));
  return make_simplex(std::move(m));
}

inline SpineSimplex standard_rose() {
  Basis b = Basis::of_rank(2);
  return rose_simplex(Endomorphism(b, {Word::generator(0), Word::generator(1)}));
}

inline bool simplex_equal(const SpineSimplex& a, const SpineSimplex& b) {
  return a.shape == b.shape && marked_equal(a.marked, b.marked);
}

// sigma(Gamma, alpha) . [phi] = the folded core of the wedge of the
// alpha(phi(x_i)) loops, marked by where the folds take those loops.
inline SpineSimplex spine_act(const SpineSimplex& s, const Endomorphism& e) {
  if (e.rank() != 2) throw Error("spine_act: rank must be 2");
  std::vector<EdgePath> twisted;
  for (int i = 0; i < 2; ++i) {
    EdgePath p;
    for (Letter x : e.image(i).letters()) {
      const EdgePath& L = s.marked.loops[static_cast<std::size_t>(std::abs(x) - 1)];
      EdgePath piece = x > 0 ? L : reversed_path(L);
      p.insert(p.end(), piece.begin(), piece.end());
    }
    twisted.push_back(reduce_path(p));
  }
  WedgeFold wf = subgroup_graph_of_loops(s.graph(), s.marked.base, twisted);
  if (wf.rank_drop) throw Error("spine_act: endomorphism is not injective");
  MarkedGraph m = marked_graph_of(wf.sg.graph(), wf.sg.base_vertex(), wf.loop_images);
  return make_simplex(std::move(m));
}

struct OrbitRecord {
  std::vector<SpineSimplex> sequence;  // sequence[0] is the start
  int preperiod = 0;
  int period = 0;
};

inline OrbitRecord orbit(const SpineSimplex& start, const Endomorphism& e, int max_steps = 32) {
  OrbitRecord rec;
  rec.sequence.push_back(start);
  for (int step = 0; step < max_steps; ++step) {
    SpineSimplex next = spine_act(rec.sequence.back(), e);
    for (std::size_t i = 0; i < rec.sequence.size(); ++i)
      if (simplex_equal(rec.sequence[i], next)) {
        rec.preperiod = static_cast<int>(i);
        rec.period = static_cast<int>(rec.sequence.size() - i);
        return rec;
      }
    rec.sequence.push_back(std::move(next));
  }
  throw Error("orbit: no repetition within the step bound");
}

// --- enumeration around the identity -----------------------------------------

// The standard generators of the rank-2 outer automorphism group.
inline std::vector<Endomorphism> out_f2_generators() {
  Basis b = Basis::of_rank(2);
  return {
      Endomorphism(b, {parse_word(b, "a"), parse_word(b, "ab")}),   // phi_a
      Endomorphism(b, {parse_word(b, "a"), parse_word(b, "Ab")}),   // phi_a^-1
      Endomorphism(b, {parse_word(b, "ba"), parse_word(b, "b")}),   // phi_b
      Endomorphism(b, {parse_word(b, "Ba"), parse_word(b, "b")}),   // phi_b^-1
  };
}

// All roses within the given word length of the identity marking.
inline std::vector<SpineSimplex> roses_within(int radius) {
  std::vector<Endomorphism> gens = out_f2_generators();
  std::vector<SpineSimplex> out = {standard_rose()};
  std::vector<Endomorphism> frontier = {Endomorphism(
      Basis::of_rank(2), {Word::generator(0), Word::generator(1)})};
  for (int len = 1; len <= radius; ++len) {
    std::vector<Endomorphism> next;
    for (const Endomorphism& nu : frontier)
      for (const Endomorphism& g : gens) {
        Endomorphism prod = compose(g, nu);
        SpineSimplex s = rose_simplex(prod);
        bool fresh = true;
        for (const SpineSimplex& seen : out)
          if (simplex_equal(seen, s)) {
            fresh = false;
            break;
          }
        if (fresh) {
          out.push_back(s);
          next.push_back(prod);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

// The theta and barbell simplices having the given rose as a face.
inline std::vector<SpineSimplex> blowups(const SpineSimplex& rose_s) {
  if (rose_s.shape != Shape::Rose) throw Error("blowups: expected a rose");
  std::vector<SpineSimplex> out;
  auto add = [&](const SpineSimplex& s) {
    for (const SpineSimplex& seen : out)
      if (simplex_equal(seen, s)) return;
    out.push_back(s);
  };

  // theta: three parallel edges; collapsing edge z sends petal i to e_i z^-1
  Graph theta(2, {{0, 1}, {0, 1}, {0, 1}});
  for (int z = 0; z < 3; ++z)
    for (int swap = 0; swap < 2; ++swap)
      for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2) {
          int others[2];
          int t = 0;
          for (int k = 0; k < 3; ++k)
            if (k != z) others[t++] = k;
          if (swap) std::swap(others[0], others[1]);
          EdgePath petal[2];
          for (int i = 0; i < 2; ++i) {
            EdgePath loop = {positive(others[i]), reversed(positive(z))};
            petal[i] = (i == 0 ? o1 : o2) ? reversed_path(loop) : loop;
          }
          MarkedGraph m;
          m.graph = theta;
          m.base = 0;
          for (const EdgePath& L : rose_s.marked.loops) {
            EdgePath img;
            for (Edge e : L) {
              const EdgePath& rep = petal[edge_pair(e)];
              EdgePath piece = is_positive(e) ? rep : reversed_path(rep);
              img.insert(img.end(), piece.begin(), piece.end());
            }
            m.loops.push_back(reduce_path(img));
          }
          add(make_simplex(std::move(m)));
        }

  // barbell: loops at both ends of a bar; collapsing the bar gives the rose
  Graph barbell(2, {{0, 0}, {1, 1}, {0, 1}});
  for (int swap = 0; swap < 2; ++swap)
    for (int o1 = 0; o1 < 2; ++o1)
      for (int o2 = 0; o2 < 2; ++o2) {
        EdgePath near_loop = {positive(0)};
        EdgePath far_loop = {positive(2), positive(1), reversed(positive(2))};
        if (o1) near_loop = reversed_path(near_loop);
        if (o2) far_loop = reversed_path(far_loop);
        EdgePath petal[2] = {near_loop, far_loop};
        if (swap) std::swap(petal[0], petal[1]);
        MarkedGraph m;
        m.graph = barbell;
        m.base = 0;
        for (const EdgePath& L : rose_s.marked.loops) {
          EdgePath img;
          for (Edge e : L) {
            const EdgePath& rep = petal[edge_pair(e)];
            EdgePath piece = is_positive(e) ? rep : reversed_path(rep);
            img.insert(img.end(), piece.begin(), piece.end());
          }
          m.loops.push_back(reduce_path(img));
        }
        add(make_simplex(std::move(m)));
      }
  return out;
}

// Eventually periodic simplices reachable from the roses within the radius
// and their adjacent theta / barbell blowups.
inline std::vector<SpineSimplex> periodic_set(const Endomorphism& e, int radius,
                                              int max_steps = 32) {
  std::vector<SpineSimplex> starts = roses_within(radius);
  std::vector<SpineSimplex> extra;
  for (const SpineSimplex& r : starts)
    for (const SpineSimplex& b : blowups(r)) extra.push_back(b);
  starts.insert(starts.end(), extra.begin(), extra.end());

  std::vector<SpineSimplex> periodic;
  auto add = [&](const SpineSimplex& s) {
    for (const SpineSimplex& seen : periodic)
      if (simplex_equal(seen, s)) return;
    periodic.push_back(s);
  };
  for (const SpineSimplex& s : starts) {
    OrbitRecord rec;
    try {
      rec = orbit(s, e, max_steps);
    } catch (const Error&) {
      continue;  // no repetition within the bound: contributes no cycle
    }
    for (std::size_t i = static_cast<std::size_t>(rec.preperiod); i < rec.sequence.size(); ++i)
      add(rec.sequence[i]);
  }
  return periodic;
}

}  // namespace endofold
