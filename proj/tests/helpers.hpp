#pragma once

// Shared fixtures and generators for the test suite. Everything is seeded so
// runs are reproducible.

#include <random>
#include <set>

#include "endofold/endofold.hpp"

namespace testing_support {

using namespace endofold;

inline Basis b2() { return Basis::of_rank(2); }
inline Basis b3() { return Basis::of_rank(3); }

inline Endomorphism sapir() { return Endomorphism(b2(), {parse_word(b2(), "ab"), parse_word(b2(), "ba")}); }
// psi(ab) = (ab)^3; its mapping torus contains BS(1,3)
inline Endomorphism aba_bab() { return Endomorphism(b2(), {parse_word(b2(), "aba"), parse_word(b2(), "bab")}); }
// reducible rank-3 endomorphism with image inside <aba, c>
inline Endomorphism rank3_reducible() {
  return Endomorphism(b3(), {parse_word(b3(), "aba"), parse_word(b3(), "cc"), parse_word(b3(), "cabac")});
}
// its restriction to <aba, c>, written in the generators x = aba, c
inline Endomorphism restricted_rank2() {
  return Endomorphism(b2(), {parse_word(b2(), "abba"), parse_word(b2(), "bab")});
}

inline Word random_reduced_word(std::mt19937& rng, int rank, int len) {
  std::vector<Letter> raw;
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  while (static_cast<int>(raw.size()) < len) {
    int c = pick(rng);
    Letter x = (c % 2 == 0) ? static_cast<Letter>(c / 2 + 1) : static_cast<Letter>(-(c / 2 + 1));
    if (!raw.empty() && raw.back() == -x) continue;
    raw.push_back(x);
  }
  return Word::reduce(raw);
}

inline Endomorphism random_endo(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::vector<Word> images;
  for (int i = 0; i < rank; ++i) images.push_back(random_reduced_word(rng, rank, len(rng)));
  return Endomorphism(Basis::of_rank(rank), images);
}

// Random reduced edge path in a graph, starting anywhere.
inline EdgePath random_immersed_path(std::mt19937& rng, const Graph& g, int len) {
  std::uniform_int_distribution<int> vpick(0, g.num_vertices() - 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    EdgePath p;
    Vertex cur = vpick(rng);
    for (int i = 0; i < len; ++i) {
      std::vector<Edge> options;
      for (Edge e : g.star(cur))
        if (p.empty() || e != reversed(p.back())) options.push_back(e);
      if (options.empty()) break;
      std::uniform_int_distribution<std::size_t> epick(0, options.size() - 1);
      Edge e = options[epick(rng)];
      p.push_back(e);
      cur = g.terminus(e);
    }
    if (static_cast<int>(p.size()) == len) return p;
  }
  throw Error("random_immersed_path: graph too small");
}

// Every element of <gens> of reduced length <= max_len, by closing products
// with a generous length buffer. Independent of the folding machinery.
inline std::set<Word> subgroup_elements(const std::vector<Word>& gens, int max_len) {
  int buffer = max_len;
  for (const Word& g : gens) buffer += 2 * static_cast<int>(g.length());
  std::set<Word> seen = {Word()};
  std::vector<Word> frontier = {Word()};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (const Word& g : gens)
        for (const Word& step : {w * g, w * g.inverse()}) {
          if (static_cast<int>(step.length()) > buffer) continue;
          if (seen.insert(step).second) next.push_back(step);
        }
    frontier = std::move(next);
  }
  std::set<Word> out;
  for (const Word& w : seen)
    if (static_cast<int>(w.length()) <= max_len) out.insert(w);
  return out;
}

// All reduced words of length <= max_len over the given rank.
inline std::vector<Word> all_reduced_words(int rank, int max_len) {
  std::vector<Word> out = {Word()};
  std::vector<std::vector<Letter>> frontier = {{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : frontier)
      for (int i = 1; i <= rank; ++i)
        for (Letter x : {static_cast<Letter>(i), static_cast<Letter>(-i)}) {
          if (!w.empty() && w.back() == -x) continue;
          auto v = w;
          v.push_back(x);
          out.push_back(Word::reduce(v));
          next.push_back(v);
        }
    frontier = std::move(next);
  }
  return out;
}

// Random transitive permutation action on n points (a covering of index n).
inline SubgroupGraph random_cover(std::mt19937& rng, int rank, int n) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<std::vector<Vertex>> perms;
    for (int g = 0; g < rank; ++g) {
      std::vector<Vertex> p(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
      std::shuffle(p.begin(), p.end(), rng);
      perms.push_back(p);
    }
    try {
      return from_coset_action(rank, perms);
    } catch (const Error&) {
      continue;  // not transitive; try again
    }
  }
  throw Error("random_cover: could not build a transitive action");
}

}  // namespace testing_support
