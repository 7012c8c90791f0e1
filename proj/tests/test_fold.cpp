#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace endofold;
using namespace testing_support;

namespace {

// oriented rose edges: a = 0, a^-1 = 1, b = 2, b^-1 = 3, c = 4, ...
GraphMap map_of(const Endomorphism& e) { return rose_map(e); }

}  // namespace

TEST_CASE("tighten") {
  Graph r2 = rose(2);
  SECTION("cancels backtracking") {
    // a -> a a^-1 b collapses to b
    GraphMap m(r2, r2, {0}, {{0, 1, 2}, {2}});
    GraphMap t = tighten(m);
    CHECK(t.positive_image(0) == EdgePath{2});
  }
  SECTION("already reduced maps are unchanged") {
    GraphMap f = map_of(sapir());
    CHECK(tighten(f) == f);
    GraphMap g = map_of(rank3_reducible());
    CHECK(tighten(g) == g);
  }
  SECTION("a fully cancelling image collapses to a point") {
    GraphMap m(r2, r2, {0}, {{0, 1}, {2}});
    CHECK(tighten(m).has_collapsed_edge());
  }
}

TEST_CASE("direction map") {
  SECTION("sapir") {
    GraphMap f = map_of(sapir());
    CHECK(*direction_image(f, 0) == 0);  // a -> first of ab
    CHECK(*direction_image(f, 1) == 3);  // a^-1 -> first of (ab)^-1
    CHECK(*direction_image(f, 2) == 2);  // b -> first of ba
    CHECK(*direction_image(f, 3) == 1);
  }
  SECTION("identity") {
    GraphMap id = GraphMap::identity(rose(2));
    for (Edge e = 0; e < 4; ++e) CHECK(*direction_image(id, e) == e);
  }
  SECTION("the reducible rank-3 map is not injective on directions") {
    GraphMap f = map_of(rank3_reducible());
    CHECK(*direction_image(f, 2) == 4);  // b -> first of cc
    CHECK(*direction_image(f, 4) == 4);  // c -> first of cabac
  }
}

TEST_CASE("immersion check") {
  CHECK(is_immersion(map_of(sapir())).ok);
  CHECK(is_immersion(GraphMap::identity(rose(2))).ok);
  auto chk = is_immersion(map_of(rank3_reducible()));
  CHECK_FALSE(chk.ok);
  REQUIRE(chk.witness.has_value());
  CHECK(*chk.witness == make_turn(2, 4));  // the directions b and c
}

TEST_CASE("composition") {
  Basis b = b2();
  SECTION("sapir squared") {
    GraphMap f = map_of(sapir());
    GraphMap ff = compose(f, f);
    CHECK(word_of_path(ff.positive_image(0)) == parse_word(b, "abba"));
  }
  SECTION("identity is neutral") {
    GraphMap f = map_of(sapir());
    CHECK(compose(f, GraphMap::identity(rose(2))) == f);
    CHECK(compose(GraphMap::identity(rose(2)), f) == f);
  }
  SECTION("rank-3 square") {
    Basis b3 = testing_support::b3();
    GraphMap f = map_of(rank3_reducible());
    GraphMap ff = compose(f, f);
    CHECK(word_of_path(ff.positive_image(1)) == parse_word(b3, "cabaccabac"));
  }
  SECTION("mismatched graphs are rejected") {
    CHECK_THROWS_AS(compose(map_of(sapir()), map_of(rank3_reducible())), Error);
  }
  SECTION("images of immersions compose without cancellation") {
    std::mt19937 rng(23);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 30; ++trial) {
      Endomorphism e = random_endo(rng, 2, 4);
      GraphMap m = map_of(e);
      if (!is_immersion(m).ok) continue;
      ++checked;
      GraphMap mm = compose(m, m);
      for (int k = 0; k < 2; ++k) {
        std::size_t expect = 0;
        for (Edge x : m.positive_image(k)) expect += m.image(x).size();
        CHECK(mm.positive_image(k).size() == expect);
      }
    }
    CHECK(checked >= 10);
  }
}

TEST_CASE("reversal equivariance is preserved") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    GraphMap m = map_of(random_endo(rng, 3, 5));
    GraphMap t = tighten(compose(m, m));
    for (Edge e = 0; e < t.domain().num_oriented(); ++e)
      CHECK(t.image(reversed(e)) == reversed_path(t.image(e)));
  }
}

TEST_CASE("folding to an immersion") {
  SECTION("an immersion folds trivially") {
    FoldResult fr = fold_to_immersion(map_of(sapir()));
    CHECK(fr.steps.empty());
    CHECK(fr.is_injective());
    // the folded graph is the subdivided rose: the labels stay simplicial
    CHECK(fr.graph.num_vertices() == 3);
    CHECK(fr.graph.num_pairs() == 4);
  }
  SECTION("the rank-3 map folds onto the six-vertex graph") {
    FoldResult fr = fold_to_immersion(map_of(rank3_reducible()));
    CHECK(fr.is_injective());
    CHECK(fr.graph.num_vertices() == 6);
    CHECK(fr.graph.num_pairs() == 8);
    CHECK(fr.graph.is_core());
    CHECK(fr.graph.rank() == 3);
  }
  SECTION("a kernel is detected") {
    Basis b = b2();
    Endomorphism bad(b, {parse_word(b, "ab"), parse_word(b, "ab")});
    FoldResult fr = fold_to_immersion(map_of(bad));
    CHECK_FALSE(fr.is_injective());
  }
  SECTION("the factorization is exact") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      GraphMap m = tighten(map_of(random_endo(rng, 2, 5)));
      FoldResult fr = fold_to_immersion(m);
      CHECK(is_immersion(fr.immersion).ok);
      CHECK(tighten(compose(fr.fold_map, fr.immersion)) == m);
    }
  }
  SECTION("fold order does not change the folded graph") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
      GraphMap m = map_of(random_endo(rng, 3, 4));
      FoldResult a = fold_to_immersion(m, FoldOrder::Forward);
      FoldResult b = fold_to_immersion(m, FoldOrder::Reverse);
      CHECK(unpointed_label_iso(SubgroupGraph(a.labeled(), std::nullopt),
                                SubgroupGraph(b.labeled(), std::nullopt)));
      CHECK(a.is_injective() == b.is_injective());
    }
  }
  SECTION("rank is preserved for injective maps") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
      GraphMap m = map_of(random_endo(rng, 2, 4));
      FoldResult fr = fold_to_immersion(m);
      if (fr.is_injective()) CHECK(fr.graph.rank() == 2);
    }
  }
}
