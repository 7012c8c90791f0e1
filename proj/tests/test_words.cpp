#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace endofold;
using namespace testing_support;

TEST_CASE("free reduction") {
  Basis b = b2();
  CHECK(parse_word(b, "aA").empty());
  CHECK(to_string(b, parse_word(b, "abA")) == "abA");
  CHECK(parse_word(b, "aba") * parse_word(b, "bab") == parse_word(b, "ababab"));

  SECTION("unknown symbol is an input error") {
    CHECK_THROWS_AS(parse_word(b, "a Q"), Error);
  }

  SECTION("idempotent and length-nonincreasing") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Letter> raw;
      std::uniform_int_distribution<int> pick(-2, 2);
      for (int i = 0; i < 30; ++i) {
        int x = pick(rng);
        if (x != 0) raw.push_back(static_cast<Letter>(x));
      }
      Word w = Word::reduce(raw);
      CHECK(w.length() <= raw.size());
      CHECK(Word::reduce(w.letters()) == w);
    }
  }
}

TEST_CASE("applying an endomorphism") {
  Endomorphism phi = sapir();
  Basis b = b2();
  CHECK(phi.apply(parse_word(b, "ab")) == parse_word(b, "abba"));
  CHECK(phi.apply(Word()).empty());
  CHECK(aba_bab().apply(parse_word(b, "ab")) == parse_word(b, "ababab"));

  SECTION("homomorphism on random words") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      Endomorphism e = random_endo(rng, 2, 4);
      Word u = random_reduced_word(rng, 2, 6);
      Word v = random_reduced_word(rng, 2, 6);
      CHECK(e.apply(u * v) == e.apply(u) * e.apply(v));
    }
  }
}

TEST_CASE("cyclic reduction") {
  Basis b = b2();
  auto cf = cyclic_reduce(parse_word(b, "abA"));
  CHECK(cf.core == parse_word(b, "b"));
  CHECK(cf.conjugator == parse_word(b, "a"));

  cf = cyclic_reduce(parse_word(b, "ab"));
  CHECK(cf.core == parse_word(b, "ab"));
  CHECK(cf.conjugator.empty());

  cf = cyclic_reduce(parse_word(b, "Babab"));
  CHECK(cf.core == parse_word(b, "aba"));
  CHECK(cf.conjugator == parse_word(b, "B"));

  SECTION("reassembles the word") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      Word w = random_reduced_word(rng, 2, 9);
      auto c = cyclic_reduce(w);
      CHECK(is_cyclically_reduced(c.core));
      CHECK(c.conjugator * c.core * c.conjugator.inverse() == w);
    }
  }
}

TEST_CASE("conjugacy by rotation") {
  Basis b = b2();
  CHECK(conjugate_test(parse_word(b, "ab"), parse_word(b, "ba")));
  CHECK(conjugate_test(aba_bab().apply(parse_word(b, "ab")), parse_word(b, "ab").pow(3)));
  CHECK_FALSE(conjugate_test(parse_word(b, "a"), parse_word(b, "b")));

  SECTION("equivalence relation, invariant under conjugation") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      Word u = random_reduced_word(rng, 2, 6);
      Word v = random_reduced_word(rng, 2, 6);
      Word w = random_reduced_word(rng, 2, 6);
      Word g = random_reduced_word(rng, 2, 4);
      CHECK(conjugate_test(u, u));
      CHECK(conjugate_test(u, v) == conjugate_test(v, u));
      if (conjugate_test(u, v) && conjugate_test(v, w)) CHECK(conjugate_test(u, w));
      CHECK(conjugate_test(u, g * u * g.inverse()));
    }
  }
}

TEST_CASE("translation length estimates") {
  Basis b = b2();
  auto run = translation_lengths(sapir(), parse_word(b, "a"), 4, 2.0);
  for (double x : run) CHECK(x == Catch::Approx(1.0));

  auto zero = translation_lengths(sapir(), Word(), 3, 2.0);
  for (double x : zero) CHECK(x == 0.0);

  auto psi = translation_lengths(aba_bab(), parse_word(b, "ab"), 3, 3.0);
  for (double x : psi) CHECK(x == Catch::Approx(2.0));
}

TEST_CASE("tuple conjugators") {
  std::mt19937 rng(13);
  SECTION("recovers a hidden conjugator") {
    for (int trial = 0; trial < 80; ++trial) {
      Word x = random_reduced_word(rng, 2, 5);
      std::vector<Word> us, ws;
      for (int i = 0; i < 3; ++i) {
        Word u = random_reduced_word(rng, 2, 6);
        us.push_back(u);
        ws.push_back(x.inverse() * u * x);
      }
      auto found = tuple_conjugator(us, ws);
      REQUIRE(found.has_value());
      for (std::size_t i = 0; i < us.size(); ++i)
        CHECK(found->inverse() * us[i] * *found == ws[i]);
    }
  }
  SECTION("rejects non-conjugate tuples") {
    Basis b = b2();
    std::vector<Word> us = {parse_word(b, "a"), parse_word(b, "b")};
    CHECK_FALSE(tuple_conjugator(us, {parse_word(b, "a"), parse_word(b, "a")}).has_value());
    // componentwise conjugate but no common conjugator: fixing a forces
    // x in <a>, and no power of a conjugates b to (ab)^-1 b (ab)
    Word v = parse_word(b, "ab").inverse() * parse_word(b, "b") * parse_word(b, "ab");
    CHECK(conjugate_test(parse_word(b, "b"), v));
    CHECK_FALSE(tuple_conjugator(us, {parse_word(b, "a"), v}).has_value());
  }
  SECTION("agrees with brute force search up to length 8") {
    Basis b = b2();
    auto brute = [&](const std::vector<Word>& us, const std::vector<Word>& ws) {
      for (const Word& x : all_reduced_words(2, 8)) {
        bool ok = true;
        for (std::size_t i = 0; i < us.size() && ok; ++i) ok = x.inverse() * us[i] * x == ws[i];
        if (ok) return true;
      }
      return false;
    };
    for (int trial = 0; trial < 12; ++trial) {
      Word x = random_reduced_word(rng, 2, 3);
      Word u1 = random_reduced_word(rng, 2, 4), u2 = random_reduced_word(rng, 2, 4);
      std::vector<Word> us = {u1, u2};
      std::vector<Word> ws = {x.inverse() * u1 * x, x.inverse() * u2 * x};
      CHECK(tuple_conjugator(us, ws).has_value() == brute(us, ws));
      std::vector<Word> ws_bad = {ws[0], ws[1] * parse_word(b, "ab")};
      CHECK(tuple_conjugator(us, ws_bad).has_value() == brute(us, ws_bad));
    }
  }
}

TEST_CASE("periodic class witness of the cube map") {
  // phi^n(a) conjugate to a^d checks assemble from the word operations
  Endomorphism psi = aba_bab();
  Basis b = b2();
  CHECK(conjugate_test(psi.apply(parse_word(b, "ab")), parse_word(b, "ab").pow(3)));
}
