// Acceptance suite: ten end-to-end criteria, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <cstdio>
#include <random>

#include "helpers.hpp"

using namespace endofold;
using namespace testing_support;

namespace {

int failures = 0;
int current = 0;
bool current_ok = true;
std::vector<std::string> notes;

void expect(bool cond, const std::string& what) {
  if (!cond) {
    current_ok = false;
    notes.push_back(what);
  }
}

template <typename F>
void criterion(const char* title, F body) {
  ++current;
  current_ok = true;
  notes.clear();
  try {
    body();
  } catch (const std::exception& err) {
    current_ok = false;
    notes.push_back(std::string("exception: ") + err.what());
  }
  std::printf("%s criterion %2d: %s\n", current_ok ? "PASS" : "FAIL", current, title);
  if (!current_ok) {
    ++failures;
    for (const auto& n : notes) std::printf("       - %s\n", n.c_str());
  }
}

}  // namespace

int main() {
  // 1. The sapir pipeline end to end.
  criterion("sapir pipeline: immersion, matrix, eigenvalue, Whitehead, verdicts", [] {
    Endomorphism phi = sapir();
    GraphMap f = rose_map(phi);
    expect(is_immersion(f).ok, "rose map is an immersion");
    expect(transition_matrix(f).entries == std::vector<std::vector<long long>>{{1, 1}, {1, 1}},
           "transition matrix [[1,1],[1,1]]");
    PFData pf = pf_eigenvalue(transition_matrix(f));
    expect(std::abs(pf.lambda - 2.0) <= 1e-9, "lambda = 2 within 1e-9");
    expect(pf.upper.value() - pf.lower.value() <= 1e-9, "certified bounds collapse");
    auto wgs = whitehead_graphs(f);
    expect(wgs.size() == 1 && wgs[0].connected() && !wgs[0].has_cut_vertex(),
           "Whitehead graph connected without cut vertex");
    expect(certify_fully_irreducible(phi).verdict == IrredVerdict::Certified, "Certified");
    expect(certify_hyperbolic(phi, 3, 6).verdict == HypVerdict::Hyperbolic, "Hyperbolic");
  });

  // 2. The cube map witness.
  criterion("cube map: periodic witness (ab, 3, 1) and NotHyperbolic", [] {
    Endomorphism psi = aba_bab();
    auto w = periodic_class_search(psi, 2, 4);
    expect(w.has_value(), "witness found");
    if (w) {
      expect(to_string(b2(), w->element) == "ab", "witness element ab");
      expect(w->power == 3 && w->iterate == 1, "witness exponents (3, 1)");
    }
    expect(certify_hyperbolic(psi, 2, 4).verdict == HypVerdict::NotHyperbolic, "NotHyperbolic");
  });

  // 3. The reducible rank-3 example.
  criterion("rank-3 example: equal marked images, clean immersion, witnessed reducibility", [] {
    Endomorphism e = rank3_reducible();
    IterateImages ii = iterate_image(e, 3);
    std::vector<MarkedGraph> marked;
    for (int i = 0; i < 3; ++i)
      marked.push_back(marked_graph_of(ii.graphs[static_cast<std::size_t>(i)].graph(),
                                       ii.graphs[static_cast<std::size_t>(i)].base_vertex(),
                                       ii.marking_loops[static_cast<std::size_t>(i)]));
    expect(marked_equal(marked[0], marked[1]) && marked_equal(marked[1], marked[2]),
           "S1, S2, S3 give one marked graph");
    FindRepOutcome r = find_immersion_rep(e);
    expect(r.kind == FindRepOutcome::Kind::Found, "immersion representative found");
    if (r.rep) {
      expect(r.rep->graph.num_vertices() == 6 && r.rep->graph.num_pairs() == 8,
             "six vertices, eight edge pairs");
      expect(r.rep->clean.is_clean(), "clean");
    }
    IrreducibilityCertificate c =
        certify_fully_irreducible(e, {parse_word(b3(), "aba"), parse_word(b3(), "c")});
    expect(c.verdict == IrredVerdict::Reducible, "Reducible with the witness");
    expect(c.checked_images.size() == 3, "all three generator images verified");
    IrreducibilityCertificate c2 = certify_fully_irreducible(restricted_rank2());
    expect(c2.verdict == IrredVerdict::Inconclusive, "restricted map Inconclusive");
    auto wgs = whitehead_graphs(rose_map(restricted_rank2()));
    expect(wgs.size() == 1 && wgs[0].connected() && wgs[0].has_cut_vertex() &&
               wgs[0].edges.size() == 3,
           "restricted Whitehead graph is a path with cut vertices");
  });

  // 4. The spine orbit picture.
  criterion("spine: theta fixed, barbell period two, four periodic simplices", [] {
    Endomorphism phi = sapir();
    auto gens = out_f2_generators();
    SpineSimplex ta = spine_act(rose_simplex(gens[0]), phi);
    expect(ta.shape == Shape::Theta, "shear rose maps to a theta");
    expect(simplex_equal(spine_act(ta, phi), ta), "the theta is fixed");
    SpineSimplex bb = spine_act(rose_simplex(gens[1]), phi);
    expect(bb.shape == Shape::Barbell, "inverse shear maps to the barbell");
    SpineSimplex b2s = spine_act(spine_act(bb, phi), phi);
    expect(simplex_equal(b2s, bb), "the barbell has period two");
    auto ps = periodic_set(phi, 3);
    expect(ps.size() == 4, "periodic set has exactly four simplices");
  });

  // 5. Preimage stabilization.
  criterion("preimage stabilization: sapir at (2, 3, F); fifty random pairs", [] {
    SubgroupGraph bparity = from_coset_action(2, {{0, 1}, {1, 0}});
    StabilizedPreimage st = stabilized_preimage(sapir(), bparity);
    expect(st.k == 2 && st.j == 3, "k = 2, j = 3");
    expect(covering_index(st.stable) == 1, "K is the whole group");
    expect(st.square_commutes, "coset square commutes");
    std::mt19937 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
      int rank = 2 + static_cast<int>(rng() % 2);
      Endomorphism e = random_endo(rng, rank, 3);
      SubgroupGraph cover = random_cover(rng, rank, 2 + static_cast<int>(rng() % 3));
      StabilizedPreimage s = stabilized_preimage(e, cover);
      expect(s.j > s.k, "stabilization occurs");
      expect(s.square_commutes, "square commutes on all generators");
    }
  });

  // 6. The pullback against brute force.
  criterion("pullback vs membership oracle on one hundred random pairs", [] {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 100; ++trial) {
      int rank = 2 + static_cast<int>(rng() % 2);
      Basis basis = Basis::of_rank(rank);
      auto random_gens = [&]() {
        std::vector<Word> gens;
        int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) {
          Word w = random_reduced_word(rng, rank, 1 + static_cast<int>(rng() % 4));
          if (!w.empty()) gens.push_back(w);
        }
        return gens;
      };
      SubgroupGraph s1 = subgroup_graph(basis, random_gens());
      SubgroupGraph s2 = subgroup_graph(basis, random_gens());
      PullbackResult pb = pullback(s1, s2);
      if (!pb.intersection) {
        expect(false, "pointed component missing");
        continue;
      }
      int mism = 0;
      for (const Word& w : all_reduced_words(rank, 6))
        if (membership(*pb.intersection, w) != (membership(s1, w) && membership(s2, w))) ++mism;
      expect(mism == 0, "trial " + std::to_string(trial) + ": " + std::to_string(mism) +
                            " membership mismatches");
    }
  });

  // 7. Irreducible + connected Whitehead graphs force primitivity.
  criterion("no irreducible weakly-clean map with an imprimitive matrix", [] {
    std::mt19937 rng(107);
    int tested = 0, bad = 0;
    for (int trial = 0; trial < 1500; ++trial) {
      int rank = 2 + static_cast<int>(rng() % 2);
      GraphMap m = tighten(rose_map(random_endo(rng, rank, 4)));
      if (!is_train_track(m).ok) continue;
      CleanCheck cc = is_clean(m);
      ++tested;
      if (cc.verdict == CleanVerdict::WeaklyCleanOnly) ++bad;
    }
    expect(tested >= 300, "enough train track maps generated: " + std::to_string(tested));
    expect(bad == 0, std::to_string(bad) + " counterexamples");
  });

  // 8. Bounded cancellation and legality persistence.
  criterion("cancellation bound holds; legal middles persist to the fifth iterate", [] {
    std::mt19937 rng(109);
    for (GraphMap f : {rose_map(rank3_reducible()), rose_map(sapir()), rose_map(aba_bab())}) {
      PFData pf = pf_eigenvalue(transition_matrix(f));
      CancellationBounds cb = cancellation_bounds(f, pf);
      int violations = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        EdgePath pa = random_immersed_path(rng, f.domain(), 1 + static_cast<int>(rng() % 7));
        EdgePath pb = random_immersed_path(rng, f.domain(), 1 + static_cast<int>(rng() % 7));
        EdgePath ab = concat(pa, pb);
        if (!is_reduced_path(ab)) continue;
        EdgePath fa = reduce_path(f.image_of_path(pa));
        EdgePath fb = reduce_path(f.image_of_path(pb));
        double cancelled = 0.5 * (path_length(fa, pf.left_eigenvector) +
                                  path_length(fb, pf.left_eigenvector) -
                                  path_length(reduce_path(concat(fa, fb)), pf.left_eigenvector));
        if (cancelled > cb.constant + 1e-9) ++violations;
      }
      expect(violations == 0, std::to_string(violations) + " cancellation violations");
    }

    // persistence: a legal middle segment longer than the critical constant
    // leaves a nontrivial subpath whose image survives in every iterate
    GraphMap f = rose_map(rank3_reducible());
    PFData pf = pf_eigenvalue(transition_matrix(f));
    CancellationBounds cb = cancellation_bounds(f, pf);
    double crit = *cb.critical;
    const auto& metric = pf.left_eigenvector;
    int done = 0, failed = 0;
    for (int trial = 0; trial < 4000 && done < 100; ++trial) {
      EdgePath a = random_immersed_path(rng, f.domain(), 1 + static_cast<int>(rng() % 3));
      EdgePath c = random_immersed_path(rng, f.domain(), 1 + static_cast<int>(rng() % 3));
      int blen = 2 + static_cast<int>(rng() % 8);
      EdgePath mid = random_immersed_path(rng, f.domain(), blen);
      if (path_length(mid, metric) <= crit) continue;
      EdgePath whole = concat(concat(a, mid), c);
      if (!is_reduced_path(whole)) continue;
      bool legal = true;
      for (std::size_t i = 0; i + 1 < mid.size() && legal; ++i)
        legal = is_legal(f, make_turn(reversed(mid[i]), mid[i + 1]));
      if (!legal) continue;
      ++done;
      // trim a margin of length C/(lambda-1) from both ends of the middle
      double margin = cb.constant / (pf.lambda - 1.0);
      std::size_t lo = 0, hi = mid.size();
      double acc = 0;
      while (lo < mid.size() && acc < margin) acc += metric[static_cast<std::size_t>(edge_pair(mid[lo++]))];
      acc = 0;
      while (hi > lo && acc < margin) acc += metric[static_cast<std::size_t>(edge_pair(mid[--hi]))];
      if (lo >= hi) {
        --done;
        continue;  // margin ate the segment; resample
      }
      EdgePath s(mid.begin() + static_cast<std::ptrdiff_t>(lo),
                 mid.begin() + static_cast<std::ptrdiff_t>(hi));
      GraphMap fk = f;
      bool ok = true;
      for (int k = 1; k <= 5; ++k) {
        EdgePath whole_img = reduce_path(fk.image_of_path(whole));
        EdgePath s_img = reduce_path(fk.image_of_path(s));
        if (!is_subpath(s_img, whole_img)) ok = false;
        if (k < 5) fk = compose(fk, f);
      }
      if (!ok) ++failed;
    }
    expect(done >= 100, "enough legal decompositions sampled: " + std::to_string(done));
    expect(failed == 0, std::to_string(failed) + " persistence failures");
  });

  // 9. Growth of the iterated images.
  criterion("sapir image graphs grow 4, 8, 16, 32, 64 with rank two throughout", [] {
    IterateImages ii = iterate_image(sapir(), 5);
    expect(ii.edge_pair_counts == std::vector<int>{4, 8, 16, 32, 64}, "edge pair counts");
    for (const SubgroupGraph& sg : ii.graphs)
      expect(sg.rank() == 2, "rank invariant |E|/2 - |V| + 1 = 2");
    for (std::size_t i = 1; i < ii.graphs.size(); ++i)
      expect(ii.edge_pair_counts[i] > ii.edge_pair_counts[i - 1], "strictly increasing");
  });

  // 10. Mutual exclusion of the two kinds of evidence.
  criterion("no map gets both a clean immersion and a periodic witness", [] {
    std::mt19937 rng(113);
    int ran = 0;
    for (int trial = 0; trial < 400 && ran < 80; ++trial) {
      Endomorphism e = random_endo(rng, 2, 4);
      if (!fold_to_immersion(rose_map(e)).is_injective()) continue;
      ++ran;
      // certify_hyperbolic throws if both kinds of evidence ever coexist
      HyperbolicityCertificate c = certify_hyperbolic(e, 2, 3, 32);
      if (c.verdict == HypVerdict::Hyperbolic)
        expect(!periodic_class_search(e, 2, 3).has_value(), "hyperbolic map has a witness");
    }
    expect(ran >= 40, "enough injective maps: " + std::to_string(ran));
    for (const Endomorphism& e : {sapir(), aba_bab(), restricted_rank2()}) {
      HyperbolicityCertificate c = certify_hyperbolic(e, 2, 4);
      bool immersion_cert = c.verdict == HypVerdict::Hyperbolic;
      bool witness = periodic_class_search(e, 2, 4).has_value();
      expect(!(immersion_cert && witness), "evidence coexists on a named map");
    }
  });

  if (failures == 0)
    std::printf("all %d acceptance criteria passed\n", current);
  else
    std::printf("%d of %d acceptance criteria FAILED\n", failures, current);
  return failures == 0 ? 0 : 1;
}
