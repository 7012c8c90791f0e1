#pragma once

// Report construction and the command dispatcher behind the command line
// tool. Reports have a machine-readable JSON form that round-trips.

#include <chrono>

#include <json.hpp>

#include "endofold/endospec.hpp"
#include "endofold/spine2.hpp"

namespace endofold {

using Json = nlohmann::json;

struct Report {
  std::string schema = "endofold-report/1";
  std::string command;
  Json input = Json::object();
  Json verdicts = Json::object();
  Json evidence = Json::object();
  double timing_ms = 0.0;
  int exit_code = 0;

  Json to_json() const {
    return Json{{"schema", schema},   {"command", command},   {"input", input},
                {"verdicts", verdicts}, {"evidence", evidence}, {"timing_ms", timing_ms},
                {"exit_code", exit_code}};
  }

  static Report from_json(const Json& j) {
    Report r;
    r.schema = j.at("schema").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.input = j.at("input");
    r.verdicts = j.at("verdicts");
    r.evidence = j.at("evidence");
    r.timing_ms = j.at("timing_ms").get<double>();
    r.exit_code = j.at("exit_code").get<int>();
    return r;
  }

  bool operator==(const Report& o) const {
    return to_json() == o.to_json();
  }
};

struct RunFlags {
  int k = 3;            // images
  int radius = 3;       // periodic-set
  std::string start;    // orbit: word over a/A/b/B meaning phi_a, phi_a^-1, ...
  std::vector<std::string> gens;  // invariant: subgroup generators
  std::string twist;
  std::optional<int> cap;
  std::optional<int> max_n, max_len;
};

namespace detail {

inline Json word_json(const Basis& b, const Word& w) { return to_string(b, w); }

inline Json words_json(const Basis& b, const std::vector<Word>& ws) {
  Json a = Json::array();
  for (const Word& w : ws) a.push_back(to_string(b, w));
  return a;
}

inline Json matrix_json(const TransitionMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(m.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (int k = 0; k < g.num_pairs(); ++k)
    edges.push_back(Json{{"origin", g.origin(positive(k))}, {"terminus", g.terminus(positive(k))}});
  return Json{{"vertices", g.num_vertices()}, {"edge_pairs", edges}};
}

inline Json whitehead_json(const std::vector<WhiteheadGraph>& wgs) {
  Json out = Json::array();
  for (const auto& wg : wgs) {
    Json edges = Json::array();
    for (const Turn& t : wg.edges) edges.push_back(Json::array({t.a, t.b}));
    out.push_back(Json{{"vertex", wg.vertex},
                       {"nodes", wg.nodes},
                       {"edges", edges},
                       {"connected", wg.connected()},
                       {"cut_vertex", wg.has_cut_vertex()}});
  }
  return out;
}

inline Json input_json(const EndoSpec& spec) {
  const Basis& b = spec.endo.basis();
  Json input{{"gens", b.names()}, {"images", words_json(b, spec.endo.images())}};
  if (!spec.witness.empty()) input["witness"] = words_json(b, spec.witness);
  if (spec.twist) input["twist"] = to_string(b, *spec.twist);
  input["max_n"] = spec.max_n;
  input["max_len"] = spec.max_len;
  input["cap"] = spec.cap;
  return input;
}

inline Endomorphism marking_of(const std::string& start) {
  Basis b = Basis::of_rank(2);
  Endomorphism nu(b, {Word::generator(0), Word::generator(1)});
  auto gens = out_f2_generators();
  for (char c : start) {
    int idx;
    switch (c) {
      case 'a': idx = 0; break;
      case 'A': idx = 1; break;
      case 'b': idx = 2; break;
      case 'B': idx = 3; break;
      case ' ': continue;
      default: throw Error(std::string("orbit start: unknown marking letter '") + c + "'");
    }
    nu = compose(gens[static_cast<std::size_t>(idx)], nu);
  }
  return nu;
}

}  // namespace detail

inline Report run(const std::string& command, const EndoSpec& spec, const RunFlags& flags = {}) {
  auto t0 = std::chrono::steady_clock::now();
  const Endomorphism& e = spec.endo;
  const Basis& basis = e.basis();
  int cap = flags.cap.value_or(spec.cap);
  int max_n = flags.max_n.value_or(spec.max_n);
  int max_len = flags.max_len.value_or(spec.max_len);

  Report rep;
  rep.command = command;
  rep.input = detail::input_json(spec);

  if (command == "fold") {
    FoldResult fr = fold_to_immersion(rose_map(e));
    rep.verdicts["injective"] = fr.is_injective();
    rep.evidence["folds"] = fr.steps.size();
    rep.evidence["graph"] = detail::graph_json(fr.graph);
    rep.evidence["factorization_exact"] =
        tighten(compose(fr.fold_map, fr.immersion)) == tighten(rose_map(e));
    if (fr.noninjective) rep.evidence["kernel_fold"] = *fr.noninjective;
  } else if (command == "images") {
    IterateImages ii = iterate_image(e, flags.k);
    rep.verdicts["surjective"] = ii.surjective;
    rep.evidence["edge_pair_counts"] = ii.edge_pair_counts;
    Json ranks = Json::array(), iso = Json::array();
    std::vector<MarkedGraph> marked;
    for (std::size_t i = 0; i < ii.graphs.size(); ++i) {
      ranks.push_back(ii.graphs[i].rank());
      marked.push_back(marked_graph_of(ii.graphs[i].graph(), ii.graphs[i].base_vertex(),
                                       ii.marking_loops[i]));
    }
    // isomorphism classes of the marked natural graphs, in order of appearance
    std::vector<int> cls(marked.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < marked.size(); ++i) {
      if (cls[i] != -1) continue;
      cls[i] = next++;
      for (std::size_t j = i + 1; j < marked.size(); ++j)
        if (cls[j] == -1 && marked_equal(marked[i], marked[j])) cls[j] = cls[i];
    }
    for (int c : cls) iso.push_back(c);
    rep.evidence["ranks"] = ranks;
    rep.evidence["marked_class"] = iso;
  } else if (command == "traintrack") {
    GraphMap f = tighten(rose_map(e));
    TransitionMatrix a = transition_matrix(f);
    rep.evidence["transition_matrix"] = detail::matrix_json(a);
    bool irr = is_irreducible(a);
    rep.verdicts["irreducible_matrix"] = irr;
    rep.verdicts["primitive_matrix"] = is_primitive(a);
    if (irr) {
      PFData pf = pf_eigenvalue(a);
      rep.evidence["lambda"] = pf.lambda;
      rep.evidence["lambda_lower"] = Json::array({pf.lower.num, pf.lower.den});
      rep.evidence["lambda_upper"] = Json::array({pf.upper.num, pf.upper.den});
      CancellationBounds cb = cancellation_bounds(f, pf);
      rep.evidence["cancellation_bound"] = cb.constant;
      if (cb.critical) rep.evidence["critical_constant"] = *cb.critical;
    }
    TrainTrackCheck tt = is_train_track(f);
    rep.verdicts["train_track"] = tt.ok;
    if (tt.witness) rep.evidence["illegal_turn"] = Json::array({tt.witness->a, tt.witness->b});
    if (tt.ok) {
      CleanCheck cc = is_clean(f);
      rep.verdicts["clean"] = to_string(cc.verdict);
      rep.verdicts["cut_vertex_free"] = cc.no_cut_vertices();
      rep.evidence["whitehead"] = detail::whitehead_json(cc.whitehead);
    }
  } else if (command == "immersion-rep") {
    FindRepOutcome r = find_immersion_rep(e, cap);
    rep.verdicts["outcome"] = to_string(r.kind);
    rep.evidence["rounds"] = r.rounds;
    if (r.kind == FindRepOutcome::Kind::Found) {
      rep.evidence["graph"] = detail::graph_json(r.rep->graph);
      rep.verdicts["clean"] = to_string(r.rep->clean.verdict);
      rep.verdicts["cut_vertex_free"] = r.rep->clean.no_cut_vertices();
    }
    if (r.kind == FindRepOutcome::Kind::CapExceeded) rep.exit_code = 3;
  } else if (command == "certify") {
    IrreducibilityCertificate ic = certify_fully_irreducible(e, spec.witness, spec.twist, cap);
    rep.verdicts["fully_irreducible"] = to_string(ic.verdict);
    rep.evidence["irreducibility_note"] = ic.note;
    if (!ic.witness_generators.empty()) {
      rep.evidence["witness"] = detail::words_json(basis, ic.witness_generators);
      rep.evidence["checked_images"] = detail::words_json(basis, ic.checked_images);
    }
    if (ic.rep) {
      rep.evidence["rep_graph"] = detail::graph_json(ic.rep->graph);
      rep.evidence["rep_clean"] = to_string(ic.rep->clean.verdict);
    }
    HyperbolicityCertificate hc = certify_hyperbolic(e, max_n, max_len, cap);
    rep.verdicts["hyperbolic"] = to_string(hc.verdict);
    rep.evidence["hyperbolicity_note"] = hc.note;
    if (hc.witness)
      rep.evidence["periodic_witness"] =
          Json{{"element", to_string(basis, hc.witness->element)},
               {"power", hc.witness->power},
               {"iterate", hc.witness->iterate}};
  } else if (command == "orbit") {
    if (e.rank() != 2) throw Error("orbit: rank must be 2");
    SpineSimplex start = rose_simplex(detail::marking_of(flags.start));
    OrbitRecord rec = orbit(start, e, cap);
    rep.verdicts["preperiod"] = rec.preperiod;
    rep.verdicts["period"] = rec.period;
    Json shapes = Json::array();
    for (const SpineSimplex& s : rec.sequence) shapes.push_back(to_string(s.shape));
    rep.evidence["shapes"] = shapes;
  } else if (command == "periodic-set") {
    if (e.rank() != 2) throw Error("periodic-set: rank must be 2");
    std::vector<SpineSimplex> ps = periodic_set(e, flags.radius, cap);
    rep.verdicts["count"] = ps.size();
    Json shapes = Json::array();
    for (const SpineSimplex& s : ps) shapes.push_back(to_string(s.shape));
    rep.evidence["shapes"] = shapes;
  } else if (command == "invariant") {
    std::vector<Word> gens = spec.witness;
    if (!flags.gens.empty()) {
      gens.clear();
      for (const std::string& s : flags.gens) gens.push_back(parse_word(basis, s));
    }
    if (gens.empty()) throw Error("invariant: no subgroup generators given");
    std::optional<Word> twist = spec.twist;
    if (!flags.twist.empty()) twist = parse_word(basis, flags.twist);
    auto k = invariant_subgroup_index(e, gens, twist, cap);
    rep.verdicts["finite_index_at"] = k ? Json(*k) : Json(nullptr);
    rep.evidence["generators"] = detail::words_json(basis, gens);
    if (twist) rep.evidence["twist"] = to_string(basis, *twist);
    if (!k) rep.evidence["note"] = "no finite-index intersection up to the cap";
  } else {
    throw Error("unknown command '" + command + "'");
  }

  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

inline std::string human_readable(const Report& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  for (auto it = r.verdicts.begin(); it != r.verdicts.end(); ++it)
    out << "  " << it.key() << ": " << it.value().dump() << "\n";
  out << "  evidence: " << r.evidence.dump() << "\n";
  return out.str();
}

}  // namespace endofold
