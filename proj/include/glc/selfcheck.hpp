#pragma once

// The acceptance suite: nine fixture/property checks runnable from the CLI
// (`glc selfcheck`) and from the test harness.

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "glc/corpus.hpp"
#include "glc/glf.hpp"
#include "glc/iso.hpp"
#include "glc/knot.hpp"
#include "glc/lambda.hpp"
#include "glc/moves.hpp"

namespace glc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace selfcheck_detail {

inline CheckResult run(const std::string& name,
                       const std::function<std::string()>& body) {
  CheckResult r;
  r.name = name;
  try {
    r.detail = body();
    r.pass = true;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  return r;
}

[[noreturn]] inline void fail(const std::string& m) { throw Error(m); }

inline void expect(bool cond, const std::string& m) {
  if (!cond) fail(m);
}

// round-trips a term through encode / reduce / readback and compares with
// the reference normal form
inline void check_simulation(const Term& t, int oracle_fuel, int graph_fuel) {
  auto [nf, st] = reference_eval(t, oracle_fuel);
  expect(st == EvalStatus::Normal, "oracle did not normalize: " + term_str(t));
  Graph g = encode_term(t);
  expect(is_lambda_graph(g).is_lambda_graph,
         "encoding not a lambda-graph: " + term_str(t));
  auto res = reduce_graph(g, graph_fuel);
  expect(res.status == ReduceStatus::Normal,
         "graph reduction exhausted fuel: " + term_str(t));
  Term back = readback(res.graph);
  expect(alpha_eq(back, nf), "mismatch on " + term_str(t) + ": graph gave " +
                                 term_str(back) + ", oracle gave " +
                                 term_str(nf));
}

inline std::vector<Term> committed_lambda_corpus() {
  std::vector<Term> corpus = {combinator_i(), combinator_k(), combinator_s(),
                              app(app(combinator_s(), combinator_k()),
                                  combinator_k())};
  for (int n = 0; n <= 3; ++n) corpus.push_back(church(n));
  for (int n = 0; n <= 3; ++n) corpus.push_back(app(church_succ(), church(n)));
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      corpus.push_back(app(app(church_plus(), church(m)), church(n)));
      corpus.push_back(app(app(church_times(), church(m)), church(n)));
    }
  return corpus;
}

inline CheckResult c1_lambda_oracle() {
  return run("1 lambda oracle equivalence", [] {
    int cases = 0;
    for (auto& t : committed_lambda_corpus()) {
      check_simulation(t, 500, 4000);
      ++cases;
    }
    std::mt19937 rng(11);
    int random_cases = 0;
    while (random_cases < 500) {
      Term t = random_closed_term(rng, 6);
      auto [nf, st] = reference_eval(t, 200);
      if (st != EvalStatus::Normal) continue;
      check_simulation(t, 200, 4000);
      ++random_cases;
      ++cases;
    }
    return std::to_string(cases) + " terms agree with the oracle";
  });
}

inline CheckResult c2_eta() {
  return run("2 eta correspondence (ext1)", [] {
    std::mt19937 rng(12);
    int cases = 0;
    while (cases < 50) {
      Term f = random_closed_term(rng, 3);
      if (free_vars(f).count("x")) continue;
      Term t = abs("x", app(f, var("x")));
      Graph g = encode_term(t);
      // the root abstraction is L1 and its body application is A1
      ext1(g, "L1", "A1");
      Term back = readback(g);
      expect(alpha_eq(back, f), "ext1 readback mismatch on " + term_str(t));
      ++cases;
    }
    // free-variable instance
    Graph g = encode_term(parse_term("\\x.y x"));
    ext1(g, "L1", "A1");
    expect(alpha_eq(readback(g), var("y")), "ext1 on \\x.y x");
    return "51 instances read back to f";
  });
}

inline Graph two_strands_expected() {
  Graph g;
  g.add_edge(Endpoint::leaf_in("a1"), Endpoint::leaf_out("a2"));
  g.add_edge(Endpoint::leaf_in("b1"), Endpoint::leaf_out("b2"));
  return g;
}

inline CheckResult c3_beta_counts() {
  return run("3 beta-move count certification (R2a=2, R3a=6)", [] {
    {  // committed R2a fixture
      auto [g, bind] = encode_diagram(parse_pd(r2a_lhs_pd()));
      auto tr = reidemeister_r2a_remove(g, "L1", "A1", "L2", "A2");
      expect(tr.beta_count() == 2, "R2a beta_count != 2");
      expect(is_isomorphic(g, two_strands_expected()).has_value(),
             "R2a fixture result is not the two parallel strands");
    }
    {  // committed R3a fixture
      auto [g, bind] = encode_diagram(parse_pd(r3a_lhs_pd()));
      auto tr = reidemeister_r3a(g, "L1", "A1", "L2", "A2", "L3", "A3");
      expect(tr.beta_count() == 6, "R3a beta_count != 6");
      auto [rhs, bind2] = encode_diagram(parse_pd(r3a_rhs_pd()));
      expect(is_isomorphic(g, rhs).has_value(),
             "R3a fixture result is not the encoded RHS");
    }
    std::mt19937 rng(13);
    for (int i = 0; i < 20; ++i) {  // randomized R2a embeddings
      Braid pre = random_braid(rng, 3, 3), post = random_braid(rng, 3, 3);
      std::uniform_int_distribution<int> posd(1, 2);
      int p = posd(rng);
      Braid with, without;
      with.strands = without.strands = 3;
      auto push_ctx = [&](Braid& b, const Braid& w) {
        for (auto& c : w.word) b.word.push_back(c);
      };
      push_ctx(with, pre);
      with.word.push_back({1, +1});
      with.word.push_back({2, +1});
      size_t k0 = with.word.size();
      with.word.push_back({p, +1});
      with.word.push_back({p, -1});
      with.word.push_back({1, +1});
      with.word.push_back({2, +1});
      push_ctx(with, post);
      push_ctx(without, pre);
      without.word.push_back({1, +1});
      without.word.push_back({2, +1});
      without.word.push_back({1, +1});
      without.word.push_back({2, +1});
      push_ctx(without, post);
      TangleDiagram d = braid_to_diagram(with, false);
      TangleDiagram dprime = braid_to_diagram(without, false);
      canonicalize_boundary(d);
      canonicalize_boundary(dprime);
      auto [g, bind] = encode_diagram(d);
      std::string k1 = std::to_string(k0 + 1), k2 = std::to_string(k0 + 2);
      auto tr = reidemeister_r2a_remove(g, "L" + k1, "A" + k1, "L" + k2,
                                        "A" + k2);
      expect(tr.beta_count() == 2, "embedded R2a beta_count != 2");
      auto [gexp, bind2] = encode_diagram(dprime);
      expect(is_isomorphic(g, gexp).has_value(),
             "embedded R2a result mismatch at case " + std::to_string(i));
    }
    for (int i = 0; i < 20; ++i) {  // randomized R3a embeddings
      Braid pre = random_braid(rng, 3, 3), post = random_braid(rng, 3, 3);
      Braid lhs, rhs;
      lhs.strands = rhs.strands = 3;
      auto build = [&](Braid& b, std::vector<BraidCrossing> block) {
        for (auto& c : pre.word) b.word.push_back(c);
        b.word.push_back({1, +1});
        b.word.push_back({2, +1});
        size_t at = b.word.size();
        for (auto& c : block) b.word.push_back(c);
        b.word.push_back({1, +1});
        b.word.push_back({2, +1});
        for (auto& c : post.word) b.word.push_back(c);
        return at;
      };
      size_t at = build(lhs, {{1, +1}, {2, +1}, {1, +1}});
      build(rhs, {{2, +1}, {1, +1}, {2, +1}});
      TangleDiagram d = braid_to_diagram(lhs, false);
      TangleDiagram dprime = braid_to_diagram(rhs, false);
      canonicalize_boundary(d);
      canonicalize_boundary(dprime);
      auto [g, bind] = encode_diagram(d);
      auto nm = [&](const char* p, size_t k) {
        return std::string(p) + std::to_string(at + k);
      };
      auto tr = reidemeister_r3a(g, nm("L", 1), nm("A", 1), nm("L", 2),
                                 nm("A", 2), nm("L", 3), nm("A", 3));
      expect(tr.beta_count() == 6, "embedded R3a beta_count != 6");
      auto [gexp, bind2] = encode_diagram(dprime);
      expect(is_isomorphic(g, gexp).has_value(),
             "embedded R3a result mismatch at case " + std::to_string(i));
    }
    return "fixtures + 20 embeddings each certified";
  });
}

inline CheckResult c4_r1() {
  return run("4 Reidemeister I (both chiralities)", [] {
    Graph strand;
    strand.add_edge(Endpoint::leaf_in("a"), Endpoint::leaf_out("b"));
    for (auto [pd, ch] : {std::pair{kink_a_pd(), Chirality::A},
                          std::pair{kink_b_pd(), Chirality::B}}) {
      // removal yields the bare strand
      auto [g, bind] = encode_diagram(parse_pd(pd));
      Graph kink = g;
      auto tr = reidemeister_r1_remove(g, "L1", "A1");
      expect(tr.beta_count() == 1 && tr.loop_elims() == 1,
             "r1 removal trace mismatch");
      expect(is_isomorphic(g, strand).has_value(), "r1 removal != strand");
      // remove then insert restores the kink
      Graph g2 = g;
      reidemeister_r1_insert(g2, g2.edges().begin()->first, ch);
      expect(is_isomorphic(g2, kink).has_value(), "remove;insert != kink");
      // insert then remove restores the strand
      Graph g3 = strand;
      reidemeister_r1_insert(g3, g3.edges().begin()->first, ch);
      auto pairs = detect_crossings(g3);
      expect(pairs.size() == 1, "insert did not create one crossing");
      reidemeister_r1_remove(g3, pairs[0].first, pairs[0].second);
      expect(is_isomorphic(g3, strand).has_value(), "insert;remove != strand");
    }
    return "kink fixtures, inverse pairs, both chiralities";
  });
}

// one random tangle-preserving move; returns false if none applicable
inline bool random_tangle_move(Graph& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  for (int attempt = 0; attempt < 4; ++attempt) {
    int k = kind(rng);
    if (k == 0) {
      auto redexes = find_beta_redexes(g);
      if (redexes.empty()) continue;
      std::uniform_int_distribution<size_t> pick(0, redexes.size() - 1);
      beta_reduce(g, redexes[pick(rng)]);
      return true;
    }
    if (k == 1) {
      std::vector<int> strands;
      for (auto& [id, e] : g.edges())
        if (!(e.src.is_port() && e.src.role == PortRole::AOut))
          strands.push_back(id);
      if (strands.empty()) continue;
      std::uniform_int_distribution<size_t> pick(0, strands.size() - 1);
      int e1 = strands[pick(rng)], e2 = strands[pick(rng)];
      std::uniform_int_distribution<int> coin(0, 1);
      beta_expand(g, e1, e2, e1 == e2 && coin(rng));
      return true;
    }
    if (g.loops() > 0) {
      eliminate_loop(g);
      return true;
    }
  }
  return false;
}

inline CheckResult c5_c6_closure(bool check_coincidence) {
  std::string name = check_coincidence
                         ? "6 redex-crossing coincidence"
                         : "5 TANGLEGRAPH closure under moves";
  return run(name, [check_coincidence] {
    std::mt19937 rng(check_coincidence ? 15 : 14);
    int steps = 0;
    for (int i = 0; i < 200; ++i) {
      auto d = random_open_tangle(rng, 8);
      auto [g, bind] = encode_diagram(d);
      expect(classify(g) == TangleClass::Tangle, "encoder output not TANGLE");
      for (int m = 0; m < 10; ++m) {
        if (!random_tangle_move(g, rng)) break;
        ++steps;
        if (check_coincidence) {
          std::set<std::pair<std::string, std::string>> c1, c2;
          for (int eid : find_beta_redexes(g))
            c1.insert({g.edge(eid).src.id, g.edge(eid).dst.id});
          for (auto& p : detect_crossings(g)) c2.insert(p);
          expect(c1 == c2, "redex set differs from crossing connections");
        } else {
          expect(classify(g) == TangleClass::Tangle,
                 "graph left TANGLE after a move");
        }
      }
    }
    return std::to_string(steps) + " move steps verified on 200 diagrams";
  });
}

inline CheckResult c7_round_trips() {
  return run("7 round-trip codecs (PD and GLF)", [] {
    // the graph remembers which arcs hit the boundary (leaf names) but not
    // their ordering, so compare with boundary lists sorted on both sides
    auto sorted_boundary = [](TangleDiagram d) {
      std::sort(d.boundary_in.begin(), d.boundary_in.end());
      std::sort(d.boundary_out.begin(), d.boundary_out.end());
      return d;
    };
    auto pd_round_trip = [&](const TangleDiagram& d) {
      auto [g, bind] = encode_diagram(d);
      TangleDiagram back = decode_to_pd(g, bind);
      expect(diagram_eq_relabel(sorted_boundary(d), sorted_boundary(back)),
             "PD round trip failed:\n" + emit_pd(d) + "--\n" + emit_pd(back));
    };
    for (auto pd : {trefoil_pd(), figure_eight_pd(), hopf_pd(), r2a_lhs_pd(),
                    r3a_lhs_pd(), r3a_rhs_pd(), kink_a_pd(), kink_b_pd()})
      pd_round_trip(parse_pd(pd));
    std::mt19937 rng(16);
    for (int i = 0; i < 100; ++i) {
      std::uniform_int_distribution<int> coin(0, 1);
      std::uniform_int_distribution<int> sd(2, 4);
      auto b = random_braid(rng, sd(rng), 8);
      TangleDiagram d = braid_to_diagram(b, coin(rng));
      pd_round_trip(d);
    }
    for (int i = 0; i < 1000; ++i) {
      Graph g = random_valid_graph(rng);
      expect(g.validate().empty(), "random graph invalid");
      Graph back = parse_glf(emit_glf(g));
      expect(is_isomorphic(g, back).has_value(), "GLF round trip failed:\n" +
                                                     emit_glf(g));
    }
    return "fixtures + 100 diagrams + 1000 graphs round-trip";
  });
}

inline CheckResult c8_inverse_pairs() {
  return run("8 beta expand/reduce inverse pairs", [] {
    std::mt19937 rng(17);
    int cases = 0;
    // expand-then-reduce on random tangle graphs and lambda encodings
    while (cases < 250) {
      Graph g;
      std::uniform_int_distribution<int> coin(0, 1);
      if (coin(rng)) {
        auto [gg, bind] = encode_diagram(random_open_tangle(rng, 6));
        g = gg;
      } else {
        g = encode_term(random_closed_term(rng, 4));
      }
      if (g.edges().empty()) continue;
      std::vector<int> ids;
      for (auto& [id, e] : g.edges()) ids.push_back(id);
      std::uniform_int_distribution<size_t> pick(0, ids.size() - 1);
      int e1 = ids[pick(rng)], e2 = ids[pick(rng)];
      bool chb = e1 == e2 && coin(rng);
      Graph g2 = g;
      auto before = detail::node_ids(g2);
      beta_expand(g2, e1, e2, chb);
      auto [L, A] = detail::new_pair(before, g2);
      beta_reduce(g2, g2.edge_at_port(L, PortRole::AOut));
      expect(is_isomorphic(g, g2).has_value(),
             "expand;reduce not identity (case " + std::to_string(cases) + ")");
      ++cases;
    }
    // reduce-then-expand at redexes of open tangle graphs (plus kinks)
    int done = 0;
    while (done < 250) {
      Graph g;
      std::uniform_int_distribution<int> coin(0, 1);
      auto [gg, bind] = encode_diagram(random_open_tangle(rng, 6));
      g = gg;
      bool kink = coin(rng);
      if (kink) {  // graft a kink onto a random edge first
        std::vector<int> ids;
        for (auto& [id, e] : g.edges())
          if (!(e.src.is_port() && e.src.role == PortRole::AOut))
            ids.push_back(id);
        if (ids.empty()) continue;
        std::uniform_int_distribution<size_t> pick(0, ids.size() - 1);
        beta_expand(g, ids[pick(rng)], ids[pick(rng)], coin(rng));
      }
      auto redexes = find_beta_redexes(g);
      if (redexes.empty()) continue;
      std::uniform_int_distribution<size_t> pick(0, redexes.size() - 1);
      int site = redexes[pick(rng)];
      std::string L = g.edge(site).src.id, A = g.edge(site).dst.id;
      bool kink_a = detail::has_edge_between(
          g, Endpoint::port(L, PortRole::VOut), Endpoint::port(A, PortRole::AIn));
      bool kink_b = detail::has_edge_between(
          g, Endpoint::port(A, PortRole::Out), Endpoint::port(L, PortRole::In));
      Endpoint s_over = g.edge(g.edge_at_port(L, PortRole::In)).src;
      Endpoint s_under = g.edge(g.edge_at_port(A, PortRole::AIn)).src;
      Graph g2 = g;
      beta_reduce(g2, g2.edge_at_port(L, PortRole::AOut));
      if (kink_a) {
        auto e = g2.edge_at(s_over);
        if (!e) continue;  // doubly degenerate; not expand-invertible
        beta_expand(g2, *e, *e, false);
      } else if (kink_b) {
        auto e = g2.edge_at(s_under);
        if (!e) continue;
        beta_expand(g2, *e, *e, true);
      } else {
        beta_expand(g2, *g2.edge_at(s_over), *g2.edge_at(s_under));
      }
      expect(is_isomorphic(g, g2).has_value(),
             "reduce;expand not identity (case " + std::to_string(done) + ")");
      ++done;
      ++cases;
    }
    return std::to_string(cases) + " inverse-pair cases identical";
  });
}

inline CheckResult c9_divergence() {
  return run("9 divergence containment (Omega)", [] {
    Graph g = encode_term(omega());
    for (int fuel : {1, 10, 100}) {
      auto res = reduce_graph(g, fuel);
      expect(res.status == ReduceStatus::FuelExhausted,
             "Omega did not report FUEL_EXHAUSTED at fuel " +
                 std::to_string(fuel));
    }
    return "FUEL_EXHAUSTED at fuel 1, 10, 100";
  });
}

}  // namespace selfcheck_detail

inline std::vector<CheckResult> run_selfcheck(const std::string& filter = "") {
  using namespace selfcheck_detail;
  std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
      {"lambda", c1_lambda_oracle},
      {"lambda", c2_eta},
      {"knot", c3_beta_counts},
      {"knot", c4_r1},
      {"knot", [] { return c5_c6_closure(false); }},
      {"knot", [] { return c5_c6_closure(true); }},
      {"codec", c7_round_trips},
      {"moves", c8_inverse_pairs},
      {"lambda", c9_divergence},
  };
  std::vector<CheckResult> out;
  for (auto& [tag, fn] : checks) {
    if (!filter.empty() && tag.find(filter) == std::string::npos) continue;
    out.push_back(fn());
  }
  return out;
}

}  // namespace glc
