#include <catch2/catch_amalgamated.hpp>

#include "glc/glf.hpp"
#include "glc/iso.hpp"
#include "glc/moves.hpp"

using namespace glc;

namespace {
Graph two_strands() {
  Graph g;
  g.add_edge(Endpoint::leaf_in("a"), Endpoint::leaf_out("b"));
  g.add_edge(Endpoint::leaf_in("c"), Endpoint::leaf_out("d"));
  return g;
}
}  // namespace

TEST_CASE("beta expand then reduce is the identity on a pair of strands") {
  Graph g = two_strands();
  Graph orig = g;
  int over = resolve_edge(g, "in:a>out:b");
  int under = resolve_edge(g, "in:c>out:d");
  auto tr = beta_expand(g, over, under);
  CHECK(g.nodes().size() == 2);
  auto redexes = find_beta_redexes(g);
  REQUIRE(redexes.size() == 1);
  auto tr2 = beta_reduce(g, redexes[0]);
  CHECK(tr2.beta_count() == 1);
  CHECK(emit_glf(g) == emit_glf(orig));
}

TEST_CASE("beta reduce of a kink eliminates the born loop") {
  // one crossing whose over-strand feeds its own under-strand
  Graph g = two_strands();
  auto tr = beta_expand(g, resolve_edge(g, "in:a>out:b"),
                        resolve_edge(g, "in:a>out:b"));
  REQUIRE(find_beta_redexes(g).size() == 1);
  auto tr2 = beta_reduce(g, find_beta_redexes(g)[0]);
  CHECK(tr2.beta_count() == 1);
  CHECK(tr2.loop_elims() == 1);
  CHECK(g.loops() == 0);
  CHECK(emit_glf(g) == emit_glf(two_strands()));
}

TEST_CASE("beta reduce rejects a non-redex edge") {
  Graph g = two_strands();
  CHECK_THROWS_AS(beta_reduce(g, resolve_edge(g, "in:a>out:b")), Error);
}

TEST_CASE("loop bookkeeping") {
  Graph g;
  add_loop(g);
  add_loop(g);
  CHECK(g.loops() == 2);
  eliminate_loop(g);
  CHECK(g.loops() == 1);
  CHECK_THROWS_AS([&] { eliminate_loop(g); eliminate_loop(g); }(), Error);
}

TEST_CASE("cocomm is an involution") {
  Graph g = parse_glf(
      "node F1 FO\nedge in:x F1.in\nedge F1.lout out:p\nedge F1.rout out:q\n");
  std::string before = emit_glf(g);
  co_comm(g, "F1");
  CHECK(g.edge(*g.edge_at(Endpoint::leaf_out("p"))).src.role == PortRole::ROut);
  co_comm(g, "F1");
  CHECK(emit_glf(g) == before);
}

TEST_CASE("coassoc swaps comb direction and is an involution") {
  Graph g = parse_glf(
      "node F1 FO\nnode F2 FO\n"
      "edge in:x F1.in\nedge F1.lout out:t1\nedge F1.rout F2.in\n"
      "edge F2.lout out:t2\nedge F2.rout out:t3\n");
  std::string before = emit_glf(g);
  co_assoc(g, "F1", "F2");
  // left comb afterwards: F1 hangs off F2's left output
  CHECK(g.edge(*g.edge_at(Endpoint::leaf_out("t3"))).src.str() == "F1.rout");
  co_assoc(g, "F1", "F2");
  CHECK(emit_glf(g) == before);
}

TEST_CASE("local pruning removes a terminated application") {
  Graph g = parse_glf(
      "node A1 APP\nnode T1 TOP\n"
      "edge in:f A1.fin\nedge in:a A1.ain\nedge A1.out T1.in\n");
  prune_local(g, "A1");
  CHECK_FALSE(g.has_node("A1"));
  // both feeders end in fresh terminations
  for (auto name : {"f", "a"}) {
    auto e = g.edge_at(Endpoint::leaf_in(name));
    REQUIRE(e.has_value());
    CHECK(g.node(g.edge(*e).dst.id).kind == NodeKind::Termination);
  }
}

TEST_CASE("a fanout with one terminated output contracts") {
  Graph g = parse_glf(
      "node F1 FO\nnode T1 TOP\n"
      "edge in:x F1.in\nedge F1.lout T1.in\nedge F1.rout out:y\n");
  prune_local(g, "F1");
  CHECK(g.nodes().empty());
  CHECK(g.edge(*g.edge_at(Endpoint::leaf_out("y"))).str() == "in:x>out:y");
}

TEST_CASE("global pruning deletes a dead component") {
  Graph g = parse_glf(
      "node L1 LAM\nnode T1 TOP\nnode T2 TOP\n"
      "edge L1.vout L1.in\nedge L1.aout T1.in\n"
      "edge in:x T2.in\n");
  prune_global(g, {"L1", "T1"});
  CHECK_FALSE(g.has_node("L1"));
  CHECK(g.has_node("T2"));
  CHECK(g.validate().empty());
}

TEST_CASE("global fanout duplicates the fed value") {
  // F1 duplicates the identity lambda fed from its in port
  Graph g = parse_glf(
      "node L1 LAM\nnode F1 FO\n"
      "edge L1.vout L1.in\nedge L1.aout F1.in\n"
      "edge F1.lout out:c1\nedge F1.rout out:c2\n");
  REQUIRE(global_fanout_eligible(g, "F1"));
  global_fanout(g, "F1");
  CHECK_FALSE(g.has_node("F1"));
  CHECK(g.validate().empty());
  // two disjoint lambda copies now reach the two outputs
  auto lhs = g.edge(*g.edge_at(Endpoint::leaf_out("c1"))).src.id;
  auto rhs = g.edge(*g.edge_at(Endpoint::leaf_out("c2"))).src.id;
  CHECK(lhs != rhs);
  CHECK(g.node(lhs).kind == NodeKind::Lambda);
  CHECK(g.node(rhs).kind == NodeKind::Lambda);
}

TEST_CASE("global fanout refuses a value that reads the boundary") {
  Graph g = parse_glf(
      "node F1 FO\n"
      "edge in:x F1.in\nedge F1.lout out:p\nedge F1.rout out:q\n");
  CHECK_FALSE(global_fanout_eligible(g, "F1"));
  // feeding from an open lambda is refused too
  Graph h = parse_glf(
      "node L1 LAM\nnode T1 TOP\nnode F1 FO\n"
      "edge in:k L1.in\nedge L1.vout T1.in\nedge L1.aout F1.in\n"
      "edge F1.lout out:c1\nedge F1.rout out:c2\n");
  CHECK_FALSE(global_fanout_eligible(h, "F1"));
}

TEST_CASE("move scripts parse, apply, and replay deterministically") {
  Graph g = two_strands();
  MoveScript s = parse_script(
      "# build a crossing, then undo it\n"
      "beta+ in:a>out:b in:c>out:d\n"
      "beta- L1.aout>A1.fin\n"
      "add-loop\n"
      "elim-loop\n");
  auto [g2, tr] = apply_script(g, s);
  CHECK(emit_glf(g2) == emit_glf(g));
  CHECK(tr.beta_count() == 2);  // the expand and the reduce both count
  Graph replayed = replay_trace(g, tr);
  CHECK(emit_glf(replayed) == emit_glf(g2));
}

TEST_CASE("scripts can name subgraphs for pruning") {
  Graph g = parse_glf(
      "node L1 LAM\nnode T1 TOP\nnode T2 TOP\n"
      "edge L1.vout L1.in\nedge L1.aout T1.in\n"
      "edge in:x T2.in\n");
  auto [g2, tr] = apply_script(
      g, parse_script("subgraph dead L1 T1\nprune @dead\n"));
  CHECK_FALSE(g2.has_node("L1"));
  CHECK(g2.has_node("T2"));
}

TEST_CASE("script errors carry line numbers") {
  try {
    parse_script("elim-loop\nfrobnicate x\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("traces of implicit loop eliminations round-trip through scripts") {
  Graph g = two_strands();
  auto tr = beta_expand(g, resolve_edge(g, "in:a>out:b"),
                        resolve_edge(g, "in:a>out:b"));
  Graph expanded = g;
  tr.append(beta_reduce(g, find_beta_redexes(g)[0]));
  // the loop elimination is implicit in the reduce, so the script has
  // exactly two explicit lines
  MoveScript s = parse_script(tr.to_script());
  CHECK(s.steps.size() == 2);
  Graph replayed = replay_trace(two_strands(), tr);
  CHECK(emit_glf(replayed) == emit_glf(g));
}
