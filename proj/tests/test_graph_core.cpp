#include <catch2/catch_amalgamated.hpp>

#include "glc/dot.hpp"
#include "glc/glf.hpp"
#include "glc/graph.hpp"
#include "glc/iso.hpp"
#include "glc/match.hpp"

using namespace glc;

TEST_CASE("endpoints print and parse") {
  Graph g;
  g.add_node("L1", NodeKind::Lambda);
  Endpoint p = Endpoint::port("L1", PortRole::AOut);
  CHECK(p.str() == "L1.aout");
  CHECK(Endpoint::leaf_in("x").str() == "in:x");
  CHECK(Endpoint::leaf_out("y").str() == "out:y");
  CHECK(parse_endpoint(g, "L1.aout") == p);
  CHECK(parse_endpoint(g, "in:x") == Endpoint::leaf_in("x"));
  CHECK_THROWS_AS(parse_endpoint(g, "L1.bogus"), Error);
  CHECK_THROWS_AS(parse_endpoint(g, "Z9.in"), Error);
}

TEST_CASE("edge direction and occupancy are enforced") {
  Graph g;
  g.add_node("A1", NodeKind::Application);
  g.add_node("L1", NodeKind::Lambda);
  // output -> input is fine
  int e = g.add_edge(Endpoint::port("L1", PortRole::AOut),
                     Endpoint::port("A1", PortRole::FIn));
  CHECK(g.edge(e).str() == "L1.aout>A1.fin");
  // input -> output is rejected
  CHECK_THROWS_AS(g.add_edge(Endpoint::port("A1", PortRole::AIn),
                             Endpoint::port("L1", PortRole::VOut)),
                  Error);
  // a port carries at most one edge end
  CHECK_THROWS_AS(g.add_edge(Endpoint::port("L1", PortRole::AOut),
                             Endpoint::port("A1", PortRole::AIn)),
                  Error);
}

TEST_CASE("validate reports dangling ports") {
  Graph g;
  g.add_node("T1", NodeKind::Termination);
  auto v = g.validate();
  REQUIRE(v.size() == 1);
  CHECK(v[0].message.find("T1") != std::string::npos);
  g.add_edge(Endpoint::leaf_in("x"), Endpoint::port("T1", PortRole::In));
  CHECK(g.validate().empty());
}

TEST_CASE("splice joins two edges, and an edge with itself becomes a loop") {
  Graph g;
  g.add_node("F1", NodeKind::Fanout);
  int up = g.add_edge(Endpoint::leaf_in("x"), Endpoint::port("F1", PortRole::In));
  int down = g.add_edge(Endpoint::port("F1", PortRole::LOut), Endpoint::leaf_out("y"));
  int tail = g.add_edge(Endpoint::port("F1", PortRole::ROut), Endpoint::leaf_out("z"));
  g.splice(up, down);
  CHECK(g.edge_at(Endpoint::leaf_out("y")).has_value());
  Edge joined = g.edge(*g.edge_at(Endpoint::leaf_out("y")));
  CHECK(joined.str() == "in:x>out:y");
  CHECK(g.loops() == 0);
  g.splice(tail, tail);
  CHECK(g.loops() == 1);
  CHECK_FALSE(g.edge_at(Endpoint::leaf_out("z")).has_value());
}

TEST_CASE("fresh node ids never collide") {
  Graph g;
  g.add_node("L1", NodeKind::Lambda);
  g.add_node("L2", NodeKind::Lambda);
  CHECK(g.fresh_node_id("L") == "L3");
  CHECK(g.fresh_node_id("Q") == "Q1");
}

TEST_CASE("GLF parses, emits deterministically, and reports line numbers") {
  std::string text =
      "# a comment\n"
      "node F1 FO\n"
      "edge in:a F1.in\n"
      "edge F1.lout out:b   # trailing comment\n"
      "edge F1.rout out:c\n"
      "loops 2\n";
  Graph g = parse_glf(text);
  CHECK(g.nodes().size() == 1);
  CHECK(g.edges().size() == 3);
  CHECK(g.loops() == 2);
  CHECK(emit_glf(parse_glf(emit_glf(g))) == emit_glf(g));

  try {
    parse_glf("node F1 FO\nnode F2 WAT\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("GLF edges may precede node declarations") {
  Graph g = parse_glf("edge in:a T1.in\nnode T1 TOP\n");
  CHECK(g.validate().empty());
}

TEST_CASE("DOT export mentions every node and the loop count") {
  Graph g = parse_glf("node T1 TOP\nedge in:a T1.in\nloops 1\n");
  std::string dot = to_dot(g);
  CHECK(dot.find("T1") != std::string::npos);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("loops") != std::string::npos);
}

TEST_CASE("isomorphism respects kinds, wiring, leaf names, and loops") {
  Graph a = parse_glf("node F1 FO\nedge in:x F1.in\nedge F1.lout out:p\nedge F1.rout out:q\n");
  Graph b = parse_glf("node G7 FO\nedge in:x G7.in\nedge G7.lout out:p\nedge G7.rout out:q\n");
  auto m = is_isomorphic(a, b);
  REQUIRE(m.has_value());
  CHECK(m->at("F1") == "G7");

  // swapping lout/rout is a different graph (that is a move, not an equality)
  Graph c = parse_glf("node G7 FO\nedge in:x G7.in\nedge G7.lout out:q\nedge G7.rout out:p\n");
  CHECK_FALSE(is_isomorphic(a, c).has_value());

  Graph d = parse_glf("node T1 TOP\nedge in:x T1.in\n");
  CHECK_FALSE(is_isomorphic(a, d).has_value());

  Graph e = a;
  e.add_loop();
  CHECK_FALSE(is_isomorphic(a, e).has_value());
}

TEST_CASE("subgraph matching finds embeddings with boundary bindings") {
  Graph host = parse_glf(
      "node L1 LAM\nnode A1 APP\nnode T1 TOP\n"
      "edge in:arg A1.ain\nedge L1.aout A1.fin\nedge A1.out out:res\n"
      "edge in:body L1.in\nedge L1.vout T1.in\n");
  Graph pat;
  pat.add_node("l", NodeKind::Lambda);
  pat.add_node("a", NodeKind::Application);
  pat.add_edge(Endpoint::port("l", PortRole::AOut), Endpoint::port("a", PortRole::FIn));
  auto ms = find_matches(host, pat);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].node_binding.at("l") == "L1");
  CHECK(ms[0].node_binding.at("a") == "A1");
}
