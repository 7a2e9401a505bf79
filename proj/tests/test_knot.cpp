#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "glc/corpus.hpp"
#include "glc/iso.hpp"
#include "glc/knot.hpp"
#include "glc/lambda.hpp"

using namespace glc;

namespace {
std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TangleDiagram sorted_boundary(TangleDiagram d) {
  std::sort(d.boundary_in.begin(), d.boundary_in.end());
  std::sort(d.boundary_out.begin(), d.boundary_out.end());
  return d;
}
}  // namespace

TEST_CASE("PD codes parse, validate, and round-trip as text") {
  TangleDiagram d = parse_pd(fixture("r2a_lhs.pd"));
  CHECK(d.crossings.size() == 2);
  CHECK(d.boundary_in == std::vector<std::string>{"a1", "b1"});
  CHECK(diagram_eq_relabel(d, parse_pd(emit_pd(d))));
  // an arc must start exactly once and end exactly once
  CHECK_THROWS_AS(parse_pd("x + a b a c\nx + a d e f\n"), Error);
  CHECK_THROWS_AS(parse_pd("x ? a b c d\n"), Error);
}

TEST_CASE("closed diagrams classify as links, open ones as tangles") {
  auto [tre, b1] = encode_diagram(parse_pd(fixture("trefoil.pd")));
  CHECK(classify(tre) == TangleClass::Link);
  auto [open, b2] = encode_diagram(parse_pd(fixture("r2a_lhs.pd")));
  CHECK(classify(open) == TangleClass::Tangle);
  Graph lam = encode_term(parse_term("\\f.\\x.f (f x)"));
  CHECK(classify(lam) == TangleClass::Neither);
}

TEST_CASE("crossing detection matches the encoder's bookkeeping") {
  for (auto name : {"trefoil.pd", "hopf.pd", "figure_eight.pd", "r3a_lhs.pd"}) {
    TangleDiagram d = parse_pd(fixture(name));
    auto [g, bind] = encode_diagram(d);
    auto detected = detect_crossings(g);
    CHECK(detected.size() == d.crossings.size());
    for (auto& [L, ap] : bind.by_lambda)
      CHECK(std::count(detected.begin(), detected.end(),
                       std::make_pair(L, ap.first)) == 1);
  }
}

TEST_CASE("encode/decode round-trips every fixture diagram") {
  for (auto name : {"trefoil.pd", "hopf.pd", "figure_eight.pd", "r2a_lhs.pd",
                    "r3a_lhs.pd", "r3a_rhs.pd", "kink_a.pd", "kink_b.pd"}) {
    TangleDiagram d = parse_pd(fixture(name));
    auto [g, bind] = encode_diagram(d);
    CHECK(g.validate().empty());
    TangleDiagram back = decode_to_pd(g, bind);
    CHECK(diagram_eq_relabel(sorted_boundary(d), sorted_boundary(back)));
  }
}

TEST_CASE("decoding counts free circles") {
  auto [g, bind] = encode_diagram(parse_pd(fixture("hopf.pd")));
  g.add_loop();
  CHECK(decode_to_pd(g, bind).circles == 1);
}

TEST_CASE("Reidemeister I removes a kink with one beta move") {
  for (auto name : {"kink_a.pd", "kink_b.pd"}) {
    auto [g, bind] = encode_diagram(parse_pd(fixture(name)));
    auto tr = reidemeister_r1_remove(g, "L1", "A1");
    CHECK(tr.beta_count() == 1);
    CHECK(tr.loop_elims() == 1);
    Graph strand;
    strand.add_edge(Endpoint::leaf_in("a"), Endpoint::leaf_out("b"));
    CHECK(is_isomorphic(g, strand).has_value());
  }
}

TEST_CASE("Reidemeister I insert/remove are mutually inverse") {
  Graph strand;
  strand.add_edge(Endpoint::leaf_in("a"), Endpoint::leaf_out("b"));
  for (auto ch : {Chirality::A, Chirality::B}) {
    Graph g = strand;
    reidemeister_r1_insert(g, resolve_edge(g, "in:a>out:b"), ch);
    CHECK(detect_crossings(g).size() == 1);
    auto [L, A] = detect_crossings(g)[0];
    reidemeister_r1_remove(g, L, A);
    CHECK(is_isomorphic(g, strand).has_value());
  }
}

TEST_CASE("Reidemeister IIa cancels opposite crossings in two beta moves") {
  auto [g, bind] = encode_diagram(parse_pd(fixture("r2a_lhs.pd")));
  auto tr = reidemeister_r2a_remove(g, "L1", "A1", "L2", "A2");
  CHECK(tr.beta_count() == 2);
  Graph expected;
  expected.add_edge(Endpoint::leaf_in("a1"), Endpoint::leaf_out("a2"));
  expected.add_edge(Endpoint::leaf_in("b1"), Endpoint::leaf_out("b2"));
  CHECK(is_isomorphic(g, expected).has_value());
}

TEST_CASE("Reidemeister IIa insert then remove is the identity") {
  Graph g;
  g.add_edge(Endpoint::leaf_in("a1"), Endpoint::leaf_out("a2"));
  g.add_edge(Endpoint::leaf_in("b1"), Endpoint::leaf_out("b2"));
  Graph orig = g;
  reidemeister_r2a_insert(g, resolve_edge(g, "in:a1>out:a2"),
                          resolve_edge(g, "in:b1>out:b2"));
  CHECK(detect_crossings(g).size() == 2);
  reidemeister_r2a_remove(g, "L1", "A1", "L2", "A2");
  CHECK(is_isomorphic(g, orig).has_value());
}

TEST_CASE("Reidemeister III slides a strand in six beta moves, both ways") {
  auto [lhs, b1] = encode_diagram(parse_pd(fixture("r3a_lhs.pd")));
  auto [rhs, b2] = encode_diagram(parse_pd(fixture("r3a_rhs.pd")));
  Graph g = lhs;
  auto tr = reidemeister_r3a(g, "L1", "A1", "L2", "A2", "L3", "A3");
  CHECK(tr.beta_count() == 6);
  CHECK(is_isomorphic(g, rhs).has_value());
  Graph h = rhs;
  auto tr2 = reidemeister_r3a(h, "L1", "A1", "L2", "A2", "L3", "A3", true);
  CHECK(tr2.beta_count() == 6);
  CHECK(is_isomorphic(h, lhs).has_value());
}

TEST_CASE("braid words build valid diagrams") {
  Braid b;
  b.strands = 3;
  b.word = {{1, +1}, {2, -1}, {1, +1}};
  TangleDiagram open = braid_to_diagram(b, false);
  CHECK(open.crossings.size() == 3);
  CHECK(open.boundary_in.size() == 3);
  auto [g, bind] = encode_diagram(open);
  CHECK(classify(g) == TangleClass::Tangle);
  TangleDiagram closed = braid_to_diagram(b, true);
  CHECK(closed.boundary_in.empty());
  auto [h, bind2] = encode_diagram(closed);
  CHECK(classify(h) == TangleClass::Link);
}
