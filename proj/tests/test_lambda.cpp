#include <catch2/catch_amalgamated.hpp>

#include "glc/corpus.hpp"
#include "glc/glf.hpp"
#include "glc/knot.hpp"
#include "glc/lambda.hpp"

using namespace glc;

TEST_CASE("terms parse and print") {
  for (auto src : {"x", "\\x.x", "\\x.\\y.x", "f x y", "\\f.\\x.f (f x)",
                   "(\\x.x x) (\\x.x x)"}) {
    Term t = parse_term(src);
    CHECK(alpha_eq(t, parse_term(term_str(t))));
  }
  CHECK_THROWS_AS(parse_term("\\x."), Error);
  CHECK_THROWS_AS(parse_term("(x"), Error);
  CHECK_THROWS_AS(parse_term(""), Error);
}

TEST_CASE("alpha equivalence ignores bound names only") {
  CHECK(alpha_eq(parse_term("\\x.x"), parse_term("\\y.y")));
  CHECK(alpha_eq(parse_term("\\x.\\y.x y"), parse_term("\\a.\\b.a b")));
  CHECK_FALSE(alpha_eq(parse_term("\\x.x"), parse_term("\\x.y")));
  CHECK_FALSE(alpha_eq(parse_term("u"), parse_term("v")));
}

TEST_CASE("the reference evaluator is capture avoiding") {
  // (\x.\y.x) y must not capture the free y
  auto [t, st] = reference_eval(parse_term("(\\x.\\y.x) y"), 10);
  CHECK(st == EvalStatus::Normal);
  CHECK(alpha_eq(t, parse_term("\\z.y")));
  CHECK_FALSE(alpha_eq(t, parse_term("\\y.y")));
}

TEST_CASE("encoding produces a valid lambda-graph") {
  for (auto src : {"\\x.x", "\\x.\\y.x", "\\f.\\x.f (f x)", "\\x.x x",
                   "f (\\x.g x x)"}) {
    Graph g = encode_term(parse_term(src));
    CHECK(g.validate().empty());
    CHECK(is_lambda_graph(g).is_lambda_graph);
  }
}

TEST_CASE("a knot encoding is not a lambda-graph") {
  auto [g, bind] = encode_diagram(parse_pd(trefoil_pd()));
  CHECK_FALSE(is_lambda_graph(g).is_lambda_graph);
}

TEST_CASE("readback inverts encoding") {
  for (auto src : {"x", "\\x.x", "\\x.\\y.x", "\\f.\\x.f (f x)", "\\x.x x",
                   "\\x.y", "f x y"}) {
    Term t = parse_term(src);
    CHECK(alpha_eq(readback(encode_term(t)), t));
  }
}

TEST_CASE("graph reduction computes church arithmetic") {
  auto reduce_to = [](Term t) {
    auto res = reduce_graph(encode_term(t), 10000);
    REQUIRE(res.status == ReduceStatus::Normal);
    return readback(res.graph);
  };
  CHECK(alpha_eq(reduce_to(app(app(church_plus(), church(2)),
                               church(3))),
                 church(5)));
  CHECK(alpha_eq(reduce_to(app(app(church_times(), church(2)),
                               church(3))),
                 church(6)));
  CHECK(alpha_eq(reduce_to(app(church_succ(), church(0))),
                 church(1)));
}

TEST_CASE("graph reduction discards unused arguments") {
  auto res = reduce_graph(
      encode_term(parse_term("(\\x.\\y.y) ((\\x.x x) (\\x.x x))")), 10000);
  // normal order: the divergent argument is never forced
  REQUIRE(res.status == ReduceStatus::Normal);
  CHECK(alpha_eq(readback(res.graph), parse_term("\\y.y")));
}

TEST_CASE("divergent terms exhaust fuel instead of hanging") {
  Graph g = encode_term(omega());
  for (int fuel : {1, 10, 100})
    CHECK(reduce_graph(g, fuel).status == ReduceStatus::FuelExhausted);
}

TEST_CASE("reduction traces replay to the same graph") {
  Graph g = encode_term(app(app(church_plus(), church(1)),
                            church(1)));
  auto res = reduce_graph(g, 10000);
  REQUIRE(res.status == ReduceStatus::Normal);
  Graph replayed = replay_trace(g, res.trace);
  CHECK(emit_glf(replayed) == emit_glf(res.graph));
}

TEST_CASE("ext1 unwraps an eta expansion") {
  // \x.f x encodes with the lambda applying f directly to its variable
  Graph g = encode_term(parse_term("\\x.f x"));
  ext1(g, "L1", "A1");
  CHECK(alpha_eq(readback(g), parse_term("f")));
}
