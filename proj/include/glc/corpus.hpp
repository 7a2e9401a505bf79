#pragma once

// Test corpus: committed diagram fixtures, Church arithmetic, braid-word
// diagram builders, and seeded random generators for terms, diagrams and
// graphs.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "glc/graph.hpp"
#include "glc/knot.hpp"
#include "glc/lambda.hpp"

namespace glc {

// -- lambda corpus ------------------------------------------------------------

inline Term church(int n) {
  Term body = var("x");
  for (int i = 0; i < n; ++i) body = app(var("f"), body);
  return abs("f", abs("x", body));
}

inline Term combinator_i() { return parse_term("\\x.x"); }
inline Term combinator_k() { return parse_term("\\x.\\y.x"); }
inline Term combinator_s() { return parse_term("\\x.\\y.\\z.x z (y z)"); }
inline Term church_succ() { return parse_term("\\n.\\f.\\x.f (n f x)"); }
inline Term church_plus() { return parse_term("\\m.\\n.\\f.\\x.m f (n f x)"); }
inline Term church_times() { return parse_term("\\m.\\n.\\f.m (n f)"); }
inline Term omega() { return parse_term("(\\x.x x)(\\x.x x)"); }

inline Term random_closed_term(std::mt19937& rng, int max_depth) {
  std::vector<std::string> env;
  std::function<Term(int)> gen = [&](int depth) -> Term {
    std::uniform_int_distribution<int> pick(0, 99);
    int r = pick(rng);
    bool can_var = !env.empty();
    if (depth <= 0) {
      if (can_var && r < 80) {
        std::uniform_int_distribution<size_t> v(0, env.size() - 1);
        return var(env[v(rng)]);
      }
      env.push_back("v" + std::to_string(env.size()));
      Term t = abs(env.back(), var(env.back()));
      env.pop_back();
      return t;
    }
    if (!can_var || r < 40) {  // abstraction
      env.push_back("v" + std::to_string(env.size()));
      std::string n = env.back();
      Term body = gen(depth - 1);
      env.pop_back();
      return abs(n, body);
    }
    if (r < 70) {  // application
      Term f = gen(depth - 1);
      Term x = gen(depth - 1);
      return app(f, x);
    }
    std::uniform_int_distribution<size_t> v(0, env.size() - 1);
    return var(env[v(rng)]);
  };
  return gen(max_depth);
}

// -- diagram fixtures -----------------------------------------------------------

inline std::string trefoil_pd() {
  return "x + l1 r2 r1 l2\n"
         "x + l2 r3 r2 l3\n"
         "x + l3 r1 r3 l1\n";
}

inline std::string hopf_pd() {
  return "x + l1 r2 r1 l2\n"
         "x + l2 r1 r2 l1\n";
}

inline std::string figure_eight_pd() {
  return "x + a e b d\n"
         "x - c f e g\n"
         "x + d i f a\n"
         "x - g b i c\n";
}

inline std::string r2a_lhs_pd() {
  return "x + a1 m b1 n\n"
         "x - m a2 n b2\n"
         "bin a1 b1\n"
         "bout a2 b2\n";
}

inline std::string kink_a_pd() {
  return "x + a k k b\nbin a\nbout b\n";
}

inline std::string kink_b_pd() {
  return "x + k b a k\nbin a\nbout b\n";
}

inline std::string r3a_lhs_pd() {
  return "x + a1 b1 a2 b2\n"
         "x + b1 z3 a3 c2\n"
         "x + b2 z2 c2 z1\n"
         "bin a1 a2 a3\n"
         "bout z1 z2 z3\n";
}

inline std::string r3a_rhs_pd() {
  return "x + a2 d1 a3 d2\n"
         "x + a1 e1 d2 z1\n"
         "x + e1 z3 d1 z2\n"
         "bin a1 a2 a3\n"
         "bout z1 z2 z3\n";
}

// -- braid words ------------------------------------------------------------------

struct BraidCrossing {
  int pos;   // 1-based position of the left strand of the crossing
  int sign;  // +1 or -1
};

struct Braid {
  int strands = 2;
  std::vector<BraidCrossing> word;
};

// Oriented diagram of a braid word (strands run bottom to top). Positive
// crossing: the strand entering at the left position passes over. If closed,
// the final arcs are identified with the initial ones; crossing-free strands
// become circles.
inline TangleDiagram braid_to_diagram(const Braid& b, bool closed) {
  TangleDiagram d;
  std::vector<std::string> pos(b.strands);
  std::vector<std::string> initial(b.strands);
  for (int i = 0; i < b.strands; ++i) pos[i] = initial[i] = "s" + std::to_string(i + 1);
  int k = 0;
  for (auto& bc : b.word) {
    ++k;
    if (bc.pos < 1 || bc.pos + 1 > b.strands) throw Error("braid position out of range");
    std::string left = pos[bc.pos - 1], right = pos[bc.pos];
    std::string oo = "c" + std::to_string(k) + "a";
    std::string uo = "c" + std::to_string(k) + "b";
    Crossing c;
    c.sign = bc.sign;
    if (bc.sign > 0) {
      c.over_in = left;
      c.under_in = right;
      pos[bc.pos] = c.over_out = oo;      // over strand moves right
      pos[bc.pos - 1] = c.under_out = uo;  // under strand moves left
    } else {
      c.over_in = right;
      c.under_in = left;
      pos[bc.pos - 1] = c.over_out = oo;
      pos[bc.pos] = c.under_out = uo;
    }
    d.crossings.push_back(c);
  }
  if (!closed) {
    d.boundary_in = initial;
    d.boundary_out = pos;
    validate_diagram(d);
    return d;
  }
  std::map<std::string, std::string> rename;
  for (int i = 0; i < b.strands; ++i) {
    if (pos[i] == initial[i]) {
      ++d.circles;  // crossing-free strand closes into a circle
      continue;
    }
    rename[pos[i]] = initial[i];
  }
  for (auto& c : d.crossings) {
    for (std::string* a : {&c.over_in, &c.over_out, &c.under_in, &c.under_out}) {
      auto it = rename.find(*a);
      if (it != rename.end()) *a = it->second;
    }
  }
  validate_diagram(d);
  return d;
}

// Renames boundary arcs to position-canonical names bi1.., bo1.. so that
// diagrams differing only in interior structure get comparable boundaries.
inline void canonicalize_boundary(TangleDiagram& d) {
  std::map<std::string, std::string> rename;
  for (size_t i = 0; i < d.boundary_in.size(); ++i)
    rename[d.boundary_in[i]] = "bi" + std::to_string(i + 1);
  for (size_t i = 0; i < d.boundary_out.size(); ++i) {
    // an arc may run boundary to boundary; in-name wins for the arc label
    if (!rename.count(d.boundary_out[i]))
      rename[d.boundary_out[i]] = "bo" + std::to_string(i + 1);
  }
  auto ren = [&](std::string& a) {
    auto it = rename.find(a);
    if (it != rename.end()) a = it->second;
  };
  for (auto& c : d.crossings) {
    ren(c.over_in);
    ren(c.over_out);
    ren(c.under_in);
    ren(c.under_out);
  }
  for (auto& a : d.boundary_in) ren(a);
  for (auto& a : d.boundary_out) ren(a);
}

inline Braid random_braid(std::mt19937& rng, int strands, int max_crossings) {
  Braid b;
  b.strands = strands;
  std::uniform_int_distribution<int> nc(0, max_crossings);
  int n = nc(rng);
  std::uniform_int_distribution<int> posd(1, strands - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int i = 0; i < n; ++i)
    b.word.push_back({posd(rng), sgn(rng) ? +1 : -1});
  return b;
}

inline TangleDiagram random_open_tangle(std::mt19937& rng, int max_crossings) {
  std::uniform_int_distribution<int> sd(2, 4);
  return braid_to_diagram(random_braid(rng, sd(rng), max_crossings), false);
}

// -- random valid graphs (GLF round trips) ------------------------------------------

inline Graph random_valid_graph(std::mt19937& rng) {
  Graph g;
  std::uniform_int_distribution<int> nn(0, 10);
  std::uniform_int_distribution<int> kd(0, 4);
  int n = nn(rng);
  std::vector<Endpoint> outs, ins;
  for (int i = 0; i < n; ++i) {
    NodeKind k = (NodeKind)kd(rng);
    std::string dec;
    if (k == NodeKind::Dilation) dec = "g" + std::to_string(i % 3);
    std::string id = "n" + std::to_string(i + 1);
    g.add_node(id, k, dec);
    for (PortRole r : roles_of(k))
      (role_is_output(r) ? outs : ins).push_back(Endpoint::port(id, r));
  }
  // pad with leaves so every port can be filled, plus a few bare strands
  std::uniform_int_distribution<int> extra(0, 3);
  int bare = extra(rng);
  int leaf = 0;
  while (outs.size() < ins.size() + bare)
    outs.push_back(Endpoint::leaf_in("in" + std::to_string(++leaf)));
  while (ins.size() < outs.size())
    ins.push_back(Endpoint::leaf_out("out" + std::to_string(++leaf)));
  std::shuffle(outs.begin(), outs.end(), rng);
  std::shuffle(ins.begin(), ins.end(), rng);
  for (size_t i = 0; i < outs.size(); ++i) g.add_edge(outs[i], ins[i]);
  std::uniform_int_distribution<int> loops(0, 2);
  g.set_loops(loops(rng));
  return g;
}

}  // namespace glc
