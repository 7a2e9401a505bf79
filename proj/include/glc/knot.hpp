#pragma once

// Knot sector: PD-style oriented tangle/link diagrams, crossing macros
// (LAMBDA over / APPLICATION under, connected aout->fin), diagram codecs,
// TANGLE/LINK classification, and the Reidemeister moves as certified
// graphic-beta composites.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glc/graph.hpp"
#include "glc/moves.hpp"

namespace glc {

struct Crossing {
  int sign = +1;  // diagram-level metadata
  std::string over_in, over_out, under_in, under_out;
};

struct TangleDiagram {
  std::vector<Crossing> crossings;
  std::vector<std::string> boundary_in, boundary_out;
  int circles = 0;  // crossing-free closed components
};

// -- PD text format -----------------------------------------------------------
//   x <+|-> <over_in> <over_out> <under_in> <under_out>
//   bin <arc>...
//   bout <arc>...
//   circles <n>

inline void validate_diagram(const TangleDiagram& d) {
  std::map<std::string, int> starts, ends;
  for (auto& c : d.crossings) {
    ++starts[c.over_out];
    ++starts[c.under_out];
    ++ends[c.over_in];
    ++ends[c.under_in];
  }
  for (auto& a : d.boundary_in) ++starts[a];
  for (auto& a : d.boundary_out) ++ends[a];
  std::set<std::string> arcs;
  for (auto& [a, n] : starts) arcs.insert(a);
  for (auto& [a, n] : ends) arcs.insert(a);
  for (auto& a : arcs) {
    if (starts[a] != 1 || ends[a] != 1)
      throw Error("arc '" + a + "' occurs " + std::to_string(starts[a]) +
                  " time(s) as start and " + std::to_string(ends[a]) +
                  " as end; want exactly one each");
  }
  if (d.circles < 0) throw Error("negative circle count");
}

inline TangleDiagram parse_pd(const std::string& text) {
  TangleDiagram d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& m) {
    throw Error("line " + std::to_string(lineno) + ": " + m);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "x") {
      Crossing c;
      std::string sign;
      if (!(ls >> sign >> c.over_in >> c.over_out >> c.under_in >> c.under_out))
        fail("crossing wants: x <+|-> oi oo ui uo");
      if (sign == "+") c.sign = +1;
      else if (sign == "-") c.sign = -1;
      else fail("crossing sign must be + or -");
      std::string extra;
      if (ls >> extra) fail("trailing tokens on crossing line");
      d.crossings.push_back(c);
    } else if (kw == "bin" || kw == "bout") {
      std::string a;
      auto& v = kw == "bin" ? d.boundary_in : d.boundary_out;
      while (ls >> a) v.push_back(a);
    } else if (kw == "circles") {
      if (!(ls >> d.circles)) fail("circles wants a count");
    } else {
      fail("unknown record '" + kw + "'");
    }
  }
  try {
    validate_diagram(d);
  } catch (const Error& e) {
    throw Error(std::string(e.what()));
  }
  return d;
}

inline std::string emit_pd(const TangleDiagram& d) {
  std::ostringstream out;
  for (auto& c : d.crossings)
    out << "x " << (c.sign > 0 ? "+" : "-") << " " << c.over_in << " "
        << c.over_out << " " << c.under_in << " " << c.under_out << "\n";
  if (!d.boundary_in.empty()) {
    out << "bin";
    for (auto& a : d.boundary_in) out << " " << a;
    out << "\n";
  }
  if (!d.boundary_out.empty()) {
    out << "bout";
    for (auto& a : d.boundary_out) out << " " << a;
    out << "\n";
  }
  if (d.circles > 0) out << "circles " << d.circles << "\n";
  return out.str();
}

// -- encoding ------------------------------------------------------------------

// crossing's LAMBDA node -> (APPLICATION node, sign)
struct CrossingBinding {
  std::map<std::string, std::pair<std::string, int>> by_lambda;
};

inline std::pair<Graph, CrossingBinding> encode_diagram(const TangleDiagram& d) {
  validate_diagram(d);
  Graph g;
  CrossingBinding b;
  std::map<std::string, Endpoint> arc_src, arc_dst;
  for (size_t i = 0; i < d.crossings.size(); ++i) {
    const Crossing& c = d.crossings[i];
    std::string L = "L" + std::to_string(i + 1);
    std::string A = "A" + std::to_string(i + 1);
    g.add_node(L, NodeKind::Lambda);
    g.add_node(A, NodeKind::Application);
    g.add_edge(Endpoint::port(L, PortRole::AOut), Endpoint::port(A, PortRole::FIn));
    b.by_lambda[L] = {A, c.sign};
    arc_dst[c.over_in] = Endpoint::port(L, PortRole::In);
    arc_src[c.over_out] = Endpoint::port(L, PortRole::VOut);
    arc_dst[c.under_in] = Endpoint::port(A, PortRole::AIn);
    arc_src[c.under_out] = Endpoint::port(A, PortRole::Out);
  }
  for (auto& a : d.boundary_in) arc_src[a] = Endpoint::leaf_in(a);
  for (auto& a : d.boundary_out) arc_dst[a] = Endpoint::leaf_out(a);
  for (auto& [a, s] : arc_src) g.add_edge(s, arc_dst.at(a));
  g.set_loops(d.circles);
  return {g, b};
}

// -- crossing detection and classification ---------------------------------------

// Scans lambda nodes directly (independent of the redex finder, whose
// output must coincide with these connecting edges on tangle graphs).
inline std::vector<std::pair<std::string, std::string>> detect_crossings(
    const Graph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& [id, n] : g.nodes()) {
    if (n.kind != NodeKind::Lambda) continue;
    auto eid = g.edge_at(Endpoint::port(id, PortRole::AOut));
    if (!eid) continue;
    const Endpoint& d = g.edge(*eid).dst;
    if (d.is_port() && d.role == PortRole::FIn &&
        g.node(d.id).kind == NodeKind::Application)
      out.push_back({id, d.id});
  }
  return out;
}

enum class TangleClass { Tangle, Link, Neither };

inline TangleClass classify(const Graph& g) {
  for (auto& [id, n] : g.nodes()) {
    if (n.kind == NodeKind::Fanout || n.kind == NodeKind::Termination ||
        n.kind == NodeKind::Dilation)
      return TangleClass::Neither;
  }
  for (auto& [id, n] : g.nodes()) {
    if (n.kind == NodeKind::Lambda) {
      auto e = g.edge_at(Endpoint::port(id, PortRole::AOut));
      if (!e) return TangleClass::Neither;
      const Endpoint& d = g.edge(*e).dst;
      if (!d.is_port() || d.role != PortRole::FIn) return TangleClass::Neither;
    } else if (n.kind == NodeKind::Application) {
      auto e = g.edge_at(Endpoint::port(id, PortRole::FIn));
      if (!e) return TangleClass::Neither;
      const Endpoint& s = g.edge(*e).src;
      if (!s.is_port() || s.role != PortRole::AOut) return TangleClass::Neither;
    }
  }
  // every remaining edge must be a strand edge
  for (auto& [id, e] : g.edges()) {
    if (e.src.is_port() && e.src.role == PortRole::AOut) continue;  // connecting
    bool src_ok = !e.src.is_port() || e.src.role == PortRole::VOut ||
                  e.src.role == PortRole::Out;
    bool dst_ok = !e.dst.is_port() || e.dst.role == PortRole::In ||
                  e.dst.role == PortRole::AIn;
    if (!src_ok || !dst_ok) return TangleClass::Neither;
  }
  bool closed = g.in_leaves().empty() && g.out_leaves().empty();
  return closed ? TangleClass::Link : TangleClass::Tangle;
}

// -- decoding ---------------------------------------------------------------------

inline TangleDiagram decode_to_pd(const Graph& g, const CrossingBinding& b) {
  auto pairs = detect_crossings(g);
  if (classify(g) == TangleClass::Neither)
    throw Error("decode: graph is not a tangle graph");
  std::set<std::pair<std::string, std::string>> detected(pairs.begin(),
                                                         pairs.end());
  std::set<std::pair<std::string, std::string>> bound;
  for (auto& [L, ap] : b.by_lambda) bound.insert({L, ap.first});
  if (detected != bound)
    throw Error("decode: binding does not cover the detected crossings");

  // name arcs: leaf-touched edges keep the leaf name, internal edges are fresh
  std::map<int, std::string> arc;
  std::set<std::string> used;
  for (auto& [id, e] : g.edges()) {
    if (e.src.is_port() && e.src.role == PortRole::AOut) continue;
    if (e.src.is_leaf()) {
      arc[id] = e.src.id;
      used.insert(e.src.id);
    } else if (e.dst.is_leaf()) {
      arc[id] = e.dst.id;
      used.insert(e.dst.id);
    }
  }
  int k = 0;
  for (auto& [id, e] : g.edges()) {
    if (e.src.is_port() && e.src.role == PortRole::AOut) continue;
    if (arc.count(id)) continue;
    std::string n;
    do {
      n = "a" + std::to_string(++k);
    } while (used.count(n));
    arc[id] = n;
  }

  TangleDiagram d;
  for (auto& [L, ap] : b.by_lambda) {
    Crossing c;
    c.sign = ap.second;
    const std::string& A = ap.first;
    c.over_in = arc.at(g.edge_at_port(L, PortRole::In));
    c.over_out = arc.at(g.edge_at_port(L, PortRole::VOut));
    c.under_in = arc.at(g.edge_at_port(A, PortRole::AIn));
    c.under_out = arc.at(g.edge_at_port(A, PortRole::Out));
    d.crossings.push_back(c);
  }
  // boundary lists carry arc names (a boundary-to-boundary strand is a
  // single arc even when its two leaf endpoints are named differently)
  std::map<std::string, std::string> bins, bouts;
  for (auto& [id, e] : g.edges()) {
    if (e.src.tag == Endpoint::Tag::LeafIn) bins[e.src.id] = arc.at(id);
    if (e.dst.tag == Endpoint::Tag::LeafOut) bouts[e.dst.id] = arc.at(id);
  }
  for (auto& [leaf, a] : bins) d.boundary_in.push_back(a);
  for (auto& [leaf, a] : bouts) d.boundary_out.push_back(a);
  d.circles = g.loops();
  validate_diagram(d);
  return d;
}

// -- diagram comparison up to arc relabeling --------------------------------------

namespace detail {

struct DiagMatch {
  const TangleDiagram* d1;
  const TangleDiagram* d2;
  std::map<std::string, std::string> phi;
  std::map<std::string, std::string> inv;
  std::vector<bool> taken;

  bool bind(const std::string& a, const std::string& b) {
    auto it = phi.find(a);
    if (it != phi.end()) return it->second == b;
    auto jt = inv.find(b);
    if (jt != inv.end()) return false;
    phi[a] = b;
    inv[b] = a;
    return true;
  }
  void unbind_to(size_t n, std::vector<std::pair<std::string, std::string>>& log) {
    while (log.size() > n) {
      phi.erase(log.back().first);
      inv.erase(log.back().second);
      log.pop_back();
    }
  }

  bool solve(size_t i, std::vector<std::pair<std::string, std::string>>& log) {
    if (i == d1->crossings.size()) return true;
    const Crossing& c1 = d1->crossings[i];
    for (size_t j = 0; j < d2->crossings.size(); ++j) {
      if (taken[j]) continue;
      const Crossing& c2 = d2->crossings[j];
      if (c1.sign != c2.sign) continue;
      size_t mark = log.size();
      auto try_bind = [&](const std::string& a, const std::string& b) {
        size_t before = phi.size();
        if (!bind(a, b)) return false;
        if (phi.size() > before) log.push_back({a, b});
        return true;
      };
      if (try_bind(c1.over_in, c2.over_in) &&
          try_bind(c1.over_out, c2.over_out) &&
          try_bind(c1.under_in, c2.under_in) &&
          try_bind(c1.under_out, c2.under_out)) {
        taken[j] = true;
        if (solve(i + 1, log)) return true;
        taken[j] = false;
      }
      unbind_to(mark, log);
    }
    return false;
  }
};

}  // namespace detail

inline bool diagram_eq_relabel(const TangleDiagram& d1, const TangleDiagram& d2) {
  if (d1.circles != d2.circles) return false;
  if (d1.crossings.size() != d2.crossings.size()) return false;
  if (d1.boundary_in.size() != d2.boundary_in.size()) return false;
  if (d1.boundary_out.size() != d2.boundary_out.size()) return false;
  detail::DiagMatch m{&d1, &d2, {}, {}, std::vector<bool>(d2.crossings.size())};
  std::vector<std::pair<std::string, std::string>> log;
  for (size_t i = 0; i < d1.boundary_in.size(); ++i)
    if (!m.bind(d1.boundary_in[i], d2.boundary_in[i])) return false;
  for (size_t i = 0; i < d1.boundary_out.size(); ++i)
    if (!m.bind(d1.boundary_out[i], d2.boundary_out[i])) return false;
  return m.solve(0, log);
}

// -- Reidemeister moves -------------------------------------------------------------

namespace detail {
inline int connecting_edge(const Graph& g, const std::string& L,
                           const std::string& A) {
  auto eid = g.edge_at(Endpoint::port(L, PortRole::AOut));
  if (!eid || !(g.edge(*eid).dst == Endpoint::port(A, PortRole::FIn)))
    throw Error("nodes '" + L + "','" + A + "' are not a crossing pair");
  return *eid;
}
inline bool has_edge_between(const Graph& g, const Endpoint& s, const Endpoint& d) {
  auto eid = g.edge_at(s);
  return eid && g.edge(*eid).dst == d;
}
// the pair of fresh nodes created by the latest beta_expand
inline std::pair<std::string, std::string> new_pair(
    const std::set<std::string>& before, const Graph& after) {
  std::string L, A;
  for (auto& [id, n] : after.nodes()) {
    if (before.count(id)) continue;
    (n.kind == NodeKind::Lambda ? L : A) = id;
  }
  return {L, A};
}
inline std::set<std::string> node_ids(const Graph& g) {
  std::set<std::string> s;
  for (auto& [id, n] : g.nodes()) s.insert(id);
  return s;
}
}  // namespace detail

enum class Chirality { A, B };

// kink removal: the crossing's strand loops back on itself
inline MoveTrace reidemeister_r1_remove(Graph& g, const std::string& L,
                                        const std::string& A) {
  int conn = detail::connecting_edge(g, L, A);
  bool kink_a = detail::has_edge_between(g, Endpoint::port(L, PortRole::VOut),
                                         Endpoint::port(A, PortRole::AIn));
  bool kink_b = detail::has_edge_between(g, Endpoint::port(A, PortRole::Out),
                                         Endpoint::port(L, PortRole::In));
  if (!kink_a && !kink_b)
    throw Error("r1: crossing ('" + L + "','" + A + "') is not a kink");
  return beta_reduce(g, conn);
}

inline MoveTrace reidemeister_r1_insert(Graph& g, int strand_edge,
                                        Chirality ch) {
  return beta_expand(g, strand_edge, strand_edge, ch == Chirality::B);
}

// R2a removal: two crossings whose over strand runs L1.vout->L2.in and whose
// under strand runs A1.out->A2.ain
inline MoveTrace reidemeister_r2a_remove(Graph& g, const std::string& L1,
                                         const std::string& A1,
                                         const std::string& L2,
                                         const std::string& A2) {
  int c1 = detail::connecting_edge(g, L1, A1);
  detail::connecting_edge(g, L2, A2);
  if (!detail::has_edge_between(g, Endpoint::port(L1, PortRole::VOut),
                                Endpoint::port(L2, PortRole::In)) ||
      !detail::has_edge_between(g, Endpoint::port(A1, PortRole::Out),
                                Endpoint::port(A2, PortRole::AIn)))
    throw Error("r2a: crossings do not form the parallel-strand pattern");
  MoveTrace tr = beta_reduce(g, c1);
  tr.append(beta_reduce(g, detail::connecting_edge(g, L2, A2)));
  return tr;
}

inline MoveTrace reidemeister_r2a_insert(Graph& g, int strand1, int strand2) {
  if (strand1 == strand2) throw Error("r2a: need two distinct strand edges");
  auto before = detail::node_ids(g);
  MoveTrace tr = beta_expand(g, strand1, strand2);
  auto [L1, A1] = detail::new_pair(before, g);
  int over2 = g.edge_at_port(L1, PortRole::VOut);
  int under2 = g.edge_at_port(A1, PortRole::Out);
  tr.append(beta_expand(g, over2, under2));
  return tr;
}

// R3a: the triangle pattern. LHS: L1.vout->L2.in, A1.out->L3.in,
// A2.out->A3.ain. RHS: A1.out->A2.ain, L1.vout->A3.ain, L2.vout->L3.in.
// Both directions are composites of 3 unbraidings + 3 braidings.
namespace detail {

struct R3Site {
  std::string L1, A1, L2, A2, L3, A3;
};

inline void check_externals(const Graph& g, const R3Site& s,
                            const std::vector<Endpoint>& ports) {
  std::set<std::string> pat = {s.L1, s.A1, s.L2, s.A2, s.L3, s.A3};
  for (auto& p : ports) {
    auto eid = g.edge_at(p);
    if (!eid) throw Error("r3a: dangling pattern port " + p.str());
    const Edge& e = g.edge(*eid);
    const Endpoint& far = e.src == p ? e.dst : e.src;
    if (far.is_port() && pat.count(far.id))
      throw Error("r3a: pattern is not embedded with free strands at " +
                  p.str());
  }
}

}  // namespace detail

inline MoveTrace reidemeister_r3a(Graph& g, const std::string& L1,
                                  const std::string& A1, const std::string& L2,
                                  const std::string& A2, const std::string& L3,
                                  const std::string& A3, bool backward = false) {
  detail::R3Site s{L1, A1, L2, A2, L3, A3};
  int c1 = detail::connecting_edge(g, L1, A1);
  int c2 = detail::connecting_edge(g, L2, A2);
  int c3 = detail::connecting_edge(g, L3, A3);
  auto P = [&](const std::string& n, PortRole r) { return Endpoint::port(n, r); };
  Endpoint in1, in2, in3;  // boundary feeders of the three strands
  if (!backward) {
    if (!detail::has_edge_between(g, P(L1, PortRole::VOut), P(L2, PortRole::In)) ||
        !detail::has_edge_between(g, P(A1, PortRole::Out), P(L3, PortRole::In)) ||
        !detail::has_edge_between(g, P(A2, PortRole::Out), P(A3, PortRole::AIn)))
      throw Error("r3a: crossings do not form the LHS triangle pattern");
    detail::check_externals(
        g, s,
        {P(L1, PortRole::In), P(A1, PortRole::AIn), P(A2, PortRole::AIn),
         P(A3, PortRole::Out), P(L3, PortRole::VOut), P(L2, PortRole::VOut)});
    in1 = g.edge(g.edge_at_port(L1, PortRole::In)).src;
    in2 = g.edge(g.edge_at_port(A1, PortRole::AIn)).src;
    in3 = g.edge(g.edge_at_port(A2, PortRole::AIn)).src;
  } else {
    if (!detail::has_edge_between(g, P(A1, PortRole::Out), P(A2, PortRole::AIn)) ||
        !detail::has_edge_between(g, P(L1, PortRole::VOut), P(A3, PortRole::AIn)) ||
        !detail::has_edge_between(g, P(L2, PortRole::VOut), P(L3, PortRole::In)))
      throw Error("r3a: crossings do not form the RHS triangle pattern");
    detail::check_externals(
        g, s,
        {P(L2, PortRole::In), P(L1, PortRole::In), P(A1, PortRole::AIn),
         P(A2, PortRole::Out), P(A3, PortRole::Out), P(L3, PortRole::VOut)});
    in1 = g.edge(g.edge_at_port(L2, PortRole::In)).src;
    in2 = g.edge(g.edge_at_port(L1, PortRole::In)).src;
    in3 = g.edge(g.edge_at_port(A1, PortRole::AIn)).src;
  }
  // unbraid all three crossings, leaving three parallel strands
  MoveTrace tr = beta_reduce(g, c1);
  tr.append(beta_reduce(g, c2));
  tr.append(beta_reduce(g, c3));
  int s1 = *g.edge_at(in1), s2 = *g.edge_at(in2), s3 = *g.edge_at(in3);
  // rebraid at the transposed positions
  if (!backward) {
    auto before = detail::node_ids(g);
    tr.append(beta_expand(g, s2, s3));
    auto [Lx, Ax] = detail::new_pair(before, g);
    int s1b = *g.edge_at(in1);
    before = detail::node_ids(g);
    tr.append(beta_expand(g, s1b, g.edge_at_port(Ax, PortRole::Out)));
    auto [Ly, Ay] = detail::new_pair(before, g);
    tr.append(beta_expand(g, g.edge_at_port(Ly, PortRole::VOut),
                          g.edge_at_port(Lx, PortRole::VOut)));
  } else {
    auto before = detail::node_ids(g);
    tr.append(beta_expand(g, s1, s2));
    auto [Lp, Ap] = detail::new_pair(before, g);
    int s3b = *g.edge_at(in3);
    before = detail::node_ids(g);
    tr.append(beta_expand(g, g.edge_at_port(Lp, PortRole::VOut), s3b));
    auto [Lq, Aq] = detail::new_pair(before, g);
    tr.append(beta_expand(g, g.edge_at_port(Ap, PortRole::Out),
                          g.edge_at_port(Aq, PortRole::Out)));
  }
  return tr;
}

}  // namespace glc
