#pragma once

// The moves: graphic beta in both directions (with degenerate loop
// handling), loop counter moves, fan-out restructuring, pruning, global
// fan-out, ext1; plus traces and replayable scripts.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glc/graph.hpp"

namespace glc {

enum class MoveKind {
  BetaReduce,
  BetaExpand,
  ElimLoop,
  AddLoop,
  CoAssoc,
  CoComm,
  PruneLocal,
  PruneGlobal,
  GlobalFanout,
  Ext1,
};

inline const char* move_verb(MoveKind k) {
  switch (k) {
    case MoveKind::BetaReduce: return "beta-";
    case MoveKind::BetaExpand: return "beta+";
    case MoveKind::ElimLoop: return "elim-loop";
    case MoveKind::AddLoop: return "add-loop";
    case MoveKind::CoAssoc: return "coassoc";
    case MoveKind::CoComm: return "cocomm";
    case MoveKind::PruneLocal: return "prune";
    case MoveKind::PruneGlobal: return "prune";
    case MoveKind::GlobalFanout: return "gfanout";
    case MoveKind::Ext1: return "ext1";
  }
  return "?";
}

struct MoveEntry {
  MoveKind kind;
  std::vector<std::string> args;  // script-verb arguments (site selectors)
  // loop eliminations folded into a degenerate beta; not replayed separately
  bool implicit = false;
};

struct MoveTrace {
  std::vector<MoveEntry> entries;

  int beta_count() const {
    int n = 0;
    for (auto& e : entries)
      if (e.kind == MoveKind::BetaReduce || e.kind == MoveKind::BetaExpand)
        ++n;
    return n;
  }
  int loop_elims() const {
    int n = 0;
    for (auto& e : entries)
      if (e.kind == MoveKind::ElimLoop) ++n;
    return n;
  }
  void append(const MoveTrace& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }
  std::string to_script() const {
    std::ostringstream out;
    for (auto& e : entries) {
      if (e.implicit) continue;
      out << move_verb(e.kind);
      for (auto& a : e.args) out << " " << a;
      out << "\n";
    }
    return out.str();
  }
};

// -- edge selectors ---------------------------------------------------------

inline std::string edge_selector(const Edge& e) {
  return e.src.str() + ">" + e.dst.str();
}

inline int resolve_edge(const Graph& g, const std::string& sel) {
  auto gt = sel.find('>');
  if (gt == std::string::npos)
    throw Error("bad edge selector '" + sel + "' (want <src>><dst>)");
  Endpoint s = parse_endpoint(g, sel.substr(0, gt));
  Endpoint d = parse_endpoint(g, sel.substr(gt + 1));
  auto eid = g.edge_at(s);
  if (!eid || !(g.edge(*eid).dst == d))
    throw Error("no edge matches selector '" + sel + "'");
  return *eid;
}

// -- generic strand contraction ---------------------------------------------
//
// Each pair (in-port, out-port) declares that the node owning the ports is
// being deleted and that whatever enters the in-port continues from the
// out-port. The edges entering/leaving paired ports are merged chainwise;
// pairing cycles leave node-free loops behind.

struct RewireOutcome {
  int loops_born = 0;
};

inline RewireOutcome rewire(Graph& g,
                            const std::vector<std::pair<Endpoint, Endpoint>>& pairs) {
  std::map<Endpoint, Endpoint> P;
  std::set<Endpoint> outs;
  for (auto& [i, o] : pairs) {
    P[i] = o;
    outs.insert(o);
  }
  std::set<int> visited;
  std::vector<std::pair<Endpoint, Endpoint>> merged;
  int loops = 0;
  for (auto& [i, o] : P) {
    auto e0 = g.edge_at(i);
    if (!e0) throw Error("rewire: nothing enters " + i.str());
    const Edge& e = g.edge(*e0);
    if (e.src.is_port() && outs.count(e.src)) continue;  // mid-chain or cycle
    Endpoint s = e.src;
    int cur = *e0;
    visited.insert(cur);
    while (P.count(g.edge(cur).dst)) {
      cur = *g.edge_at(P.at(g.edge(cur).dst));
      visited.insert(cur);
    }
    merged.push_back({s, g.edge(cur).dst});
  }
  for (auto& [i, o] : P) {
    int e0 = *g.edge_at(i);
    if (visited.count(e0)) continue;
    int cur = e0;
    while (!visited.count(cur)) {
      visited.insert(cur);
      cur = *g.edge_at(P.at(g.edge(cur).dst));
    }
    ++loops;
  }
  for (int id : visited) g.remove_edge(id);
  for (auto& [s, t] : merged) g.add_edge(s, t);
  for (int k = 0; k < loops; ++k) g.add_loop();
  return RewireOutcome{loops};
}

// -- graphic beta -----------------------------------------------------------

inline std::vector<int> find_beta_redexes(const Graph& g) {
  std::vector<int> ids;
  for (auto& [id, e] : g.edges()) {
    if (e.src.is_port() && e.src.role == PortRole::AOut && e.dst.is_port() &&
        e.dst.role == PortRole::FIn)
      ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return edge_selector(g.edge(a)) < edge_selector(g.edge(b));
  });
  return ids;
}

inline MoveTrace beta_reduce(Graph& g, int site) {
  if (!g.has_edge(site)) throw Error("beta-reduce: stale site");
  Edge e = g.edge(site);
  if (!e.src.is_port() || e.src.role != PortRole::AOut || !e.dst.is_port() ||
      e.dst.role != PortRole::FIn)
    throw Error("beta-reduce: edge " + edge_selector(e) + " is not a redex");
  std::string L = e.src.id, A = e.dst.id;
  MoveTrace tr;
  tr.entries.push_back({MoveKind::BetaReduce, {edge_selector(e)}, false});
  g.remove_edge(site);
  auto out = rewire(g, {{Endpoint::port(L, PortRole::In),
                         Endpoint::port(A, PortRole::Out)},
                        {Endpoint::port(A, PortRole::AIn),
                         Endpoint::port(L, PortRole::VOut)}});
  g.remove_node(L);
  g.remove_node(A);
  for (int k = 0; k < out.loops_born; ++k) {
    g.drop_loop();
    tr.entries.push_back({MoveKind::ElimLoop, {}, true});
  }
  return tr;
}

// Inserts a lambda/application pair across the ordered edge pair: the strand
// entering through the lambda continues from the under edge's far end (the
// braiding reading). With over == under a kink is created; chirality selects
// which gate the loop edge enters (A: loop is vout->ain, B: out->in).
inline MoveTrace beta_expand(Graph& g, int over, int under,
                             bool chirality_b = false) {
  if (!g.has_edge(over) || !g.has_edge(under))
    throw Error("beta-expand: edge absent");
  MoveTrace tr;
  {
    std::vector<std::string> args = {edge_selector(g.edge(over)),
                                     edge_selector(g.edge(under))};
    if (over == under && chirality_b) args.push_back("B");
    tr.entries.push_back({MoveKind::BetaExpand, args, false});
  }
  std::string L = g.fresh_node_id("L");
  g.add_node(L, NodeKind::Lambda);
  std::string A = g.fresh_node_id("A");
  g.add_node(A, NodeKind::Application);
  auto Lin = Endpoint::port(L, PortRole::In);
  auto Lv = Endpoint::port(L, PortRole::VOut);
  auto La = Endpoint::port(L, PortRole::AOut);
  auto Af = Endpoint::port(A, PortRole::FIn);
  auto Aa = Endpoint::port(A, PortRole::AIn);
  auto Ao = Endpoint::port(A, PortRole::Out);
  if (over != under) {
    Edge eo = g.edge(over), eu = g.edge(under);
    g.remove_edge(over);
    g.remove_edge(under);
    g.add_edge(eo.src, Lin);
    g.add_edge(Lv, eu.dst);
    g.add_edge(eu.src, Aa);
    g.add_edge(Ao, eo.dst);
  } else {
    Edge e = g.edge(over);
    g.remove_edge(over);
    if (!chirality_b) {
      g.add_edge(e.src, Lin);
      g.add_edge(Lv, Aa);
      g.add_edge(Ao, e.dst);
    } else {
      g.add_edge(e.src, Aa);
      g.add_edge(Ao, Lin);
      g.add_edge(Lv, e.dst);
    }
  }
  g.add_edge(La, Af);
  return tr;
}

// After a beta-expand, the created redex is the unique edge La->Af of the two
// fresh nodes; convenience for inverse checks.
inline int created_redex(const Graph& g, const MoveTrace& expand_trace) {
  (void)expand_trace;
  auto ids = find_beta_redexes(g);
  if (ids.empty()) throw Error("no redex after expand");
  return ids.back();
}

// -- loop counter moves -----------------------------------------------------

inline MoveTrace eliminate_loop(Graph& g) {
  g.drop_loop();
  MoveTrace tr;
  tr.entries.push_back({MoveKind::ElimLoop, {}, false});
  return tr;
}

inline MoveTrace add_loop(Graph& g) {
  g.add_loop();
  MoveTrace tr;
  tr.entries.push_back({MoveKind::AddLoop, {}, false});
  return tr;
}

// -- fan-out restructuring --------------------------------------------------

inline MoveTrace co_comm(Graph& g, const std::string& n) {
  if (!g.has_node(n) || g.node(n).kind != NodeKind::Fanout)
    throw Error("cocomm: '" + n + "' is not a FANOUT node");
  auto el = g.edge_at_port(n, PortRole::LOut);
  auto er = g.edge_at_port(n, PortRole::ROut);
  Endpoint d1 = g.edge(el).dst, d2 = g.edge(er).dst;
  g.remove_edge(el);
  g.remove_edge(er);
  g.add_edge(Endpoint::port(n, PortRole::LOut), d2);
  g.add_edge(Endpoint::port(n, PortRole::ROut), d1);
  MoveTrace tr;
  tr.entries.push_back({MoveKind::CoComm, {n}, false});
  return tr;
}

inline MoveTrace co_assoc(Graph& g, const std::string& a, const std::string& b) {
  if (a == b) throw Error("coassoc: need two distinct FANOUT nodes");
  for (auto* n : {&a, &b})
    if (!g.has_node(*n) || g.node(*n).kind != NodeKind::Fanout)
      throw Error("coassoc: '" + *n + "' is not a FANOUT node");
  auto bin = Endpoint::port(b, PortRole::In);
  auto al = Endpoint::port(a, PortRole::LOut);
  auto ar = Endpoint::port(a, PortRole::ROut);
  auto bl = Endpoint::port(b, PortRole::LOut);
  auto br = Endpoint::port(b, PortRole::ROut);
  bool left_comb = g.edge(g.edge_at_port(a, PortRole::LOut)).dst == bin;
  bool right_comb = g.edge(g.edge_at_port(a, PortRole::ROut)).dst == bin;
  if (left_comb == right_comb)
    throw Error("coassoc: nodes are not a two-node comb");
  Endpoint t1, t2, t3;
  if (right_comb) {
    t1 = g.edge(g.edge_at_port(a, PortRole::LOut)).dst;
    t2 = g.edge(g.edge_at_port(b, PortRole::LOut)).dst;
    t3 = g.edge(g.edge_at_port(b, PortRole::ROut)).dst;
  } else {
    t1 = g.edge(g.edge_at_port(b, PortRole::LOut)).dst;
    t2 = g.edge(g.edge_at_port(b, PortRole::ROut)).dst;
    t3 = g.edge(g.edge_at_port(a, PortRole::ROut)).dst;
  }
  for (PortRole r : {PortRole::LOut, PortRole::ROut}) {
    g.remove_edge(g.edge_at_port(a, r));
    g.remove_edge(g.edge_at_port(b, r));
  }
  if (right_comb) {
    g.add_edge(al, bin);
    g.add_edge(bl, t1);
    g.add_edge(br, t2);
    g.add_edge(ar, t3);
  } else {
    g.add_edge(ar, bin);
    g.add_edge(al, t1);
    g.add_edge(bl, t2);
    g.add_edge(br, t3);
  }
  MoveTrace tr;
  tr.entries.push_back({MoveKind::CoAssoc, {a, b}, false});
  return tr;
}

// -- pruning ----------------------------------------------------------------

namespace detail {
// The TERMINATION node consuming the edge out of (n, r), if any.
inline std::optional<std::string> top_consumer(const Graph& g,
                                               const std::string& n,
                                               PortRole r) {
  auto eid = g.edge_at(Endpoint::port(n, r));
  if (!eid) return std::nullopt;
  const Endpoint& d = g.edge(*eid).dst;
  if (d.is_port() && g.node(d.id).kind == NodeKind::Termination)
    return d.id;
  return std::nullopt;
}

inline void reterminate(Graph& g, const Endpoint& feeder_src) {
  std::string t = g.fresh_node_id("T");
  g.add_node(t, NodeKind::Termination);
  g.add_edge(feeder_src, Endpoint::port(t, PortRole::In));
}
}  // namespace detail

inline MoveTrace prune_local(Graph& g, std::string n) {  // by value: n is deleted below
  if (!g.has_node(n)) throw Error("prune: no node '" + n + "'");
  MoveTrace tr;
  tr.entries.push_back({MoveKind::PruneLocal, {n}, false});
  NodeKind k = g.node(n).kind;
  auto drop_out_edge = [&](PortRole r) {  // edge out of n.r plus its TOP node
    auto t = detail::top_consumer(g, n, r);
    g.remove_edge(g.edge_at_port(n, r));
    g.remove_node(*t);
  };
  auto cut_in_edge = [&](PortRole r) {  // edge into n.r; returns its source
    int eid = g.edge_at_port(n, r);
    Endpoint s = g.edge(eid).src;
    g.remove_edge(eid);
    return s;
  };
  if (k == NodeKind::Application) {
    if (!detail::top_consumer(g, n, PortRole::Out))
      throw Error("prune: APP '" + n + "' output is not terminated");
    drop_out_edge(PortRole::Out);
    Endpoint sf = cut_in_edge(PortRole::FIn);
    Endpoint sa = cut_in_edge(PortRole::AIn);
    g.remove_node(n);
    detail::reterminate(g, sf);
    detail::reterminate(g, sa);
    return tr;
  }
  if (k == NodeKind::Lambda) {
    if (!detail::top_consumer(g, n, PortRole::VOut) ||
        !detail::top_consumer(g, n, PortRole::AOut))
      throw Error("prune: LAMBDA '" + n + "' outputs are not both terminated");
    drop_out_edge(PortRole::VOut);
    drop_out_edge(PortRole::AOut);
    Endpoint s = cut_in_edge(PortRole::In);
    g.remove_node(n);
    detail::reterminate(g, s);
    return tr;
  }
  if (k == NodeKind::Fanout) {
    auto tl = detail::top_consumer(g, n, PortRole::LOut);
    auto tr_ = detail::top_consumer(g, n, PortRole::ROut);
    if (tl && tr_) {
      drop_out_edge(PortRole::LOut);
      drop_out_edge(PortRole::ROut);
      Endpoint s = cut_in_edge(PortRole::In);
      g.remove_node(n);
      detail::reterminate(g, s);
      return tr;
    }
    if (tl || tr_) {  // one-branch contraction to a plain edge
      PortRole dead = tl ? PortRole::LOut : PortRole::ROut;
      PortRole live = tl ? PortRole::ROut : PortRole::LOut;
      drop_out_edge(dead);
      rewire(g, {{Endpoint::port(n, PortRole::In), Endpoint::port(n, live)}});
      g.remove_node(n);
      return tr;
    }
    throw Error("prune: FANOUT '" + n + "' has no terminated output");
  }
  throw Error("prune: node '" + n + "' is not LAMBDA/APP/FANOUT");
}

inline MoveTrace prune_global(Graph& g, const std::set<std::string>& sub,
                              const std::string& name = "") {
  for (auto& n : sub)
    if (!g.has_node(n)) throw Error("prune: no node '" + n + "'");
  std::set<std::string> tops;
  for (int eid : g.edges_incident(sub)) {
    const Edge& e = g.edge(eid);
    bool src_in = e.src.is_port() && sub.count(e.src.id);
    bool dst_in = e.dst.is_port() && sub.count(e.dst.id);
    if (src_in && dst_in) continue;
    if (dst_in)
      throw Error("prune: incoming boundary edge " + edge_selector(e));
    // outgoing boundary: must feed a TERMINATION gate
    if (!e.dst.is_port() || g.node(e.dst.id).kind != NodeKind::Termination)
      throw Error("prune: boundary edge " + edge_selector(e) +
                  " does not feed a termination gate");
    tops.insert(e.dst.id);
  }
  std::set<std::string> all = sub;
  all.insert(tops.begin(), tops.end());
  for (int eid : g.edges_incident(all)) g.remove_edge(eid);
  for (auto& n : all) g.remove_node(n);
  MoveTrace tr;
  std::vector<std::string> args;
  if (!name.empty())
    args.push_back("@" + name);
  else
    args.insert(args.end(), sub.begin(), sub.end());
  tr.entries.push_back({MoveKind::PruneGlobal, args, false});
  return tr;
}

// -- global fan-out ---------------------------------------------------------

namespace detail {

struct FanoutCone {
  std::set<std::string> cone;
  int feed_edge = 0;
  std::vector<int> incoming_refs;  // reference edges into the cone
};

// The duplication cone behind a FANOUT node f: the value core backward-
// reachable from the feed edge through abstraction/application outputs,
// plus the fan-out trees of variables bound inside it and the termination
// gates it feeds. References into the cone from outside are legal and are
// reported for sharing-preserving duplication.
inline FanoutCone fanout_cone(const Graph& g, const std::string& f) {
  if (!g.has_node(f) || g.node(f).kind != NodeKind::Fanout)
    throw Error("gfanout: '" + f + "' is not a FANOUT node");
  FanoutCone c;
  c.feed_edge = g.edge_at_port(f, PortRole::In);
  const Edge& feed = g.edge(c.feed_edge);
  if (feed.src.is_leaf())
    throw Error("gfanout: cone reads IN leaf '" + feed.src.id + "'");
  if (feed.src.role != PortRole::AOut && feed.src.role != PortRole::Out)
    throw Error("gfanout: feed is a variable reference, not a value");
  // value core: cross only abstraction/application output edges backwards
  std::vector<std::string> stack = {feed.src.id};
  c.cone.insert(feed.src.id);
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    for (PortRole r : roles_of(g.node(n).kind)) {
      if (role_is_output(r)) continue;
      auto eid = g.edge_at(Endpoint::port(n, r));
      if (!eid) continue;
      const Endpoint& s = g.edge(*eid).src;
      if (!s.is_port()) continue;
      if (s.role != PortRole::AOut && s.role != PortRole::Out) continue;
      if (!c.cone.count(s.id)) {
        c.cone.insert(s.id);
        stack.push_back(s.id);
      }
    }
  }
  // pull in the fan-out trees of variables bound inside the core, and the
  // termination gates consuming core outputs
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto& [id, e] : g.edges()) {
      if (!e.src.is_port() || !e.dst.is_port()) continue;
      if (!c.cone.count(e.src.id) || c.cone.count(e.dst.id)) continue;
      if (e.dst.id == f) continue;
      NodeKind dk = g.node(e.dst.id).kind;
      bool var_edge = e.src.role == PortRole::VOut ||
                      ((e.src.role == PortRole::LOut ||
                        e.src.role == PortRole::ROut) &&
                       g.node(e.src.id).kind == NodeKind::Fanout);
      if (dk == NodeKind::Fanout && var_edge) {
        c.cone.insert(e.dst.id);
        grew = true;
      } else if (dk == NodeKind::Termination) {
        c.cone.insert(e.dst.id);
        grew = true;
      }
    }
  }
  // boundary analysis
  for (int eid : g.edges_incident(c.cone)) {
    const Edge& e = g.edge(eid);
    bool src_in = e.src.is_port() && c.cone.count(e.src.id);
    bool dst_in = e.dst.is_port() && c.cone.count(e.dst.id);
    if (src_in && dst_in) continue;
    if (src_in) {
      if (eid == c.feed_edge) continue;
      throw Error("gfanout: cone not closed, extra boundary edge " +
                  edge_selector(e));
    }
    // incoming reference
    if (e.src.is_leaf())
      throw Error("gfanout: cone reads IN leaf '" + e.src.id + "'");
    if (e.src.id == f)
      throw Error("gfanout: cyclic feed through the FANOUT node itself");
    c.incoming_refs.push_back(eid);
  }
  return c;
}

}  // namespace detail

// f is taken by value: callers often pass the node-map key, and the node
// (with the string it owns) is deleted partway through the move
inline MoveTrace global_fanout(Graph& g, std::string f) {
  auto c = detail::fanout_cone(g, f);
  Edge feed = g.edge(c.feed_edge);
  // clone the cone
  std::map<std::string, std::string> clone;
  for (auto& n : c.cone) {
    std::string cn = g.fresh_node_id(n);
    g.add_node(cn, g.node(n).kind, g.node(n).decoration);
    clone[n] = cn;
  }
  auto clone_ep = [&](const Endpoint& ep) {
    return Endpoint::port(clone.at(ep.id), ep.role);
  };
  std::vector<int> internal;
  for (int eid : g.edges_incident(c.cone)) {
    const Edge& e = g.edge(eid);
    if (e.src.is_port() && c.cone.count(e.src.id) && e.dst.is_port() &&
        c.cone.count(e.dst.id))
      internal.push_back(eid);
  }
  for (int eid : internal) {
    const Edge& e = g.edge(eid);
    g.add_edge(clone_ep(e.src), clone_ep(e.dst));
  }
  // replace the FANOUT node by the two copies' feeds
  Endpoint d1 = g.edge(g.edge_at_port(f, PortRole::LOut)).dst;
  Endpoint d2 = g.edge(g.edge_at_port(f, PortRole::ROut)).dst;
  if ((d1.is_port() && c.cone.count(d1.id)) ||
      (d2.is_port() && c.cone.count(d2.id)))
    throw Error("gfanout: FANOUT output feeds back into its own cone");
  g.remove_edge(g.edge_at_port(f, PortRole::LOut));
  g.remove_edge(g.edge_at_port(f, PortRole::ROut));
  g.remove_edge(c.feed_edge);
  g.remove_node(f);
  g.add_edge(feed.src, d1);
  g.add_edge(clone_ep(feed.src), d2);
  // duplicate incoming references through fresh FANOUT nodes
  for (int eid : c.incoming_refs) {
    Edge e = g.edge(eid);
    g.remove_edge(eid);
    std::string fn = g.fresh_node_id("F");
    g.add_node(fn, NodeKind::Fanout);
    g.add_edge(e.src, Endpoint::port(fn, PortRole::In));
    g.add_edge(Endpoint::port(fn, PortRole::LOut), e.dst);
    g.add_edge(Endpoint::port(fn, PortRole::ROut), clone_ep(e.dst));
  }
  MoveTrace tr;
  tr.entries.push_back({MoveKind::GlobalFanout, {f}, false});
  return tr;
}

// True iff global_fanout would succeed at f.
inline bool global_fanout_eligible(const Graph& g, const std::string& f) {
  try {
    auto c = detail::fanout_cone(g, f);
    Endpoint d1 = g.edge(g.edge_at_port(f, PortRole::LOut)).dst;
    Endpoint d2 = g.edge(g.edge_at_port(f, PortRole::ROut)).dst;
    if ((d1.is_port() && c.cone.count(d1.id)) ||
        (d2.is_port() && c.cone.count(d2.id)))
      return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

// -- ext1 (eta) ---------------------------------------------------------------

inline MoveTrace ext1(Graph& g, std::string L, std::string A) {  // by value: both deleted
  if (!g.has_node(L) || g.node(L).kind != NodeKind::Lambda)
    throw Error("ext1: '" + L + "' is not a LAMBDA node");
  if (!g.has_node(A) || g.node(A).kind != NodeKind::Application)
    throw Error("ext1: '" + A + "' is not an APPLICATION node");
  int e_body = g.edge_at_port(A, PortRole::Out);
  int e_var = g.edge_at_port(L, PortRole::VOut);
  if (!(g.edge(e_body).dst == Endpoint::port(L, PortRole::In)))
    throw Error("ext1: A.out does not feed L.in");
  if (!(g.edge(e_var).dst == Endpoint::port(A, PortRole::AIn)))
    throw Error("ext1: L.vout does not feed A.ain");
  const Edge& ef = g.edge(g.edge_at_port(A, PortRole::FIn));
  if (ef.src == Endpoint::port(L, PortRole::AOut))
    throw Error("ext1: pair has an extra interconnection");
  g.remove_edge(e_body);
  g.remove_edge(e_var);
  rewire(g, {{Endpoint::port(A, PortRole::FIn),
              Endpoint::port(L, PortRole::AOut)}});
  g.remove_node(L);
  g.remove_node(A);
  MoveTrace tr;
  tr.entries.push_back({MoveKind::Ext1, {L, A}, false});
  return tr;
}

// -- scripts ------------------------------------------------------------------

struct ScriptStep {
  std::string verb;
  std::vector<std::string> args;
};

struct MoveScript {
  std::vector<ScriptStep> steps;
};

inline MoveScript parse_script(const std::string& text) {
  MoveScript s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    ScriptStep st;
    if (!(ls >> st.verb)) continue;
    std::string a;
    while (ls >> a) st.args.push_back(a);
    static const std::set<std::string> verbs = {
        "beta-", "beta+", "elim-loop", "add-loop", "coassoc",
        "cocomm", "prune", "gfanout",  "ext1",     "subgraph"};
    if (!verbs.count(st.verb))
      throw Error("script line " + std::to_string(lineno) + ": unknown move '" +
                  st.verb + "'");
    s.steps.push_back(st);
  }
  return s;
}

inline std::pair<Graph, MoveTrace> apply_script(const Graph& g0,
                                                const MoveScript& s) {
  Graph g = g0;
  MoveTrace tr;
  std::map<std::string, std::set<std::string>> subgraphs;
  auto want = [&](const ScriptStep& st, size_t lo, size_t hi) {
    if (st.args.size() < lo || st.args.size() > hi)
      throw Error("script: bad arity for '" + st.verb + "'");
  };
  for (auto& st : s.steps) {
    if (st.verb == "subgraph") {
      if (st.args.size() < 2) throw Error("script: subgraph wants a name and nodes");
      subgraphs[st.args[0]] =
          std::set<std::string>(st.args.begin() + 1, st.args.end());
      continue;
    }
    if (st.verb == "beta-") {
      want(st, 1, 1);
      tr.append(beta_reduce(g, resolve_edge(g, st.args[0])));
    } else if (st.verb == "beta+") {
      want(st, 2, 3);
      bool chb = st.args.size() == 3 && st.args[2] == "B";
      if (st.args.size() == 3 && !chb)
        throw Error("script: beta+ third argument must be B");
      tr.append(beta_expand(g, resolve_edge(g, st.args[0]),
                            resolve_edge(g, st.args[1]), chb));
    } else if (st.verb == "elim-loop") {
      want(st, 0, 0);
      tr.append(eliminate_loop(g));
    } else if (st.verb == "add-loop") {
      want(st, 0, 0);
      tr.append(add_loop(g));
    } else if (st.verb == "coassoc") {
      want(st, 2, 2);
      tr.append(co_assoc(g, st.args[0], st.args[1]));
    } else if (st.verb == "cocomm") {
      want(st, 1, 1);
      tr.append(co_comm(g, st.args[0]));
    } else if (st.verb == "prune") {
      if (st.args.size() == 1 && st.args[0].rfind('@', 0) == 0) {
        std::string name = st.args[0].substr(1);
        if (!subgraphs.count(name))
          throw Error("script: unknown subgraph '@" + name + "'");
        tr.append(prune_global(g, subgraphs.at(name), name));
      } else if (st.args.size() == 1) {
        tr.append(prune_local(g, st.args[0]));
      } else {
        tr.append(prune_global(
            g, std::set<std::string>(st.args.begin(), st.args.end())));
      }
    } else if (st.verb == "gfanout") {
      want(st, 1, 1);
      tr.append(global_fanout(g, st.args[0]));
    } else if (st.verb == "ext1") {
      want(st, 2, 2);
      tr.append(ext1(g, st.args[0], st.args[1]));
    }
  }
  return {g, tr};
}

// Replays a trace as a script (implicit loop eliminations are part of the
// degenerate beta steps and are skipped).
inline Graph replay_trace(const Graph& g0, const MoveTrace& tr) {
  return apply_script(g0, parse_script(tr.to_script())).first;
}

}  // namespace glc
