#pragma once

// Subgraph matching. A pattern is itself a Graph; its dangling ports and
// leaf-adjacent ends act as numbered boundary half-edges, so a pattern node
// may sit on arbitrary context in the host graph. Matching is injective
// exhaustive backtracking, kind/decoration/role-preserving, deterministic.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glc/graph.hpp"
#include "glc/iso.hpp"

namespace glc {

struct SubgraphMatch {
  std::map<std::string, std::string> node_binding;  // pattern node -> g node
  std::map<int, int> edge_binding;                  // pattern edge -> g edge
  // numbered pattern boundary half-edge -> incident host edge id
  std::map<int, int> boundary_binding;
};

namespace detail {

// Boundary half-edges of a pattern: every port that is dangling or meets a
// leaf-terminated edge, in deterministic (sorted endpoint) order.
inline std::vector<Endpoint> pattern_boundary(const Graph& p) {
  std::set<Endpoint> bnd;
  for (auto& [id, n] : p.nodes()) {
    for (PortRole r : roles_of(n.kind)) {
      Endpoint ep = Endpoint::port(id, r);
      auto eid = p.edge_at(ep);
      if (!eid) {
        bnd.insert(ep);
        continue;
      }
      const Edge& e = p.edge(*eid);
      Endpoint other = e.src == ep ? e.dst : e.src;
      if (other.is_leaf()) bnd.insert(ep);
    }
  }
  return {bnd.begin(), bnd.end()};
}

inline bool pattern_connected(const Graph& p) {
  if (p.nodes().empty()) return true;
  std::set<std::string> seen;
  std::vector<std::string> stack = {p.nodes().begin()->first};
  seen.insert(stack.back());
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    for (PortRole r : roles_of(p.node(n).kind)) {
      auto eid = p.edge_at(Endpoint::port(n, r));
      if (!eid) continue;
      const Edge& e = p.edge(*eid);
      for (const Endpoint* ep : {&e.src, &e.dst}) {
        if (ep->is_port() && !seen.count(ep->id)) {
          seen.insert(ep->id);
          stack.push_back(ep->id);
        }
      }
    }
  }
  return seen.size() == p.nodes().size();
}

struct MatchState {
  const Graph* g;
  const Graph* p;
  std::vector<std::string> pnodes;
  std::map<std::string, std::string> fwd;
  std::set<std::string> used;
  std::vector<std::map<std::string, std::string>> results;

  bool edges_consistent() const {
    for (auto& [id, e] : p->edges()) {
      if (!e.src.is_port() || !e.dst.is_port()) continue;
      auto a = fwd.find(e.src.id);
      auto b = fwd.find(e.dst.id);
      if (a == fwd.end() || b == fwd.end()) continue;
      Endpoint gs = Endpoint::port(a->second, e.src.role);
      Endpoint gt = Endpoint::port(b->second, e.dst.role);
      auto eid = g->edge_at(gs);
      if (!eid) return false;
      const Edge& ge = g->edge(*eid);
      if (!(ge.src == gs && ge.dst == gt)) return false;
    }
    return true;
  }

  void solve(size_t i) {
    if (i == pnodes.size()) {
      results.push_back(fwd);
      return;
    }
    const std::string& a = pnodes[i];
    const Node& na = p->node(a);
    for (auto& [b, nb] : g->nodes()) {
      if (used.count(b)) continue;
      if (nb.kind != na.kind || nb.decoration != na.decoration) continue;
      fwd[a] = b;
      used.insert(b);
      if (edges_consistent()) solve(i + 1);
      fwd.erase(a);
      used.erase(b);
    }
  }
};

}  // namespace detail

inline std::vector<SubgraphMatch> find_matches(const Graph& g, const Graph& p,
                                               size_t max_pattern_size = 64) {
  if (p.nodes().empty())
    throw Error("pattern must contain at least one node");
  if (p.nodes().size() + p.edges().size() > max_pattern_size)
    throw Error("pattern too large");
  if (!detail::pattern_connected(p)) throw Error("pattern must be connected");

  detail::MatchState st;
  st.g = &g;
  st.p = &p;
  for (auto& [id, n] : p.nodes()) st.pnodes.push_back(id);
  st.solve(0);

  std::vector<SubgraphMatch> out;
  auto boundary = detail::pattern_boundary(p);
  for (auto& fwd : st.results) {
    SubgraphMatch m;
    m.node_binding = fwd;
    bool ok = true;
    for (auto& [id, e] : p.edges()) {
      if (!e.src.is_port() || !e.dst.is_port()) continue;
      Endpoint gs = Endpoint::port(fwd.at(e.src.id), e.src.role);
      m.edge_binding[id] = *g.edge_at(gs);
    }
    int num = 0;
    for (auto& ep : boundary) {
      Endpoint gep = Endpoint::port(fwd.at(ep.id), ep.role);
      auto eid = g.edge_at(gep);
      if (!eid) {
        ok = false;  // host port dangling: invalid host, skip match
        break;
      }
      m.boundary_binding[num++] = *eid;
    }
    if (ok) out.push_back(m);
  }
  std::sort(out.begin(), out.end(),
            [](const SubgraphMatch& a, const SubgraphMatch& b) {
              return a.node_binding < b.node_binding;
            });
  return out;
}

}  // namespace glc
