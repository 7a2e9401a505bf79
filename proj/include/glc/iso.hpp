#pragma once

// Boundary-labeled graph isomorphism: a kind-, decoration-, role- and
// leaf-name-preserving bijection on nodes, with equal loop counts.
// Exhaustive backtracking; graphs at desk scale are small.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glc/graph.hpp"

namespace glc {

namespace detail {

struct IsoState {
  const Graph* g1;
  const Graph* g2;
  std::map<std::string, std::string> fwd;
  std::set<std::string> used;

  // The endpoint opposite to node port (n, r) along its incident edge.
  static std::optional<Endpoint> opposite(const Graph& g, const std::string& n,
                                          PortRole r) {
    auto eid = g.edge_at(Endpoint::port(n, r));
    if (!eid) return std::nullopt;
    const Edge& e = g.edge(*eid);
    Endpoint self = Endpoint::port(n, r);
    return e.src == self ? e.dst : e.src;
  }

  bool compatible(const std::string& a, const std::string& b) const {
    const Node& na = g1->node(a);
    const Node& nb = g2->node(b);
    if (na.kind != nb.kind || na.decoration != nb.decoration) return false;
    for (PortRole r : roles_of(na.kind)) {
      auto xa = opposite(*g1, a, r);
      auto xb = opposite(*g2, b, r);
      if (xa.has_value() != xb.has_value()) return false;
      if (!xa) continue;
      if (xa->is_leaf()) {
        if (!(*xa == *xb)) return false;
        continue;
      }
      if (!xb->is_port()) return false;
      if (xa->role != xb->role) return false;
      const Node& ca = g1->node(xa->id);
      const Node& cb = g2->node(xb->id);
      if (ca.kind != cb.kind || ca.decoration != cb.decoration) return false;
      auto it = fwd.find(xa->id);
      if (it != fwd.end()) {
        if (it->second != xb->id) return false;
      } else {
        if (used.count(xb->id)) return false;
      }
    }
    return true;
  }

  bool solve(std::vector<std::string>::const_iterator it,
             std::vector<std::string>::const_iterator end) {
    if (it == end) return true;
    const std::string& a = *it;
    std::vector<std::string> cands;
    if (g2->has_node(a) && !used.count(a)) cands.push_back(a);
    for (auto& [b, n] : g2->nodes())
      if (b != a && !used.count(b)) cands.push_back(b);
    for (auto& b : cands) {
      if (!compatible(a, b)) continue;
      fwd[a] = b;
      used.insert(b);
      if (solve(std::next(it), end)) return true;
      fwd.erase(a);
      used.erase(b);
    }
    return false;
  }
};

}  // namespace detail

inline std::optional<std::map<std::string, std::string>> is_isomorphic(
    const Graph& g1, const Graph& g2) {
  if (g1.loops() != g2.loops()) return std::nullopt;
  if (g1.nodes().size() != g2.nodes().size()) return std::nullopt;
  if (g1.edges().size() != g2.edges().size()) return std::nullopt;
  if (g1.in_leaves() != g2.in_leaves()) return std::nullopt;
  if (g1.out_leaves() != g2.out_leaves()) return std::nullopt;
  // kind/decoration multisets
  std::multiset<std::pair<int, std::string>> k1, k2;
  for (auto& [id, n] : g1.nodes()) k1.insert({(int)n.kind, n.decoration});
  for (auto& [id, n] : g2.nodes()) k2.insert({(int)n.kind, n.decoration});
  if (k1 != k2) return std::nullopt;
  // bare leaf-to-leaf edges must agree verbatim
  std::multiset<std::pair<std::string, std::string>> b1, b2;
  for (auto& [id, e] : g1.edges())
    if (e.src.is_leaf() && e.dst.is_leaf()) b1.insert({e.src.id, e.dst.id});
  for (auto& [id, e] : g2.edges())
    if (e.src.is_leaf() && e.dst.is_leaf()) b2.insert({e.src.id, e.dst.id});
  if (b1 != b2) return std::nullopt;
  // a leaf's attachment (role of the port it meets) must agree
  auto leaf_sig = [](const Graph& g) {
    std::multiset<std::string> sig;
    for (auto& [id, e] : g.edges()) {
      if (e.src.is_leaf() && e.dst.is_port())
        sig.insert(e.src.id + ">" + role_name(e.dst.role));
      if (e.dst.is_leaf() && e.src.is_port())
        sig.insert(std::string(role_name(e.src.role)) + ">" + e.dst.id);
    }
    return sig;
  };
  if (leaf_sig(g1) != leaf_sig(g2)) return std::nullopt;

  detail::IsoState st{&g1, &g2, {}, {}};
  std::vector<std::string> order;
  for (auto& [id, n] : g1.nodes()) order.push_back(id);
  if (!st.solve(order.begin(), order.end())) return std::nullopt;
  return st.fwd;
}

}  // namespace glc
