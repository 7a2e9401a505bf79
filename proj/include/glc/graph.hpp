#pragma once

// Core data model: oriented trivalent port-graphs built from the gate
// alphabet (lambda, fan-out, application, termination, dilation), with
// named boundary leaves and a counter for node-free loops.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace glc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Lambda, Fanout, Application, Termination, Dilation };

enum class PortRole {
  In,    // lambda entrant / fan-out input / termination input
  VOut,  // lambda output carrying the bound variable
  AOut,  // lambda output carrying the abstraction
  FIn,   // application left input peg (the function)
  AIn,   // application argument input
  Out,   // application / dilation result
  LOut,  // fan-out left branch
  ROut,  // fan-out right branch
  In1,   // dilation inputs
  In2,
};

inline const char* kind_token(NodeKind k) {
  switch (k) {
    case NodeKind::Lambda: return "LAM";
    case NodeKind::Fanout: return "FO";
    case NodeKind::Application: return "APP";
    case NodeKind::Termination: return "TOP";
    case NodeKind::Dilation: return "DIL";
  }
  return "?";
}

inline std::optional<NodeKind> kind_from_token(const std::string& s) {
  if (s == "LAM") return NodeKind::Lambda;
  if (s == "FO") return NodeKind::Fanout;
  if (s == "APP") return NodeKind::Application;
  if (s == "TOP") return NodeKind::Termination;
  if (s == "DIL") return NodeKind::Dilation;
  return std::nullopt;
}

inline const char* role_name(PortRole r) {
  switch (r) {
    case PortRole::In: return "in";
    case PortRole::VOut: return "vout";
    case PortRole::AOut: return "aout";
    case PortRole::FIn: return "fin";
    case PortRole::AIn: return "ain";
    case PortRole::Out: return "out";
    case PortRole::LOut: return "lout";
    case PortRole::ROut: return "rout";
    case PortRole::In1: return "in1";
    case PortRole::In2: return "in2";
  }
  return "?";
}

inline bool role_is_output(PortRole r) {
  switch (r) {
    case PortRole::VOut:
    case PortRole::AOut:
    case PortRole::Out:
    case PortRole::LOut:
    case PortRole::ROut:
      return true;
    default:
      return false;
  }
}

// Fixed clockwise role order per gate kind; for lambda, index 1 is the
// entrant edge, 2 the variable output, 3 the abstraction output.
inline const std::vector<PortRole>& roles_of(NodeKind k) {
  static const std::vector<PortRole> lam = {PortRole::In, PortRole::VOut,
                                            PortRole::AOut};
  static const std::vector<PortRole> fo = {PortRole::In, PortRole::LOut,
                                           PortRole::ROut};
  static const std::vector<PortRole> app = {PortRole::FIn, PortRole::AIn,
                                            PortRole::Out};
  static const std::vector<PortRole> top = {PortRole::In};
  static const std::vector<PortRole> dil = {PortRole::In1, PortRole::In2,
                                            PortRole::Out};
  switch (k) {
    case NodeKind::Lambda: return lam;
    case NodeKind::Fanout: return fo;
    case NodeKind::Application: return app;
    case NodeKind::Termination: return top;
    case NodeKind::Dilation: return dil;
  }
  return lam;
}

inline std::optional<PortRole> role_from_name(NodeKind k, const std::string& s) {
  for (PortRole r : roles_of(k))
    if (s == role_name(r)) return r;
  return std::nullopt;
}

// An edge end: a node port, or a named boundary leaf.
struct Endpoint {
  enum class Tag { Port, LeafIn, LeafOut };
  Tag tag = Tag::Port;
  std::string id;  // node id, or leaf name
  PortRole role = PortRole::In;

  static Endpoint port(std::string node, PortRole r) {
    return Endpoint{Tag::Port, std::move(node), r};
  }
  static Endpoint leaf_in(std::string name) {
    return Endpoint{Tag::LeafIn, std::move(name), PortRole::In};
  }
  static Endpoint leaf_out(std::string name) {
    return Endpoint{Tag::LeafOut, std::move(name), PortRole::In};
  }

  bool is_port() const { return tag == Tag::Port; }
  bool is_leaf() const { return tag != Tag::Port; }

  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    return a.tag == b.tag && a.id == b.id &&
           (a.tag != Tag::Port || a.role == b.role);
  }
  friend bool operator<(const Endpoint& a, const Endpoint& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    if (a.id != b.id) return a.id < b.id;
    if (a.tag != Tag::Port) return false;
    return a.role < b.role;
  }

  std::string str() const {
    switch (tag) {
      case Tag::Port: return id + "." + role_name(role);
      case Tag::LeafIn: return "in:" + id;
      case Tag::LeafOut: return "out:" + id;
    }
    return "?";
  }
};

struct Node {
  NodeKind kind = NodeKind::Lambda;
  std::string decoration;  // opaque group label on dilation gates
};

struct Edge {
  Endpoint src;
  Endpoint dst;
  std::string str() const { return src.str() + ">" + dst.str(); }
};

struct Violation {
  std::string message;
};

class Graph {
 public:
  // -- construction -------------------------------------------------------

  void add_node(const std::string& id, NodeKind kind,
                std::string decoration = "") {
    if (id.empty()) throw Error("empty node id");
    if (nodes_.count(id)) throw Error("duplicate node id '" + id + "'");
    nodes_[id] = Node{kind, std::move(decoration)};
  }

  int add_edge(const Endpoint& src, const Endpoint& dst) {
    check_src(src);
    check_dst(dst);
    if (occupancy_.count(src))
      throw Error("duplicate port use at " + src.str());
    if (occupancy_.count(dst))
      throw Error("duplicate port use at " + dst.str());
    int id = next_edge_++;
    edges_[id] = Edge{src, dst};
    occupancy_[src] = id;
    occupancy_[dst] = id;
    return id;
  }

  void set_loops(int n) {
    if (n < 0) throw Error("negative loop count");
    loops_ = n;
  }
  void add_loop() { ++loops_; }
  void drop_loop() {
    if (loops_ == 0) throw Error("no node-free loop to eliminate");
    --loops_;
  }

  // -- access --------------------------------------------------------------

  const std::map<std::string, Node>& nodes() const { return nodes_; }
  const std::map<int, Edge>& edges() const { return edges_; }
  int loops() const { return loops_; }

  bool has_node(const std::string& id) const { return nodes_.count(id) > 0; }
  const Node& node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error("no node '" + id + "'");
    return it->second;
  }
  bool has_edge(int id) const { return edges_.count(id) > 0; }
  const Edge& edge(int id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw Error("no edge #" + std::to_string(id));
    return it->second;
  }

  std::optional<int> edge_at(const Endpoint& ep) const {
    auto it = occupancy_.find(ep);
    if (it == occupancy_.end()) return std::nullopt;
    return it->second;
  }
  // the unique edge incident to a node port; throws if dangling
  int edge_at_port(const std::string& node, PortRole r) const {
    auto e = edge_at(Endpoint::port(node, r));
    if (!e) throw Error("dangling port " + node + "." + role_name(r));
    return *e;
  }

  std::set<std::string> in_leaves() const {
    std::set<std::string> out;
    for (auto& [id, e] : edges_)
      if (e.src.tag == Endpoint::Tag::LeafIn) out.insert(e.src.id);
    return out;
  }
  std::set<std::string> out_leaves() const {
    std::set<std::string> out;
    for (auto& [id, e] : edges_)
      if (e.dst.tag == Endpoint::Tag::LeafOut) out.insert(e.dst.id);
    return out;
  }

  std::vector<int> edges_incident(const std::set<std::string>& ns) const {
    std::vector<int> out;
    for (auto& [id, e] : edges_) {
      if ((e.src.is_port() && ns.count(e.src.id)) ||
          (e.dst.is_port() && ns.count(e.dst.id)))
        out.push_back(id);
    }
    return out;
  }

  // -- mutation (used by the move implementations) -------------------------

  void remove_edge(int id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw Error("no edge #" + std::to_string(id));
    occupancy_.erase(it->second.src);
    occupancy_.erase(it->second.dst);
    edges_.erase(it);
  }

  // node must have no incident edges left
  void remove_node(const std::string& id) {
    if (!nodes_.count(id)) throw Error("no node '" + id + "'");
    for (PortRole r : roles_of(nodes_.at(id).kind))
      if (edge_at(Endpoint::port(id, r)))
        throw Error("removing node '" + id + "' with incident edges");
    nodes_.erase(id);
  }

  std::string fresh_node_id(const std::string& base) const {
    for (int i = 1;; ++i) {
      std::string id = base + std::to_string(i);
      if (!nodes_.count(id)) return id;
    }
  }

  // -- rewiring primitives ---------------------------------------------------

  // Reconnection primitive: replaces upstream and downstream by the single
  // edge upstream.src -> downstream.dst; splicing an edge with itself
  // deletes it and records one node-free loop.
  void splice(int upstream, int downstream) {
    if (!edges_.count(upstream) || !edges_.count(downstream))
      throw Error("splice: edge not present");
    if (upstream == downstream) {
      remove_edge(upstream);
      add_loop();
      return;
    }
    Endpoint s = edges_.at(upstream).src;
    Endpoint t = edges_.at(downstream).dst;
    remove_edge(upstream);
    remove_edge(downstream);
    add_edge(s, t);
  }

  std::vector<Violation> validate() const {
    std::vector<Violation> v;
    for (auto& [id, n] : nodes_) {
      for (PortRole r : roles_of(n.kind)) {
        if (!edge_at(Endpoint::port(id, r)))
          v.push_back({"dangling port " + id + "." + role_name(r)});
      }
    }
    // structural edge checks are enforced at insertion; re-verify anyway so
    // validate stays a total function over arbitrary graphs
    for (auto& [id, e] : edges_) {
      if (e.src.is_port()) {
        if (!nodes_.count(e.src.id))
          v.push_back({"edge " + e.str() + " from unknown node"});
        else if (!role_is_output(e.src.role))
          v.push_back({"edge " + e.str() + " leaves an input port"});
      }
      if (e.dst.is_port()) {
        if (!nodes_.count(e.dst.id))
          v.push_back({"edge " + e.str() + " into unknown node"});
        else if (role_is_output(e.dst.role))
          v.push_back({"edge " + e.str() + " enters an output port"});
      }
    }
    return v;
  }

 private:
  void check_src(const Endpoint& ep) const {
    if (ep.tag == Endpoint::Tag::LeafOut)
      throw Error("direction mismatch: edge from OUT leaf " + ep.str());
    if (ep.is_port()) {
      const Node& n = node(ep.id);
      bool legal = false;
      for (PortRole r : roles_of(n.kind)) legal = legal || r == ep.role;
      if (!legal)
        throw Error("unknown role for kind at " + ep.str());
      if (!role_is_output(ep.role))
        throw Error("direction mismatch: edge out of input port " + ep.str());
    }
  }
  void check_dst(const Endpoint& ep) const {
    if (ep.tag == Endpoint::Tag::LeafIn)
      throw Error("direction mismatch: edge into IN leaf " + ep.str());
    if (ep.is_port()) {
      const Node& n = node(ep.id);
      bool legal = false;
      for (PortRole r : roles_of(n.kind)) legal = legal || r == ep.role;
      if (!legal)
        throw Error("unknown role for kind at " + ep.str());
      if (role_is_output(ep.role))
        throw Error("direction mismatch: edge into output port " + ep.str());
    }
  }

  std::map<std::string, Node> nodes_;
  std::map<int, Edge> edges_;
  std::map<Endpoint, int> occupancy_;
  int loops_ = 0;
  int next_edge_ = 0;
};

// Named IN/OUT leaf partition of the boundary.
inline std::pair<std::set<std::string>, std::set<std::string>> leaves_partition(
    const Graph& g) {
  return {g.in_leaves(), g.out_leaves()};
}

// Parses an endpoint token: `<node>.<role>`, `in:<name>` or `out:<name>`.
// Role legality is resolved against the node's kind.
inline Endpoint parse_endpoint(const Graph& g, const std::string& tok) {
  if (tok.rfind("in:", 0) == 0) return Endpoint::leaf_in(tok.substr(3));
  if (tok.rfind("out:", 0) == 0) return Endpoint::leaf_out(tok.substr(4));
  auto dot = tok.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= tok.size())
    throw Error("bad endpoint '" + tok + "'");
  std::string node = tok.substr(0, dot);
  std::string role = tok.substr(dot + 1);
  if (!g.has_node(node)) throw Error("endpoint names unknown node '" + node + "'");
  auto r = role_from_name(g.node(node).kind, role);
  if (!r)
    throw Error("role '" + role + "' not valid for node '" + node + "'");
  return Endpoint::port(node, *r);
}

}  // namespace glc
