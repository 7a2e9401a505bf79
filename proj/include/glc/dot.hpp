#pragma once

// DOT export: gates as ellipses labelled by kind (+ decoration), leaves as
// boxes, edges labelled source-role -> target-role. Deterministic output.

#include <sstream>
#include <string>

#include "glc/graph.hpp"

namespace glc {

inline std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "digraph glc {\n";
  if (g.loops() > 0) out << "  // node-free loops: " << g.loops() << "\n";
  for (auto& [id, n] : g.nodes()) {
    out << "  \"" << id << "\" [shape=ellipse,label=\"" << kind_token(n.kind);
    if (!n.decoration.empty()) out << " " << n.decoration;
    out << "\\n" << id << "\"];\n";
  }
  for (auto name : g.in_leaves())
    out << "  \"in:" << name << "\" [shape=box,label=\"" << name << "\"];\n";
  for (auto name : g.out_leaves())
    out << "  \"out:" << name << "\" [shape=box,label=\"" << name << "\"];\n";
  std::vector<std::string> lines;
  for (auto& [id, e] : g.edges()) {
    auto node_of = [](const Endpoint& ep) {
      if (ep.is_port()) return std::string("\"") + ep.id + "\"";
      return "\"" + ep.str() + "\"";
    };
    auto role_of = [](const Endpoint& ep) {
      return ep.is_port() ? std::string(role_name(ep.role))
                          : std::string("leaf");
    };
    lines.push_back("  " + node_of(e.src) + " -> " + node_of(e.dst) +
                    " [label=\"" + role_of(e.src) + "→" + role_of(e.dst) +
                    "\"];\n");
  }
  std::sort(lines.begin(), lines.end());
  for (auto& l : lines) out << l;
  out << "}\n";
  return out.str();
}

}  // namespace glc
