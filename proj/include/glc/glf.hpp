#pragma once

// GLF text format: one record per line.
//   node <id> <LAM|FO|APP|TOP|DIL> [decoration]
//   edge <src> <dst>      endpoints are <node>.<role>, in:<name>, out:<name>
//   loops <count>
// '#' starts a comment. Emission is deterministic (sorted ids).

#include <sstream>
#include <string>
#include <vector>

#include "glc/graph.hpp"

namespace glc {

namespace detail {
inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}
}  // namespace detail

inline Graph parse_glf(const std::string& text) {
  Graph g;
  // two passes so edges may precede node declarations in the file
  std::vector<std::pair<int, std::vector<std::string>>> edge_lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "node") {
      if (toks.size() != 3 && toks.size() != 4) fail("node wants: node <id> <kind> [decoration]");
      auto k = kind_from_token(toks[2]);
      if (!k) fail("unknown node kind '" + toks[2] + "'");
      try {
        g.add_node(toks[1], *k, toks.size() == 4 ? toks[3] : "");
      } catch (const Error& e) {
        fail(e.what());
      }
    } else if (toks[0] == "edge") {
      if (toks.size() != 3) fail("edge wants: edge <src> <dst>");
      edge_lines.emplace_back(lineno, toks);
    } else if (toks[0] == "loops") {
      if (toks.size() != 2) fail("loops wants: loops <count>");
      try {
        g.set_loops(std::stoi(toks[1]));
      } catch (const std::exception&) {
        fail("bad loop count '" + toks[1] + "'");
      }
    } else {
      fail("unknown record '" + toks[0] + "'");
    }
  }
  for (auto& [ln, toks] : edge_lines) {
    lineno = ln;
    try {
      g.add_edge(parse_endpoint(g, toks[1]), parse_endpoint(g, toks[2]));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return g;
}

inline std::string emit_glf(const Graph& g) {
  std::ostringstream out;
  for (auto& [id, n] : g.nodes()) {
    out << "node " << id << " " << kind_token(n.kind);
    if (!n.decoration.empty()) out << " " << n.decoration;
    out << "\n";
  }
  std::vector<std::string> lines;
  for (auto& [id, e] : g.edges())
    lines.push_back("edge " + e.src.str() + " " + e.dst.str());
  std::sort(lines.begin(), lines.end());
  for (auto& l : lines) out << l << "\n";
  if (g.loops() > 0) out << "loops " << g.loops() << "\n";
  return out.str();
}

}  // namespace glc
