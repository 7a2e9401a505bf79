#pragma once

// Lambda sector: term syntax, encoding into lambda-graphs, the global
// lambda-graph condition, graph reduction, readback, and an independent
// substitution-based reference evaluator.

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glc/graph.hpp"
#include "glc/moves.hpp"

namespace glc {

// -- terms --------------------------------------------------------------------

struct LambdaTerm;
using Term = std::shared_ptr<const LambdaTerm>;

struct LambdaTerm {
  enum class Tag { Var, Abs, App };
  Tag tag;
  std::string name;  // Var / Abs binder
  Term a, b;         // Abs: a = body; App: a = fun, b = arg
};

inline Term var(std::string n) {
  return std::make_shared<LambdaTerm>(LambdaTerm{LambdaTerm::Tag::Var, std::move(n), nullptr, nullptr});
}
inline Term abs(std::string n, Term body) {
  return std::make_shared<LambdaTerm>(LambdaTerm{LambdaTerm::Tag::Abs, std::move(n), std::move(body), nullptr});
}
inline Term app(Term f, Term x) {
  return std::make_shared<LambdaTerm>(LambdaTerm{LambdaTerm::Tag::App, "", std::move(f), std::move(x)});
}

inline std::string term_str(const Term& t) {
  switch (t->tag) {
    case LambdaTerm::Tag::Var:
      return t->name;
    case LambdaTerm::Tag::Abs:
      return "\\" + t->name + "." + term_str(t->a);
    case LambdaTerm::Tag::App: {
      std::string f = term_str(t->a);
      if (t->a->tag == LambdaTerm::Tag::Abs) f = "(" + f + ")";
      std::string x = term_str(t->b);
      if (t->b->tag != LambdaTerm::Tag::Var) x = "(" + x + ")";
      return f + " " + x;
    }
  }
  return "?";
}

// grammar: term := '\' ident '.' term | appterm
//          appterm := appterm atom | atom
//          atom := ident | '(' term ')'
class TermParser {
 public:
  explicit TermParser(const std::string& s) : s_(s) {}
  Term parse() {
    Term t = term();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  Term term() {
    skip();
    if (peek() == '\\') {
      ++pos_;
      std::string n = ident();
      skip();
      if (peek() != '.') fail("expected '.'");
      ++pos_;
      return abs(n, term());
    }
    return appterm();
  }
  Term appterm() {
    Term t = atom();
    while (true) {
      skip();
      char c = peek();
      if (c != '(' && !isalnum((unsigned char)c)) return t;
      if (c == '\\') return t;
      t = app(t, atom());
    }
  }
  Term atom() {
    skip();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Term t = term();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    if (isalnum((unsigned char)c)) return var(ident());
    fail("expected term");
    return nullptr;
  }
  std::string ident() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && isalnum((unsigned char)s_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return s_.substr(start, pos_ - start);
  }
  void skip() {
    while (pos_ < s_.size() && isspace((unsigned char)s_[pos_])) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  [[noreturn]] void fail(const std::string& m) {
    throw Error("term syntax error at position " + std::to_string(pos_) + ": " + m);
  }
  const std::string& s_;
  size_t pos_ = 0;
};

inline Term parse_term(const std::string& s) { return TermParser(s).parse(); }

// -- alpha equality (de Bruijn comparison) -------------------------------------

inline bool alpha_eq_rec(const Term& t1, const Term& t2,
                         std::map<std::string, int>& e1,
                         std::map<std::string, int>& e2, int depth) {
  if (t1->tag != t2->tag) return false;
  switch (t1->tag) {
    case LambdaTerm::Tag::Var: {
      auto i1 = e1.find(t1->name), i2 = e2.find(t2->name);
      if ((i1 != e1.end()) != (i2 != e2.end())) return false;
      if (i1 != e1.end()) return i1->second == i2->second;
      return t1->name == t2->name;  // both free
    }
    case LambdaTerm::Tag::Abs: {
      auto o1 = e1.count(t1->name) ? std::optional<int>(e1[t1->name]) : std::nullopt;
      auto o2 = e2.count(t2->name) ? std::optional<int>(e2[t2->name]) : std::nullopt;
      e1[t1->name] = depth;
      e2[t2->name] = depth;
      bool ok = alpha_eq_rec(t1->a, t2->a, e1, e2, depth + 1);
      if (o1) e1[t1->name] = *o1; else e1.erase(t1->name);
      if (o2) e2[t2->name] = *o2; else e2.erase(t2->name);
      return ok;
    }
    case LambdaTerm::Tag::App:
      return alpha_eq_rec(t1->a, t2->a, e1, e2, depth) &&
             alpha_eq_rec(t1->b, t2->b, e1, e2, depth);
  }
  return false;
}

inline bool alpha_eq(const Term& t1, const Term& t2) {
  std::map<std::string, int> e1, e2;
  return alpha_eq_rec(t1, t2, e1, e2, 0);
}

// -- reference evaluator (normal order, capture-avoiding) ----------------------

inline void free_vars(const Term& t, std::set<std::string>& bound,
                      std::set<std::string>& out) {
  switch (t->tag) {
    case LambdaTerm::Tag::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case LambdaTerm::Tag::Abs: {
      bool had = bound.count(t->name);
      bound.insert(t->name);
      free_vars(t->a, bound, out);
      if (!had) bound.erase(t->name);
      break;
    }
    case LambdaTerm::Tag::App:
      free_vars(t->a, bound, out);
      free_vars(t->b, bound, out);
      break;
  }
}

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  free_vars(t, bound, out);
  return out;
}

inline std::string fresh_name(const std::string& base,
                              const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string n = base + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

inline Term subst(const Term& t, const std::string& x, const Term& v) {
  switch (t->tag) {
    case LambdaTerm::Tag::Var:
      return t->name == x ? v : t;
    case LambdaTerm::Tag::Abs: {
      if (t->name == x) return t;
      auto fv = free_vars(v);
      if (fv.count(t->name)) {
        auto avoid = fv;
        auto bodyfv = free_vars(t->a);
        avoid.insert(bodyfv.begin(), bodyfv.end());
        avoid.insert(x);
        std::string n = fresh_name(t->name, avoid);
        Term renamed = subst(t->a, t->name, var(n));
        return abs(n, subst(renamed, x, v));
      }
      return abs(t->name, subst(t->a, x, v));
    }
    case LambdaTerm::Tag::App:
      return app(subst(t->a, x, v), subst(t->b, x, v));
  }
  return t;
}

inline std::optional<Term> beta_step(const Term& t) {
  switch (t->tag) {
    case LambdaTerm::Tag::Var:
      return std::nullopt;
    case LambdaTerm::Tag::Abs: {
      auto s = beta_step(t->a);
      if (s) return abs(t->name, *s);
      return std::nullopt;
    }
    case LambdaTerm::Tag::App: {
      if (t->a->tag == LambdaTerm::Tag::Abs)
        return subst(t->a->a, t->a->name, t->b);
      auto sf = beta_step(t->a);
      if (sf) return app(*sf, t->b);
      auto sx = beta_step(t->b);
      if (sx) return app(t->a, *sx);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

enum class EvalStatus { Normal, FuelExhausted };

inline std::pair<Term, EvalStatus> reference_eval(Term t, int fuel) {
  for (int i = 0; i < fuel; ++i) {
    auto s = beta_step(t);
    if (!s) return {t, EvalStatus::Normal};
    t = *s;
  }
  return {beta_step(t) ? t : t,
          beta_step(t) ? EvalStatus::FuelExhausted : EvalStatus::Normal};
}

// -- encoding -------------------------------------------------------------------

namespace detail {

struct Encoder {
  Graph g;
  std::map<std::string, std::vector<Endpoint>> uses;  // var -> pending targets

  // Wires the value of t into the input endpoint `target`.
  void encode(const Term& t, const Endpoint& target) {
    switch (t->tag) {
      case LambdaTerm::Tag::Var:
        uses[t->name].push_back(target);
        break;
      case LambdaTerm::Tag::Abs: {
        std::string L = g.fresh_node_id("L");
        g.add_node(L, NodeKind::Lambda);
        g.add_edge(Endpoint::port(L, PortRole::AOut), target);
        auto saved = uses.count(t->name)
                         ? std::optional(uses[t->name])
                         : std::nullopt;
        uses[t->name].clear();
        encode(t->a, Endpoint::port(L, PortRole::In));
        auto occ = uses[t->name];
        if (saved) uses[t->name] = *saved; else uses.erase(t->name);
        fan(Endpoint::port(L, PortRole::VOut), occ);
        break;
      }
      case LambdaTerm::Tag::App: {
        std::string A = g.fresh_node_id("A");
        g.add_node(A, NodeKind::Application);
        g.add_edge(Endpoint::port(A, PortRole::Out), target);
        encode(t->a, Endpoint::port(A, PortRole::FIn));
        encode(t->b, Endpoint::port(A, PortRole::AIn));
        break;
      }
    }
  }

  // Wires a source to its occurrence targets through a right-comb fan-out
  // tree (0 occurrences terminate; 1 connects directly).
  void fan(const Endpoint& src, const std::vector<Endpoint>& targets) {
    if (targets.empty()) {
      std::string T = g.fresh_node_id("T");
      g.add_node(T, NodeKind::Termination);
      g.add_edge(src, Endpoint::port(T, PortRole::In));
      return;
    }
    Endpoint cur = src;
    for (size_t i = 0; i + 1 < targets.size(); ++i) {
      std::string F = g.fresh_node_id("F");
      g.add_node(F, NodeKind::Fanout);
      g.add_edge(cur, Endpoint::port(F, PortRole::In));
      g.add_edge(Endpoint::port(F, PortRole::LOut), targets[i]);
      cur = Endpoint::port(F, PortRole::ROut);
    }
    g.add_edge(cur, targets.back());
  }
};

}  // namespace detail

inline Graph encode_term(const Term& t) {
  detail::Encoder enc;
  enc.encode(t, Endpoint::leaf_out("root"));
  // remaining uses are free variables: IN leaves with fan-out combs
  for (auto& [name, targets] : enc.uses)
    if (!targets.empty()) enc.fan(Endpoint::leaf_in(name), targets);
  return enc.g;
}

// -- lambda-graph condition ------------------------------------------------------

struct LambdaGraphReport {
  bool is_lambda_graph = true;
  std::vector<std::string> violations;
};

inline LambdaGraphReport is_lambda_graph(const Graph& g) {
  LambdaGraphReport rep;
  auto bad = [&](const std::string& m) {
    rep.is_lambda_graph = false;
    rep.violations.push_back(m);
  };
  for (auto& [id, n] : g.nodes())
    if (n.kind == NodeKind::Dilation) bad("dilation gate '" + id + "' present");
  if (g.out_leaves().size() != 1)
    bad("a lambda-graph has exactly one out leaf (the root)");
  if (!rep.is_lambda_graph) return rep;

  // Forward edge traversal with cycle detection: 0 unseen, 1 on path, 2 safe.
  std::map<int, int> color;
  // Returns empty string if all paths from edge eid terminate at a
  // termination gate or a lambda entrant.
  std::function<std::string(int)> walk = [&](int eid) -> std::string {
    auto it = color.find(eid);
    if (it != color.end()) {
      if (it->second == 1) return "variable path loops without a binder";
      return "";
    }
    color[eid] = 1;
    const Endpoint& d = g.edge(eid).dst;
    std::string err;
    if (d.is_leaf()) {
      err = "variable path escapes to OUT leaf '" + d.id + "'";
    } else {
      NodeKind k = g.node(d.id).kind;
      if (k == NodeKind::Termination || k == NodeKind::Lambda) {
        err = "";  // terminates successfully
      } else if (k == NodeKind::Fanout) {
        err = walk(g.edge_at_port(d.id, PortRole::LOut));
        if (err.empty()) err = walk(g.edge_at_port(d.id, PortRole::ROut));
      } else if (k == NodeKind::Application) {
        err = walk(g.edge_at_port(d.id, PortRole::Out));
      } else {
        err = "variable path reaches a dilation gate";
      }
    }
    color[eid] = 2;
    if (!err.empty()) rep.is_lambda_graph = false;
    return err;
  };
  for (auto& [id, n] : g.nodes()) {
    if (n.kind != NodeKind::Lambda) continue;
    auto e = g.edge_at(Endpoint::port(id, PortRole::VOut));
    if (!e) {
      bad("lambda '" + id + "' has a dangling variable port");
      continue;
    }
    std::string err = walk(*e);
    if (!err.empty()) bad("lambda '" + id + "': " + err);
  }
  return rep;
}

// -- readback ---------------------------------------------------------------------

namespace detail {

struct Reader {
  const Graph& g;
  std::map<std::string, std::string> names;  // lambda node -> variable name
  std::set<std::string> avoid;
  int counter = 0;
  int fuel;

  std::string name_of(const std::string& lam) {
    auto it = names.find(lam);
    if (it != names.end()) return it->second;
    std::string n;
    do {
      n = "x" + std::to_string(++counter);
    } while (avoid.count(n));
    names[lam] = n;
    return n;
  }

  Term read(const Endpoint& src) {
    if (--fuel < 0) throw Error("readback: traversal budget exceeded (cycle?)");
    if (src.is_leaf()) return var(src.id);
    switch (src.role) {
      case PortRole::AOut: {
        std::string n = name_of(src.id);
        const Edge& body = g.edge(g.edge_at_port(src.id, PortRole::In));
        return abs(n, read(body.src));
      }
      case PortRole::Out: {
        if (g.node(src.id).kind != NodeKind::Application)
          throw Error("readback: dilation gate reached");
        const Edge& f = g.edge(g.edge_at_port(src.id, PortRole::FIn));
        const Edge& x = g.edge(g.edge_at_port(src.id, PortRole::AIn));
        return app(read(f.src), read(x.src));
      }
      case PortRole::LOut:
      case PortRole::ROut: {
        const Edge& in = g.edge(g.edge_at_port(src.id, PortRole::In));
        return read(in.src);
      }
      case PortRole::VOut:
        return var(name_of(src.id));
      default:
        throw Error("readback: unexpected endpoint " + src.str());
    }
  }
};

}  // namespace detail

inline Term readback(const Graph& g) {
  auto outs = g.out_leaves();
  if (outs.size() != 1)
    throw Error("readback: graph has " + std::to_string(outs.size()) +
                " OUT leaves, want exactly 1");
  detail::Reader r{g, {}, g.in_leaves(), 0,
                   (int)(g.nodes().size() + g.edges().size() + 16) * 1024};
  Endpoint root;
  for (auto& [id, e] : g.edges())
    if (e.dst.tag == Endpoint::Tag::LeafOut) root = e.src;
  return r.read(root);
}

// -- graph reduction ---------------------------------------------------------------

namespace detail {

// Leftmost-outermost redex by backward traversal from the unique OUT leaf;
// falls back to selector order when the root is not unique.
inline std::optional<int> first_redex(const Graph& g) {
  auto all = find_beta_redexes(g);
  if (all.empty()) return std::nullopt;
  auto outs = g.out_leaves();
  if (outs.size() != 1) return all.front();
  Endpoint root;
  for (auto& [id, e] : g.edges())
    if (e.dst.tag == Endpoint::Tag::LeafOut) root = e.src;
  std::set<std::string> visited;
  std::function<std::optional<int>(const Endpoint&)> visit =
      [&](const Endpoint& src) -> std::optional<int> {
    if (src.is_leaf()) return std::nullopt;
    if (visited.count(src.id)) return std::nullopt;
    visited.insert(src.id);
    switch (src.role) {
      case PortRole::Out: {
        if (g.node(src.id).kind != NodeKind::Application) return std::nullopt;
        int ef = g.edge_at_port(src.id, PortRole::FIn);
        const Endpoint& fs = g.edge(ef).src;
        if (fs.is_port() && fs.role == PortRole::AOut) return ef;
        auto r = visit(fs);
        if (r) return r;
        return visit(g.edge(g.edge_at_port(src.id, PortRole::AIn)).src);
      }
      case PortRole::AOut:
        return visit(g.edge(g.edge_at_port(src.id, PortRole::In)).src);
      case PortRole::LOut:
      case PortRole::ROut:
        return visit(g.edge(g.edge_at_port(src.id, PortRole::In)).src);
      case PortRole::VOut:
      default:
        return std::nullopt;
    }
  };
  // a redex the root cannot see lives in a discarded region; leave it to
  // pruning rather than reduce it (it may diverge without being needed)
  return visit(root);
}

// A fan-out duplication is worth doing when it copies an abstraction toward
// a function position (it manufactures a redex).
inline bool fanout_productive(const Graph& g, const std::string& f) {
  const Edge& feed = g.edge(g.edge_at_port(f, PortRole::In));
  if (!feed.src.is_port() || feed.src.role != PortRole::AOut) return false;
  std::set<std::string> seen;
  std::vector<std::string> stack = {f};
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    if (seen.count(n)) continue;
    seen.insert(n);
    for (PortRole r : {PortRole::LOut, PortRole::ROut}) {
      auto eid = g.edge_at(Endpoint::port(n, r));
      if (!eid) continue;
      const Endpoint& d = g.edge(*eid).dst;
      if (!d.is_port()) continue;
      if (d.role == PortRole::FIn) return true;
      if (g.node(d.id).kind == NodeKind::Fanout) stack.push_back(d.id);
    }
  }
  return false;
}

inline bool try_prune_step(Graph& g, MoveTrace& tr) {
  for (auto& [id, n] : g.nodes()) {
    bool ok = false;
    if (n.kind == NodeKind::Application)
      ok = (bool)top_consumer(g, id, PortRole::Out);
    else if (n.kind == NodeKind::Lambda)
      ok = top_consumer(g, id, PortRole::VOut) &&
           top_consumer(g, id, PortRole::AOut);
    else if (n.kind == NodeKind::Fanout)
      ok = top_consumer(g, id, PortRole::LOut) ||
           top_consumer(g, id, PortRole::ROut);
    if (ok) {
      tr.append(prune_local(g, id));
      return true;
    }
  }
  // dead weakly-connected components whose every exit feeds a termination
  std::set<std::string> seen;
  for (auto& [start, n0] : g.nodes()) {
    if (n0.kind == NodeKind::Termination || seen.count(start)) continue;
    std::set<std::string> comp;
    std::vector<std::string> stack = {start};
    bool leafy = false;
    while (!stack.empty()) {
      std::string n = stack.back();
      stack.pop_back();
      if (comp.count(n)) continue;
      comp.insert(n);
      for (PortRole r : roles_of(g.node(n).kind)) {
        auto eid = g.edge_at(Endpoint::port(n, r));
        if (!eid) continue;
        const Edge& e = g.edge(*eid);
        for (const Endpoint* ep : {&e.src, &e.dst}) {
          if (ep->is_leaf()) {
            leafy = true;
          } else if (ep->id != n && !comp.count(ep->id) &&
                     g.node(ep->id).kind != NodeKind::Termination) {
            stack.push_back(ep->id);
          }
        }
      }
    }
    seen.insert(comp.begin(), comp.end());
    if (leafy) continue;
    try {
      tr.append(prune_global(g, comp));
      return true;
    } catch (const Error&) {
    }
  }
  return false;
}

}  // namespace detail

enum class ReduceStatus { Normal, FuelExhausted };

struct ReduceResult {
  Graph graph;
  MoveTrace trace;
  ReduceStatus status = ReduceStatus::Normal;
};

inline ReduceResult reduce_graph(const Graph& g0, int fuel) {
  auto rep = is_lambda_graph(g0);
  if (!rep.is_lambda_graph)
    throw Error("reduce: not a lambda-graph: " +
                (rep.violations.empty() ? "" : rep.violations.front()));
  ReduceResult res;
  res.graph = g0;
  Graph& g = res.graph;
  long nonbeta_budget_base = 200 + 16 * (long)g0.nodes().size();
  long nonbeta = 0;
  // duplication can grow a divergent graph geometrically between beta steps;
  // a hard size cap keeps containment a budget question, not a memory one
  long size_cap = 20000 + 64 * (long)g0.nodes().size();
  while (true) {
    if ((long)g.nodes().size() > size_cap) {
      res.status = ReduceStatus::FuelExhausted;
      return res;
    }
    auto redex = detail::first_redex(g);
    if (redex) {
      if (fuel <= 0) {
        res.status = ReduceStatus::FuelExhausted;
        return res;
      }
      res.trace.append(beta_reduce(g, *redex));
      --fuel;
      nonbeta = 0;
      continue;
    }
    if (nonbeta++ > nonbeta_budget_base + 16 * (long)g.nodes().size()) {
      res.status = ReduceStatus::FuelExhausted;
      return res;
    }
    bool moved = false;
    for (auto& [id, n] : g.nodes()) {
      if (n.kind != NodeKind::Fanout) continue;
      if (detail::fanout_productive(g, id) && global_fanout_eligible(g, id)) {
        res.trace.append(global_fanout(g, id));
        moved = true;
        break;
      }
    }
    if (moved) continue;
    if (detail::try_prune_step(g, res.trace)) continue;
    // last resort: a redex nothing reaches and nothing prunes
    auto leftovers = find_beta_redexes(g);
    if (!leftovers.empty()) {
      if (fuel <= 0) {
        res.status = ReduceStatus::FuelExhausted;
        return res;
      }
      res.trace.append(beta_reduce(g, leftovers.front()));
      --fuel;
      nonbeta = 0;
      continue;
    }
    res.status = ReduceStatus::Normal;
    return res;
  }
}

}  // namespace glc
