// glc: command-line front end for the graphic-lambda rewriting engine.
//
//   glc lambda {encode|check|reduce} [--term S | --in F] [--fuel N] [--emit FMT]
//   glc knot {encode|apply|decode} [--pd F] [--script F] [--emit FMT]
//   glc graph {iso A B | render F | run F --script S}
//   glc selfcheck [--filter NAME]
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "glc/dot.hpp"
#include "glc/glf.hpp"
#include "glc/iso.hpp"
#include "glc/knot.hpp"
#include "glc/lambda.hpp"
#include "glc/moves.hpp"
#include "glc/selfcheck.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw glc::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// collected first, written only on success (no partial --out files)
struct Output {
  std::string text;
  std::string out_path;
  void flush() {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out_path);
    if (!f) throw glc::Error("cannot write '" + out_path + "'");
    f << text;
  }
};

int usage_error(const std::string& m) {
  std::cerr << "usage error: " << m << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphic lambda calculus rewriting engine"};
  app.require_subcommand(1);

  std::string term_text, in_path, pd_path, script_path, emit, out_path, filter;
  int fuel = 10000;

  auto* lambda = app.add_subcommand("lambda", "lambda sector");
  lambda->require_subcommand(1);
  for (const char* name : {"encode", "check", "reduce"}) {
    auto* c = lambda->add_subcommand(name);
    c->add_option("--term", term_text, "term text");
    c->add_option("--in", in_path, "input file");
    c->add_option("--fuel", fuel, "beta-step budget");
    c->add_option("--emit", emit, "output format");
    c->add_option("--out", out_path, "output file");
  }

  auto* knot = app.add_subcommand("knot", "knot sector");
  knot->require_subcommand(1);
  for (const char* name : {"encode", "apply", "decode"}) {
    auto* c = knot->add_subcommand(name);
    c->add_option("--pd", pd_path, "PD code file");
    c->add_option("--script", script_path, "move script file");
    c->add_option("--emit", emit, "output format");
    c->add_option("--out", out_path, "output file");
  }

  auto* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  std::vector<std::string> iso_files;
  std::string render_file, run_file;
  auto* giso = graph->add_subcommand("iso", "isomorphism check");
  giso->add_option("files", iso_files, "two GLF files")->expected(2);
  auto* grender = graph->add_subcommand("render", "DOT export");
  grender->add_option("file", render_file, "GLF file")->required();
  grender->add_option("--out", out_path, "output file");
  auto* grun = graph->add_subcommand("run", "replay a move script");
  grun->add_option("file", run_file, "GLF file")->required();
  grun->add_option("--script", script_path, "move script file")->required();
  grun->add_option("--emit", emit, "output format");
  grun->add_option("--out", out_path, "output file");

  auto* selfcheck = app.add_subcommand("selfcheck", "acceptance fixture suite");
  selfcheck->add_option("--filter", filter, "run only matching checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Output out;
  out.out_path = out_path;
  try {
    if (lambda->parsed()) {
      if (term_text.empty() == in_path.empty())
        return usage_error("need exactly one of --term or --in");
      auto emit_graph = [&](const glc::Graph& g, const std::string& dflt) {
        std::string fmt = emit.empty() ? dflt : emit;
        if (fmt == "glf") out.text = glc::emit_glf(g);
        else if (fmt == "dot") out.text = glc::to_dot(g);
        else throw glc::Error("unsupported --emit '" + fmt + "' here");
      };
      if (lambda->get_subcommand("encode")->parsed()) {
        std::string src = term_text.empty() ? slurp(in_path) : term_text;
        emit_graph(glc::encode_term(glc::parse_term(src)), "glf");
      } else if (lambda->get_subcommand("check")->parsed()) {
        glc::Graph g = term_text.empty()
                           ? glc::parse_glf(slurp(in_path))
                           : glc::encode_term(glc::parse_term(term_text));
        auto rep = glc::is_lambda_graph(g);
        if (rep.is_lambda_graph) {
          out.text = "LAMBDA-GRAPH\n";
        } else {
          for (auto& v : rep.violations) out.text += v + "\n";
          out.flush();
          return 1;
        }
      } else {  // reduce
        std::string src = term_text.empty() ? slurp(in_path) : term_text;
        glc::Graph g = glc::encode_term(glc::parse_term(src));
        auto res = glc::reduce_graph(g, fuel);
        std::string fmt = emit.empty() ? "term" : emit;
        if (fmt == "term") out.text = glc::term_str(glc::readback(res.graph)) + "\n";
        else if (fmt == "glf") out.text = glc::emit_glf(res.graph);
        else if (fmt == "dot") out.text = glc::to_dot(res.graph);
        else if (fmt == "trace") out.text = res.trace.to_script();
        else throw glc::Error("unsupported --emit '" + fmt + "'");
        if (res.status == glc::ReduceStatus::FuelExhausted)
          out.text += "FUEL_EXHAUSTED\n";
      }
    } else if (knot->parsed()) {
      if (pd_path.empty()) return usage_error("knot commands need --pd");
      auto d = glc::parse_pd(slurp(pd_path));
      auto [g, bind] = glc::encode_diagram(d);
      if (knot->get_subcommand("encode")->parsed()) {
        std::string fmt = emit.empty() ? "glf" : emit;
        if (fmt == "glf") out.text = glc::emit_glf(g);
        else if (fmt == "dot") out.text = glc::to_dot(g);
        else if (fmt == "pd") out.text = glc::emit_pd(glc::decode_to_pd(g, bind));
        else throw glc::Error("unsupported --emit '" + fmt + "'");
      } else if (knot->get_subcommand("apply")->parsed()) {
        if (script_path.empty()) return usage_error("knot apply needs --script");
        auto [g2, tr] = glc::apply_script(g, glc::parse_script(slurp(script_path)));
        std::string fmt = emit.empty() ? "glf" : emit;
        if (fmt == "glf") out.text = glc::emit_glf(g2);
        else if (fmt == "dot") out.text = glc::to_dot(g2);
        else if (fmt == "trace") out.text = tr.to_script();
        else throw glc::Error("unsupported --emit '" + fmt + "'");
        out.text += "# beta=" + std::to_string(tr.beta_count()) + "\n";
      } else {  // decode
        out.text = glc::emit_pd(glc::decode_to_pd(g, bind));
      }
    } else if (graph->parsed()) {
      if (giso->parsed()) {
        glc::Graph a = glc::parse_glf(slurp(iso_files[0]));
        glc::Graph b = glc::parse_glf(slurp(iso_files[1]));
        auto m = glc::is_isomorphic(a, b);
        if (!m) {
          std::cout << "NOT ISOMORPHIC\n";
          return 1;
        }
        for (auto& [x, y] : *m) out.text += x + " -> " + y + "\n";
      } else if (grender->parsed()) {
        out.text = glc::to_dot(glc::parse_glf(slurp(render_file)));
      } else {  // run
        glc::Graph g = glc::parse_glf(slurp(run_file));
        auto [g2, tr] = glc::apply_script(g, glc::parse_script(slurp(script_path)));
        std::string fmt = emit.empty() ? "glf" : emit;
        if (fmt == "glf") out.text = glc::emit_glf(g2);
        else if (fmt == "dot") out.text = glc::to_dot(g2);
        else if (fmt == "trace") out.text = tr.to_script();
        else throw glc::Error("unsupported --emit '" + fmt + "'");
        out.text += "# beta=" + std::to_string(tr.beta_count()) + "\n";
      }
    } else if (selfcheck->parsed()) {
      bool all = true;
      for (auto& r : glc::run_selfcheck(filter)) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
                  << r.detail << "\n";
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }
    out.flush();
    return 0;
  } catch (const glc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
