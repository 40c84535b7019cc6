#include "weft/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "weft/boolarith.hpp"
#include "weft/cyclecover.hpp"
#include "weft/error.hpp"
#include "weft/families.hpp"
#include "weft/sums.hpp"
#include "weft/transforms.hpp"
#include "weft/verify.hpp"

namespace weft {

namespace {

struct CliCtx {
  RunConfig cfg;
  std::string format = "text";
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
};

std::string slurp(const std::string& path, std::istream& stdin_stream) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << stdin_stream.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const CliCtx& ctx, const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    *ctx.out << payload;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path + " for writing");
  f << payload;
}

std::vector<Fp> parse_point(const std::string& csv, std::uint32_t want, const Field& F) {
  std::vector<Fp> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(F.from_int(std::stoll(tok)));
  }
  if (out.size() != want)
    throw Error(Errc::LayoutMismatch,
                "point has " + std::to_string(out.size()) + " entries, circuit wants " +
                    std::to_string(want));
  return out;
}

void report_suite(const CliCtx& ctx, const SuiteResult& r) {
  if (ctx.format == "jsonl") {
    nlohmann::json j;
    j["suite"] = r.name;
    j["pass"] = r.pass;
    j["lines"] = r.lines;
    *ctx.out << j.dump() << "\n";
    return;
  }
  *ctx.out << "suite " << r.name << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& line : r.lines) *ctx.out << "  " << line << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CliCtx ctx;
  ctx.in = &in;
  ctx.out = &out;

  CLI::App app{"arithmetic-circuit families, weft analysis, and gadget reductions"};
  app.require_subcommand(1);
  app.add_option("--modulus", ctx.cfg.modulus, "prime field modulus");
  app.add_option("--seed", ctx.cfg.seed, "seed for randomized sweeps");
  app.add_option("--fanin-bound", ctx.cfg.fanin_bound, "bounded fan-in threshold");
  app.add_option("--cap-terms", ctx.cfg.cap_terms, "sparse polynomial term cap");
  app.add_option("--cap-enum", ctx.cfg.cap_enum, "enumeration visit cap");
  app.add_option("--format", ctx.format, "text or jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));

  // gen
  auto* gen = app.add_subcommand("gen", "emit family polynomials and circuits");
  std::string family, gen_out, gen_graph;
  std::uint32_t gn = 3, gk = 1, gc = 1;
  bool gexact = false;
  gen->add_option("family", family,
                  "clique|clique-full|clique-weft1|vc|vc-graph|vc-circuit|vc-sun|"
                  "rper|rper-circuit|perk|per-sparse|grid-tiling")
      ->required();
  gen->add_option("--n", gn, "size parameter");
  gen->add_option("--k", gk, "parameter k");
  gen->add_option("--c", gc, "cycle length bound (per-sparse)");
  gen->add_flag("--exact", gexact, "require non-distinguished cycles of length exactly c");
  gen->add_option("--graph", gen_graph, "graph file for the graph-indexed families");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a circuit, bounded sum, or BA formula");
  std::string eval_circuit, eval_sum, eval_ba, eval_at;
  eval_cmd->add_option("--circuit", eval_circuit, "circuit file ('-' for stdin)");
  eval_cmd->add_option("--sum", eval_sum, "bounded-sum file");
  eval_cmd->add_option("--ba", eval_ba, "Boolean-arithmetic file");
  eval_cmd->add_option("--at", eval_at, "comma-separated point")->required();

  // transform
  auto* tf = app.add_subcommand("transform", "apply a circuit pass");
  std::string pass, tf_in, tf_out;
  tf->add_option("--pass", pass, "formula | weft1nf | hp:<k> | divfree:<d>")->required();
  tf->add_option("--in", tf_in, "input circuit (default stdin)");
  tf->add_option("--out", tf_out, "output circuit (default stdout)");

  // metrics
  auto* me = app.add_subcommand("metrics", "print size, depth, and weft");
  std::string me_in;
  me->add_option("--in", me_in, "input circuit (default stdin)");

  // verify
  auto* ve = app.add_subcommand("verify", "run a named identity suite");
  std::string suite;
  std::uint32_t max_k = 100;
  ve->add_option("suite", suite, "suite name (see --list)")->required();
  ve->add_option("--max-k", max_k, "bound for the unique-split sweep");

  // reduce
  auto* re = app.add_subcommand("reduce", "run gadget constructions");
  std::string red_kind, red_graph, red_circuit, red_at, red_out;
  std::uint32_t red_k = 2;
  re->add_option("kind", red_kind, "grid | circuit-cc | match-perk")->required();
  re->add_option("--graph", red_graph, "input graph file");
  re->add_option("--circuit", red_circuit, "input circuit file");
  re->add_option("--at", red_at, "assignment for circuit-cc");
  re->add_option("--k", red_k, "parameter k");
  re->add_option("--out", red_out, "output file (default stdout)");

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 pops from the back
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    Field F(ctx.cfg.modulus);
    if (*gen) {
      std::string payload;
      if (family == "clique") payload = write_poly(gen_clique(gn, gk, F), F);
      else if (family == "clique-full") payload = write_poly(gen_clique_full(gn, F), F);
      else if (family == "clique-weft1") payload = write_bounded_sum(gen_clique_weft1(gn, gk, F), F);
      else if (family == "vc") payload = write_poly(gen_vc_generic(gn, gk, F), F);
      else if (family == "vc-graph")
        payload = write_poly(gen_vc_graph(parse_graph(slurp(gen_graph, in)), gk, F), F);
      else if (family == "vc-circuit")
        payload = write_circuit(vc_fpt_circuit(parse_graph(slurp(gen_graph, in)), gk, F), F);
      else if (family == "vc-sun") payload = write_circuit(vc_sun_circuit(gn, gk, F), F);
      else if (family == "rper") payload = write_poly(gen_rper(gn, gk, F), F);
      else if (family == "rper-circuit") payload = write_circuit(rper_fpt_circuit(gn, gk, F), F);
      else if (family == "perk") payload = write_poly(gen_perk(gn, gk, F), F);
      else if (family == "per-sparse")
        payload = write_poly(gen_per_sparse(gn, gk, gc, F, gexact), F);
      else if (family == "grid-tiling")
        payload = write_poly(gen_grid_tiling(gn, gk, F, ctx.cfg.cap_enum), F);
      else throw Error(Errc::ParseError, "unknown family " + family);
      emit(ctx, gen_out, payload);
      return 0;
    }
    if (*eval_cmd) {
      Fp value;
      if (!eval_circuit.empty()) {
        ParsedCircuit pc = parse_circuit(slurp(eval_circuit, in));
        Field FF(pc.modulus ? pc.modulus : ctx.cfg.modulus);
        value = evaluate(pc.circuit, parse_point(eval_at, pc.circuit.n_vars, FF), FF);
      } else if (!eval_sum.empty()) {
        BoundedSumSpec spec = parse_bounded_sum(slurp(eval_sum, in));
        value = bounded_sum_eval(spec, parse_point(eval_at, spec.n_x, F), F, ctx.cfg.cap_enum);
      } else if (!eval_ba.empty()) {
        BAFormula ba = parse_ba(slurp(eval_ba, in));
        value = ba_eval(ba, parse_point(eval_at, ba.n_x, F), F, ctx.cfg.cap_enum);
      } else {
        throw Error(Errc::ParseError, "eval needs --circuit, --sum, or --ba");
      }
      if (ctx.format == "jsonl") {
        nlohmann::json j;
        j["value"] = value.v;
        out << j.dump() << "\n";
      } else {
        out << value.v << "\n";
      }
      return 0;
    }
    if (*tf) {
      ParsedCircuit pc = parse_circuit(slurp(tf_in, in));
      Field FF(pc.modulus ? pc.modulus : ctx.cfg.modulus);
      Circuit result;
      if (pass == "formula") result = to_formula(pc.circuit, ctx.cfg);
      else if (pass == "weft1nf") result = weft1_normal_form(pc.circuit, FF, ctx.cfg).circuit;
      else if (pass.rfind("hp:", 0) == 0)
        result = homogeneous_extract(pc.circuit,
                                     static_cast<std::uint32_t>(std::stoul(pass.substr(3))), FF);
      else if (pass.rfind("divfree:", 0) == 0)
        result = eliminate_divisions(pc.circuit, std::stoull(pass.substr(8)), FF, ctx.cfg);
      else throw Error(Errc::ParseError, "unknown pass " + pass);
      emit(ctx, tf_out, write_circuit(result, FF));
      return 0;
    }
    if (*me) {
      std::string text = slurp(me_in, in);
      Metrics m;
      if (text.find("\nSUM ") != std::string::npos)
        m = metrics(parse_bounded_sum(text).body);
      else
        m = metrics(parse_circuit(text).circuit);
      if (ctx.format == "jsonl") {
        nlohmann::json j;
        j["size"] = m.size;
        j["depth"] = m.depth;
        j["weft"] = m.weft;
        out << j.dump() << "\n";
      } else {
        out << "size=" << m.size << " depth=" << m.depth << " weft=" << m.weft << "\n";
      }
      return 0;
    }
    if (*ve) {
      SuiteResult r = suite == "lemma-w1-1" || suite == "unique-split"
                          ? verify_unique_split(max_k)
                          : run_verify_suite(suite, ctx.cfg);
      report_suite(ctx, r);
      return r.pass ? 0 : 1;
    }
    if (*re) {
      if (red_kind == "grid") {
        Graph g = parse_graph(slurp(red_graph, in));
        GridReduction red = grid_reduction(g, red_k);
        emit(ctx, red_out, write_graph(red.host));
      } else if (red_kind == "circuit-cc") {
        ParsedCircuit pc = parse_circuit(slurp(red_circuit, in));
        Field FF(pc.modulus ? pc.modulus : ctx.cfg.modulus);
        auto x = parse_point(red_at, pc.circuit.n_vars, FF);
        CycleCoverReduction red = circuit_to_cyclecover(pc.circuit, x, FF, ctx.cfg);
        std::ostringstream report;
        report << write_digraph(red.graph);
        ReductionValue rv = reduction_value(red, FF, ctx.cfg.cap_enum);
        report << "VALUE " << rv.total.v << "\n";
        emit(ctx, red_out, report.str());
      } else if (red_kind == "match-perk") {
        Graph g = parse_graph(slurp(red_graph, in));
        // left side: vertices with color 0 when colored, else the first half
        std::vector<std::uint32_t> left;
        for (std::uint32_t v = 0; v < g.n; ++v) {
          if (!g.vertex_color.empty() ? g.vertex_color[v] == 0 : v < g.n / 2) left.push_back(v);
        }
        PerkReduction red = matching_to_perk(g, left, red_k, F);
        emit(ctx, red_out, write_digraph(red.graph));
      } else {
        throw Error(Errc::ParseError, "unknown reduction " + red_kind);
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::IdentityCheckFailed ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace weft
