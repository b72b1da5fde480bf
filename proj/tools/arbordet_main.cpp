// Command-line front end: reads matrices (JSON/CSV) or digraphs (JSON),
// computes determinants by tree sum, Cauchy-Binet or exact elimination,
// runs cross-checks, reduces, factors, moves/isolates arcs, exports DOT.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arbordet/arbordet.hpp"
#include "arbordet/io.hpp"

namespace {

using namespace arbordet;

struct Options {
  std::string input;
  std::string format = "auto";  // auto | json | csv | digraph
  std::string output;           // empty -> stdout
  long long max_combinations = 10'000'000;
  int max_arcs = 20;
};

io::AnyInput load_input(const Options& opt) {
  return io::load_input(opt.input, opt.format);
}

MatrixDigraph require_digraph(const io::AnyInput& in) {
  if (in.digraph) return *in.digraph;
  const io::MatrixInput& m = *in.matrix;
  return digraph_from_matrix(m.matrix, m.terms ? &*m.terms : nullptr);
}

SymbolicMatrix require_matrix(const io::AnyInput& in) {
  if (in.matrix) return in.matrix->matrix;
  return matrix_from_digraph(*in.digraph);
}

void write_text(const Options& opt, const std::string& text) {
  if (opt.output.empty() || opt.output == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw Error("cannot write '" + opt.output + "'");
  out << text;
}

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      cur += c;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw DomainError("bad index list '" + s + "'");
    }
  }
  if (!cur.empty()) out.push_back(std::stoi(cur));
  if (out.empty()) throw DomainError("empty index list");
  return out;
}

int run_det(const Options& opt, const std::string& method) {
  io::AnyInput in = load_input(opt);
  Polynomial det;
  if (method == "tree") {
    det = det_tree_sum(require_digraph(in), {opt.max_combinations});
  } else if (method == "cauchy-binet") {
    det = cauchy_binet_det(require_digraph(in), opt.max_arcs);
  } else {
    det = det_exact(require_matrix(in));
  }
  write_text(opt, det.str());
  return 0;
}

int run_verify(const Options& opt) {
  io::AnyInput in = load_input(opt);
  MatrixDigraph g = require_digraph(in);
  SymbolicMatrix a = require_matrix(in);

  Polynomial tree = det_tree_sum(g, {opt.max_combinations});
  Polynomial exact = det_exact(a);
  bool cb_ran = g.m() <= opt.max_arcs;
  Polynomial cb = cb_ran ? cauchy_binet_det(g, opt.max_arcs) : Polynomial{};
  bool mw = verify_factorization(g);

  bool ok = tree == exact && (!cb_ran || cb == exact) && mw;
  if (tree != exact)
    std::cout << "tree sum != exact determinant: MISMATCH\n";
  if (cb_ran && cb != exact)
    std::cout << "cauchy-binet != exact determinant: MISMATCH\n";
  if (!mw) std::cout << "incidence * weight factorization: MISMATCH\n";
  if (ok) {
    if (cb_ran)
      std::cout << "tree == cauchy-binet == exact: OK\n";
    else
      std::cout << "tree == exact: OK (cauchy-binet skipped: " << g.m()
                << " arcs > cap " << opt.max_arcs << ")\n";
    std::cout << "extended matrix == incidence * weights: OK\n";
    std::cout << "det = " << exact.str() << "\n";
  }
  return ok ? 0 : 1;
}

int run_reduce(const Options& opt, const std::string& p, const std::string& q,
               bool show_matrix) {
  io::AnyInput in = load_input(opt);
  SymbolicMatrix a = require_matrix(in);
  ReductionSpec spec{parse_index_list(p), parse_index_list(q)};
  if (show_matrix) {
    write_text(opt, reduce_matrix(a, spec).str());
    return 0;
  }
  ReducedDetStats stats;
  Polynomial det = det_reduced_graphical(a, spec, &stats, {opt.max_combinations});
  write_text(opt, det.str());
  return 0;
}

int run_factor(const Options& opt, const std::string& strategy,
               const std::string& apportion, const std::string& order,
               bool as_json, bool expand) {
  io::AnyInput in = load_input(opt);
  MatrixDigraph g = require_digraph(in);
  FactorExpr f;
  if (strategy == "sequential") {
    if (apportion == "symmetric")
      throw DomainError("--apportion symmetric applies to --strategy rooting");
    std::vector<int> ord;
    if (!order.empty()) ord = parse_index_list(order);
    f = sequential_factor(g, ord);
  } else {
    if (!order.empty())
      throw DomainError("--order applies to --strategy sequential");
    f = explicit_rooting_factor(
        g, apportion == "symmetric" ? Apportion::symmetric : Apportion::none);
  }
  if (expand)
    write_text(opt, f.expand().str());
  else if (as_json)
    write_text(opt, io::factor_to_json(f).dump(2));
  else
    write_text(opt, f.str());
  return 0;
}

int run_move(const Options& opt, int arc, int to) {
  MatrixDigraph g = require_digraph(load_input(opt));
  MoveResult res = move_arc(g, arc, to);
  write_text(opt, io::digraph_to_json(res.digraph).dump(2));
  return 0;
}

int run_isolate(const Options& opt, int vertex) {
  MatrixDigraph g = require_digraph(load_input(opt));
  write_text(opt, io::digraph_to_json(isolate_vertex(g, vertex)).dump(2));
  return 0;
}

int run_export_dot(const Options& opt) {
  MatrixDigraph g = require_digraph(load_input(opt));
  write_text(opt, io::to_dot(g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"determinants of general matrices via rooted-digraph "
               "arborescence sums, reductions, arc moves and factoring"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", opt.input, "input file")->required();
    sub->add_option("-f,--format", opt.format,
                    "input format: auto|json|csv|digraph")
        ->check(CLI::IsMember({"auto", "json", "csv", "digraph"}));
    sub->add_option("-o,--output", opt.output, "output file ('-' for stdout)");
    sub->add_option("--max-combinations", opt.max_combinations,
                    "cap on enumeration candidates");
    sub->add_option("--max-arcs", opt.max_arcs,
                    "cap on arcs for the Cauchy-Binet path");
  };

  std::string method = "tree";
  CLI::App* det = app.add_subcommand("det", "compute the determinant");
  add_common(det);
  det->add_option("-m,--method", method, "tree|cauchy-binet|exact")
      ->check(CLI::IsMember({"tree", "cauchy-binet", "exact"}));

  CLI::App* verify =
      app.add_subcommand("verify", "cross-check every determinant route");
  add_common(verify);

  std::string p_list, q_list;
  bool show_matrix = false;
  CLI::App* reduce =
      app.add_subcommand("reduce", "determinant of a reduced matrix");
  add_common(reduce);
  reduce->add_option("-p", p_list, "row indices, e.g. 1,2")->required();
  reduce->add_option("-q", q_list, "column indices, e.g. 3,1")->required();
  reduce->add_flag("--show-matrix", show_matrix,
                   "print the reduced matrix instead of its determinant");

  std::string strategy = "sequential", apportion = "none", order;
  bool factor_json = false, factor_expand_flag = false;
  CLI::App* factor = app.add_subcommand("factor", "factor the determinant");
  add_common(factor);
  factor->add_option("-s,--strategy", strategy, "sequential|rooting")
      ->check(CLI::IsMember({"sequential", "rooting"}));
  factor->add_option("--apportion", apportion, "none|symmetric")
      ->check(CLI::IsMember({"none", "symmetric"}));
  factor->add_option("--order", order,
                     "vertex processing order for sequential, e.g. 2,1,3");
  factor->add_flag("--json", factor_json, "print the expression tree as JSON");
  factor->add_flag("--expand", factor_expand_flag,
                   "print the expanded polynomial");

  int arc_id = 0, new_source = 0, vertex = 0;
  CLI::App* move =
      app.add_subcommand("move", "move an arc source, checking the hypotheses");
  add_common(move);
  move->add_option("--arc", arc_id, "arc id (canonical order)")->required();
  move->add_option("--to", new_source, "new source vertex")->required();

  CLI::App* isolate = app.add_subcommand(
      "isolate", "isolate an explicitly rooted vertex");
  add_common(isolate);
  isolate->add_option("--vertex", vertex, "vertex to isolate")->required();

  CLI::App* dot = app.add_subcommand("export-dot", "write the digraph as DOT");
  add_common(dot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (det->parsed()) return run_det(opt, method);
    if (verify->parsed()) return run_verify(opt);
    if (reduce->parsed()) return run_reduce(opt, p_list, q_list, show_matrix);
    if (factor->parsed())
      return run_factor(opt, strategy, apportion, order, factor_json,
                        factor_expand_flag);
    if (move->parsed()) return run_move(opt, arc_id, new_source);
    if (isolate->parsed()) return run_isolate(opt, vertex);
    if (dot->parsed()) return run_export_dot(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
