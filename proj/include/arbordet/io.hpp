#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arbordet/digraph.hpp"
#include "arbordet/error.hpp"
#include "arbordet/factoring.hpp"
#include "arbordet/matrix.hpp"
#include "arbordet/polynomial.hpp"
#include "arbordet/reduced.hpp"

namespace arbordet::io {

using nlohmann::json;

struct MatrixInput {
  SymbolicMatrix matrix;
  std::optional<TermDecomposition> terms;
};

namespace detail {

inline json parse_json_text(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError(where + ": not valid JSON");
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Polynomial entry_to_poly(const json& e, int row, int col) {
  std::string where =
      "entry (" + std::to_string(row) + ", " + std::to_string(col) + ")";
  if (e.is_string()) {
    try {
      return Polynomial::parse(e.get<std::string>());
    } catch (const ParseError& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  if (e.is_number_integer())
    return Polynomial(Rational(e.get<long long>()));
  if (e.is_number())
    throw ParseError(where + ": non-integer numeric entry; write rationals "
                             "as text, e.g. \"1/2\"");
  throw ParseError(where + ": expected a number or polynomial text");
}

}  // namespace detail

/// Matrix JSON: {"n": int, "entries": [[...]]} with entries given as
/// polynomial text or integers; the optional "terms" array supplies per-entry
/// weight decompositions as {"i": int, "j": int, "parts": [text, ...]}.
inline MatrixInput matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries"))
    throw ParseError("matrix JSON needs an \"entries\" array");
  const json& rows = j["entries"];
  if (!rows.is_array() || rows.empty())
    throw ParseError("\"entries\" must be a non-empty array of rows");
  int n = j.contains("n") ? j["n"].get<int>() : static_cast<int>(rows.size());
  if (static_cast<int>(rows.size()) != n)
    throw ParseError("matrix has " + std::to_string(rows.size()) +
                     " rows, expected n = " + std::to_string(n));
  MatrixInput out;
  out.matrix = SymbolicMatrix::zero(n);
  for (int i = 1; i <= n; ++i) {
    const json& row = rows[i - 1];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("row " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(n));
    for (int c = 1; c <= n; ++c)
      out.matrix.at(i, c) = detail::entry_to_poly(row[c - 1], i, c);
  }
  if (j.contains("terms")) {
    TermDecomposition td;
    for (const json& t : j["terms"]) {
      int i = t.at("i").get<int>();
      int c = t.at("j").get<int>();
      std::vector<Polynomial> parts;
      for (const json& p : t.at("parts"))
        parts.push_back(detail::entry_to_poly(p, i, c));
      td.parts[{i, c}] = std::move(parts);
    }
    out.terms = std::move(td);
  }
  return out;
}

inline MatrixInput load_matrix_json(const std::string& path) {
  return matrix_from_json(detail::parse_json_text(detail::read_file(path), path));
}

/// CSV: numeric entries only (integers or rationals like "-3/2"), one row
/// per line, comma separated.
inline MatrixInput load_matrix_csv(const std::string& path) {
  std::string text = detail::read_file(path);
  std::vector<std::vector<Polynomial>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::vector<Polynomial> row;
    std::istringstream ls(line);
    std::string field;
    int col = 0;
    while (std::getline(ls, field, ',')) {
      ++col;
      try {
        Polynomial p = Polynomial::parse(field);
        if (!p.is_constant())
          throw ParseError("CSV entries must be numeric");
        row.push_back(std::move(p));
      } catch (const ParseError& e) {
        throw ParseError(path + ": row " + std::to_string(lineno) + ", column " +
                         std::to_string(col) + ": " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no rows");
  int n = static_cast<int>(rows.size());
  MatrixInput out;
  out.matrix = SymbolicMatrix::zero(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw ParseError(path + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(n) + " (matrix must be square)");
    for (int c = 0; c < n; ++c) out.matrix.at(i + 1, c + 1) = rows[i][c];
  }
  return out;
}

/// Digraph JSON: {"n": int, "arcs": [{"source": s, "target": t,
/// "weight": text-or-int}, ...]}.
inline MatrixDigraph digraph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("arcs"))
    throw ParseError("digraph JSON needs \"n\" and \"arcs\"");
  int n = j["n"].get<int>();
  std::vector<ArcInit> arcs;
  int k = 0;
  for (const json& a : j["arcs"]) {
    ++k;
    if (!a.contains("source") || !a.contains("target") || !a.contains("weight"))
      throw ParseError("arc " + std::to_string(k) +
                       " needs source, target and weight");
    arcs.push_back({a["source"].get<int>(), a["target"].get<int>(),
                    detail::entry_to_poly(a["weight"], 0, k)});
  }
  return MatrixDigraph(n, std::move(arcs));
}

inline MatrixDigraph load_digraph_json(const std::string& path) {
  return digraph_from_json(detail::parse_json_text(detail::read_file(path), path));
}

inline json digraph_to_json(const MatrixDigraph& g) {
  json arcs = json::array();
  for (const Arc& a : g.arcs())
    arcs.push_back(
        {{"source", a.source}, {"target", a.target}, {"weight", a.weight.str()}});
  return json{{"n", g.n()}, {"arcs", std::move(arcs)}};
}

inline ReductionSpec reduction_from_json(const json& j) {
  ReductionSpec spec;
  if (!j.contains("P") || !j.contains("Q"))
    throw ParseError("reduction JSON needs \"P\" and \"Q\" arrays");
  for (const json& v : j["P"]) spec.rows.push_back(v.get<int>());
  for (const json& v : j["Q"]) spec.cols.push_back(v.get<int>());
  return spec;
}

inline json reduction_to_json(const ReductionSpec& spec) {
  return json{{"P", spec.rows}, {"Q", spec.cols}};
}

/// DOT text with vertex 0 labeled as the root and arcs labeled by weight,
/// in canonical arc order. Re-export of the same digraph is byte-identical.
inline std::string to_dot(const MatrixDigraph& g) {
  std::ostringstream os;
  os << "digraph matrix_digraph {\n";
  os << "  rankdir=LR;\n";
  os << "  0 [label=\"0 (root)\", shape=doublecircle];\n";
  for (int v = 1; v <= g.n(); ++v)
    os << "  " << v << " [label=\"" << v << "\", shape=circle];\n";
  for (const Arc& a : g.arcs()) {
    std::string label = a.weight.str();
    std::string quoted;
    for (char c : label) {
      if (c == '"' || c == '\\') quoted += '\\';
      quoted += c;
    }
    os << "  " << a.source << " -> " << a.target << " [label=\"" << quoted
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline void export_dot(const MatrixDigraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << to_dot(g);
  if (!out) throw Error("write to '" + path + "' failed");
}

/// A loaded input file: exactly one of the two members is set.
struct AnyInput {
  std::optional<MatrixInput> matrix;
  std::optional<MatrixDigraph> digraph;
};

/// Load a matrix or digraph file. format: "auto" sniffs .csv extensions and
/// JSON keys; "json"/"csv" force a matrix reading; "digraph" forces arcs.
inline AnyInput load_input(const std::string& path,
                           const std::string& format = "auto") {
  AnyInput in;
  if (format == "csv") {
    in.matrix = load_matrix_csv(path);
  } else if (format == "json") {
    in.matrix = load_matrix_json(path);
  } else if (format == "digraph") {
    in.digraph = load_digraph_json(path);
  } else if (format == "auto") {
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
      in.matrix = load_matrix_csv(path);
    } else {
      json j = detail::parse_json_text(detail::read_file(path), path);
      if (j.is_object() && j.contains("arcs"))
        in.digraph = digraph_from_json(j);
      else
        in.matrix = matrix_from_json(j);
    }
  } else {
    throw DomainError("unknown input format '" + format + "'");
  }
  return in;
}

inline json factor_to_json(const FactorExpr& f) {
  json node;
  switch (f.kind) {
    case FactorExpr::Kind::Leaf:
      node["op"] = "leaf";
      node["value"] = f.value.str();
      break;
    case FactorExpr::Kind::Sum:
      node["op"] = "sum";
      break;
    case FactorExpr::Kind::Product:
      node["op"] = "product";
      break;
  }
  if (!f.tag.empty()) node["tag"] = f.tag;
  if (f.isolated_mark) node["isolated"] = true;
  if (!f.children.empty()) {
    json kids = json::array();
    for (const auto& c : f.children) kids.push_back(factor_to_json(c));
    node["children"] = std::move(kids);
  }
  return node;
}

}  // namespace arbordet::io
