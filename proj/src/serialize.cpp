#include "rso/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "rso/error.hpp"

namespace rso {

void GraphDocument::canonicalize() {
  if (!directed)
    for (auto& e : edges)
      if (e[0] > e[1]) std::swap(e[0], e[1]);
  std::sort(edges.begin(), edges.end());
}

GraphDocument to_document(const Graph& g) {
  GraphDocument d{g.n(), false, false, {}};
  for (const auto& e : g.edges()) d.edges.push_back({e.u, e.v, 1});
  return d;
}

GraphDocument to_document(const ColoredMultiGraph& m) {
  GraphDocument d{m.n(), true, false, {}};
  for (const auto& e : m.edges()) d.edges.push_back({e.u, e.v, e.color});
  return d;
}

GraphDocument to_document(const DirectedColoredMultiGraph& g) {
  GraphDocument d{g.n(), true, true, {}};
  for (const auto& a : g.arcs()) d.edges.push_back({a.from, a.to, a.color});
  return d;
}

Graph graph_from_document(const GraphDocument& doc) {
  if (doc.directed) throw ValidationError("expected an undirected graph");
  std::vector<std::pair<Vertex, Vertex>> ps;
  for (const auto& e : doc.edges) ps.emplace_back(e[0], e[1]);
  return Graph(doc.n, ps);
}

ColoredMultiGraph colored_from_document(const GraphDocument& doc) {
  if (doc.directed) throw ValidationError("expected an undirected graph");
  std::vector<ColoredEdge> es;
  for (const auto& e : doc.edges) es.push_back({e[0], e[1], e[2]});
  return ColoredMultiGraph(doc.n, std::move(es));
}

DirectedColoredMultiGraph directed_from_document(const GraphDocument& doc) {
  if (!doc.directed) throw ValidationError("expected a directed graph");
  std::vector<Arc> as;
  for (const auto& e : doc.edges) as.push_back({e[0], e[1], e[2]});
  return DirectedColoredMultiGraph(doc.n, std::move(as));
}

nlohmann::json to_json(const GraphDocument& doc) {
  GraphDocument c = doc;
  c.canonicalize();
  nlohmann::json j;
  j["n"] = c.n;
  j["colored"] = c.colored;
  j["directed"] = c.directed;
  auto arr = nlohmann::json::array();
  for (const auto& e : c.edges) {
    if (c.colored) arr.push_back({e[0], e[1], e[2]});
    else arr.push_back({e[0], e[1]});
  }
  j["edges"] = std::move(arr);
  return j;
}

namespace {

void check_endpoint(int x, int n, std::size_t idx, const char* field) {
  if (x < 1 || x > n)
    throw ParseError("edge " + std::to_string(idx) + ": field " + field + " = " +
                     std::to_string(x) + " outside 1.." + std::to_string(n));
}

}  // namespace

GraphDocument document_from_json(const nlohmann::json& j) {
  GraphDocument d;
  try {
    if (!j.is_object()) throw ParseError("graph document must be a JSON object");
    if (!j.contains("n")) throw ParseError("missing field n");
    d.n = j.at("n").get<int>();
    if (d.n < 0) throw ParseError("field n is negative");
    d.colored = j.value("colored", false);
    d.directed = j.value("directed", false);
    const auto& es = j.at("edges");
    if (!es.is_array()) throw ParseError("field edges must be an array");
    std::size_t idx = 0;
    for (const auto& e : es) {
      ++idx;
      if (!e.is_array() || e.size() < 2 || e.size() > 3)
        throw ParseError("edge " + std::to_string(idx) + ": expected [u, v] or [u, v, color]");
      std::array<int, 3> row{e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<int>() : 1};
      check_endpoint(row[0], d.n, idx, "u");
      check_endpoint(row[1], d.n, idx, "v");
      if (row[2] < 0) throw ParseError("edge " + std::to_string(idx) + ": field color is negative");
      d.edges.push_back(row);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed graph JSON: ") + ex.what());
  }
  return d;
}

std::string to_text(const GraphDocument& doc) {
  GraphDocument c = doc;
  c.canonicalize();
  std::ostringstream os;
  os << "rso-graph n=" << c.n << " colored=" << (c.colored ? 1 : 0)
     << " directed=" << (c.directed ? 1 : 0) << '\n';
  for (const auto& e : c.edges) {
    os << e[0] << ' ' << e[1];
    if (c.colored) os << ' ' << e[2];
    os << '\n';
  }
  return os.str();
}

namespace {

int parse_int_field(const std::string& tok, std::size_t line, const char* field) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": field " + field + " is not an integer ('" +
                     tok + "')");
  }
}

int header_value(const std::string& tok, const std::string& key, std::size_t line) {
  if (tok.rfind(key + "=", 0) != 0)
    throw ParseError("line " + std::to_string(line) + ": expected " + key + "=<value>");
  return parse_int_field(tok.substr(key.size() + 1), line, key.c_str());
}

}  // namespace

GraphDocument parse_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  GraphDocument d;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "rso-graph")
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected header 'rso-graph n=<n> colored=<0|1> directed=<0|1>'");
      d.n = header_value(tok[1], "n", lineno);
      d.colored = header_value(tok[2], "colored", lineno) != 0;
      d.directed = header_value(tok[3], "directed", lineno) != 0;
      if (d.n < 0) throw ParseError("line " + std::to_string(lineno) + ": field n is negative");
      have_header = true;
      continue;
    }
    std::size_t want = d.colored ? 3 : 2;
    if (tok.size() != want)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(want) +
                       " fields, found " + std::to_string(tok.size()));
    std::array<int, 3> row{parse_int_field(tok[0], lineno, "u"), parse_int_field(tok[1], lineno, "v"),
                           d.colored ? parse_int_field(tok[2], lineno, "color") : 1};
    for (int k = 0; k < 2; ++k)
      if (row[k] < 1 || row[k] > d.n)
        throw ParseError("line " + std::to_string(lineno) + ": edge " + std::to_string(row[0]) + " " +
                         std::to_string(row[1]) + " has field " + (k ? "v" : "u") +
                         " outside 1.." + std::to_string(d.n));
    if (row[2] < 0) throw ParseError("line " + std::to_string(lineno) + ": field color is negative");
    d.edges.push_back(row);
  }
  if (!have_header) throw ParseError("line 1: missing header");
  return d;
}

std::string serialize_json(const Graph& g) { return to_json(to_document(g)).dump(); }

std::string serialize_text(const Graph& g) { return to_text(to_document(g)); }

}  // namespace rso
