#ifndef RSO_SERIALIZE_HPP
#define RSO_SERIALIZE_HPP

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/graph.hpp"

namespace rso {

// Format-neutral view of any of the three graph kinds. For uncolored graphs
// the color column is 1 and omitted on output.
struct GraphDocument {
  int n = 0;
  bool colored = false;
  bool directed = false;
  std::vector<std::array<int, 3>> edges;

  // Sorts edges lexicographically (undirected pairs normalized to u <= v).
  void canonicalize();
};

GraphDocument to_document(const Graph& g);
GraphDocument to_document(const ColoredMultiGraph& m);
GraphDocument to_document(const DirectedColoredMultiGraph& d);

Graph graph_from_document(const GraphDocument& doc);
ColoredMultiGraph colored_from_document(const GraphDocument& doc);
DirectedColoredMultiGraph directed_from_document(const GraphDocument& doc);

// JSON object {n, colored, directed, edges: [[u,v] or [u,v,c], ...]}.
nlohmann::json to_json(const GraphDocument& doc);
GraphDocument document_from_json(const nlohmann::json& j);

// Text form: a header line "rso-graph n=<n> colored=<0|1> directed=<0|1>"
// followed by one "u v [color]" line per edge.
std::string to_text(const GraphDocument& doc);
GraphDocument parse_text(const std::string& text);

// Both forms are emitted from the canonical ordering, so equal graphs give
// byte-identical output.
std::string serialize_json(const Graph& g);
std::string serialize_text(const Graph& g);

}  // namespace rso

#endif
