#ifndef CLMP_GRAPH_IO_HPP
#define CLMP_GRAPH_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clmp/graph.hpp"

namespace clmp {

/// A parsed graph plus the optional embedded variable order.
struct ParsedGraph {
    CausalGraph graph;
    std::optional<std::vector<int>> order;  // node indices, observed only

    VariableOrder order_or_default() const {
        if (order) return VariableOrder(graph, *order);
        return default_order(graph);
    }
};

// Text format, one declaration per line, `#` starts a comment:
//   node <name>
//   latent <name>
//   edge <name> -> <name>
//   edge <name> <-> <name>
//   order <name> <name> ...
ParsedGraph parse_graph_text(std::istream& in);
ParsedGraph parse_graph_text(const std::string& text);

// JSON format:
//   {"nodes":[...], "latents":[...], "directed":[[a,b],...],
//    "bidirected":[[a,b],...], "order":[...]}
// Indices are assigned to "nodes" first, then "latents", in array order.
ParsedGraph parse_graph_json(const std::string& text);

/// Reads a file, dispatching on extension: ".json" uses the JSON parser,
/// anything else the text parser.
ParsedGraph load_graph_file(const std::string& path);

std::string serialize_graph_text(const CausalGraph& g,
                                 const std::optional<std::vector<int>>& order = std::nullopt);
std::string serialize_graph_json(const CausalGraph& g,
                                 const std::optional<std::vector<int>>& order = std::nullopt);

void save_graph_file(const std::string& path, const CausalGraph& g,
                     const std::optional<std::vector<int>>& order = std::nullopt);

}  // namespace clmp

#endif
