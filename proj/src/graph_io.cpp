#include "clmp/graph_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace clmp {

namespace {

struct Builder {
    std::vector<std::string> names;
    std::vector<bool> latent;
    std::map<std::string, int> index;
    std::vector<std::pair<int, int>> directed, bidirected;
    std::set<std::pair<int, int>> dir_seen, bidir_seen;
    std::optional<std::vector<int>> order;

    int add_node(const std::string& name, bool is_latent, int line) {
        if (name.empty()) throw ParseError("empty node name", line);
        if (name.find_first_of(",|") != std::string::npos)
            throw ParseError("node name '" + name + "' contains a reserved character", line);
        if (index.count(name)) throw ParseError("duplicate declaration of node " + name, line);
        int id = static_cast<int>(names.size());
        index[name] = id;
        names.push_back(name);
        latent.push_back(is_latent);
        return id;
    }

    int lookup(const std::string& name, int line) const {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError("unknown node " + name, line);
        return it->second;
    }

    void add_directed(int a, int b, int line) {
        if (a == b) throw ParseError("self-loop at " + names[a], line);
        if (!dir_seen.insert({a, b}).second)
            throw ParseError("duplicate edge " + names[a] + " -> " + names[b], line);
        directed.emplace_back(a, b);
    }

    void add_bidirected(int a, int b, int line) {
        if (a == b) throw ParseError("self-loop at " + names[a], line);
        int lo = std::min(a, b), hi = std::max(a, b);
        if (!bidir_seen.insert({lo, hi}).second)
            throw ParseError("duplicate edge " + names[a] + " <-> " + names[b], line);
        bidirected.emplace_back(a, b);
    }

    void set_order(std::vector<int> seq, int line) {
        if (order) throw ParseError("duplicate order declaration", line);
        order = std::move(seq);
    }

    ParsedGraph finish(int line_for_errors) const {
        try {
            ParsedGraph pg{CausalGraph(names, directed, bidirected, latent), order};
            if (pg.order) VariableOrder(pg.graph, *pg.order);  // validates membership
            return pg;
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_for_errors);
        }
    }
};

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

}  // namespace

ParsedGraph parse_graph_text(std::istream& in) {
    Builder b;
    std::string line;
    int lineno = 0;
    bool saw_anything = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        saw_anything = true;
        const std::string& kw = toks[0];
        if (kw == "node" || kw == "latent") {
            if (toks.size() != 2) throw ParseError("expected: " + kw + " <name>", lineno);
            b.add_node(toks[1], kw == "latent", lineno);
        } else if (kw == "edge") {
            if (toks.size() != 4 || (toks[2] != "->" && toks[2] != "<->"))
                throw ParseError("expected: edge <name> -> <name> or edge <name> <-> <name>",
                                 lineno);
            int a = b.lookup(toks[1], lineno);
            int c = b.lookup(toks[3], lineno);
            if (toks[2] == "->") b.add_directed(a, c, lineno);
            else b.add_bidirected(a, c, lineno);
        } else if (kw == "order") {
            if (toks.size() < 2) throw ParseError("expected: order <name> ...", lineno);
            std::vector<int> seq;
            for (std::size_t i = 1; i < toks.size(); ++i) seq.push_back(b.lookup(toks[i], lineno));
            b.set_order(std::move(seq), lineno);
        } else {
            throw ParseError("unknown declaration '" + kw + "'", lineno);
        }
    }
    if (!saw_anything) throw ParseError("empty graph file");
    return b.finish(lineno);
}

ParsedGraph parse_graph_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_graph_text(ss);
}

ParsedGraph parse_graph_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");

    Builder b;
    auto add_names = [&](const char* key, bool is_latent) {
        if (!doc.contains(key)) return;
        if (!doc[key].is_array()) throw ParseError(std::string(key) + " must be an array");
        for (const auto& v : doc[key]) {
            if (!v.is_string()) throw ParseError(std::string(key) + " entries must be strings");
            b.add_node(v.get<std::string>(), is_latent, 0);
        }
    };
    add_names("nodes", false);
    add_names("latents", true);

    auto add_edges = [&](const char* key, bool is_directed) {
        if (!doc.contains(key)) return;
        if (!doc[key].is_array()) throw ParseError(std::string(key) + " must be an array");
        for (const auto& e : doc[key]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                throw ParseError(std::string(key) + " entries must be [name, name] pairs");
            int a = b.lookup(e[0].get<std::string>(), 0);
            int c = b.lookup(e[1].get<std::string>(), 0);
            if (is_directed) b.add_directed(a, c, 0);
            else b.add_bidirected(a, c, 0);
        }
    };
    add_edges("directed", true);
    add_edges("bidirected", false);

    if (doc.contains("order")) {
        if (!doc["order"].is_array()) throw ParseError("order must be an array");
        std::vector<int> seq;
        for (const auto& v : doc["order"]) {
            if (!v.is_string()) throw ParseError("order entries must be strings");
            seq.push_back(b.lookup(v.get<std::string>(), 0));
        }
        b.set_order(std::move(seq), 0);
    }
    if (b.names.empty()) throw ParseError("graph declares no nodes");
    return b.finish(0);
}

ParsedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_graph_json(buf.str());
    return parse_graph_text(buf.str());
}

std::string serialize_graph_text(const CausalGraph& g,
                                 const std::optional<std::vector<int>>& order) {
    std::ostringstream out;
    for (int v = 0; v < g.node_count(); ++v)
        out << (g.is_latent(v) ? "latent " : "node ") << g.name(v) << "\n";
    for (auto [a, b] : g.directed_edges())
        out << "edge " << g.name(a) << " -> " << g.name(b) << "\n";
    for (auto [a, b] : g.bidirected_edges())
        out << "edge " << g.name(a) << " <-> " << g.name(b) << "\n";
    if (order && !order->empty()) {
        out << "order";
        for (int v : *order) out << " " << g.name(v);
        out << "\n";
    }
    return out.str();
}

std::string serialize_graph_json(const CausalGraph& g,
                                 const std::optional<std::vector<int>>& order) {
    nlohmann::json doc;
    doc["nodes"] = nlohmann::json::array();
    doc["latents"] = nlohmann::json::array();
    for (int v = 0; v < g.node_count(); ++v)
        doc[g.is_latent(v) ? "latents" : "nodes"].push_back(g.name(v));
    doc["directed"] = nlohmann::json::array();
    for (auto [a, b] : g.directed_edges())
        doc["directed"].push_back({g.name(a), g.name(b)});
    doc["bidirected"] = nlohmann::json::array();
    for (auto [a, b] : g.bidirected_edges())
        doc["bidirected"].push_back({g.name(a), g.name(b)});
    if (order && !order->empty()) {
        doc["order"] = nlohmann::json::array();
        for (int v : *order) doc["order"].push_back(g.name(v));
    }
    return doc.dump(2) + "\n";
}

void save_graph_file(const std::string& path, const CausalGraph& g,
                     const std::optional<std::vector<int>>& order) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        out << serialize_graph_json(g, order);
    else out << serialize_graph_text(g, order);
}

}  // namespace clmp
