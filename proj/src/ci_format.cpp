#include "clmp/ci_format.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace clmp {

namespace {

std::vector<std::string> sorted_names(const CausalGraph& g, const NodeSet& s) {
    std::vector<std::string> names;
    names.reserve(s.size());
    for (int v : s) names.push_back(g.name(v));
    std::sort(names.begin(), names.end());
    return names;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string ci_line_text(const CausalGraph& g, const CiStatement& s) {
    std::string out = g.name(s.x) + " _||_ " + join(sorted_names(g, s.w));
    if (!s.z.empty()) out += " | " + join(sorted_names(g, s.z));
    return out;
}

std::string ci_line_json(const CausalGraph& g, const CiStatement& s) {
    nlohmann::ordered_json doc;
    doc["x"] = g.name(s.x);
    doc["w"] = sorted_names(g, s.w);
    doc["z"] = sorted_names(g, s.z);
    return doc.dump();
}

std::string gmp_line_text(const CausalGraph& g, const GmpStatement& s) {
    std::string out = join(sorted_names(g, s.x)) + " _||_ " + join(sorted_names(g, s.y));
    if (!s.z.empty()) out += " | " + join(sorted_names(g, s.z));
    return out;
}

std::string gmp_line_json(const CausalGraph& g, const GmpStatement& s) {
    nlohmann::ordered_json doc;
    doc["x"] = sorted_names(g, s.x);
    doc["y"] = sorted_names(g, s.y);
    doc["z"] = sorted_names(g, s.z);
    return doc.dump();
}

CiStatement parse_ci_line_text(const CausalGraph& g, const std::string& line) {
    auto sep = line.find(" _||_ ");
    if (sep == std::string::npos) throw ParseError("missing _||_ in CI line: " + line);
    std::string xs = line.substr(0, sep);
    std::string rest = line.substr(sep + 6);
    std::string ws = rest, zs;
    auto bar = rest.find(" | ");
    if (bar != std::string::npos) {
        ws = rest.substr(0, bar);
        zs = rest.substr(bar + 3);
    }
    auto lookup = [&](const std::string& name) {
        auto idx = g.index_of(name);
        if (!idx) throw ParseError("unknown node " + name + " in CI line");
        return *idx;
    };
    auto parse_set = [&](const std::string& text) {
        std::vector<int> out;
        std::string cur;
        std::istringstream ss(text);
        while (std::getline(ss, cur, ','))
            if (!cur.empty()) out.push_back(lookup(cur));
        return NodeSet(std::move(out));
    };
    return CiStatement{lookup(xs), parse_set(ws), parse_set(zs)};
}

}  // namespace clmp
