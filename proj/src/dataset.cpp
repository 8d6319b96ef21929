#include "clmp/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace clmp {

Dataset::Dataset(std::vector<std::string> names,
                 std::vector<std::variant<std::vector<double>, CategoricalColumn>> columns,
                 std::size_t dropped_rows)
    : names_(std::move(names)), cols_(std::move(columns)), dropped_(dropped_rows) {
    if (names_.size() != cols_.size()) throw DomainError("column name/data count mismatch");
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (!index_.emplace(names_[i], i).second)
            throw DomainError("duplicate column name: " + names_[i]);
    }
    rows_ = 0;
    for (std::size_t i = 0; i < cols_.size(); ++i) {
        std::size_t len = std::holds_alternative<std::vector<double>>(cols_[i])
                              ? std::get<std::vector<double>>(cols_[i]).size()
                              : std::get<CategoricalColumn>(cols_[i]).codes.size();
        if (i == 0) rows_ = len;
        else if (len != rows_) throw DomainError("columns have unequal lengths");
    }
}

int Dataset::index_checked(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw DomainError("unknown column " + name);
    return it->second;
}

ColumnType Dataset::type_of(const std::string& name) const {
    return std::holds_alternative<std::vector<double>>(cols_[index_checked(name)])
               ? ColumnType::continuous
               : ColumnType::categorical;
}

const std::vector<double>& Dataset::continuous(const std::string& name) const {
    int i = index_checked(name);
    if (!std::holds_alternative<std::vector<double>>(cols_[i]))
        throw DomainError("column " + name + " is not continuous");
    return std::get<std::vector<double>>(cols_[i]);
}

const CategoricalColumn& Dataset::categorical(const std::string& name) const {
    int i = index_checked(name);
    if (!std::holds_alternative<CategoricalColumn>(cols_[i]))
        throw DomainError("column " + name + " is not categorical");
    return std::get<CategoricalColumn>(cols_[i]);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

bool parse_number(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

}  // namespace

Dataset load_csv_text(const std::string& text, const SchemaHints& hints) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) throw ParseError("empty CSV file");
    const std::size_t ncol = header.size();

    std::vector<std::vector<std::string>> raw(ncol);
    std::size_t dropped = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != ncol)
            throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(ncol),
                             lineno);
        bool missing = std::any_of(cells.begin(), cells.end(),
                                   [](const std::string& c) { return c.empty(); });
        if (missing) {
            ++dropped;
            continue;
        }
        for (std::size_t i = 0; i < ncol; ++i) raw[i].push_back(std::move(cells[i]));
    }

    std::vector<std::variant<std::vector<double>, CategoricalColumn>> cols;
    for (std::size_t i = 0; i < ncol; ++i) {
        ColumnType type;
        auto hint = hints.force.find(header[i]);
        if (hint != hints.force.end()) {
            type = hint->second;
        } else {
            bool numeric = true;
            std::set<std::string> distinct;
            for (const auto& cell : raw[i]) {
                double v;
                if (!parse_number(cell, v)) {
                    numeric = false;
                    break;
                }
                distinct.insert(cell);
            }
            type = numeric && distinct.size() > 10 ? ColumnType::continuous
                                                   : ColumnType::categorical;
        }
        if (type == ColumnType::continuous) {
            std::vector<double> vals;
            vals.reserve(raw[i].size());
            for (const auto& cell : raw[i]) {
                double v;
                if (!parse_number(cell, v))
                    throw ParseError("column " + header[i] + " forced continuous but cell '" +
                                     cell + "' is not numeric");
                vals.push_back(v);
            }
            cols.emplace_back(std::move(vals));
        } else {
            CategoricalColumn cc;
            std::set<std::string> levels(raw[i].begin(), raw[i].end());
            cc.levels.assign(levels.begin(), levels.end());
            std::map<std::string, int> code;
            for (int k = 0; k < static_cast<int>(cc.levels.size()); ++k) code[cc.levels[k]] = k;
            cc.codes.reserve(raw[i].size());
            for (const auto& cell : raw[i]) cc.codes.push_back(code[cell]);
            cols.emplace_back(std::move(cc));
        }
    }
    return Dataset(std::move(header), std::move(cols), dropped);
}

Dataset load_csv(const std::string& path, const SchemaHints& hints) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_csv_text(buf.str(), hints);
}

}  // namespace clmp
