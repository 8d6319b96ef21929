#ifndef CLMP_NODE_SET_HPP
#define CLMP_NODE_SET_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace clmp {

/// Canonical set of node indices: sorted, unique. Equality is structural.
class NodeSet {
public:
    NodeSet() = default;

    NodeSet(std::initializer_list<int> xs) : members_(xs) { normalize(); }

    explicit NodeSet(std::vector<int> xs) : members_(std::move(xs)) { normalize(); }

    // Caller guarantees xs sorted and duplicate-free.
    static NodeSet from_sorted_unique(std::vector<int> xs) {
        NodeSet s;
        s.members_ = std::move(xs);
        return s;
    }

    bool contains(int v) const {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    const std::vector<int>& values() const { return members_; }

    std::vector<int>::const_iterator begin() const { return members_.begin(); }
    std::vector<int>::const_iterator end() const { return members_.end(); }

    void add(int v) {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it == members_.end() || *it != v) members_.insert(it, v);
    }

    void remove(int v) {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it != members_.end() && *it == v) members_.erase(it);
    }

    friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.members_ == b.members_; }
    friend bool operator!=(const NodeSet& a, const NodeSet& b) { return !(a == b); }
    friend bool operator<(const NodeSet& a, const NodeSet& b) { return a.members_ < b.members_; }

private:
    void normalize() {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<int> members_;
};

inline NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet::from_sorted_unique(std::move(out));
}

inline NodeSet set_minus(const NodeSet& a, const NodeSet& b) {
    std::vector<int> out;
    out.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet::from_sorted_unique(std::move(out));
}

inline NodeSet set_intersect(const NodeSet& a, const NodeSet& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet::from_sorted_unique(std::move(out));
}

inline bool is_subset(const NodeSet& a, const NodeSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool disjoint(const NodeSet& a, const NodeSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return false;
    }
    return true;
}

}  // namespace clmp

#endif
