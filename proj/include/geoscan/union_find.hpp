#ifndef GEOSCAN_UNION_FIND_HPP_
#define GEOSCAN_UNION_FIND_HPP_

#include <numeric>
#include <vector>

namespace geoscan {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }

    /// Returns false if already joined.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        return true;
    }

    /// Dense class labels numbered by first appearance.
    std::vector<int> labels() {
        std::vector<int> out(parent_.size(), -1);
        std::vector<int> id(parent_.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            const auto r = static_cast<std::size_t>(find(static_cast<int>(i)));
            if (id[r] < 0) id[r] = next++;
            out[i] = id[r];
        }
        return out;
    }

    int size() const { return static_cast<int>(parent_.size()); }

private:
    std::vector<int> parent_;
};

}  // namespace geoscan

#endif  // GEOSCAN_UNION_FIND_HPP_
