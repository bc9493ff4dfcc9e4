#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace idealtri {

/// Disjoint sets over 0..n-1 with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(int n = 0) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y)
            return false;
        if (size_[x] < size_[y])
            std::swap(x, y);
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

    bool same(int x, int y) { return find(x) == find(y); }
    int size() const noexcept { return static_cast<int>(parent_.size()); }

    /// Dense labels 0..k-1 in order of first appearance.
    std::vector<int> labels(int* count = nullptr) {
        std::vector<int> root_label(parent_.size(), -1);
        std::vector<int> out(parent_.size());
        int next = 0;
        for (int i = 0; i < size(); ++i) {
            int r = find(i);
            if (root_label[r] < 0)
                root_label[r] = next++;
            out[i] = root_label[r];
        }
        if (count)
            *count = next;
        return out;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace idealtri
