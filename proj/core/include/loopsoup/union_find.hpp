#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace loopsoup {

// Plain union-find with union by size; vertices are 1-based.
class UnionFind {
  public:
    explicit UnionFind(std::uint32_t n) : parent_(n + 1), size_(n + 1, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }

    // root and size of the largest component
    std::pair<std::uint32_t, std::uint32_t> largest() {
        std::uint32_t best = 1, best_size = 0;
        for (std::uint32_t v = 1; v < parent_.size(); ++v) {
            if (find(v) == v && size_[v] > best_size) {
                best = v;
                best_size = size_[v];
            }
        }
        return {best, best_size};
    }

  private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

} // namespace loopsoup
