#pragma once

#include <vector>

#include "ehs/errors.hpp"

namespace ehs {

// Multi-index with fixed total: y_k >= 0, sum y_k = total (simplex domain).
struct composition {
    std::vector<int> parts;
    int total = 0;
};

// Multi-index on a hyperrectangle: 0 <= parts_k <= bounds_k.
struct box_index {
    std::vector<int> parts;
    std::vector<int> bounds;
};

// Streams all compositions of N into n parts, lexicographically ascending.
// This order is the normative summation order for every simplex sum.
class composition_stream {
  public:
    composition_stream(int n, int N) : n_(n), N_(N) {
        if (n < 1) throw argument_error("compositions: n must be >= 1");
        if (N < 0) throw argument_error("compositions: N must be >= 0");
        cur_.assign(static_cast<size_t>(n), 0);
        cur_.back() = N;
    }

    // Fills `out` with the next composition; false once exhausted.
    bool next(std::vector<int>& out) {
        if (done_) return false;
        if (!started_) {
            started_ = true;
            out = cur_;
            return true;
        }
        // lexicographic successor: bump the rightmost position that has
        // mass to its right, zero the middle, drop the remainder at the end
        int tail = 0;
        int i = n_ - 1;
        while (--i >= 0) {
            tail += cur_[static_cast<size_t>(i) + 1];
            if (tail > 0) break;
        }
        if (i < 0) {
            done_ = true;
            return false;
        }
        cur_[static_cast<size_t>(i)] += 1;
        for (int t = i + 1; t < n_; ++t) cur_[static_cast<size_t>(t)] = 0;
        cur_.back() = tail - 1;
        out = cur_;
        return true;
    }

  private:
    int n_, N_;
    std::vector<int> cur_;
    bool started_ = false, done_ = false;
};

// Streams all box indices 0 <= y_k <= bounds_k, lexicographically ascending.
// An empty bounds list yields the single empty index.
class box_stream {
  public:
    explicit box_stream(std::vector<int> bounds) : bounds_(std::move(bounds)) {
        for (int b : bounds_)
            if (b < 0) throw argument_error("box_indices: bounds must be >= 0");
        cur_.assign(bounds_.size(), 0);
    }

    bool next(std::vector<int>& out) {
        if (done_) return false;
        if (!started_) {
            started_ = true;
            out = cur_;
            return true;
        }
        int i = static_cast<int>(bounds_.size()) - 1;
        while (i >= 0) {
            if (cur_[static_cast<size_t>(i)] < bounds_[static_cast<size_t>(i)]) {
                cur_[static_cast<size_t>(i)] += 1;
                out = cur_;
                return true;
            }
            cur_[static_cast<size_t>(i)] = 0;
            --i;
        }
        done_ = true;
        return false;
    }

  private:
    std::vector<int> bounds_;
    std::vector<int> cur_;
    bool started_ = false, done_ = false;
};

// C(N+n-1, n-1), the number of compositions of N into n parts.
inline unsigned long long composition_count(int n, int N) {
    if (n < 1) throw argument_error("compositions: n must be >= 1");
    if (N < 0) throw argument_error("compositions: N must be >= 0");
    unsigned long long c = 1;
    for (int i = 1; i <= n - 1; ++i)
        c = c * static_cast<unsigned long long>(N + i) / static_cast<unsigned long long>(i);
    return c;
}

inline unsigned long long box_count(const std::vector<int>& bounds) {
    unsigned long long c = 1;
    for (int b : bounds) {
        if (b < 0) throw argument_error("box_indices: bounds must be >= 0");
        c *= static_cast<unsigned long long>(b) + 1;
    }
    return c;
}

}  // namespace ehs
