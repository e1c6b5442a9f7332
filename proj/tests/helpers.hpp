#pragma once

// Shared test utilities. Everything here is deliberately independent of the
// library's optimized paths, so it can serve as an oracle against them.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "z4ap/group.hpp"

namespace z4test {

// Triple-loop progression check over the raw element list. O(k^3), no
// doubled-value index, no shortcuts. Keep the sets small.
inline bool naive_progression_free(const z4ap::PointSet& s) {
    auto v = s.vectors();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (i == j || j == k || i == k) continue;
                if (v[i].add(v[j]).packed() == v[k].doubled().packed())
                    return false;
            }
    return true;
}

// Uniform random subset of Z_4^n: each element kept with probability keep.
inline z4ap::PointSet random_subset(int n, double keep, std::mt19937_64& rng) {
    z4ap::PointSet s(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uint64_t space = std::uint64_t(1) << (2 * n);
    for (std::uint64_t x = 0; x < space; ++x)
        if (u(rng) < keep) s.insert(z4ap::GroupVector(n, x));
    return s;
}

// A single random element of Z_4^n.
inline z4ap::GroupVector random_vector(int n, std::mt19937_64& rng) {
    std::uint64_t mask =
        (2 * n == 64) ? ~0ull : ((std::uint64_t(1) << (2 * n)) - 1);
    return z4ap::GroupVector(n, rng() & mask);
}

// Incremental grow-only progression-free builder on std::set, written from
// the triple definition rather than shared with the library. A is kept
// free of triples; x joins it iff no distinct a, b, c with a + b = 2c
// appears among A + {x}. The new element can enter a triple either as the
// doubled element (some finished pairwise sum equals 2x) or as one summand
// (x + b = 2c for b, c in A; b != x since x is outside A, and b = c would
// force x = c).
struct NaiveBuilder {
    int n;
    std::vector<z4ap::GroupVector> elems;
    std::set<std::uint64_t> members;
    std::set<std::uint64_t> pair_sums;  // a + b over distinct pairs of A

    explicit NaiveBuilder(int n_) : n(n_) {}

    bool can_add(const z4ap::GroupVector& x) const {
        if (members.count(x.packed())) return false;
        if (pair_sums.count(x.doubled().packed())) return false;
        for (const auto& c : elems)
            if (members.count(c.doubled().sub(x).packed())) return false;
        return true;
    }

    void add(const z4ap::GroupVector& x) {
        for (const auto& a : elems) pair_sums.insert(a.add(x).packed());
        elems.push_back(x);
        members.insert(x.packed());
    }
};

// Greedy fill over a shuffled order; the result is progression-free and
// maximal by inclusion (a second pass would add nothing).
inline z4ap::PointSet naive_random_maximal(int n, std::mt19937_64& rng) {
    std::uint64_t space = std::uint64_t(1) << (2 * n);
    std::vector<std::uint64_t> order(space);
    for (std::uint64_t x = 0; x < space; ++x) order[x] = x;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng() % i]);
    NaiveBuilder b(n);
    for (std::uint64_t x : order) {
        z4ap::GroupVector g(n, x);
        if (b.can_add(g)) b.add(g);
    }
    z4ap::PointSet out(n);
    for (const auto& g : b.elems) out.insert(g);
    return out;
}

}  // namespace z4test
