#pragma once

// Independent reference implementations used by the tests. They avoid the
// library's own algorithms and favour directness over speed.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ekrlab/hypergraph.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

// All k-subsets of {0..n-1} as bitmasks, in increasing numeric order.
inline std::vector<std::uint32_t> kSubsets(int n, int k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1U << n); ++m)
        if (__builtin_popcount(m) == k) out.push_back(m);
    return out;
}

// Fraction of ordered pairs (A, B) of k-subsets of [n] that meet.
inline Rational bruteQ(int n, int k) {
    const auto sets = kSubsets(n, k);
    std::uint64_t meet = 0;
    for (auto a : sets)
        for (auto b : sets)
            if (a & b) ++meet;
    return Rational(meet, static_cast<std::uint64_t>(sets.size() * sets.size()));
}

// Maximum clique size and every maximum clique of a small family of masks,
// by subset enumeration in increasing size.
struct CliqueCensus {
    int omega = 0;
    std::vector<std::uint32_t> maximum;   // subfamilies as masks over edge indices
};

inline CliqueCensus census(const std::vector<std::uint64_t>& edges) {
    const std::size_t m = edges.size();
    CliqueCensus c;
    for (std::uint32_t sub = 0; sub < (1U << m); ++sub) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
            if (sub >> i & 1U)
                for (std::size_t j = i + 1; j < m && ok; ++j)
                    if ((sub >> j & 1U) && (edges[i] & edges[j]) == 0) ok = false;
        if (!ok) continue;
        const int size = __builtin_popcount(sub);
        if (size > c.omega) {
            c.omega = size;
            c.maximum.clear();
        }
        if (size == c.omega) c.maximum.push_back(sub);
    }
    return c;
}

inline ekrlab::VertexSet fromMask(std::uint64_t m) {
    ekrlab::VertexSet s;
    for (int v = 0; v < 64; ++v)
        if (m >> v & 1U) s.set(v);
    return s;
}

inline std::vector<std::uint64_t> masks(const ekrlab::Hypergraph& H) {
    std::vector<std::uint64_t> out;
    for (const auto& e : H.edges()) {
        std::uint64_t m = 0;
        e.forEach([&](int v) { m |= std::uint64_t{1} << v; });
        out.push_back(m);
    }
    return out;
}

// Strong EKR straight from the definition: every maximum clique equals the
// full star of some vertex.
inline bool ekrByDefinition(const ekrlab::Hypergraph& H) {
    const auto e = masks(H);
    const auto c = census(e);
    for (auto sub : c.maximum) {
        bool isStar = false;
        for (int x = 0; x < H.n() && !isStar; ++x) {
            std::uint32_t star = 0;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] >> x & 1U) star |= 1U << i;
            isStar = star == sub;
        }
        if (!isStar) return false;
    }
    return true;
}

inline bool pairwiseIntersecting(const ekrlab::Hypergraph& H, const std::vector<int>& idx) {
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (!H.edge(static_cast<std::size_t>(idx[a])).intersects(H.edge(static_cast<std::size_t>(idx[b]))))
                return false;
    return true;
}

inline bool hasCommonVertex(const ekrlab::Hypergraph& H, const std::vector<int>& idx) {
    for (int x = 0; x < H.n(); ++x) {
        bool all = true;
        for (int i : idx) all = all && H.edge(static_cast<std::size_t>(i)).test(x);
        if (all) return true;
    }
    return false;
}

// Full complete k-uniform hypergraph on [n].
inline ekrlab::Hypergraph complete(int n, int k) {
    std::vector<std::vector<int>> edges;
    for (auto m : kSubsets(n, k)) {
        std::vector<int> e;
        for (int v = 0; v < n; ++v)
            if (m >> v & 1U) e.push_back(v + 1);
        edges.push_back(e);
    }
    return ekrlab::Hypergraph::fromOneBased(n, k, edges);
}

inline std::uint64_t choose(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

}  // namespace oracle
