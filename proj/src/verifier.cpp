#include "ekrlab/verifier.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ekrlab/errors.hpp"

namespace ekrlab {

namespace {

std::vector<int> starOf(const Hypergraph& H, int x) {
    std::vector<int> s;
    for (std::size_t i = 0; i < H.size(); ++i)
        if (H.edge(i).test(x)) s.push_back(static_cast<int>(i));
    return s;
}

// Lowest vertex of maximum degree, or -1 for an empty hypergraph.
int maxDegreeVertex(const DegreeStats& ds) {
    if (ds.Delta == 0) return -1;
    for (int x = 0; x < ds.n; ++x)
        if (ds.deg[static_cast<std::size_t>(x)] == ds.Delta) return x;
    return -1;
}

}  // namespace

std::vector<VertexSet> selectEdges(const Hypergraph& H, const std::vector<int>& indices) {
    std::vector<VertexSet> out;
    out.reserve(indices.size());
    for (int i : indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= H.size()) throw ArgumentError("edge index out of range");
        out.push_back(H.edge(static_cast<std::size_t>(i)));
    }
    return out;
}

void requireIntersecting(std::span<const VertexSet> family) {
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!family[i].intersects(family[j]))
                throw ArgumentError("not a clique: members " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are disjoint");
}

TrivialityCheck isTrivialClique(std::span<const VertexSet> clique) {
    if (clique.empty()) return {true, std::nullopt};
    VertexSet common = clique.front();
    for (const auto& e : clique) common &= e;
    if (common.none()) return {false, std::nullopt};
    return {true, common.lowest()};
}

TrivialityCheck isTrivialClique(const Hypergraph& H, const std::vector<int>& clique) {
    const auto sets = selectEdges(H, clique);
    return isTrivialClique(sets);
}

MaxCliqueResult maxIntersectingFamily(const Hypergraph& H, SearchLimits limits) {
    const auto ds = degreeStats(H);
    CliqueSearcher searcher(H.edges(), H.n(), limits);
    const int center = maxDegreeVertex(ds);
    const auto seed = center >= 0 ? starOf(H, center) : std::vector<int>{};
    auto clique = searcher.maximum(CliqueConstraint::none(), 0, seed);
    return {static_cast<int>(clique.size()), std::move(clique)};
}

EkrVerdict verifyEKR(const Hypergraph& H, SearchLimits limits) {
    if (!H.dedup() && !H.hasDistinctEdges())
        throw ArgumentError("strong EKR is decided on hypergraphs with distinct edges; deduplicate first");
    const auto ds = degreeStats(H);
    EkrVerdict v;
    v.Delta = ds.Delta;

    if (H.empty()) return v;

    // One search settles whether EKR fails: it looks for a clique above
    // Delta or a Delta-clique with no common vertex. Only on failure is omega
    // itself needed.
    CliqueSearcher searcher(H.edges(), H.n(), limits);
    auto beyond = searcher.findBeyondStar(static_cast<std::size_t>(v.Delta));
    if (!beyond) {
        v.omega = v.Delta;
        v.trivial_center = maxDegreeVertex(ds);
        return v;
    }
    v.holds = false;
    // A nontrivial Delta-clique does not rule out a larger clique elsewhere.
    auto best = beyond->size() > static_cast<std::size_t>(v.Delta)
                    ? searcher.maximum(CliqueConstraint::none(), 0, *beyond)
                    : searcher.maximum(CliqueConstraint::none(), static_cast<std::size_t>(v.Delta));
    if (best.empty()) {
        v.omega = v.Delta;
        v.witness = std::move(*beyond);
    } else {
        v.omega = static_cast<int>(best.size());
        v.witness = std::move(best);
    }
    return v;
}

EkrVerdict bruteForceEKR(const Hypergraph& H) {
    const std::size_t m = H.size();
    if (m > 20) throw ArgumentError("bruteForceEKR is limited to 20 edges, got " + std::to_string(m));
    if (!H.dedup() && !H.hasDistinctEdges())
        throw ArgumentError("strong EKR is decided on hypergraphs with distinct edges; deduplicate first");

    std::vector<std::uint32_t> adj(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && H.edge(i).intersects(H.edge(j))) adj[i] |= 1U << j;

    const std::uint32_t full = m == 0 ? 0U : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    std::vector<bool> isClique(static_cast<std::size_t>(full) + 1, false);
    isClique[0] = true;
    int omega = 0;
    for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        const int top = 31 - std::countl_zero(mask);
        const std::uint32_t rest = mask & ~(1U << top);
        isClique[mask] = isClique[rest] && (rest & ~adj[static_cast<std::size_t>(top)]) == 0;
        if (isClique[mask]) omega = std::max(omega, std::popcount(mask));
        if (mask == full) break;
    }

    std::vector<std::uint32_t> stars(static_cast<std::size_t>(H.n()), 0);
    int Delta = 0;
    for (int x = 0; x < H.n(); ++x) {
        for (std::size_t i = 0; i < m; ++i)
            if (H.edge(i).test(x)) stars[static_cast<std::size_t>(x)] |= 1U << i;
        Delta = std::max(Delta, std::popcount(stars[static_cast<std::size_t>(x)]));
    }

    EkrVerdict v;
    v.omega = omega;
    v.Delta = Delta;
    if (omega == 0) return v;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (isClique[mask] && std::popcount(mask) == omega) {
            const auto it = std::find(stars.begin(), stars.end(), mask);
            if (it == stars.end()) {
                v.holds = false;
                std::vector<int> w;
                for (std::size_t i = 0; i < m; ++i)
                    if (mask >> i & 1U) w.push_back(static_cast<int>(i));
                v.witness = std::move(w);
                return v;
            }
            if (!v.trivial_center) v.trivial_center = static_cast<int>(it - stars.begin());
        }
        if (mask == full) break;
    }
    return v;
}

std::vector<int> maxNontrivialClique(const Hypergraph& H, SearchLimits limits) {
    CliqueSearcher searcher(H.edges(), H.n(), limits);
    return searcher.maximum(CliqueConstraint::nontrivial());
}

}  // namespace ekrlab
