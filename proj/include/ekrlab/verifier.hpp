#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ekrlab/clique_search.hpp"
#include "ekrlab/hypergraph.hpp"

namespace ekrlab {

/// Outcome of a strong EKR decision. Cliques are sorted edge indices into
/// the hypergraph that was examined.
struct EkrVerdict {
    bool holds = true;
    int omega = 0;
    int Delta = 0;
    std::optional<std::vector<int>> witness;   ///< a maximum clique that is not a full star
    std::optional<int> trivial_center;         ///< center of a maximum star when holds
};

struct MaxCliqueResult {
    int omega = 0;
    std::vector<int> clique;
};

/// Largest intersecting subfamily, seeded with the largest star.
MaxCliqueResult maxIntersectingFamily(const Hypergraph& H, SearchLimits limits = {});

/// Strong EKR: every maximum clique is a full star H_x.
///
/// A clique with a common vertex x lies inside H_x, so it has at most
/// d(x) <= Delta members. Hence omega > Delta fails outright, and when
/// omega == Delta a maximum clique is a full star iff it has a common vertex.
/// The second search therefore only asks for an omega-clique whose members
/// share no vertex. Requires distinct edges (ArgumentError otherwise).
EkrVerdict verifyEKR(const Hypergraph& H, SearchLimits limits = {});

/// Exhaustive oracle over all 2^|H| subfamilies, |H| <= 20. Compares every
/// maximum clique literally with the stars H_x.
EkrVerdict bruteForceEKR(const Hypergraph& H);

struct TrivialityCheck {
    bool trivial = true;
    std::optional<int> center;   ///< lowest common vertex; empty for the empty clique
};

/// A clique is trivial iff its members share a vertex. The empty clique is
/// reported trivial without a center.
TrivialityCheck isTrivialClique(std::span<const VertexSet> clique);
TrivialityCheck isTrivialClique(const Hypergraph& H, const std::vector<int>& clique);

/// Largest clique with no common vertex, or empty if every clique is trivial.
std::vector<int> maxNontrivialClique(const Hypergraph& H, SearchLimits limits = {});

/// Edges of H selected by index.
std::vector<VertexSet> selectEdges(const Hypergraph& H, const std::vector<int>& indices);

/// Throws ArgumentError naming the first disjoint pair (as indices into the
/// given list) unless the sets pairwise intersect.
void requireIntersecting(std::span<const VertexSet> family);

}  // namespace ekrlab
