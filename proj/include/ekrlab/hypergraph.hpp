#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ekrlab/analytics.hpp"
#include "ekrlab/vertex_set.hpp"

namespace ekrlab {

/// A k-subset of [n] (0-based internally).
class KSet {
public:
    /// Throws ArgumentError unless every member is < n and n <= 256.
    KSet(VertexSet bits, int n);
    static KSet fromMembers(const std::vector<int>& zero_based, int n);
    static KSet fromOneBased(const std::vector<int>& one_based, int n);

    const VertexSet& bits() const { return bits_; }
    int n() const { return n_; }
    int k() const { return k_; }
    std::vector<int> members() const { return bits_.members(); }

    friend bool operator==(const KSet&, const KSet&) = default;

private:
    VertexSet bits_;
    int n_ = 0;
    int k_ = 0;
};

/// An ordered multiset of k-subsets of [n]. Immutable once built.
class Hypergraph {
public:
    Hypergraph() = default;
    /// Every edge must have exactly k members below n. With dedup = true,
    /// duplicate edges are rejected with ArgumentError.
    Hypergraph(int n, int k, std::vector<VertexSet> edges, bool dedup);

    static Hypergraph fromKSets(int n, int k, const std::vector<KSet>& edges, bool dedup);
    /// Convenience for literals such as {{1,2},{1,3}}; labels are 1-based.
    static Hypergraph fromOneBased(int n, int k, const std::vector<std::vector<int>>& edges, bool dedup = true);

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    bool dedup() const { return dedup_; }
    std::span<const VertexSet> edges() const { return edges_; }
    const VertexSet& edge(std::size_t i) const { return edges_[i]; }

    /// True iff no edge appears twice (independent of the dedup flag).
    bool hasDistinctEdges() const;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<VertexSet> edges_;
    bool dedup_ = true;
};

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// Default cap on C(n, k) for samplers that walk every k-set rank.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Each k-set present independently with probability p. Edges in colex
/// order. Uses stream (seed, trial, 0) with geometric skipping over ranks.
Hypergraph sampleBernoulli(int n, int k, double p, std::uint64_t seed, std::uint64_t trial = 0,
                           std::uint64_t cap = kDefaultEnumerationCap);

/// m edges i.i.d. uniform; edge j comes from stream (seed, trial, j) by a
/// partial Fisher-Yates shuffle. Draw order is kept; duplicates allowed.
Hypergraph sampleIndependent(int n, int k, std::uint64_t m, std::uint64_t seed, std::uint64_t trial = 0);

struct ConditionedSample {
    Hypergraph graph;
    bool m_in_window = false;
};

/// m ~ Bin(C(n,k), p), then m distinct uniform k-sets (colex order). Same law
/// as sampleBernoulli. The window is |m - mbar| < psi sqrt(mbar) with
/// mbar = p C(n,k); psi defaults to log n.
ConditionedSample sampleConditioned(int n, int k, double p, std::uint64_t seed, std::uint64_t trial = 0,
                                    std::optional<double> psi = std::nullopt,
                                    std::uint64_t cap = kDefaultEnumerationCap);

/// |m - mbar| < psi sqrt(mbar). For mbar = 0 the window degenerates to {0}.
bool inEdgeCountWindow(double m, double mbar, double psi);

// ---------------------------------------------------------------------------
// Degree statistics
// ---------------------------------------------------------------------------

struct DegreeStats {
    int n = 0;
    std::vector<int> deg;              ///< d(x), multiplicity counted
    int Delta = 0;
    std::vector<int> pair_deg;         ///< d(x, y) at index x * n + y; diagonal is d(x)
    std::vector<VertexSet> W;          ///< W_x = {y != x : d(x,y) >= 2}
    int max_pair_deg = 0;              ///< max over x != y of d(x, y)
    std::size_t max_W = 0;             ///< max_x |W_x|

    int pairDeg(int x, int y) const { return pair_deg[static_cast<std::size_t>(x * n + y)]; }
};

DegreeStats degreeStats(const Hypergraph& H);

// ---------------------------------------------------------------------------
// Event R
// ---------------------------------------------------------------------------

struct EventRReport {
    bool m_window = false;         ///< m in (mbar - psi sqrt(mbar), mbar + psi sqrt(mbar))
    bool delta_le_beta = false;
    bool delta_ge_alpha = false;
    bool pair_deg_le_8 = false;    ///< d(x,y) <= 8 for all x != y
    bool w_small = false;          ///< |W_x| < w for all x
    bool all() const { return m_window && delta_le_beta && delta_ge_alpha && pair_deg_le_8 && w_small; }
};

EventRReport checkEventR(const Hypergraph& H, const ModelParams& params);
/// Variant reusing precomputed brackets and degree statistics.
EventRReport checkEventR(const Hypergraph& H, const ModelParams& params, const AlphaBeta& ab, const DegreeStats& ds);

// ---------------------------------------------------------------------------
// Text format: "n k m" header, then one edge per line, 1-based and sorted.
// ---------------------------------------------------------------------------

void writeHypergraph(std::ostream& out, const Hypergraph& H);
std::string formatHypergraph(const Hypergraph& H);
/// Throws ParseError on malformed input. The dedup flag is set iff all edges
/// are distinct.
Hypergraph readHypergraph(std::istream& in);
Hypergraph parseHypergraph(const std::string& text);
Hypergraph loadHypergraph(const std::string& path);
void saveHypergraph(const std::string& path, const Hypergraph& H);

}  // namespace ekrlab
