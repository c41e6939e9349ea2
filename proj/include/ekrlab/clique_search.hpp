#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ekrlab/vertex_set.hpp"

namespace ekrlab {

/// Caps shared by every exact clique search. Exceeding any of them raises
/// ResourceError; results are never approximated.
struct SearchLimits {
    std::size_t max_edges = 2000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::uint64_t node_limit = 0;   ///< 0 means unlimited
};

/// Extra structure a clique must have to be accepted.
struct CliqueConstraint {
    enum class Kind { None, Nontrivial, Generic };
    Kind kind = Kind::None;
    /// Generic: maximum number of vertices of clique-degree exactly 3.
    std::int64_t zeta_cap = 0;

    static CliqueConstraint none() { return {}; }
    static CliqueConstraint nontrivial() { return {Kind::Nontrivial, 0}; }
    static CliqueConstraint generic(std::int64_t cap) { return {Kind::Generic, cap}; }
};

/// Exact clique search in the intersection graph of a list of k-sets
/// (i ~ j iff i != j and the sets meet).
///
/// Bitset branch and bound over a fixed vertex order (intersection degree
/// descending, then colex rank, then input index), so results are
/// deterministic. Upper bounds come from greedy coloring, tightened by
/// failed-literal tests on the color classes that would otherwise be
/// branched on. Not thread-safe; use one searcher per thread.
class CliqueSearcher {
public:
    CliqueSearcher(std::span<const VertexSet> edges, int n, SearchLimits limits = {});

    /// A maximum clique among those satisfying the constraint, as sorted input
    /// indices. Only cliques larger than lower_bound are looked for; returns
    /// empty if there are none. A seed larger than lower_bound is taken as
    /// the first incumbent and must satisfy the constraint.
    std::vector<int> maximum(CliqueConstraint c = {}, std::size_t lower_bound = 0,
                             const std::vector<int>& seed = {});

    /// First clique of exactly `size` edges satisfying the constraint.
    std::optional<std::vector<int>> findOfSize(std::size_t size, CliqueConstraint c = {});

    /// First clique that either has more than `size` edges or has exactly
    /// `size` edges and no common vertex. With size = Delta this is a
    /// counterexample to strong EKR whenever one exists.
    std::optional<std::vector<int>> findBeyondStar(std::size_t size);

    std::uint64_t nodes() const { return nodes_; }

private:
    enum class Mode { Maximize, Target, BeyondStar };

    struct Level {
        std::vector<std::uint64_t> P;
        std::vector<int> order;
        std::vector<int> bound;
        std::vector<std::uint64_t> classes;   // flat, words_ per class
        std::vector<std::size_t> class_start;
        VertexSet common;
    };

    void reset(Mode mode, CliqueConstraint c, std::size_t best, std::size_t target);
    bool run();
    bool expand(std::size_t depth);
    void checkLimits();
    void colorSort(Level& L, std::size_t kmin);
    bool propagateFails(int u, const Level& L, std::size_t limit);
    bool feasibleNontrivial(const std::uint64_t* P, const VertexSet& common) const;
    void restrictGeneric(std::uint64_t* P, std::int64_t deg3) const;
    std::vector<int> exportClique(const std::vector<int>& positions) const;

    const std::uint64_t* adj(int v) const { return adj_.data() + static_cast<std::size_t>(v) * words_; }
    const std::uint64_t* star(int x) const { return star_.data() + static_cast<std::size_t>(x) * words_; }

    std::vector<VertexSet> sets_;          // in search order
    std::vector<int> original_;            // search position -> input index
    std::vector<std::uint64_t> adj_;       // flat adjacency rows
    std::vector<std::uint64_t> star_;      // flat rows: positions of sets containing x
    int n_ = 0;
    std::size_t words_ = 0;
    SearchLimits limits_;

    // Per-search state.
    Mode mode_ = Mode::Maximize;
    CliqueConstraint constraint_;
    std::size_t best_size_ = 0;
    std::size_t target_ = 0;
    std::vector<int> best_;
    std::vector<int> clique_;
    std::vector<int> vdeg_;
    std::vector<Level> levels_;            // sized once per search; never reallocated while recursing
    std::uint64_t nodes_ = 0;

    // Scratch for coloring and the failed-literal tests.
    std::vector<std::uint64_t> uncolored_, queue_, allowed_;
    std::vector<char> used_, touched_, involved_;
};

}  // namespace ekrlab
