#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ekrlab/analytics.hpp"
#include "ekrlab/clique_search.hpp"
#include "ekrlab/hypergraph.hpp"

namespace ekrlab {

// ---------------------------------------------------------------------------
// Hilton-Milner families
// ---------------------------------------------------------------------------

/// {B0} together with every edge through x that meets B0 (x not in B0).
struct HMWitness {
    int center = -1;             ///< x, 0-based
    int b0 = -1;                 ///< edge index of B0
    std::vector<int> petals;     ///< edge indices, ascending
};

/// First (x ascending, then B0 by index) pair x, B0 such that x is not in
/// B0, at least d edges through x meet B0, and the family of B0 and all
/// those petals has no common vertex. Every such family is a nontrivial
/// clique; any nontrivial clique of this shape with >= d petals extends to
/// the one reported. Multiplicity counts. Throws ArgumentError if d <= 0.
std::optional<HMWitness> findHiltonMilner(const Hypergraph& H, int d);

/// phi^(d+1) k^(2d-1) n^-(d-2), the dominant union-bound term for an HM
/// family of size d+1.
double hmCountBound(const ModelParams& params, int d);
double hmCountBound(double phi, double n, double k, int d);

// ---------------------------------------------------------------------------
// Generic cliques
// ---------------------------------------------------------------------------

/// Max degree <= 3 and at most zeta_cap vertices of degree exactly 3,
/// degrees counted with multiplicity. Throws ArgumentError for non-cliques.
bool isGenericClique(std::span<const VertexSet> clique, std::int64_t zeta_cap);

/// First generic clique of exactly `size` edges in search order, or nullopt.
std::optional<std::vector<int>> findGenericClique(const Hypergraph& H, std::size_t size, std::int64_t zeta_cap,
                                                  SearchLimits limits = {});

// ---------------------------------------------------------------------------
// Sequential degree profile of an ordered clique
// ---------------------------------------------------------------------------

struct CliqueProfile {
    std::vector<int> w_sizes;   ///< |W_i|, i = 1..t (vertices of degree exactly 2)
    std::vector<int> z_sizes;   ///< |Z_i| (degree >= 3)
    std::vector<int> u_sizes;   ///< |U_i| = |W_i| + |Z_i|
    std::vector<int> s_vec;     ///< s_i = |A_i and W_{i-1}|
    std::vector<int> r_vec;     ///< r_i = |A_i and Z_{i-1}|
    std::int64_t s = 0;
    std::int64_t r = 0;
    std::int64_t Psi = 0;       ///< sum over Z of C(d_v, 2) - 1
    double X_rs = 0.0;          ///< 2 s + (lambda_cap + 2) r / 2
    int max_deg = 0;
    int num_deg3 = 0;
    std::vector<int> degrees;   ///< final d_v over the counted vertices (excluded vertex reads 0)
};

/// Reveals A_1..A_t in order. Vertex `excluded` (if given) is left out of
/// W, Z, U and all tallies, matching a profile taken over V minus a
/// designated high-degree vertex.
CliqueProfile cliqueProfile(std::span<const VertexSet> ordered, double lambda_cap,
                            std::optional<int> excluded = std::nullopt);

// ---------------------------------------------------------------------------
// Event taxonomy for nontrivial cliques
// ---------------------------------------------------------------------------

enum class CliqueEvent { A, B, C, None };

std::string eventName(CliqueEvent e);

struct EventClassification {
    CliqueEvent event = CliqueEvent::None;
    std::vector<int> vertices;   ///< certifying vertices (0-based)
};

/// Checks, in priority order:
///   A: some x with d_C(x) >= tau, |C| >= d_H(x), and |C| >= alpha or
///      |C \ C_x| >= 2/eps;
///   B: two vertices with d_C >= lambda;
///   C: |C| >= gamma, at most one vertex with d_C > lambda, max d_C < tau.
/// Throws ArgumentError if the clique is trivial or not a clique.
EventClassification classifyNontrivialClique(const Hypergraph& H, const std::vector<int>& clique,
                                             const RegimeParams& regime);

// ---------------------------------------------------------------------------
// Witness labels
// ---------------------------------------------------------------------------

struct HMShape {
    int center = -1;      ///< x
    std::size_t b0 = 0;   ///< position of B0 within the clique
};

/// Recognizes a nontrivial clique made of one edge B0 plus edges that all
/// contain a vertex x outside B0.
std::optional<HMShape> hiltonMilnerShape(std::span<const VertexSet> clique);

/// Label for a failure witness: "hm" if HM-shaped, else "generic" if generic
/// for regime.zeta_cap, else the event name from classifyNontrivialClique
/// ("eventA", "eventB", "eventC", or "none").
std::string classifyWitness(const Hypergraph& H, const std::vector<int>& clique, const RegimeParams& regime);

}  // namespace ekrlab
