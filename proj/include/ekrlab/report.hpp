#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekrlab/analytics.hpp"
#include "ekrlab/hypergraph.hpp"
#include "ekrlab/verifier.hpp"
#include "ekrlab/witnesses.hpp"

namespace ekrlab {

struct CalcOptions {
    /// Largest t in the Lambda table; nullopt picks a range that covers the
    /// peak and alpha2 (at most 400 rows).
    std::optional<std::uint64_t> lambda_table_max;
    bool with_threshold = true;
    ExactnessOptions exactness;
};

/// Flat JSON object with every analytic quantity for `params`, keyed by the
/// usual symbol names (q, theta, lambda_t, alpha1, ..., w, qhat). Exact
/// rationals appear as "a/b" strings under *_exact keys. Throws DomainError
/// for invalid parameters.
std::string calcReportJson(const ModelParams& params, const CalcOptions& opts = {});

/// q and theta only; defined for any k >= 1 and n (q = 1 when n < 2k).
/// Used where the full report is not, such as the boundary n = 2k.
std::string intersectionReportJson(std::uint64_t n, std::uint64_t k);

/// Edges as arrays of 1-based vertices.
std::vector<std::vector<int>> cliqueVertices(const Hypergraph& H, const std::vector<int>& clique);

/// {"holds", "omega", "delta", "witness"}; witness is null when EKR holds.
std::string verdictJson(const Hypergraph& H, const EkrVerdict& v);

/// {"kind", "witness", ...extra}; kind and witness are null when nothing
/// was found. `center` is reported 1-based when given.
std::string witnessJson(const Hypergraph& H, const std::optional<std::string>& kind,
                        const std::optional<std::vector<int>>& clique, std::optional<int> center = std::nullopt);

}  // namespace ekrlab
