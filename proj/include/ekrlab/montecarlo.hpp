#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekrlab/analytics.hpp"
#include "ekrlab/hypergraph.hpp"

namespace ekrlab {

inline constexpr int kSchemaVersion = 1;

enum class SamplerMode { Bernoulli, Conditioned, Independent };

std::string samplerName(SamplerMode m);
/// Accepts "bernoulli", "conditioned", "independent"; ArgumentError otherwise.
SamplerMode parseSamplerMode(const std::string& name);

struct TrialOptions {
    SamplerMode sampler = SamplerMode::Bernoulli;
    unsigned workers = 1;
    std::size_t max_edges = 2000;
    /// Per-trial budget for the exact search; 0 disables it. A trial that
    /// runs out is recorded as undecided. Budgets make results depend on
    /// machine speed, so leave this at 0 when byte-identical output matters.
    std::uint64_t time_per_trial_ms = 0;
    bool record_runtime = false;
    /// Offset added to every trial index when naming random streams, so that
    /// separate batches (sweep rows) use disjoint streams.
    std::uint64_t stream_base = 0;
};

/// One sampled instance. The instance is named by (seed, stream_base +
/// trial_index); nothing else influences it.
struct TrialRecord {
    std::uint64_t trial_index = 0;
    std::uint64_t seed = 0;
    std::uint64_t m = 0;                 ///< distinct edges examined
    std::uint64_t m_drawn = 0;           ///< edges drawn (differs from m only for the independent sampler)
    int Delta = 0;
    int omega = 0;
    bool decided = true;                 ///< false when a resource cap stopped the search
    bool ekr_holds = true;
    double lambda_of_Delta = 0.0;
    double lambda_prime_of_Delta = 0.0;
    EventRReport eventR;
    std::string witness_kind;            ///< "", "hm", "generic", "eventA", "eventB", "eventC", "none"
    std::string note;                    ///< resource error text for undecided rows
    double runtime_ms = 0.0;
};

/// Draws the hypergraph for one trial. The independent sampler draws a
/// Poisson(mbar) number of i.i.d. uniform k-sets and keeps the draw order.
Hypergraph sampleTrial(const ModelParams& params, SamplerMode mode, std::uint64_t seed, std::uint64_t stream,
                       std::size_t* drawn = nullptr);

/// Runs `trials` independent instances. Records come back ordered by trial
/// index whatever the worker count. Per-trial resource errors are recorded,
/// not thrown.
std::vector<TrialRecord> runTrials(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                                   const TrialOptions& opts = {});

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

struct Interval {
    double estimate = 0.0;
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `successes` out of `n` at normal quantile z.
Interval wilsonInterval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);

inline const std::array<std::string, 6> kWitnessKinds = {"hm", "generic", "eventA", "eventB", "eventC", "none"};

struct SweepRow {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double phi = 0.0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t decided = 0;
    std::uint64_t undecided = 0;
    std::uint64_t holds = 0;
    Interval f_hat;                      ///< Pr(EKR) over decided trials
    double mean_Delta = 0.0;
    double mean_omega = 0.0;
    double pr_lambda_prime_gt_eps = 0.0;
    double pr_R = 0.0;
    std::map<std::string, std::uint64_t> witness_kinds;   ///< every key of kWitnessKinds present
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::string sampler;
    std::uint64_t seed = 0;
    double eps_thr = 0.1;
};

SweepRow summarizeTrials(const ModelParams& params, const std::vector<TrialRecord>& records);

/// One batch of trials per grid point, rows in grid order. Row r uses
/// streams r * 2^32 + trial. `base` supplies psi, eps_thr and c_regime.
SweepTable estimateEKRCurve(std::uint64_t n, std::uint64_t k, const std::vector<double>& phi_grid,
                            std::uint64_t trials, std::uint64_t seed, const TrialOptions& opts = {},
                            std::optional<ModelParams> base = std::nullopt);

struct NandSSummary {
    /// counts[small][holds] with small = (Lambda'(Delta) <= eps_thr).
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    std::uint64_t decided = 0;
    std::uint64_t undecided = 0;
    Interval agreement;   ///< share of decided trials with small == holds
};

NandSSummary estimateConditionNandS(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                                    const TrialOptions& opts = {});

struct DeltaLaw {
    std::vector<std::uint64_t> histogram;   ///< histogram[d] = trials with Delta = d
    AlphaBeta brackets;
    Interval pr_ge_alpha;
    Interval pr_le_beta;
    Interval pr_ge_alpha2;
    Interval pr_ge_1;
    double closed_form_ge_1 = 0.0;          ///< 1 - (1-p)^C(n,k)
    bool flag_le_beta = false;              ///< empirical Pr(Delta <= beta) < 0.9
    bool flag_ge_alpha2 = false;            ///< empirical Pr(Delta >= alpha2) < 0.9
};

/// Samples Delta only (no clique search).
DeltaLaw estimateDeltaLaw(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                          const TrialOptions& opts = {});

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void writeTrialsCsv(std::ostream& out, const ModelParams& params, const std::vector<TrialRecord>& records,
                    bool include_runtime = false);
void writeSweepCsv(std::ostream& out, const SweepTable& table);
std::string sweepJson(const SweepTable& table);

/// Shortest round-trip decimal form of a double ("0.1", "1e-05", "inf").
std::string formatDouble(double x);

}  // namespace ekrlab
