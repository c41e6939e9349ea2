#include "ekrlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "ekrlab/combinatorics.hpp"
#include "ekrlab/errors.hpp"
#include "ekrlab/random.hpp"
#include "ekrlab/verifier.hpp"
#include "ekrlab/witnesses.hpp"

namespace ekrlab {

namespace {

constexpr std::uint32_t kCountSubstream = 0xffffffffU;
constexpr double kMaxPoissonMean = 1e7;

Hypergraph dedupInDrawOrder(const Hypergraph& H) {
    std::unordered_set<VertexSet, VertexSetHash> seen;
    std::vector<VertexSet> kept;
    kept.reserve(H.size());
    for (const auto& e : H.edges())
        if (seen.insert(e).second) kept.push_back(e);
    return Hypergraph(H.n(), H.k(), std::move(kept), true);
}

std::uint64_t poissonCount(double mean, std::uint64_t seed, std::uint64_t stream) {
    if (!(mean >= 0.0)) throw DomainError("Poisson mean must be nonnegative");
    if (mean > kMaxPoissonMean) throw ResourceError("expected edge count too large for the independent sampler");
    RandomStream rs(StreamId{seed, stream, kCountSubstream});
    std::uint64_t count = 0;
    double t = -std::log(rs.uniformPositive());
    while (t <= mean) {
        ++count;
        t -= std::log(rs.uniformPositive());
    }
    return count;
}

// Runs f(i) for i in [0, count) on up to `workers` threads; the first
// exception thrown by any task is rethrown after all threads finish.
template <class F>
void parallelFor(std::uint64_t count, unsigned workers, F&& f) {
    workers = std::max(1U, workers);
    if (workers == 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const auto n = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double fraction(std::uint64_t a, std::uint64_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

const char* boolText(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string samplerName(SamplerMode m) {
    switch (m) {
        case SamplerMode::Bernoulli: return "bernoulli";
        case SamplerMode::Conditioned: return "conditioned";
        case SamplerMode::Independent: return "independent";
    }
    return "bernoulli";
}

SamplerMode parseSamplerMode(const std::string& name) {
    if (name == "bernoulli") return SamplerMode::Bernoulli;
    if (name == "conditioned") return SamplerMode::Conditioned;
    if (name == "independent") return SamplerMode::Independent;
    throw ArgumentError("unknown sampler '" + name + "' (expected bernoulli, conditioned or independent)");
}

Hypergraph sampleTrial(const ModelParams& params, SamplerMode mode, std::uint64_t seed, std::uint64_t stream,
                       std::size_t* drawn) {
    const int n = static_cast<int>(params.n);
    const int k = static_cast<int>(params.k);
    Hypergraph H;
    switch (mode) {
        case SamplerMode::Bernoulli: H = sampleBernoulli(n, k, params.p, seed, stream); break;
        case SamplerMode::Conditioned: H = sampleConditioned(n, k, params.p, seed, stream, params.psi).graph; break;
        case SamplerMode::Independent:
            H = sampleIndependent(n, k, poissonCount(params.mbar(), seed, stream), seed, stream);
            break;
    }
    if (drawn) *drawn = H.size();
    return H;
}

std::vector<TrialRecord> runTrials(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                                   const TrialOptions& opts) {
    params.validate();
    const AlphaBeta ab = computeAlphaBeta(params);
    const RegimeParams regime = regimeParams(params, ab);
    const double q = intersectionProbability(params.n, params.k);
    const double mbar = params.mbar();

    std::vector<TrialRecord> records(trials);
    parallelFor(trials, opts.workers, [&](std::uint64_t i) {
        const auto start = std::chrono::steady_clock::now();
        TrialRecord& rec = records[i];
        rec.trial_index = i;
        rec.seed = seed;

        std::size_t drawn = 0;
        Hypergraph H = sampleTrial(params, opts.sampler, seed, opts.stream_base + i, &drawn);
        if (!H.dedup()) H = dedupInDrawOrder(H);
        rec.m = H.size();
        rec.m_drawn = drawn;

        const DegreeStats ds = degreeStats(H);
        rec.Delta = ds.Delta;
        rec.lambda_of_Delta = lambdaT(mbar, q, static_cast<std::uint64_t>(ds.Delta));
        rec.lambda_prime_of_Delta = lambdaPrimeT(mbar, q, static_cast<std::uint64_t>(ds.Delta));
        rec.eventR = checkEventR(H, params, ab, ds);

        SearchLimits limits;
        limits.max_edges = opts.max_edges;
        if (opts.time_per_trial_ms > 0)
            limits.deadline = start + std::chrono::milliseconds(opts.time_per_trial_ms);
        try {
            const EkrVerdict v = verifyEKR(H, limits);
            rec.omega = v.omega;
            rec.ekr_holds = v.holds;
            if (!v.holds) rec.witness_kind = classifyWitness(H, *v.witness, regime);
        } catch (const ResourceError& e) {
            rec.decided = false;
            rec.ekr_holds = false;
            rec.omega = 0;
            rec.note = e.what();
        }
        if (opts.record_runtime)
            rec.runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    });
    return records;
}

Interval wilsonInterval(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) return {0.0, 0.0, 1.0};
    if (successes > n) throw ArgumentError("successes exceed trials");
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    Interval iv{phat, std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) iv.low = 0.0;
    if (successes == n) iv.high = 1.0;
    return iv;
}

SweepRow summarizeTrials(const ModelParams& params, const std::vector<TrialRecord>& records) {
    SweepRow row;
    row.n = params.n;
    row.k = params.k;
    row.phi = params.phi;
    row.p = params.p;
    row.trials = records.size();
    for (const auto& kind : kWitnessKinds) row.witness_kinds[kind] = 0;

    double sumDelta = 0.0;
    double sumOmega = 0.0;
    std::uint64_t bigLambda = 0;
    std::uint64_t inR = 0;
    for (const auto& r : records) {
        sumDelta += r.Delta;
        if (r.lambda_prime_of_Delta > params.eps_thr) ++bigLambda;
        if (r.eventR.all()) ++inR;
        if (!r.decided) {
            ++row.undecided;
            continue;
        }
        ++row.decided;
        sumOmega += r.omega;
        if (r.ekr_holds) {
            ++row.holds;
        } else {
            ++row.witness_kinds[r.witness_kind];
        }
    }
    row.f_hat = wilsonInterval(row.holds, row.decided);
    row.mean_Delta = records.empty() ? 0.0 : sumDelta / static_cast<double>(records.size());
    row.mean_omega = row.decided == 0 ? 0.0 : sumOmega / static_cast<double>(row.decided);
    row.pr_lambda_prime_gt_eps = fraction(bigLambda, row.trials);
    row.pr_R = fraction(inR, row.trials);
    return row;
}

SweepTable estimateEKRCurve(std::uint64_t n, std::uint64_t k, const std::vector<double>& phi_grid,
                            std::uint64_t trials, std::uint64_t seed, const TrialOptions& opts,
                            std::optional<ModelParams> base) {
    SweepTable table;
    table.sampler = samplerName(opts.sampler);
    table.seed = seed;
    table.eps_thr = base ? base->eps_thr : ModelParams{}.eps_thr;
    for (std::size_t r = 0; r < phi_grid.size(); ++r) {
        ModelParams params = ModelParams::fromPhi(n, k, phi_grid[r]);
        if (base) {
            params.psi = base->psi;
            params.eps_thr = base->eps_thr;
            params.c_regime = base->c_regime;
        }
        TrialOptions rowOpts = opts;
        rowOpts.stream_base = opts.stream_base + (static_cast<std::uint64_t>(r) << 32);
        table.rows.push_back(summarizeTrials(params, runTrials(params, trials, seed, rowOpts)));
    }
    return table;
}

NandSSummary estimateConditionNandS(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                                    const TrialOptions& opts) {
    NandSSummary s;
    std::uint64_t agree = 0;
    for (const auto& r : runTrials(params, trials, seed, opts)) {
        if (!r.decided) {
            ++s.undecided;
            continue;
        }
        ++s.decided;
        const bool small = r.lambda_prime_of_Delta <= params.eps_thr;
        ++s.counts[small ? 1 : 0][r.ekr_holds ? 1 : 0];
        if (small == r.ekr_holds) ++agree;
    }
    s.agreement = wilsonInterval(agree, s.decided);
    return s;
}

DeltaLaw estimateDeltaLaw(const ModelParams& params, std::uint64_t trials, std::uint64_t seed,
                          const TrialOptions& opts) {
    params.validate();
    DeltaLaw law;
    law.brackets = computeAlphaBeta(params);
    std::vector<int> deltas(trials, 0);
    parallelFor(trials, opts.workers, [&](std::uint64_t i) {
        const Hypergraph H = sampleTrial(params, opts.sampler, seed, opts.stream_base + i);
        deltas[i] = degreeStats(H.dedup() ? H : dedupInDrawOrder(H)).Delta;
    });

    std::uint64_t geAlpha = 0, leBeta = 0, geAlpha2 = 0, ge1 = 0;
    for (int d : deltas) {
        if (static_cast<std::size_t>(d) >= law.histogram.size()) law.histogram.resize(static_cast<std::size_t>(d) + 1, 0);
        ++law.histogram[static_cast<std::size_t>(d)];
        if (d >= law.brackets.alpha) ++geAlpha;
        if (d <= law.brackets.beta) ++leBeta;
        if (d >= law.brackets.alpha2) ++geAlpha2;
        if (d >= 1) ++ge1;
    }
    law.pr_ge_alpha = wilsonInterval(geAlpha, trials);
    law.pr_le_beta = wilsonInterval(leBeta, trials);
    law.pr_ge_alpha2 = wilsonInterval(geAlpha2, trials);
    law.pr_ge_1 = wilsonInterval(ge1, trials);

    const double logEdges = logBinomial(static_cast<double>(params.n), static_cast<double>(params.k));
    law.closed_form_ge_1 = params.p >= 1.0 ? 1.0 : -std::expm1(std::exp(logEdges) * std::log1p(-params.p));
    law.flag_le_beta = trials > 0 && law.pr_le_beta.estimate < 0.9;
    law.flag_ge_alpha2 = trials > 0 && law.pr_ge_alpha2.estimate < 0.9;
    return law;
}

std::string formatDouble(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void writeTrialsCsv(std::ostream& out, const ModelParams& params, const std::vector<TrialRecord>& records,
                    bool include_runtime) {
    out << "schema,n,k,p,phi,trial,seed,m,m_drawn,Delta,omega,decided,ekr_holds,lambda_Delta,lambda_prime_Delta,"
           "R_m_window,R_delta_le_beta,R_delta_ge_alpha,R_pair_deg_le_8,R_w_small,R_all,witness_kind";
    if (include_runtime) out << ",runtime_ms";
    out << '\n';
    for (const auto& r : records) {
        out << kSchemaVersion << ',' << params.n << ',' << params.k << ',' << formatDouble(params.p) << ','
            << formatDouble(params.phi) << ',' << r.trial_index << ',' << r.seed << ',' << r.m << ',' << r.m_drawn
            << ',' << r.Delta << ',';
        if (r.decided) out << r.omega;
        out << ',' << boolText(r.decided) << ',';
        if (r.decided) out << boolText(r.ekr_holds);
        out << ',' << formatDouble(r.lambda_of_Delta) << ',' << formatDouble(r.lambda_prime_of_Delta) << ','
            << boolText(r.eventR.m_window) << ',' << boolText(r.eventR.delta_le_beta) << ','
            << boolText(r.eventR.delta_ge_alpha) << ',' << boolText(r.eventR.pair_deg_le_8) << ','
            << boolText(r.eventR.w_small) << ',' << boolText(r.eventR.all()) << ',' << r.witness_kind;
        if (include_runtime) out << ',' << formatDouble(r.runtime_ms);
        out << '\n';
    }
}

void writeSweepCsv(std::ostream& out, const SweepTable& table) {
    out << "schema,sampler,seed,n,k,phi,p,trials,decided,undecided,holds,f_hat,f_low,f_high,mean_Delta,mean_omega,"
           "pr_lambda_prime_gt_eps,pr_R";
    for (const auto& kind : kWitnessKinds) out << ",witness_" << kind;
    out << '\n';
    for (const auto& row : table.rows) {
        out << kSchemaVersion << ',' << table.sampler << ',' << table.seed << ',' << row.n << ',' << row.k << ','
            << formatDouble(row.phi) << ',' << formatDouble(row.p) << ',' << row.trials << ',' << row.decided << ','
            << row.undecided << ',' << row.holds << ',' << formatDouble(row.f_hat.estimate) << ','
            << formatDouble(row.f_hat.low) << ',' << formatDouble(row.f_hat.high) << ','
            << formatDouble(row.mean_Delta) << ',' << formatDouble(row.mean_omega) << ','
            << formatDouble(row.pr_lambda_prime_gt_eps) << ',' << formatDouble(row.pr_R);
        for (const auto& kind : kWitnessKinds) {
            const auto it = row.witness_kinds.find(kind);
            out << ',' << (it == row.witness_kinds.end() ? 0 : it->second);
        }
        out << '\n';
    }
}

std::string sweepJson(const SweepTable& table) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["sampler"] = table.sampler;
    j["seed"] = table.seed;
    j["eps_thr"] = table.eps_thr;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r;
        r["n"] = row.n;
        r["k"] = row.k;
        r["phi"] = row.phi;
        r["p"] = row.p;
        r["trials"] = row.trials;
        r["decided"] = row.decided;
        r["undecided"] = row.undecided;
        r["holds"] = row.holds;
        r["f_hat"] = {{"estimate", row.f_hat.estimate}, {"low", row.f_hat.low}, {"high", row.f_hat.high}};
        r["mean_Delta"] = row.mean_Delta;
        r["mean_omega"] = row.mean_omega;
        r["pr_lambda_prime_gt_eps"] = row.pr_lambda_prime_gt_eps;
        r["pr_R"] = row.pr_R;
        nlohmann::ordered_json kinds;
        for (const auto& kind : kWitnessKinds) {
            const auto it = row.witness_kinds.find(kind);
            kinds[kind] = it == row.witness_kinds.end() ? 0 : it->second;
        }
        r["witness_kinds"] = kinds;
        j["rows"].push_back(r);
    }
    return j.dump(2);
}

}  // namespace ekrlab
