#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ekrlab/analytics.hpp"
#include "ekrlab/combinatorics.hpp"
#include "ekrlab/errors.hpp"
#include "ekrlab/hypergraph.hpp"
#include "ekrlab/montecarlo.hpp"
#include "ekrlab/report.hpp"
#include "ekrlab/verifier.hpp"
#include "ekrlab/witnesses.hpp"

namespace {

using namespace ekrlab;

enum ExitCode { kOk = 0, kFailure = 1, kDomain = 2, kResource = 3, kParse = 4 };

struct ModelFlags {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::optional<double> p;
    std::optional<double> phi;
    std::optional<double> psi;
    double eps_thr = 0.1;
    double c_regime = 0.2;

    void add(CLI::App* app, bool require_nk = true) {
        auto* on = app->add_option("--n", n, "number of vertices");
        auto* ok = app->add_option("--k", k, "edge size");
        if (require_nk) {
            on->required();
            ok->required();
        }
        auto* op = app->add_option("--p", p, "edge probability");
        app->add_option("--phi", phi, "expected degree p*C(n-1,k-1)")->excludes(op);
        app->add_option("--psi", psi, "auxiliary slowly growing function (default log n)");
        app->add_option("--eps-thr", eps_thr, "finite-n tolerance")->capture_default_str();
        app->add_option("--c-regime", c_regime, "regime constant c < 1/4")->capture_default_str();
    }

    // Without --p or --phi, `fallback_phi` is used.
    ModelParams build(double fallback_phi) const {
        ModelParams mp = p ? ModelParams::fromP(n, k, *p) : ModelParams::fromPhi(n, k, phi.value_or(fallback_phi));
        if (psi) mp.withPsi(*psi);
        mp.withEpsThr(eps_thr).withCRegime(c_regime);
        mp.validate();
        return mp;
    }
};

struct Output {
    std::string path;
    void add(CLI::App* app) { app->add_option("--output", path, "output file (default stdout)"); }
    void write(const std::string& text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ArgumentError("cannot open '" + path + "' for writing");
        out << text;
        if (!out) throw ArgumentError("failed writing '" + path + "'");
    }
};

SearchLimits makeLimits(std::size_t max_edges, std::uint64_t time_ms) {
    SearchLimits lim;
    lim.max_edges = max_edges;
    if (time_ms > 0) lim.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(time_ms);
    return lim;
}

std::vector<double> makeGrid(double start, double stop, std::size_t points, const std::string& scale) {
    if (points < 1) throw ArgumentError("--points must be at least 1");
    std::vector<double> grid;
    if (points == 1) return {start};
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        if (scale == "log") {
            if (!(start > 0.0 && stop > 0.0)) throw ArgumentError("log grid needs positive endpoints");
            grid.push_back(std::exp(std::log(start) + f * (std::log(stop) - std::log(start))));
        } else {
            grid.push_back(start + f * (stop - start));
        }
    }
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong EKR laboratory for random k-uniform hypergraphs"};
    app.require_subcommand(1);
    app.allow_extras(false);

    // calc
    auto* calc = app.add_subcommand("calc", "analytic report (q, Lambda table, brackets, regime, threshold)");
    ModelFlags calcModel;
    calcModel.add(calc);
    std::optional<std::uint64_t> lambdaMax;
    bool noThreshold = false;
    Output calcOut;
    calc->add_option("--lambda-max", lambdaMax, "largest t in the Lambda table");
    calc->add_flag("--no-threshold", noThreshold, "skip the threshold estimate");
    calcOut.add(calc);

    // verify
    auto* verify = app.add_subcommand("verify", "decide strong EKR for a hypergraph file");
    std::string verifyInput;
    std::size_t verifyMaxEdges = 2000;
    std::uint64_t verifyTimeMs = 0;
    Output verifyOut;
    verify->add_option("--input", verifyInput, "hypergraph file")->required();
    verify->add_option("--max-edges", verifyMaxEdges, "edge cap for the exact search")->capture_default_str();
    verify->add_option("--time-limit-ms", verifyTimeMs, "search budget in ms (0 = none)")->capture_default_str();
    verifyOut.add(verify);

    // sample
    auto* sample = app.add_subcommand("sample", "draw one hypergraph");
    ModelFlags sampleModel;
    sampleModel.add(sample);
    std::string sampleSampler = "bernoulli";
    std::uint64_t sampleSeed = 0;
    std::uint64_t sampleTrialIdx = 0;
    Output sampleOut;
    sample->add_option("--sampler", sampleSampler, "bernoulli | conditioned | independent")->capture_default_str();
    sample->add_option("--seed", sampleSeed, "master seed")->envname("EKRLAB_SEED")->capture_default_str();
    sample->add_option("--trial", sampleTrialIdx, "trial index (stream)")->capture_default_str();
    sampleOut.add(sample);

    // trials
    auto* trials = app.add_subcommand("trials", "per-trial records as CSV");
    ModelFlags trialsModel;
    trialsModel.add(trials);
    std::string trialsSampler = "bernoulli";
    std::uint64_t trialsSeed = 0;
    std::uint64_t trialsCount = 100;
    TrialOptions trialsOpts;
    bool trialsRuntime = false;
    Output trialsOut;
    trials->add_option("--sampler", trialsSampler, "bernoulli | conditioned | independent")->capture_default_str();
    trials->add_option("--seed", trialsSeed, "master seed")->envname("EKRLAB_SEED")->capture_default_str();
    trials->add_option("--trials", trialsCount, "number of trials")->check(CLI::PositiveNumber)->capture_default_str();
    trials->add_option("--workers", trialsOpts.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    trials->add_option("--max-edges", trialsOpts.max_edges, "edge cap per trial")->capture_default_str();
    trials->add_option("--time-per-trial-ms", trialsOpts.time_per_trial_ms, "search budget per trial (0 = none)")
        ->capture_default_str();
    trials->add_flag("--runtime", trialsRuntime, "add a runtime_ms column (not reproducible)");
    trialsOut.add(trials);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "estimate Pr(EKR) over a phi grid");
    ModelFlags sweepModel;
    sweepModel.add(sweep);
    std::vector<double> phiGrid;
    double phiStart = 0.0;
    double phiStop = 1.0;
    std::size_t points = 10;
    std::string scale = "linear";
    std::string sweepSampler = "bernoulli";
    std::uint64_t sweepSeed = 0;
    std::uint64_t sweepTrials = 100;
    TrialOptions sweepOpts;
    std::string format = "csv";
    Output sweepOut;
    auto* gridOpt = sweep->add_option("--phi-grid", phiGrid, "explicit comma-separated phi values")->delimiter(',');
    sweep->add_option("--phi-start", phiStart, "grid start")->excludes(gridOpt)->capture_default_str();
    sweep->add_option("--phi-stop", phiStop, "grid stop")->excludes(gridOpt)->capture_default_str();
    sweep->add_option("--points", points, "grid points")->excludes(gridOpt)->capture_default_str();
    sweep->add_option("--scale", scale, "linear | log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->excludes(gridOpt)
        ->capture_default_str();
    sweep->add_option("--sampler", sweepSampler, "bernoulli | conditioned | independent")->capture_default_str();
    sweep->add_option("--seed", sweepSeed, "master seed")->envname("EKRLAB_SEED")->capture_default_str();
    sweep->add_option("--trials", sweepTrials, "trials per grid point")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--workers", sweepOpts.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--max-edges", sweepOpts.max_edges, "edge cap per trial")->capture_default_str();
    sweep->add_option("--time-per-trial-ms", sweepOpts.time_per_trial_ms, "search budget per trial (0 = none)")
        ->capture_default_str();
    sweep->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sweepOut.add(sweep);

    // witness
    auto* witness = app.add_subcommand("witness", "find an obstruction in a hypergraph file");
    std::string witnessInput;
    std::string kind = "auto";
    int hmD = 2;
    std::optional<std::size_t> genericSize;
    std::optional<std::int64_t> zetaCap;
    std::optional<double> witnessP;
    std::optional<double> witnessPhi;
    double witnessEps = 0.1;
    double witnessC = 0.2;
    std::size_t witnessMaxEdges = 2000;
    Output witnessOut;
    witness->add_option("--input", witnessInput, "hypergraph file")->required();
    witness->add_option("--kind", kind, "auto | hm | generic")
        ->check(CLI::IsMember({"auto", "hm", "generic"}))
        ->capture_default_str();
    witness->add_option("--d", hmD, "minimum number of petals (hm)")->capture_default_str();
    witness->add_option("--size", genericSize, "clique size (generic)");
    witness->add_option("--zeta-cap", zetaCap, "max vertices of degree 3 (generic; default from regime)");
    auto* wp = witness->add_option("--p", witnessP, "edge probability for regime parameters (default m/C(n,k))");
    witness->add_option("--phi", witnessPhi, "expected degree for regime parameters")->excludes(wp);
    witness->add_option("--eps-thr", witnessEps, "finite-n tolerance")->capture_default_str();
    witness->add_option("--c-regime", witnessC, "regime constant c < 1/4")->capture_default_str();
    witness->add_option("--max-edges", witnessMaxEdges, "edge cap for the exact search")->capture_default_str();
    witnessOut.add(witness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*calc) {
            CalcOptions co;
            co.lambda_table_max = lambdaMax;
            co.with_threshold = !noThreshold;
            // At n = 2k the model is outside its range but q is still defined:
            // report it, then fail with the range error.
            if (calcModel.k >= 1 && calcModel.n == 2 * calcModel.k)
                calcOut.write(intersectionReportJson(calcModel.n, calcModel.k) + "\n");
            calcOut.write(calcReportJson(calcModel.build(1.0), co) + "\n");
        } else if (*verify) {
            const Hypergraph H = loadHypergraph(verifyInput);
            const EkrVerdict v = verifyEKR(H, makeLimits(verifyMaxEdges, verifyTimeMs));
            verifyOut.write(verdictJson(H, v) + "\n");
        } else if (*sample) {
            const ModelParams mp = sampleModel.build(1.0);
            sampleOut.write(formatHypergraph(sampleTrial(mp, parseSamplerMode(sampleSampler), sampleSeed, sampleTrialIdx)));
        } else if (*trials) {
            const ModelParams mp = trialsModel.build(1.0);
            trialsOpts.sampler = parseSamplerMode(trialsSampler);
            trialsOpts.record_runtime = trialsRuntime;
            std::ostringstream os;
            writeTrialsCsv(os, mp, runTrials(mp, trialsCount, trialsSeed, trialsOpts), trialsRuntime);
            trialsOut.write(os.str());
        } else if (*sweep) {
            if (sweepModel.p || sweepModel.phi) throw ArgumentError("sweep takes a phi grid, not --p/--phi");
            const ModelParams base = sweepModel.build(0.0);
            const auto grid = phiGrid.empty() ? makeGrid(phiStart, phiStop, points, scale) : phiGrid;
            sweepOpts.sampler = parseSamplerMode(sweepSampler);
            const SweepTable table = estimateEKRCurve(base.n, base.k, grid, sweepTrials, sweepSeed, sweepOpts, base);
            if (format == "json") {
                sweepOut.write(sweepJson(table) + "\n");
            } else {
                std::ostringstream os;
                writeSweepCsv(os, table);
                sweepOut.write(os.str());
            }
        } else if (*witness) {
            const Hypergraph H = loadHypergraph(witnessInput);
            const auto n = static_cast<std::uint64_t>(H.n());
            const auto k = static_cast<std::uint64_t>(H.k());
            auto regime = [&] {
                ModelParams mp;
                if (witnessPhi) {
                    mp = ModelParams::fromPhi(n, k, *witnessPhi);
                } else {
                    const double edges = std::exp(logBinomial(static_cast<double>(n), static_cast<double>(k)));
                    mp = ModelParams::fromP(n, k, witnessP.value_or(static_cast<double>(H.size()) / edges));
                }
                mp.withEpsThr(witnessEps).withCRegime(witnessC);
                mp.validate();
                return regimeParams(mp);
            };
            SearchLimits lim = makeLimits(witnessMaxEdges, 0);
            if (kind == "hm") {
                const auto w = findHiltonMilner(H, hmD);
                if (!w) {
                    witnessOut.write(witnessJson(H, std::nullopt, std::nullopt) + "\n");
                } else {
                    std::vector<int> clique{w->b0};
                    clique.insert(clique.end(), w->petals.begin(), w->petals.end());
                    witnessOut.write(witnessJson(H, std::string("hm"), clique, w->center) + "\n");
                }
            } else if (kind == "generic") {
                if (!genericSize) throw ArgumentError("--kind generic needs --size");
                const std::int64_t cap = zetaCap ? *zetaCap : static_cast<std::int64_t>(std::floor(regime().zeta_cap));
                const auto c = findGenericClique(H, *genericSize, cap, lim);
                witnessOut.write(witnessJson(H, c ? std::optional<std::string>("generic") : std::nullopt, c) + "\n");
            } else {
                const EkrVerdict v = verifyEKR(H, lim);
                if (v.holds) {
                    witnessOut.write(witnessJson(H, std::nullopt, std::nullopt) + "\n");
                } else {
                    witnessOut.write(witnessJson(H, classifyWitness(H, *v.witness, regime()), v.witness) + "\n");
                }
            }
        }
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const ArgumentError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kDomain;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
