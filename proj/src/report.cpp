#include "ekrlab/report.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ekrlab/combinatorics.hpp"
#include "ekrlab/errors.hpp"

namespace ekrlab {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kMaxTableRows = 400;

// JSON has no infinities or NaN; those become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::uint64_t defaultTableMax(double mbar, double q, std::int64_t alpha2) {
    if (mbar <= 0.0) return 8;
    const std::uint64_t peak = lambdaPeak(mbar, q);
    std::uint64_t top = std::max<std::uint64_t>({8, 2 * peak + 2, static_cast<std::uint64_t>(std::max<std::int64_t>(alpha2, 0)) + 2});
    return std::min(top, kMaxTableRows - 1);
}

}  // namespace

std::string calcReportJson(const ModelParams& params, const CalcOptions& opts) {
    params.validate();
    const DerivedQuantities dq = derivedQuantities(params, opts.exactness);
    const AlphaBeta ab = computeAlphaBeta(params);

    Json j;
    j["n"] = params.n;
    j["k"] = params.k;
    j["p"] = params.p;
    j["phi"] = params.phi;
    j["psi"] = params.psi;
    j["eps_thr"] = params.eps_thr;
    j["c_regime"] = params.c_regime;
    j["eps"] = params.eps();
    j["M"] = dq.M.str();
    j["mbar"] = dq.mbar;
    j["q"] = dq.q;
    j["theta"] = dq.theta;
    j["q_exact"] = dq.q_exact ? Json(rationalString(*dq.q_exact)) : Json(nullptr);
    j["theta_exact"] = dq.theta_exact ? Json(rationalString(*dq.theta_exact)) : Json(nullptr);
    j["mbar_exact"] = dq.mbar_exact ? Json(rationalString(*dq.mbar_exact)) : Json(nullptr);
    j["exact"] = dq.exact;

    const std::uint64_t tmax = opts.lambda_table_max.value_or(defaultTableMax(dq.mbar, dq.q, ab.alpha2));
    Json lam = Json::array();
    Json lamPrime = Json::array();
    for (std::uint64_t t = 0; t <= tmax; ++t) {
        lam.push_back(number(lambdaT(dq.mbar, dq.q, t)));
        lamPrime.push_back(number(lambdaPrimeT(dq.mbar, dq.q, t)));
    }
    j["lambda_t"] = lam;
    j["lambda_prime_t"] = lamPrime;
    j["lambda_peak"] = dq.mbar > 0.0 ? Json(lambdaPeak(dq.mbar, dq.q)) : Json(nullptr);

    j["alpha1"] = ab.alpha1;
    j["alpha2"] = ab.alpha2;
    j["alpha"] = ab.alpha;
    j["beta"] = ab.beta;
    j["alpha_le_beta"] = ab.alpha_le_beta;
    j["brackets_exact"] = ab.exact;
    try {
        const BetaStar bs = betaStarBound(params.phi, static_cast<double>(params.n), params.psi);
        j["beta_star"] = bs.beta_star;
        j["eta"] = bs.eta;
    } catch (const DomainError&) {
        j["beta_star"] = nullptr;
        j["eta"] = nullptr;
    }

    const RegimeParams rp = regimeParams(params, ab);
    j["phi_star"] = number(rp.phi_star);
    j["gamma"] = rp.gamma;
    j["tau"] = rp.tau;
    j["lambda"] = number(rp.lambda);
    j["xi"] = number(rp.xi);
    j["r0"] = number(rp.r0);
    j["zeta_cap"] = rp.zeta_cap;
    j["m0"] = dq.m0;
    j["w"] = dq.w;
    j["qhat"] = dq.qhat;

    if (opts.with_threshold) {
        ThresholdOptions to;
        to.psi = params.psi;
        const ThresholdEstimate te = thresholdEstimate(params.n, params.k, params.eps_thr, to);
        j["threshold_found"] = te.found;
        j["threshold_phi0"] = te.phi0;
        j["threshold_reference"] = te.reference;
        j["threshold_alpha1"] = te.alpha1_at_phi0;
    }
    return j.dump(2);
}

std::string intersectionReportJson(std::uint64_t n, std::uint64_t k) {
    const Rational q = intersectionProbabilityExact(n, k, true);
    Json j;
    j["n"] = n;
    j["k"] = k;
    j["q"] = toDouble(q);
    j["theta"] = toDouble(Rational(1) - q);
    j["q_exact"] = rationalString(q);
    j["theta_exact"] = rationalString(Rational(1) - q);
    return j.dump(2);
}

std::vector<std::vector<int>> cliqueVertices(const Hypergraph& H, const std::vector<int>& clique) {
    std::vector<std::vector<int>> out;
    for (const auto& e : selectEdges(H, clique)) {
        std::vector<int> members;
        e.forEach([&](int v) { members.push_back(v + 1); });
        out.push_back(std::move(members));
    }
    return out;
}

std::string verdictJson(const Hypergraph& H, const EkrVerdict& v) {
    Json j;
    j["holds"] = v.holds;
    j["omega"] = v.omega;
    j["delta"] = v.Delta;
    j["witness"] = v.witness ? Json(cliqueVertices(H, *v.witness)) : Json(nullptr);
    return j.dump();
}

std::string witnessJson(const Hypergraph& H, const std::optional<std::string>& kind,
                        const std::optional<std::vector<int>>& clique, std::optional<int> center) {
    Json j;
    j["kind"] = kind ? Json(*kind) : Json(nullptr);
    j["witness"] = clique ? Json(cliqueVertices(H, *clique)) : Json(nullptr);
    j["edges"] = clique ? Json(*clique) : Json(nullptr);
    if (center) j["center"] = *center + 1;
    return j.dump();
}

}  // namespace ekrlab
