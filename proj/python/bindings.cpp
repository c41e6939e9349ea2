#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ekrlab/analytics.hpp"
#include "ekrlab/combinatorics.hpp"
#include "ekrlab/errors.hpp"
#include "ekrlab/hypergraph.hpp"
#include "ekrlab/montecarlo.hpp"
#include "ekrlab/report.hpp"
#include "ekrlab/verifier.hpp"
#include "ekrlab/witnesses.hpp"

namespace py = pybind11;
using namespace ekrlab;

namespace {

ModelParams makeParams(std::uint64_t n, std::uint64_t k, std::optional<double> p, std::optional<double> phi,
                       std::optional<double> psi, double eps_thr, double c_regime) {
    if (p && phi) throw ArgumentError("give p or phi, not both");
    ModelParams mp = p ? ModelParams::fromP(n, k, *p) : ModelParams::fromPhi(n, k, phi.value_or(0.0));
    if (psi) mp.withPsi(*psi);
    mp.withEpsThr(eps_thr).withCRegime(c_regime);
    mp.validate();
    return mp;
}

std::vector<std::vector<int>> oneBased(const Hypergraph& H) {
    std::vector<std::vector<int>> out;
    for (const auto& e : H.edges()) {
        std::vector<int> m;
        e.forEach([&](int v) { m.push_back(v + 1); });
        out.push_back(std::move(m));
    }
    return out;
}

py::dict verdictDict(const EkrVerdict& v) {
    py::dict d;
    d["holds"] = v.holds;
    d["omega"] = v.omega;
    d["delta"] = v.Delta;
    d["witness"] = v.witness ? py::cast(*v.witness) : py::none();
    d["trivial_center"] = v.trivial_center ? py::cast(*v.trivial_center + 1) : py::none();
    return d;
}

SearchLimits limitsOf(std::size_t max_edges) {
    SearchLimits lim;
    lim.max_edges = max_edges;
    return lim;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "ekrlab native core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init([](int n, int k, const std::vector<std::vector<int>>& edges, bool dedup) {
                 return Hypergraph::fromOneBased(n, k, edges, dedup);
             }),
             py::arg("n"), py::arg("k"), py::arg("edges"), py::arg("dedup") = true,
             "Edges are lists of 1-based vertices.")
        .def_property_readonly("n", &Hypergraph::n)
        .def_property_readonly("k", &Hypergraph::k)
        .def_property_readonly("dedup", &Hypergraph::dedup)
        .def("__len__", &Hypergraph::size)
        .def("edges", &oneBased, "Edges as lists of 1-based vertices.")
        .def("max_degree", [](const Hypergraph& H) { return degreeStats(H).Delta; })
        .def("degrees", [](const Hypergraph& H) { return degreeStats(H).deg; })
        .def("to_text", &formatHypergraph)
        .def("__repr__", [](const Hypergraph& H) {
            return "Hypergraph(n=" + std::to_string(H.n()) + ", k=" + std::to_string(H.k()) +
                   ", m=" + std::to_string(H.size()) + ")";
        });

    m.def("parse_hypergraph", &parseHypergraph, py::arg("text"));

    m.def("intersection_probability", [](std::uint64_t n, std::uint64_t k) { return intersectionProbability(n, k); },
          py::arg("n"), py::arg("k"));
    m.def(
        "intersection_probability_exact",
        [](std::uint64_t n, std::uint64_t k) { return rationalString(intersectionProbabilityExact(n, k)); },
        py::arg("n"), py::arg("k"), "q as an 'a/b' string.");
    m.def("lambda_t", &lambdaT, py::arg("mbar"), py::arg("q"), py::arg("t"));
    m.def("lambda_prime_t", &lambdaPrimeT, py::arg("mbar"), py::arg("q"), py::arg("t"));
    m.def("lambda_peak", &lambdaPeak, py::arg("mbar"), py::arg("q"));

    m.def(
        "alpha_beta",
        [](std::uint64_t n, std::uint64_t k, std::optional<double> p, std::optional<double> phi,
           std::optional<double> psi, double eps_thr) {
            const AlphaBeta ab = computeAlphaBeta(makeParams(n, k, p, phi, psi, eps_thr, 0.2));
            py::dict d;
            d["alpha1"] = ab.alpha1;
            d["alpha2"] = ab.alpha2;
            d["alpha"] = ab.alpha;
            d["beta"] = ab.beta;
            d["exact"] = ab.exact;
            return d;
        },
        py::arg("n"), py::arg("k"), py::kw_only(), py::arg("p") = py::none(), py::arg("phi") = py::none(),
        py::arg("psi") = py::none(), py::arg("eps_thr") = 0.1);

    m.def(
        "threshold_estimate",
        [](std::uint64_t n, std::uint64_t k, double eps_thr) {
            const ThresholdEstimate te = thresholdEstimate(n, k, eps_thr);
            py::dict d;
            d["phi0"] = te.phi0;
            d["reference"] = te.reference;
            d["alpha1_at_phi0"] = te.alpha1_at_phi0;
            d["phi_top"] = te.phi_top;
            d["found"] = te.found;
            return d;
        },
        py::arg("n"), py::arg("k"), py::arg("eps_thr") = 0.1);

    m.def("_calc_report_json",
          [](std::uint64_t n, std::uint64_t k, std::optional<double> p, std::optional<double> phi,
             std::optional<double> psi, double eps_thr, double c_regime, bool threshold) {
              CalcOptions co;
              co.with_threshold = threshold;
              return calcReportJson(makeParams(n, k, p, phi, psi, eps_thr, c_regime), co);
          });

    m.def(
        "sample",
        [](std::uint64_t n, std::uint64_t k, std::optional<double> p, std::optional<double> phi, std::uint64_t seed,
           std::uint64_t trial, const std::string& sampler) {
            return sampleTrial(makeParams(n, k, p, phi, std::nullopt, 0.1, 0.2), parseSamplerMode(sampler), seed,
                               trial);
        },
        py::arg("n"), py::arg("k"), py::kw_only(), py::arg("p") = py::none(), py::arg("phi") = py::none(),
        py::arg("seed") = 0, py::arg("trial") = 0, py::arg("sampler") = "bernoulli");

    m.def(
        "verify_ekr",
        [](const Hypergraph& H, std::size_t max_edges) {
            EkrVerdict v;
            {
                py::gil_scoped_release release;
                v = verifyEKR(H, limitsOf(max_edges));
            }
            return verdictDict(v);
        },
        py::arg("H"), py::arg("max_edges") = 2000, "Witness and trivial_center use edge indices / 1-based vertices.");
    m.def("brute_force_ekr", [](const Hypergraph& H) { return verdictDict(bruteForceEKR(H)); }, py::arg("H"));
    m.def(
        "max_intersecting_family",
        [](const Hypergraph& H, std::size_t max_edges) {
            const auto r = maxIntersectingFamily(H, limitsOf(max_edges));
            return py::make_tuple(r.omega, r.clique);
        },
        py::arg("H"), py::arg("max_edges") = 2000);

    m.def(
        "find_hilton_milner",
        [](const Hypergraph& H, int d) -> py::object {
            const auto w = findHiltonMilner(H, d);
            if (!w) return py::none();
            py::dict out;
            out["center"] = w->center + 1;
            out["b0"] = w->b0;
            out["petals"] = w->petals;
            return out;
        },
        py::arg("H"), py::arg("d"));
    m.def(
        "is_generic_clique",
        [](const Hypergraph& H, const std::vector<int>& clique, std::int64_t zeta_cap) {
            return isGenericClique(selectEdges(H, clique), zeta_cap);
        },
        py::arg("H"), py::arg("clique"), py::arg("zeta_cap"));
    m.def(
        "find_generic_clique",
        [](const Hypergraph& H, std::size_t size, std::int64_t zeta_cap, std::size_t max_edges) {
            return findGenericClique(H, size, zeta_cap, limitsOf(max_edges));
        },
        py::arg("H"), py::arg("size"), py::arg("zeta_cap"), py::arg("max_edges") = 2000);
    m.def(
        "classify_witness",
        [](const Hypergraph& H, const std::vector<int>& clique, double phi, double c_regime) {
            const ModelParams mp =
                makeParams(static_cast<std::uint64_t>(H.n()), static_cast<std::uint64_t>(H.k()), std::nullopt, phi,
                           std::nullopt, 0.1, c_regime);
            return classifyWitness(H, clique, regimeParams(mp));
        },
        py::arg("H"), py::arg("clique"), py::arg("phi"), py::arg("c_regime") = 0.2);

    m.def(
        "run_trials",
        [](std::uint64_t n, std::uint64_t k, std::optional<double> p, std::optional<double> phi,
           std::uint64_t trials, std::uint64_t seed, const std::string& sampler, unsigned workers) {
            const ModelParams mp = makeParams(n, k, p, phi, std::nullopt, 0.1, 0.2);
            TrialOptions opts;
            opts.sampler = parseSamplerMode(sampler);
            opts.workers = workers;
            std::vector<TrialRecord> recs;
            {
                py::gil_scoped_release release;
                recs = runTrials(mp, trials, seed, opts);
            }
            py::list out;
            for (const auto& r : recs) {
                py::dict d;
                d["trial"] = r.trial_index;
                d["m"] = r.m;
                d["delta"] = r.Delta;
                d["omega"] = r.omega;
                d["decided"] = r.decided;
                d["ekr_holds"] = r.ekr_holds;
                d["lambda_prime_of_delta"] = r.lambda_prime_of_Delta;
                d["event_r"] = r.eventR.all();
                d["witness_kind"] = r.witness_kind.empty() ? py::object(py::none()) : py::cast(r.witness_kind);
                out.append(d);
            }
            return out;
        },
        py::arg("n"), py::arg("k"), py::kw_only(), py::arg("p") = py::none(), py::arg("phi") = py::none(),
        py::arg("trials") = 100, py::arg("seed") = 0, py::arg("sampler") = "bernoulli", py::arg("workers") = 1);

    m.def("_sweep_json", [](std::uint64_t n, std::uint64_t k, const std::vector<double>& grid, std::uint64_t trials,
                            std::uint64_t seed, const std::string& sampler, unsigned workers, std::size_t max_edges) {
        TrialOptions opts;
        opts.sampler = parseSamplerMode(sampler);
        opts.workers = workers;
        opts.max_edges = max_edges;
        py::gil_scoped_release release;
        return sweepJson(estimateEKRCurve(n, k, grid, trials, seed, opts));
    });

    m.def(
        "wilson_interval",
        [](std::uint64_t s, std::uint64_t n, double z) {
            const Interval iv = wilsonInterval(s, n, z);
            return py::make_tuple(iv.estimate, iv.low, iv.high);
        },
        py::arg("successes"), py::arg("n"), py::arg("z") = 1.959963984540054);
}
