#include <doctest.h>

#include <cmath>
#include <map>

#include "ekrlab/combinatorics.hpp"
#include "ekrlab/errors.hpp"
#include "ekrlab/hypergraph.hpp"
#include "oracles.hpp"

using namespace ekrlab;

TEST_CASE("k-sets and hypergraph construction") {
    const auto s = KSet::fromOneBased({1, 3, 5}, 6);
    CHECK(s.bits().count() == 3);
    CHECK_THROWS_AS(KSet::fromOneBased({1, 7}, 6), ArgumentError);
    CHECK_THROWS_AS(KSet::fromOneBased({2, 2}, 6), ArgumentError);

    const auto H = Hypergraph::fromOneBased(5, 2, {{1, 2}, {2, 3}});
    CHECK(H.size() == 2);
    CHECK(H.dedup());
    CHECK_THROWS_AS(Hypergraph::fromOneBased(5, 2, {{1, 2}, {1, 2}}), ArgumentError);
    const auto multi = Hypergraph::fromOneBased(5, 2, {{1, 2}, {1, 2}}, false);
    CHECK_FALSE(multi.hasDistinctEdges());
    CHECK_THROWS_AS(Hypergraph::fromOneBased(5, 2, {{1, 2, 3}}), ArgumentError);
    CHECK_THROWS_AS(Hypergraph::fromOneBased(5, 2, {{1, 6}}), ArgumentError);
}

TEST_CASE("Bernoulli sampler: endpoints, order, determinism") {
    CHECK(sampleBernoulli(7, 3, 0.0, 1).empty());
    const auto full = sampleBernoulli(7, 3, 1.0, 1);
    REQUIRE(full.size() == 35);
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(colexRank(full.edge(i)) == i);
    const auto a = sampleBernoulli(10, 3, 0.2, 42, 5);
    const auto b = sampleBernoulli(10, 3, 0.2, 42, 5);
    const auto c = sampleBernoulli(10, 3, 0.2, 42, 6);
    CHECK(formatHypergraph(a) == formatHypergraph(b));
    CHECK(formatHypergraph(a) != formatHypergraph(c));
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(colexRank(a.edge(i - 1)) < colexRank(a.edge(i)));
    CHECK_THROWS_AS(sampleBernoulli(30, 10, 0.1, 1), ResourceError);
}

TEST_CASE("Bernoulli sampler: every k-set has inclusion frequency p") {
    const int n = 7;
    const int k = 2;
    const double p = 0.3;
    const int trials = 20000;
    std::vector<int> hits(21, 0);
    std::uint64_t total = 0;
    for (int t = 0; t < trials; ++t) {
        const auto H = sampleBernoulli(n, k, p, 7, static_cast<std::uint64_t>(t));
        total += H.size();
        for (const auto& e : H.edges()) ++hits[colexRank(e)];
    }
    const double sd = std::sqrt(p * (1 - p) / trials);
    for (int h : hits) CHECK(std::fabs(static_cast<double>(h) / trials - p) < 4.5 * sd);
    const double meanM = static_cast<double>(total) / trials;
    CHECK(std::fabs(meanM - 21 * p) < 4.5 * std::sqrt(21 * p * (1 - p) / trials));
}

TEST_CASE("independent sampler: uniform draws in draw order") {
    const auto H = sampleIndependent(6, 2, 5000, 3);
    CHECK(H.size() == 5000);
    CHECK_FALSE(H.dedup());
    std::vector<int> hits(15, 0);
    for (const auto& e : H.edges()) {
        CHECK(e.count() == 2);
        ++hits[colexRank(e)];
    }
    double chi2 = 0.0;
    for (int h : hits) chi2 += (h - 5000.0 / 15) * (h - 5000.0 / 15) / (5000.0 / 15);
    CHECK(chi2 < 36.12);   // 14 d.o.f., 0.999 quantile
    // Edge j depends only on (seed, trial, j): a prefix is stable.
    const auto prefix = sampleIndependent(6, 2, 10, 3);
    for (std::size_t j = 0; j < 10; ++j) CHECK(prefix.edge(j) == H.edge(j));
}

TEST_CASE("conditioned sampler has the Bernoulli law of m") {
    const int trials = 20000;
    const double p = 0.1;
    double s = 0.0;
    double s2 = 0.0;
    int inWindow = 0;
    for (int t = 0; t < trials; ++t) {
        const auto cs = sampleConditioned(9, 3, p, 11, static_cast<std::uint64_t>(t));
        const double m = static_cast<double>(cs.graph.size());
        s += m;
        s2 += m * m;
        CHECK(cs.m_in_window == inEdgeCountWindow(m, p * 84, std::log(9.0)));
        if (cs.m_in_window) ++inWindow;
        CHECK(cs.graph.dedup());
    }
    const double mean = s / trials;
    const double var = s2 / trials - mean * mean;
    CHECK(std::fabs(mean - 8.4) < 5 * std::sqrt(84 * p * (1 - p) / trials));
    CHECK(var == doctest::Approx(84 * p * (1 - p)).epsilon(0.05));
    CHECK(inWindow > trials * 9 / 10);
}

TEST_CASE("edge-count window") {
    CHECK(inEdgeCountWindow(0, 0, 2.0));
    CHECK_FALSE(inEdgeCountWindow(1, 0, 2.0));
    CHECK(inEdgeCountWindow(10, 9, 1.0));
    CHECK_FALSE(inEdgeCountWindow(12, 9, 1.0));   // |12 - 9| = 3 = 1 * sqrt(9), not strict
}

TEST_CASE("degree statistics against direct counting") {
    for (std::uint64_t t = 0; t < 30; ++t) {
        const auto H = sampleIndependent(9, 3, 25, 17, t);
        const auto ds = degreeStats(H);
        int Delta = 0;
        int maxPair = 0;
        std::size_t maxW = 0;
        for (int x = 0; x < 9; ++x) {
            int d = 0;
            for (const auto& e : H.edges()) d += e.test(x) ? 1 : 0;
            CHECK(ds.deg[static_cast<std::size_t>(x)] == d);
            Delta = std::max(Delta, d);
            std::size_t w = 0;
            for (int y = 0; y < 9; ++y) {
                int pd = 0;
                for (const auto& e : H.edges()) pd += (e.test(x) && e.test(y)) ? 1 : 0;
                CHECK(ds.pairDeg(x, y) == pd);
                if (y != x) {
                    maxPair = std::max(maxPair, pd);
                    CHECK(ds.W[static_cast<std::size_t>(x)].test(y) == (pd >= 2));
                    if (pd >= 2) ++w;
                }
            }
            maxW = std::max(maxW, w);
        }
        CHECK(ds.Delta == Delta);
        CHECK(ds.max_pair_deg == maxPair);
        CHECK(ds.max_W == maxW);
    }
}

TEST_CASE("event R conjuncts") {
    const auto mp = ModelParams::fromPhi(24, 3, 3.0);
    const auto ab = computeAlphaBeta(mp);
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto H = sampleBernoulli(24, 3, mp.p, 5, t);
        const auto ds = degreeStats(H);
        const auto r = checkEventR(H, mp);
        const double mbar = mp.mbar();
        CHECK(r.m_window == (std::fabs(static_cast<double>(H.size()) - mbar) < mp.psi * std::sqrt(mbar)));
        CHECK(r.delta_le_beta == (ds.Delta <= ab.beta));
        CHECK(r.delta_ge_alpha == (ds.Delta >= ab.alpha));
        CHECK(r.pair_deg_le_8 == (ds.max_pair_deg <= 8));
        const double w = std::max(9.0 * 9 / 24, 6 * std::log(24.0));
        CHECK(r.w_small == (static_cast<double>(ds.max_W) < w));
        CHECK(r.all() == (r.m_window && r.delta_le_beta && r.delta_ge_alpha && r.pair_deg_le_8 && r.w_small));
    }
}

TEST_CASE("text format round trip") {
    const auto H = sampleBernoulli(12, 4, 0.05, 9);
    const auto text = formatHypergraph(H);
    const auto back = parseHypergraph(text);
    CHECK(formatHypergraph(back) == text);
    CHECK(back.n() == 12);
    CHECK(back.k() == 4);
    const auto multi = parseHypergraph("4 2 2\n1 2\n1 2\n");
    CHECK_FALSE(multi.dedup());
    CHECK(parseHypergraph("\n5 2 1\n\n  1 5\n\n").size() == 1);
    CHECK(parseHypergraph("5 2 0\n").empty());
}

TEST_CASE("text format errors name the line") {
    auto msg = [](const std::string& text) {
        try {
            parseHypergraph(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(msg("") .find("empty input") != std::string::npos);
    CHECK(msg("5 2\n").find("line 1") != std::string::npos);
    CHECK(msg("5 2 1\n1 6\n").find("line 2") != std::string::npos);
    CHECK(msg("5 2 1\n2 1\n").find("increasing") != std::string::npos);
    CHECK(msg("5 2 1\n1 2 3\n").find("expected 2") != std::string::npos);
    CHECK(msg("5 2 1\n1 x\n").find("non-integer") != std::string::npos);
    CHECK(msg("5 2 2\n1 2\n").find("expected 2 edges") != std::string::npos);
    CHECK(msg("5 2 1\n1 2\n3 4\n").find("line 3") != std::string::npos);
    CHECK(msg("5 9 0\n").find("k must") != std::string::npos);
}
