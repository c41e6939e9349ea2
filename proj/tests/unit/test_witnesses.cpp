#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ekrlab/errors.hpp"
#include "ekrlab/random.hpp"
#include "ekrlab/verifier.hpp"
#include "ekrlab/witnesses.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace ekrlab;

namespace {

// First (x, B0) in scan order whose full petal family has >= d members and
// no common vertex, straight from the definition.
std::optional<std::pair<int, int>> bruteHM(const Hypergraph& H, int d) {
    for (int x = 0; x < H.n(); ++x)
        for (std::size_t b = 0; b < H.size(); ++b) {
            if (H.edge(b).test(x)) continue;
            std::vector<int> fam{static_cast<int>(b)};
            for (std::size_t i = 0; i < H.size(); ++i)
                if (H.edge(i).test(x) && H.edge(i).intersects(H.edge(b))) fam.push_back(static_cast<int>(i));
            if (static_cast<int>(fam.size()) - 1 >= d && !oracle::hasCommonVertex(H, fam))
                return std::make_pair(x, static_cast<int>(b));
        }
    return std::nullopt;
}

bool bruteGenericExists(const Hypergraph& H, int size, std::int64_t cap) {
    const auto e = oracle::masks(H);
    for (std::uint32_t sub = 0; sub < (1U << e.size()); ++sub) {
        if (__builtin_popcount(sub) != size) continue;
        std::vector<int> idx;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (sub >> i & 1U) idx.push_back(static_cast<int>(i));
        if (!oracle::pairwiseIntersecting(H, idx)) continue;
        std::vector<int> deg(static_cast<std::size_t>(H.n()), 0);
        for (int i : idx) H.edge(static_cast<std::size_t>(i)).forEach([&](int v) { ++deg[static_cast<std::size_t>(v)]; });
        const bool small = std::all_of(deg.begin(), deg.end(), [](int d) { return d <= 3; });
        const auto three = std::count(deg.begin(), deg.end(), 3);
        if (small && three <= cap) return true;
    }
    return false;
}

RegimeParams customRegime(double tau, std::int64_t alpha, double lambda, std::int64_t gamma) {
    RegimeParams r;
    r.tau = tau;
    r.alpha = alpha;
    r.lambda = lambda;
    r.gamma = gamma;
    r.eps = 0.05;
    r.zeta_cap = static_cast<double>(gamma) / r.eps;
    return r;
}

// B0 = {2,3,4}; petals through vertex 1 (1-based).
Hypergraph hmFamily() {
    return Hypergraph::fromOneBased(12, 3, {{2, 3, 4}, {1, 2, 5}, {1, 3, 6}, {1, 4, 7}, {1, 2, 8}});
}

}  // namespace

TEST_CASE("Hilton-Milner detection: worked examples") {
    const auto H = Hypergraph::fromOneBased(5, 2, {{4, 5}, {1, 4}, {1, 5}});
    const auto w = findHiltonMilner(H, 2);
    REQUIRE(w.has_value());
    CHECK(w->center == 0);
    CHECK(w->b0 == 0);
    CHECK(w->petals == std::vector<int>{1, 2});
    CHECK_FALSE(findHiltonMilner(H, 3).has_value());
    CHECK_THROWS_AS(findHiltonMilner(H, 0), ArgumentError);

    // In the complete graph K_5 each (x, B0) has exactly two petals.
    const auto K = oracle::complete(5, 2);
    CHECK(findHiltonMilner(K, 2).has_value());
    CHECK_FALSE(findHiltonMilner(K, 3).has_value());
    CHECK_FALSE(bruteHM(K, 3).has_value());
    // For k = 3 petals abound.
    const auto w3 = findHiltonMilner(oracle::complete(7, 3), 3);
    REQUIRE(w3.has_value());
    CHECK(w3->petals.size() == 13 - 1);   // C(6,2) - C(3,2) edges through x meet B0
}

TEST_CASE("Hilton-Milner detection matches the definition") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        const auto H = oracle::smallInstance(404, i, 5, 12, 14);
        for (int d = 1; d <= 4; ++d) {
            const auto w = findHiltonMilner(H, d);
            const auto ref = bruteHM(H, d);
            REQUIRE(w.has_value() == ref.has_value());
            if (!w) continue;
            CHECK(w->center == ref->first);
            CHECK(w->b0 == ref->second);
            std::vector<int> fam{w->b0};
            fam.insert(fam.end(), w->petals.begin(), w->petals.end());
            CHECK(oracle::pairwiseIntersecting(H, fam));
            CHECK_FALSE(oracle::hasCommonVertex(H, fam));
            CHECK(static_cast<int>(w->petals.size()) >= d);
        }
    }
}

TEST_CASE("HM count bound") {
    CHECK(hmCountBound(0.5, 40, 3, 4) == doctest::Approx(std::pow(0.5, 5) * std::pow(3.0, 7) / (40.0 * 40.0)));
    const auto mp = ModelParams::fromPhi(40, 3, 0.5);
    CHECK(hmCountBound(mp, 4) == doctest::Approx(hmCountBound(0.5, 40, 3, 4)));
}

TEST_CASE("generic cliques") {
    // Fano plane: every point on three lines.
    const auto fano =
        Hypergraph::fromOneBased(7, 3, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}});
    const auto all = selectEdges(fano, {0, 1, 2, 3, 4, 5, 6});
    CHECK(isGenericClique(all, 7));
    CHECK_FALSE(isGenericClique(all, 6));
    const auto star = Hypergraph::fromOneBased(9, 2, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
    CHECK_FALSE(isGenericClique(selectEdges(star, {0, 1, 2, 3}), 10));
    CHECK(isGenericClique(selectEdges(star, {0, 1, 2}), 1));
    const auto disjoint = Hypergraph::fromOneBased(6, 2, {{1, 2}, {3, 4}});
    CHECK_THROWS_AS(isGenericClique(selectEdges(disjoint, {0, 1}), 3), ArgumentError);
    CHECK(findGenericClique(fano, 7, 7).has_value());
    CHECK_FALSE(findGenericClique(fano, 7, 6).has_value());
    CHECK_THROWS_AS(findGenericClique(fano, 3, -1), ArgumentError);
}

TEST_CASE("generic clique search matches enumeration") {
    for (std::uint64_t i = 0; i < 150; ++i) {
        const auto H = oracle::smallInstance(77, i, 5, 10, 12);
        for (int size = 3; size <= 6; ++size)
            for (std::int64_t cap : {0, 1, 3}) {
                const auto c = findGenericClique(H, static_cast<std::size_t>(size), cap);
                CHECK(c.has_value() == bruteGenericExists(H, size, cap));
                if (c) {
                    CHECK(static_cast<int>(c->size()) == size);
                    CHECK(isGenericClique(selectEdges(H, *c), cap));
                }
            }
    }
}

TEST_CASE("clique profile identities") {
    RandomStream rs(StreamId{8, 8, 8});
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto H = oracle::smallInstance(55, i, 5, 12, 14);
        const auto best = maxIntersectingFamily(H).clique;
        auto sets = selectEdges(H, best);
        for (int rep = 0; rep < 3; ++rep) {
            for (std::size_t j = sets.size(); j > 1; --j) std::swap(sets[j - 1], sets[rs.below(j)]);
            const auto p = cliqueProfile(sets, 4.0);
            std::int64_t Z = 0;
            std::int64_t over = 0;
            std::int64_t psi = 0;
            int maxDeg = 0;
            for (int d : p.degrees) {
                if (d >= 3) {
                    ++Z;
                    over += d - 3;
                    psi += static_cast<std::int64_t>(d) * (d - 1) / 2 - 1;
                }
                maxDeg = std::max(maxDeg, d);
            }
            CHECK(p.s == Z);
            CHECK(p.r == over);
            CHECK(p.Psi == psi);
            CHECK(p.max_deg == maxDeg);
            CHECK(p.s == std::accumulate(p.s_vec.begin(), p.s_vec.end(), std::int64_t{0}));
            CHECK(p.r == std::accumulate(p.r_vec.begin(), p.r_vec.end(), std::int64_t{0}));
            CHECK(p.X_rs == doctest::Approx(2.0 * p.s + 6.0 * p.r / 2.0));
            for (std::size_t t = 0; t < sets.size(); ++t) CHECK(p.u_sizes[t] == p.w_sizes[t] + p.z_sizes[t]);
            if (!sets.empty()) CHECK(p.z_sizes.back() == Z);
        }
    }
}

TEST_CASE("clique profile with an excluded vertex") {
    const auto H = hmFamily();
    const auto sets = selectEdges(H, {0, 1, 2, 3, 4});
    const auto full = cliqueProfile(sets, 2.0);
    CHECK(full.degrees[0] == 4);
    CHECK(full.s == 2);   // vertices 1 and 2 reach degree 3
    CHECK(full.r == 1);
    const auto without = cliqueProfile(sets, 2.0, 0);
    CHECK(without.degrees[0] == 0);
    CHECK(without.s == 1);
    CHECK(without.r == 0);
    CHECK(without.Psi == 2);
}

TEST_CASE("event taxonomy on constructed cliques") {
    const auto H = hmFamily();
    const std::vector<int> C{0, 1, 2, 3, 4};
    const auto a = classifyNontrivialClique(H, C, customRegime(3.0, 5, 10.0, 5));
    CHECK(a.event == CliqueEvent::A);
    CHECK(a.vertices == std::vector<int>{0});
    const auto b = classifyNontrivialClique(H, C, customRegime(100.0, 5, 2.0, 5));
    CHECK(b.event == CliqueEvent::B);
    CHECK(b.vertices == std::vector<int>{0, 1});
    const auto c = classifyNontrivialClique(H, C, customRegime(100.0, 5, 3.5, 5));
    CHECK(c.event == CliqueEvent::C);
    CHECK(c.vertices == std::vector<int>{0});
    CHECK(classifyNontrivialClique(H, C, customRegime(100.0, 5, 3.5, 6)).event == CliqueEvent::None);
    // A needs |C| >= d_H(x): extra edges through vertex 1 block it there.
    const auto H2 = Hypergraph::fromOneBased(12, 3, {{2, 3, 4}, {1, 2, 5}, {1, 3, 6}, {1, 4, 7}, {1, 2, 8},
                                                     {1, 10, 11}, {1, 11, 12}});
    CHECK(classifyNontrivialClique(H2, C, customRegime(4.0, 5, 10.0, 9)).event == CliqueEvent::None);
    CHECK_THROWS_AS(classifyNontrivialClique(H, {1, 2, 3}, customRegime(3.0, 5, 10.0, 5)), ArgumentError);
    CHECK(eventName(CliqueEvent::A) == "eventA");
    CHECK(eventName(CliqueEvent::None) == "none");
}

TEST_CASE("witness labels") {
    const auto tri = Hypergraph::fromOneBased(5, 2, {{1, 2}, {1, 3}, {2, 3}, {4, 5}});
    CHECK(classifyWitness(tri, {0, 1, 2}, customRegime(100.0, 5, 10.0, 5)) == "hm");
    const auto shape = hiltonMilnerShape(selectEdges(tri, {0, 1, 2}));
    REQUIRE(shape.has_value());
    // B0 = {1,2} first; the other two edges share vertex 3.
    CHECK(shape->center == 2);
    CHECK(shape->b0 == 0);
    const auto fano =
        Hypergraph::fromOneBased(7, 3, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}});
    const std::vector<int> all{0, 1, 2, 3, 4, 5, 6};
    CHECK_FALSE(hiltonMilnerShape(selectEdges(fano, all)).has_value());
    CHECK(classifyWitness(fano, all, customRegime(100.0, 5, 10.0, 1)) == "generic");   // zeta cap 20
    CHECK(classifyWitness(fano, all, customRegime(100.0, 5, 3.0, 0)) == "eventB");
}

TEST_CASE("every large nontrivial maximum clique falls into A, B or C") {
    // Sampled failures at moderate density; the trichotomy covers nontrivial
    // cliques of size >= max(Delta, alpha).
    const auto mp = ModelParams::fromPhi(14, 3, 3.0);
    const auto regime = regimeParams(mp);
    int checked = 0;
    for (std::uint64_t t = 0; t < 300; ++t) {
        const auto H = sampleBernoulli(14, 3, mp.p, 123, t);
        const auto v = verifyEKR(H);
        if (v.holds) continue;
        if (v.omega < std::max<std::int64_t>(v.Delta, regime.alpha)) continue;
        ++checked;
        CHECK(classifyNontrivialClique(H, *v.witness, regime).event != CliqueEvent::None);
    }
    MESSAGE("trichotomy instances checked: " << checked);
}
