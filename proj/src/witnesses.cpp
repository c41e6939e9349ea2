#include "ekrlab/witnesses.hpp"

#include <algorithm>
#include <cmath>

#include "ekrlab/errors.hpp"
#include "ekrlab/verifier.hpp"

namespace ekrlab {

std::optional<HMWitness> findHiltonMilner(const Hypergraph& H, int d) {
    if (d <= 0) throw ArgumentError("findHiltonMilner needs d >= 1, got " + std::to_string(d));
    const auto edges = H.edges();
    for (int x = 0; x < H.n(); ++x) {
        for (std::size_t b = 0; b < edges.size(); ++b) {
            const VertexSet& B0 = edges[b];
            if (B0.test(x)) continue;
            HMWitness w{x, static_cast<int>(b), {}};
            VertexSet common = B0;
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (edges[i].test(x) && edges[i].intersects(B0)) {
                    w.petals.push_back(static_cast<int>(i));
                    common &= edges[i];
                }
            }
            if (static_cast<int>(w.petals.size()) >= d && common.none()) return w;
        }
    }
    return std::nullopt;
}

double hmCountBound(double phi, double n, double k, int d) {
    return std::pow(phi, d + 1) * std::pow(k, 2 * d - 1) * std::pow(n, -(d - 2));
}

double hmCountBound(const ModelParams& params, int d) {
    return hmCountBound(params.phi, static_cast<double>(params.n), static_cast<double>(params.k), d);
}

bool isGenericClique(std::span<const VertexSet> clique, std::int64_t zeta_cap) {
    requireIntersecting(clique);
    std::array<int, kMaxVertices> deg{};
    for (const auto& e : clique) e.forEach([&](int v) { ++deg[static_cast<std::size_t>(v)]; });
    std::int64_t deg3 = 0;
    for (int d : deg) {
        if (d > 3) return false;
        if (d == 3) ++deg3;
    }
    return deg3 <= zeta_cap;
}

std::optional<std::vector<int>> findGenericClique(const Hypergraph& H, std::size_t size, std::int64_t zeta_cap,
                                                  SearchLimits limits) {
    if (zeta_cap < 0) throw ArgumentError("zeta_cap must be nonnegative");
    CliqueSearcher searcher(H.edges(), H.n(), limits);
    return searcher.findOfSize(size, CliqueConstraint::generic(zeta_cap));
}

CliqueProfile cliqueProfile(std::span<const VertexSet> ordered, double lambda_cap, std::optional<int> excluded) {
    CliqueProfile p;
    std::array<int, kMaxVertices> deg{};
    VertexSet W;
    VertexSet Z;
    VertexSet keep;
    for (int v = 0; v < kMaxVertices; ++v)
        if (!excluded || v != *excluded) keep.set(v);

    for (const auto& raw : ordered) {
        const VertexSet A = raw & keep;
        const int si = (A & W).count();
        const int ri = (A & Z).count();
        p.s_vec.push_back(si);
        p.r_vec.push_back(ri);
        p.s += si;
        p.r += ri;
        A.forEach([&](int v) {
            const int d = ++deg[static_cast<std::size_t>(v)];
            if (d == 2) W.set(v);
            if (d == 3) {
                W.reset(v);
                Z.set(v);
            }
        });
        p.w_sizes.push_back(W.count());
        p.z_sizes.push_back(Z.count());
        p.u_sizes.push_back(W.count() + Z.count());
    }

    Z.forEach([&](int v) {
        const std::int64_t d = deg[static_cast<std::size_t>(v)];
        p.Psi += d * (d - 1) / 2 - 1;
    });
    int top = -1;
    for (int v = 0; v < kMaxVertices; ++v) {
        const int d = deg[static_cast<std::size_t>(v)];
        if (d > 0) top = v;
        p.max_deg = std::max(p.max_deg, d);
        if (d == 3) ++p.num_deg3;
    }
    p.degrees.assign(deg.begin(), deg.begin() + (top + 1));
    p.X_rs = 2.0 * static_cast<double>(p.s) + (lambda_cap + 2.0) * static_cast<double>(p.r) / 2.0;
    return p;
}

std::string eventName(CliqueEvent e) {
    switch (e) {
        case CliqueEvent::A: return "eventA";
        case CliqueEvent::B: return "eventB";
        case CliqueEvent::C: return "eventC";
        case CliqueEvent::None: break;
    }
    return "none";
}

EventClassification classifyNontrivialClique(const Hypergraph& H, const std::vector<int>& clique,
                                             const RegimeParams& regime) {
    const auto sets = selectEdges(H, clique);
    requireIntersecting(sets);
    if (isTrivialClique(sets).trivial) throw ArgumentError("the event taxonomy applies to nontrivial cliques only");

    const auto ds = degreeStats(H);
    std::vector<int> dC(static_cast<std::size_t>(H.n()), 0);
    for (const auto& e : sets) e.forEach([&](int v) { ++dC[static_cast<std::size_t>(v)]; });
    const auto size = static_cast<double>(sets.size());

    for (int x = 0; x < H.n(); ++x) {
        const auto dx = static_cast<double>(dC[static_cast<std::size_t>(x)]);
        if (dx < regime.tau) continue;
        if (size < static_cast<double>(ds.deg[static_cast<std::size_t>(x)])) continue;
        const double outside = size - dx;   // |C \ C_x|
        if (size >= static_cast<double>(regime.alpha) || outside >= 2.0 / regime.eps)
            return {CliqueEvent::A, {x}};
    }

    std::vector<int> heavy;
    for (int x = 0; x < H.n(); ++x)
        if (static_cast<double>(dC[static_cast<std::size_t>(x)]) >= regime.lambda) heavy.push_back(x);
    if (heavy.size() >= 2) return {CliqueEvent::B, {heavy[0], heavy[1]}};

    if (size >= static_cast<double>(regime.gamma)) {
        int above = 0;
        int maxDeg = 0;
        int argmax = -1;
        for (int x = 0; x < H.n(); ++x) {
            const int d = dC[static_cast<std::size_t>(x)];
            if (static_cast<double>(d) > regime.lambda) ++above;
            if (d > maxDeg) {
                maxDeg = d;
                argmax = x;
            }
        }
        if (above <= 1 && static_cast<double>(maxDeg) < regime.tau) return {CliqueEvent::C, {argmax}};
    }
    return {};
}

std::optional<HMShape> hiltonMilnerShape(std::span<const VertexSet> clique) {
    if (clique.size() < 2 || isTrivialClique(clique).trivial) return std::nullopt;
    for (std::size_t b = 0; b < clique.size(); ++b) {
        VertexSet common;
        bool first = true;
        for (std::size_t i = 0; i < clique.size(); ++i) {
            if (i == b) continue;
            common = first ? clique[i] : (common & clique[i]);
            first = false;
        }
        const VertexSet outside = common - clique[b];
        if (outside.any()) return HMShape{outside.lowest(), b};
    }
    return std::nullopt;
}

std::string classifyWitness(const Hypergraph& H, const std::vector<int>& clique, const RegimeParams& regime) {
    const auto sets = selectEdges(H, clique);
    if (hiltonMilnerShape(sets)) return "hm";
    if (isGenericClique(sets, static_cast<std::int64_t>(std::floor(regime.zeta_cap)))) return "generic";
    return eventName(classifyNontrivialClique(H, clique, regime).event);
}

}  // namespace ekrlab
