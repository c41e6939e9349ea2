#include "ekrlab/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "ekrlab/combinatorics.hpp"
#include "ekrlab/errors.hpp"
#include "ekrlab/random.hpp"

namespace ekrlab {

namespace {

void checkShape(int n, int k) {
    if (n < 1 || n > kMaxVertices) throw ArgumentError("n must lie in [1, 256], got " + std::to_string(n));
    if (k < 1 || k > n) throw ArgumentError("k must lie in [1, n], got " + std::to_string(k));
}

std::uint64_t enumerableTotal(int n, int k, std::uint64_t cap) {
    auto total = binomialU64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    if (!total || *total > cap) {
        throw ResourceError("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds the enumeration cap of " +
                            std::to_string(cap) + "; use sampleIndependent for large ground sets");
    }
    return *total;
}

// Ranks visited by independent Bernoulli(p) trials over [0, total), in order.
template <typename F>
void bernoulliRanks(std::uint64_t total, double p, RandomStream& rng, F&& visit) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
    if (p == 0.0 || total == 0) return;
    if (p == 1.0) {
        for (std::uint64_t r = 0; r < total; ++r) visit(r);
        return;
    }
    const double logq = std::log1p(-p);
    std::uint64_t r = 0;
    for (;;) {
        // Number of failures before the next success is geometric.
        const double skip = std::floor(std::log(rng.uniformPositive()) / logq);
        if (skip >= static_cast<double>(total - r)) return;
        r += static_cast<std::uint64_t>(skip);
        visit(r);
        ++r;
        if (r >= total) return;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// KSet / Hypergraph
// ---------------------------------------------------------------------------

KSet::KSet(VertexSet bits, int n) : bits_(bits), n_(n), k_(bits.count()) {
    if (n < 1 || n > kMaxVertices) throw ArgumentError("n must lie in [1, 256]");
    if (bits_.highest() >= n) throw ArgumentError("k-set member outside [n]");
}

KSet KSet::fromMembers(const std::vector<int>& zero_based, int n) {
    VertexSet s;
    for (int v : zero_based) {
        if (v < 0 || v >= n) throw ArgumentError("vertex " + std::to_string(v) + " outside [0, n)");
        if (s.test(v)) throw ArgumentError("repeated vertex " + std::to_string(v) + " in k-set");
        s.set(v);
    }
    return KSet(s, n);
}

KSet KSet::fromOneBased(const std::vector<int>& one_based, int n) {
    std::vector<int> z(one_based);
    for (int& v : z) --v;
    return fromMembers(z, n);
}

Hypergraph::Hypergraph(int n, int k, std::vector<VertexSet> edges, bool dedup)
    : n_(n), k_(k), edges_(std::move(edges)), dedup_(dedup) {
    checkShape(n, k);
    for (const auto& e : edges_) {
        if (e.count() != k) throw ArgumentError("edge of size " + std::to_string(e.count()) + " in a k=" +
                                                std::to_string(k) + " hypergraph");
        if (e.highest() >= n) throw ArgumentError("edge member outside [n]");
    }
    if (dedup_ && !hasDistinctEdges()) throw ArgumentError("duplicate edge in a deduplicated hypergraph");
}

Hypergraph Hypergraph::fromKSets(int n, int k, const std::vector<KSet>& edges, bool dedup) {
    std::vector<VertexSet> es;
    es.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.n() != n) throw ArgumentError("k-set built for a different n");
        es.push_back(e.bits());
    }
    return Hypergraph(n, k, std::move(es), dedup);
}

Hypergraph Hypergraph::fromOneBased(int n, int k, const std::vector<std::vector<int>>& edges, bool dedup) {
    std::vector<VertexSet> es;
    es.reserve(edges.size());
    for (const auto& e : edges) es.push_back(KSet::fromOneBased(e, n).bits());
    return Hypergraph(n, k, std::move(es), dedup);
}

bool Hypergraph::hasDistinctEdges() const {
    std::unordered_set<VertexSet, VertexSetHash> seen;
    seen.reserve(edges_.size());
    for (const auto& e : edges_)
        if (!seen.insert(e).second) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

Hypergraph sampleBernoulli(int n, int k, double p, std::uint64_t seed, std::uint64_t trial, std::uint64_t cap) {
    checkShape(n, k);
    const std::uint64_t total = enumerableTotal(n, k, cap);
    RandomStream rng({seed, trial, 0});
    std::vector<VertexSet> edges;
    bernoulliRanks(total, p, rng, [&](std::uint64_t r) { edges.push_back(colexUnrank(r, n, k)); });
    return Hypergraph(n, k, std::move(edges), true);
}

Hypergraph sampleIndependent(int n, int k, std::uint64_t m, std::uint64_t seed, std::uint64_t trial) {
    checkShape(n, k);
    if (m > 0xffffffffULL) throw ResourceError("sampleIndependent supports at most 2^32 - 1 edges");
    std::vector<VertexSet> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (std::uint64_t j = 0; j < m; ++j) {
        RandomStream rng({seed, trial, static_cast<std::uint32_t>(j)});
        std::iota(perm.begin(), perm.end(), 0);
        VertexSet e;
        for (int i = 0; i < k; ++i) {
            const auto pick = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick)]);
            e.set(perm[static_cast<std::size_t>(i)]);
        }
        edges.push_back(e);
    }
    return Hypergraph(n, k, std::move(edges), false);
}

bool inEdgeCountWindow(double m, double mbar, double psi) {
    if (mbar == 0.0) return m == 0.0;
    return std::fabs(m - mbar) < psi * std::sqrt(mbar);
}

ConditionedSample sampleConditioned(int n, int k, double p, std::uint64_t seed, std::uint64_t trial,
                                    std::optional<double> psi, std::uint64_t cap) {
    checkShape(n, k);
    const std::uint64_t total = enumerableTotal(n, k, cap);

    // m ~ Bin(total, p): count successes of the same skip process.
    RandomStream countRng({seed, trial, 0});
    std::uint64_t m = 0;
    bernoulliRanks(total, p, countRng, [&](std::uint64_t) { ++m; });

    // Floyd's algorithm: m distinct ranks, each m-subset equally likely.
    RandomStream pickRng({seed, trial, 1});
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2);
    for (std::uint64_t j = total - m; j < total; ++j) {
        const std::uint64_t t = pickRng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> ranks(chosen.begin(), chosen.end());
    std::sort(ranks.begin(), ranks.end());
    std::vector<VertexSet> edges;
    edges.reserve(ranks.size());
    for (auto r : ranks) edges.push_back(colexUnrank(r, n, k));

    const double mbar = p * static_cast<double>(total);
    const double psiV = psi.value_or(std::log(static_cast<double>(n)));
    return {Hypergraph(n, k, std::move(edges), true), inEdgeCountWindow(static_cast<double>(m), mbar, psiV)};
}

// ---------------------------------------------------------------------------
// Degree statistics
// ---------------------------------------------------------------------------

DegreeStats degreeStats(const Hypergraph& H) {
    DegreeStats ds;
    const int n = H.n();
    ds.n = n;
    ds.deg.assign(static_cast<std::size_t>(n), 0);
    ds.pair_deg.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    ds.W.assign(static_cast<std::size_t>(n), VertexSet{});
    std::vector<int> mem;
    for (const auto& e : H.edges()) {
        mem.clear();
        e.forEach([&](int v) { mem.push_back(v); });
        for (int x : mem) {
            ++ds.deg[static_cast<std::size_t>(x)];
            for (int y : mem) ++ds.pair_deg[static_cast<std::size_t>(x * n + y)];
        }
    }
    for (int x = 0; x < n; ++x) {
        ds.Delta = std::max(ds.Delta, ds.deg[static_cast<std::size_t>(x)]);
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            const int d = ds.pairDeg(x, y);
            ds.max_pair_deg = std::max(ds.max_pair_deg, d);
            if (d >= 2) ds.W[static_cast<std::size_t>(x)].set(y);
        }
        ds.max_W = std::max(ds.max_W, static_cast<std::size_t>(ds.W[static_cast<std::size_t>(x)].count()));
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Event R
// ---------------------------------------------------------------------------

EventRReport checkEventR(const Hypergraph& H, const ModelParams& params, const AlphaBeta& ab, const DegreeStats& ds) {
    const auto dq = derivedQuantities(params, ExactnessOptions{0});
    EventRReport r;
    r.m_window = inEdgeCountWindow(static_cast<double>(H.size()), dq.mbar, params.psi);
    r.delta_le_beta = ds.Delta <= ab.beta;
    r.delta_ge_alpha = ds.Delta >= ab.alpha;
    r.pair_deg_le_8 = ds.max_pair_deg <= 8;
    r.w_small = static_cast<double>(ds.max_W) < dq.w;
    return r;
}

EventRReport checkEventR(const Hypergraph& H, const ModelParams& params) {
    return checkEventR(H, params, computeAlphaBeta(params), degreeStats(H));
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

void writeHypergraph(std::ostream& out, const Hypergraph& H) {
    out << H.n() << ' ' << H.k() << ' ' << H.size() << '\n';
    for (const auto& e : H.edges()) {
        bool first = true;
        e.forEach([&](int v) {
            if (!first) out << ' ';
            out << (v + 1);
            first = false;
        });
        out << '\n';
    }
}

std::string formatHypergraph(const Hypergraph& H) {
    std::ostringstream os;
    writeHypergraph(os, H);
    return os.str();
}

Hypergraph readHypergraph(std::istream& in) {
    std::string line;
    std::size_t lineNo = 0;
    auto nextLine = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    auto fail = [&](const std::string& what) -> ParseError {
        return ParseError("line " + std::to_string(lineNo) + ": " + what);
    };

    if (!nextLine()) throw ParseError("empty input: expected header \"n k m\"");
    long long n = 0, k = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> k >> m) || (hs >> extra)) throw fail("header must be three integers \"n k m\"");
    }
    if (n < 1 || n > kMaxVertices) throw fail("n must lie in [1, 256]");
    if (k < 1 || k > n) throw fail("k must lie in [1, n]");
    if (m < 0) throw fail("m must be nonnegative");

    std::vector<VertexSet> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!nextLine()) throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        std::istringstream es(line);
        VertexSet e;
        long long v = 0;
        long long prev = 0;
        int count = 0;
        while (es >> v) {
            if (v < 1 || v > n) throw fail("vertex " + std::to_string(v) + " outside [1, n]");
            if (v <= prev) throw fail("vertices must be strictly increasing");
            prev = v;
            e.set(static_cast<int>(v - 1));
            ++count;
        }
        if (!es.eof()) throw fail("non-integer token in edge");
        if (count != k) throw fail("edge has " + std::to_string(count) + " vertices, expected " + std::to_string(k));
        edges.push_back(e);
    }
    if (nextLine()) throw fail("trailing content after " + std::to_string(m) + " edges");

    Hypergraph probe(static_cast<int>(n), static_cast<int>(k), edges, false);
    const bool distinct = probe.hasDistinctEdges();
    return Hypergraph(static_cast<int>(n), static_cast<int>(k), std::move(edges), distinct);
}

Hypergraph parseHypergraph(const std::string& text) {
    std::istringstream is(text);
    return readHypergraph(is);
}

Hypergraph loadHypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return readHypergraph(in);
}

void saveHypergraph(const std::string& path, const Hypergraph& H) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write " + path);
    writeHypergraph(out, H);
    if (!out) throw ResourceError("write failed for " + path);
}

}  // namespace ekrlab
