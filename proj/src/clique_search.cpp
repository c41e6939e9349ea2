#include "ekrlab/clique_search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "ekrlab/errors.hpp"

namespace ekrlab {

namespace {

inline void setBit(std::uint64_t* b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
inline void clearBit(std::uint64_t* b, int i) { b[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

inline bool anyBit(const std::uint64_t* b, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i)
        if (b[i]) return true;
    return false;
}

inline int lowestBit(const std::uint64_t* b, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i)
        if (b[i]) return static_cast<int>(i * 64) + std::countr_zero(b[i]);
    return -1;
}

// Colex order on sets: the larger set owns the top element of the symmetric difference.
bool colexLess(const VertexSet& a, const VertexSet& b) {
    const VertexSet diff = (a - b) | (b - a);
    const int h = diff.highest();
    return h >= 0 && b.test(h);
}

}  // namespace

CliqueSearcher::CliqueSearcher(std::span<const VertexSet> edges, int n, SearchLimits limits)
    : n_(n), limits_(limits) {
    if (edges.size() > limits.max_edges) {
        throw ResourceError("clique search over " + std::to_string(edges.size()) + " edges exceeds the cap of " +
                            std::to_string(limits.max_edges));
    }
    const std::size_t m = edges.size();
    words_ = std::max<std::size_t>((m + 63) / 64, 1);

    std::vector<int> deg(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (edges[i].intersects(edges[j])) {
                ++deg[i];
                ++deg[j];
            }

    original_.resize(m);
    std::iota(original_.begin(), original_.end(), 0);
    std::stable_sort(original_.begin(), original_.end(), [&](int a, int b) {
        const auto ia = static_cast<std::size_t>(a);
        const auto ib = static_cast<std::size_t>(b);
        if (deg[ia] != deg[ib]) return deg[ia] > deg[ib];
        if (edges[ia] != edges[ib]) return colexLess(edges[ia], edges[ib]);
        return a < b;
    });

    sets_.reserve(m);
    for (int idx : original_) sets_.push_back(edges[static_cast<std::size_t>(idx)]);

    adj_.assign(m * words_, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (sets_[i].intersects(sets_[j])) {
                setBit(adj_.data() + i * words_, static_cast<int>(j));
                setBit(adj_.data() + j * words_, static_cast<int>(i));
            }

    star_.assign(static_cast<std::size_t>(n) * words_, 0);
    for (std::size_t i = 0; i < m; ++i)
        sets_[i].forEach([&](int x) { setBit(star_.data() + static_cast<std::size_t>(x) * words_, static_cast<int>(i)); });

    allowed_.resize(words_);
    uncolored_.resize(words_);
    queue_.resize(words_);
    vdeg_.assign(static_cast<std::size_t>(n), 0);
}

void CliqueSearcher::checkLimits() {
    ++nodes_;
    if (limits_.node_limit && nodes_ > limits_.node_limit)
        throw ResourceError("clique search exceeded the node limit of " + std::to_string(limits_.node_limit));
    if (limits_.deadline && (nodes_ & 255U) == 0 && std::chrono::steady_clock::now() > *limits_.deadline)
        throw ResourceError("clique search exceeded its time budget");
}

void CliqueSearcher::colorSort(Level& L, std::size_t kmin) {
    L.order.clear();
    L.bound.clear();
    L.classes.clear();
    L.class_start.clear();

    // Greedy sequential coloring into independent sets (pairwise disjoint edges).
    std::copy(L.P.begin(), L.P.end(), uncolored_.begin());
    while (anyBit(uncolored_.data(), words_)) {
        L.class_start.push_back(L.order.size());
        const std::size_t base = L.classes.size();
        L.classes.resize(base + words_, 0);
        std::copy(uncolored_.begin(), uncolored_.end(), queue_.begin());
        for (int v = lowestBit(queue_.data(), words_); v >= 0; v = lowestBit(queue_.data(), words_)) {
            clearBit(uncolored_.data(), v);
            clearBit(queue_.data(), v);
            setBit(L.classes.data() + base, v);
            const std::uint64_t* a = adj(v);
            for (std::size_t w = 0; w < words_; ++w) queue_[w] &= ~a[w];
            L.order.push_back(v);
        }
    }
    L.class_start.push_back(L.order.size());

    // Plain coloring bound for class j is j + 1. Classes that would be
    // branched on get a failed-literal test: if every vertex of class j,
    // once assumed, empties some earlier unused class under unit
    // propagation, then class j plus the classes touched form a set from
    // which no clique takes one vertex each, and the bound drops by one.
    const std::size_t c = L.class_start.size() - 1;
    used_.assign(c, 0);
    touched_.assign(c, 0);
    involved_.assign(c, 0);
    std::size_t inc = 0;
    L.bound.resize(L.order.size());
    for (std::size_t j = 0; j < c; ++j) {
        if (j > 0 && j + 1 - inc > kmin) {
            std::fill(involved_.begin(), involved_.begin() + static_cast<std::ptrdiff_t>(j), 0);
            bool allFail = true;
            for (std::size_t pos = L.class_start[j]; pos < L.class_start[j + 1] && allFail; ++pos) {
                std::fill(touched_.begin(), touched_.begin() + static_cast<std::ptrdiff_t>(j), 0);
                if (!propagateFails(L.order[pos], L, j)) {
                    allFail = false;
                } else {
                    for (std::size_t i = 0; i < j; ++i) involved_[i] |= touched_[i];
                }
            }
            if (allFail) {
                ++inc;
                used_[j] = 1;
                for (std::size_t i = 0; i < j; ++i)
                    if (involved_[i]) used_[i] = 1;
            }
        }
        for (std::size_t pos = L.class_start[j]; pos < L.class_start[j + 1]; ++pos)
            L.bound[pos] = static_cast<int>(j + 1 - inc);
    }
}

// Assume u is in the clique and run unit propagation over the unused classes
// before `limit`. True on a conflict (some class loses every member);
// touched_ marks the classes that took part.
bool CliqueSearcher::propagateFails(int u, const Level& L, std::size_t limit) {
    const std::uint64_t* a0 = adj(u);
    std::copy(a0, a0 + words_, allowed_.begin());
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < limit; ++i) {
            if (used_[i] || touched_[i]) continue;
            const std::uint64_t* cls = L.classes.data() + i * words_;
            int cnt = 0;
            int last = -1;
            for (std::size_t w = 0; w < words_ && cnt < 2; ++w) {
                const std::uint64_t r = cls[w] & allowed_[w];
                if (r) {
                    cnt += std::popcount(r);
                    last = static_cast<int>(w * 64) + std::countr_zero(r);
                }
            }
            if (cnt == 0) {
                touched_[i] = 1;
                return true;
            }
            if (cnt == 1) {
                touched_[i] = 1;
                const std::uint64_t* a = adj(last);
                for (std::size_t w = 0; w < words_; ++w) allowed_[w] &= a[w];
                progress = true;
            }
        }
    }
    return false;
}

// A nontrivial completion needs, for each x common to the partial clique,
// some candidate avoiding x.
bool CliqueSearcher::feasibleNontrivial(const std::uint64_t* P, const VertexSet& common) const {
    bool ok = true;
    common.forEach([&](int x) {
        if (!ok) return;
        const std::uint64_t* s = star(x);
        bool escapes = false;
        for (std::size_t w = 0; w < words_ && !escapes; ++w) escapes = (P[w] & ~s[w]) != 0;
        ok = escapes;
    });
    return ok;
}

// Drop candidates that would push a vertex past degree 3 or the count of
// degree-3 vertices past the cap.
void CliqueSearcher::restrictGeneric(std::uint64_t* P, std::int64_t deg3) const {
    VertexSet deg2;
    for (int x = 0; x < n_; ++x) {
        const int d = vdeg_[static_cast<std::size_t>(x)];
        if (d >= 3) {
            const std::uint64_t* s = star(x);
            for (std::size_t w = 0; w < words_; ++w) P[w] &= ~s[w];
        } else if (d == 2) {
            deg2.set(x);
        }
    }
    // An edge through j degree-2 vertices adds j vertices of degree 3.
    const std::int64_t room = constraint_.zeta_cap - deg3;
    for (std::size_t w = 0; w < words_; ++w)
        for (std::uint64_t bits = P[w]; bits != 0; bits &= bits - 1) {
            const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            if ((sets_[j] & deg2).count() > room) P[w] &= ~(std::uint64_t{1} << (j % 64));
        }
}

bool CliqueSearcher::expand(std::size_t depth) {
    checkLimits();
    Level& L = levels_[depth];
    const std::size_t csize = clique_.size();
    const std::size_t kmin = best_size_ >= csize ? best_size_ - csize : 0;
    colorSort(L, kmin);

    const bool generic = constraint_.kind == CliqueConstraint::Kind::Generic;
    const bool nontrivial = constraint_.kind == CliqueConstraint::Kind::Nontrivial;
    std::int64_t deg3 = 0;
    if (generic)
        for (int d : vdeg_) deg3 += d == 3;

    for (std::size_t i = L.order.size(); i-- > 0;) {
        const auto b = static_cast<std::size_t>(L.bound[i]);
        if (csize + b <= best_size_) return false;
        const int v = L.order[i];
        const VertexSet& e = sets_[static_cast<std::size_t>(v)];

        clique_.push_back(v);
        Level& child = levels_[depth + 1];
        child.common = L.common & e;
        std::int64_t childDeg3 = deg3;
        if (generic) {
            e.forEach([&](int x) {
                const int d = ++vdeg_[static_cast<std::size_t>(x)];
                if (d == 3) ++childDeg3;
                if (d == 4) --childDeg3;
            });
        }
        child.P.resize(words_);
        const std::uint64_t* a = adj(v);
        for (std::size_t w = 0; w < words_; ++w) child.P[w] = L.P[w] & a[w];
        if (generic) restrictGeneric(child.P.data(), childDeg3);

        const std::size_t size = clique_.size();
        bool accept = false;
        bool room = true;
        bool needNontrivial = nontrivial;
        switch (mode_) {
            case Mode::Maximize:
                accept = size > best_size_ && (!nontrivial || child.common.none());
                break;
            case Mode::Target:
                accept = size == target_ && (!nontrivial || child.common.none());
                room = size < target_;
                break;
            case Mode::BeyondStar:
                accept = size > target_ || (size == target_ && child.common.none());
                room = size <= target_;
                // Below this branch nothing exceeds target_, so only a
                // nontrivial clique of exactly target_ could be accepted.
                needNontrivial = csize + b <= target_;
                break;
        }

        if (accept) {
            best_ = clique_;
            best_size_ = size;
            if (mode_ != Mode::Maximize) return true;
        }
        if (room && anyBit(child.P.data(), words_) &&
            (!needNontrivial || feasibleNontrivial(child.P.data(), child.common))) {
            if (expand(depth + 1)) return true;
        }

        if (generic) e.forEach([&](int x) { --vdeg_[static_cast<std::size_t>(x)]; });
        clique_.pop_back();
        clearBit(L.P.data(), v);
    }
    return false;
}

void CliqueSearcher::reset(Mode mode, CliqueConstraint c, std::size_t best, std::size_t target) {
    mode_ = mode;
    constraint_ = c;
    best_size_ = best;
    target_ = target;
    best_.clear();
    clique_.clear();
    std::fill(vdeg_.begin(), vdeg_.end(), 0);
    nodes_ = 0;
    if (levels_.size() < sets_.size() + 2) levels_.resize(sets_.size() + 2);
    Level& root = levels_[0];
    root.P.assign(words_, 0);
    for (std::size_t i = 0; i < sets_.size(); ++i) setBit(root.P.data(), static_cast<int>(i));
    root.common = VertexSet{};
    for (int x = 0; x < n_; ++x) root.common.set(x);
}

bool CliqueSearcher::run() { return !sets_.empty() && expand(0); }

std::vector<int> CliqueSearcher::exportClique(const std::vector<int>& positions) const {
    std::vector<int> out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(original_[static_cast<std::size_t>(p)]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> CliqueSearcher::maximum(CliqueConstraint c, std::size_t lower_bound, const std::vector<int>& seed) {
    reset(Mode::Maximize, c, lower_bound, 0);
    if (seed.size() > lower_bound) {
        std::vector<int> pos(original_.size());
        for (std::size_t i = 0; i < original_.size(); ++i)
            pos[static_cast<std::size_t>(original_[i])] = static_cast<int>(i);
        for (int s : seed) best_.push_back(pos[static_cast<std::size_t>(s)]);
        best_size_ = seed.size();
    }
    run();
    return exportClique(best_);
}

std::optional<std::vector<int>> CliqueSearcher::findOfSize(std::size_t size, CliqueConstraint c) {
    if (size == 0) return std::vector<int>{};
    reset(Mode::Target, c, size - 1, size);
    if (!run()) return std::nullopt;
    return exportClique(best_);
}

std::optional<std::vector<int>> CliqueSearcher::findBeyondStar(std::size_t size) {
    if (size == 0) {
        if (sets_.empty()) return std::nullopt;
        return std::vector<int>{original_.front()};
    }
    reset(Mode::BeyondStar, CliqueConstraint::none(), size - 1, size);
    if (!run()) return std::nullopt;
    return exportClique(best_);
}

}  // namespace ekrlab
