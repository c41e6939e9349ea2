#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace ekrlab {

inline constexpr int kMaxVertices = 256;

/// Fixed-width set of vertices in [0, 256). Vertices are 0-based internally;
/// all text formats use 1-based labels.
class VertexSet {
public:
    static constexpr int kWords = kMaxVertices / 64;

    constexpr VertexSet() = default;

    static VertexSet of(std::initializer_list<int> vs) {
        VertexSet s;
        for (int v : vs) s.set(v);
        return s;
    }

    constexpr void set(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    constexpr void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    constexpr bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

    constexpr int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    constexpr bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    constexpr bool none() const { return !any(); }

    constexpr bool intersects(const VertexSet& o) const {
        for (int i = 0; i < kWords; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// Lowest member, or -1 when empty.
    constexpr int lowest() const {
        for (int i = 0; i < kWords; ++i)
            if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
        return -1;
    }
    /// Highest member, or -1 when empty.
    constexpr int highest() const {
        for (int i = kWords - 1; i >= 0; --i)
            if (words_[i]) return i * 64 + 63 - std::countl_zero(words_[i]);
        return -1;
    }

    template <typename F>
    constexpr void forEach(F&& f) const {
        for (int i = 0; i < kWords; ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(i * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        forEach([&](int v) { out.push_back(v); });
        return out;
    }

    constexpr VertexSet& operator&=(const VertexSet& o) {
        for (int i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    constexpr VertexSet& operator|=(const VertexSet& o) {
        for (int i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    constexpr VertexSet& operator-=(const VertexSet& o) {
        for (int i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend constexpr VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend constexpr VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend constexpr VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    friend constexpr bool operator==(const VertexSet&, const VertexSet&) = default;

    const std::array<std::uint64_t, kWords>& words() const { return words_; }

private:
    std::array<std::uint64_t, kWords> words_{};
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : s.words()) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace ekrlab
