#include "ekrlab/combinatorics.hpp"

#include <cmath>
#include <limits>

#include "ekrlab/errors.hpp"

namespace ekrlab {

__extension__ using u128 = unsigned __int128;

std::optional<std::uint64_t> binomialU64(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    u128 r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        // r * (a - b + i) / i stays integral at every step.
        r = r * (a - b + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    }
    return static_cast<std::uint64_t>(r);
}

BigInt binomialBig(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r *= (a - b + i);
        r /= i;
    }
    return r;
}

double logBinomial(double a, double b) {
    if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

BigInt fallingFactorial(std::uint64_t a, std::uint64_t b) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < b; ++i) {
        if (a < i) return 0;
        r *= (a - i);
    }
    return r;
}

Rational exactRational(double x) {
    if (!std::isfinite(x)) throw DomainError("exactRational: non-finite value");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // mant * 2^53 is an integer for every finite double.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r{BigInt(scaled)};
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << -exp);
    }
    return r;
}

double toDouble(const Rational& r) { return r.convert_to<double>(); }

std::string rationalString(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

std::uint64_t colexRank(const VertexSet& s) {
    std::uint64_t rank = 0;
    std::uint64_t i = 1;
    s.forEach([&](int v) {
        rank += *binomialU64(static_cast<std::uint64_t>(v), i);
        ++i;
    });
    return rank;
}

VertexSet colexUnrank(std::uint64_t rank, int n, int k) {
    VertexSet s;
    int hi = n - 1;
    for (int i = k; i >= 1; --i) {
        // Largest v <= hi with C(v, i) <= rank.
        int v = hi;
        while (v >= i - 1) {
            std::uint64_t c = *binomialU64(static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(i));
            if (c <= rank) {
                rank -= c;
                break;
            }
            --v;
        }
        s.set(v);
        hi = v - 1;
    }
    return s;
}

}  // namespace ekrlab
