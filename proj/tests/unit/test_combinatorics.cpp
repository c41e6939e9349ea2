#include <doctest.h>

#include <cmath>

#include "ekrlab/combinatorics.hpp"
#include "oracles.hpp"

using namespace ekrlab;

TEST_CASE("binomialU64 agrees with Pascal's triangle and detects overflow") {
    std::vector<std::vector<std::uint64_t>> pascal(62, std::vector<std::uint64_t>(62, 0));
    for (std::size_t a = 0; a < 62; ++a) {
        pascal[a][0] = 1;
        for (std::size_t b = 1; b <= a; ++b) pascal[a][b] = pascal[a - 1][b - 1] + (b < a ? pascal[a - 1][b] : 0);
    }
    for (std::uint64_t a = 0; a < 62; ++a)
        for (std::uint64_t b = 0; b <= a + 1; ++b) {
            const auto v = binomialU64(a, b);
            REQUIRE(v.has_value());
            CHECK(*v == (b <= a ? pascal[a][b] : 0));
        }
    CHECK_FALSE(binomialU64(200, 100).has_value());
    CHECK(binomialU64(67, 33).has_value());
}

TEST_CASE("binomialBig and fallingFactorial") {
    CHECK(binomialBig(100, 50).str() == "100891344545564193334812497256");
    CHECK(binomialBig(5, 7) == 0);
    CHECK(fallingFactorial(10, 3) == 720);
    CHECK(fallingFactorial(4, 0) == 1);
    CHECK(fallingFactorial(3, 5) == 0);
}

TEST_CASE("logBinomial matches lgamma") {
    for (double a : {5.0, 17.0, 1000.0, 1e6})
        for (double b : {0.0, 1.0, 3.0, 5.0}) {
            const double ref = std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1);
            CHECK(logBinomial(a, b) == doctest::Approx(ref).epsilon(1e-10));
        }
}

TEST_CASE("exactRational is exact and rationalString is reduced") {
    CHECK(rationalString(exactRational(0.5)) == "1/2");
    CHECK(rationalString(exactRational(3.0)) == "3/1");
    CHECK(rationalString(exactRational(0.1)) == "3602879701896397/36028797018963968");
    CHECK(toDouble(exactRational(0.1)) == 0.1);
    CHECK(rationalString(Rational(10, 12)) == "5/6");
}

TEST_CASE("colex rank is a bijection onto [0, C(n,k))") {
    for (int n = 1; n <= 10; ++n)
        for (int k = 1; k <= std::min(n, 4); ++k) {
            const auto total = oracle::choose(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
            std::vector<bool> seen(total, false);
            std::uint64_t prev = 0;
            bool first = true;
            for (std::uint64_t r = 0; r < total; ++r) {
                const VertexSet s = colexUnrank(r, n, k);
                CHECK(s.count() == k);
                CHECK(colexRank(s) == r);
                // Colex order: compare largest differing element.
                std::uint64_t key = 0;
                s.forEach([&](int v) { key |= std::uint64_t{1} << v; });
                if (!first) CHECK(key > prev);
                prev = key;
                first = false;
                seen[r] = true;
            }
            CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
        }
}
