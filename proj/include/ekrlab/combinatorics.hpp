#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ekrlab/vertex_set.hpp"

namespace ekrlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(a, b) in 64 bits, or nullopt on overflow.
std::optional<std::uint64_t> binomialU64(std::uint64_t a, std::uint64_t b);

/// C(a, b) exactly.
BigInt binomialBig(std::uint64_t a, std::uint64_t b);

/// log C(a, b) for real a >= b >= 0.
double logBinomial(double a, double b);

/// (a)_b = a (a-1) ... (a-b+1) exactly.
BigInt fallingFactorial(std::uint64_t a, std::uint64_t b);

/// Exact value of a finite double as a rational (doubles are dyadic).
Rational exactRational(double x);

/// Closest double to a rational.
double toDouble(const Rational& r);

/// "num/den" in lowest terms ("5/6", "0/1").
std::string rationalString(const Rational& r);

/// Colexicographic rank of a k-subset of [0, n): sum over sorted members
/// s_0 < s_1 < ... of C(s_i, i + 1).
std::uint64_t colexRank(const VertexSet& s);

/// Inverse of colexRank for k-subsets; rank must be < C(n, k).
VertexSet colexUnrank(std::uint64_t rank, int n, int k);

}  // namespace ekrlab
