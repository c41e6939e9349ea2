#pragma once

#include <cstdint>
#include <optional>

#include "ekrlab/combinatorics.hpp"

namespace ekrlab {

// ---------------------------------------------------------------------------
// Model parameters
// ---------------------------------------------------------------------------

/// Parameters of the random k-graph H_k(n, p). The edge probability p and the
/// expected vertex degree phi = p * C(n-1, k-1) are two views of one number;
/// whichever was supplied is authoritative and the other is derived from it.
struct ModelParams {
    enum class Given { P, Phi };

    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double p = 0.0;
    double phi = 0.0;
    double psi = 0.0;        ///< slowly growing auxiliary; defaults to log n
    double eps_thr = 0.1;    ///< finite-n stand-in for the o(1) tolerances
    double c_regime = 0.2;   ///< the constant c < 1/4; eps = 1/4 - c
    Given given = Given::P;

    static ModelParams fromP(std::uint64_t n, std::uint64_t k, double p);
    static ModelParams fromPhi(std::uint64_t n, std::uint64_t k, double phi);

    ModelParams& withPsi(double v);
    ModelParams& withEpsThr(double v);
    ModelParams& withCRegime(double v);

    /// Throws DomainError unless n > 2k, p in [0,1], psi > 0, 0 < eps_thr < 1,
    /// 0 < c_regime < 1/4.
    void validate() const;

    double eps() const { return 0.25 - c_regime; }
    double logN() const;
    /// Expected number of edges, phi * n / k.
    double mbar() const;

    /// C(n-1, k-1).
    BigInt degreeTrials() const;
    double logDegreeTrials() const;

    /// Exact p and phi. The supplied double is converted exactly and the
    /// other is derived by exact division/multiplication by C(n-1, k-1).
    Rational exactP() const;
    Rational exactPhi() const;
};

// ---------------------------------------------------------------------------
// Intersection probability
// ---------------------------------------------------------------------------

/// q = Pr(A meets B) for independent uniform k-subsets of [n], as a reduced
/// fraction. Requires n >= 2k unless allow_degenerate (then n < 2k gives 1).
Rational intersectionProbabilityExact(std::uint64_t n, std::uint64_t k, bool allow_degenerate = false);

/// Floating-point q, computed as -expm1(log theta) for accuracy when q is tiny.
double intersectionProbability(std::uint64_t n, std::uint64_t k, bool allow_degenerate = false);

/// log theta = log((n-k)_k / (n)_k), theta = 1 - q.
double logTheta(std::uint64_t n, std::uint64_t k);

/// The quantities every formula downstream is written in.
struct DerivedQuantities {
    BigInt M;             ///< C(n-1, k-1)
    double mbar = 0.0;    ///< phi n / k
    double theta = 0.0;
    double q = 0.0;
    std::optional<Rational> theta_exact;
    std::optional<Rational> q_exact;
    std::optional<Rational> mbar_exact;
    double m0 = 0.0;      ///< mbar + psi sqrt(mbar)
    double w = 0.0;       ///< max(phi^2 k^2 / n, 6 log n)
    double qhat = 0.0;    ///< (1 + 2 k^2 w / (q n^2)) q
    bool exact = false;
};

struct ExactnessOptions {
    /// Exact rationals are used while C(n, k) stays at or below this.
    std::uint64_t exact_cutoff = 1'000'000;
};

DerivedQuantities derivedQuantities(const ModelParams& params, ExactnessOptions opts = {});

// ---------------------------------------------------------------------------
// Lambda(t) = C(mbar, t) q^C(t,2)
// ---------------------------------------------------------------------------

struct SignedLog {
    int sign = 1;               ///< -1, 0 or +1
    double log_abs = 0.0;       ///< log |value|; meaningless when sign == 0
    double value() const;
};

/// Lambda(t) using the generalized binomial (mbar)_t / t!. Values for
/// t > mbar + 1 may be negative and are returned signed, not clamped.
double lambdaT(double mbar, double q, std::uint64_t t);
SignedLog logLambdaT(double mbar, double q, std::uint64_t t);
Rational lambdaTExact(const Rational& mbar, const Rational& q, std::uint64_t t);

/// Lambda'(t): 0 for t <= 2, else Lambda(t).
double lambdaPrimeT(double mbar, double q, std::uint64_t t);

/// Largest maximizer of Lambda over the nonnegative integers, found by
/// following the ratio ((mbar - t + 1)/t) q^(t-1) while it stays >= 1.
/// Requires 0 < q < 1 and mbar > 0.
std::uint64_t lambdaPeak(double mbar, double q);

// ---------------------------------------------------------------------------
// Degree brackets alpha and beta
// ---------------------------------------------------------------------------

/// Law of a vertex degree, Bin(M, p). Either exact (big-integer tails) or in
/// log space parametrized by (log M, phi = M p) so that astronomically large
/// M with tiny p stays representable.
class DegreeDistribution {
public:
    static DegreeDistribution exact(BigInt M, Rational p);
    static DegreeDistribution logSpace(double logM, double phi);

    bool isExact() const { return exact_.has_value(); }

    /// Pr(d >= t).
    double upperTail(std::int64_t t) const;

    /// Largest t >= 0 with Pr(d >= t) >= threshold; 0 if even t = 0 fails.
    std::int64_t largestWithUpperTailAtLeast(double threshold) const;

private:
    struct Exact {
        BigInt M;
        BigInt u;   // p = u / v
        BigInt v;
    };
    std::optional<Exact> exact_;
    double phi_ = 0.0;
    double logM_ = 0.0;
    double invM_ = 0.0;   // 1/M, zero once M exceeds double range
    double M_ = 0.0;      // +inf once M exceeds double range

    double logPmf(std::int64_t t) const;
    double ratio(std::int64_t j) const;   // pmf(j+1) / pmf(j)
    std::int64_t mode() const;
    double upperTailFloat(std::int64_t t) const;
};

struct AlphaBetaOptions {
    /// Exact big-integer binomial tails while C(n-1, k-1) is at most this.
    std::uint64_t exact_cutoff = 1000;
};

struct AlphaBeta {
    std::int64_t alpha1 = 0;   ///< max{t : Pr(d_v >= t) >= psi/n}
    std::int64_t alpha2 = 0;   ///< min{t : Lambda(t) <= eps_thr}
    std::int64_t alpha = 0;    ///< max{alpha1, alpha2}
    std::int64_t beta = 0;     ///< min{t : Pr(d_v > t) < 1/(n psi)}
    bool exact = false;        ///< tails computed exactly
    bool alpha_le_beta = false;
};

AlphaBeta computeAlphaBeta(const ModelParams& params, AlphaBetaOptions opts = {});

/// min{t : Lambda(t) <= eps}; requires 0 < q < 1.
std::int64_t alphaTwo(double mbar, double q, double eps);

struct BetaStar {
    double eta = 0.0;          ///< positive root of x = sqrt(2(phi + x/3) L)
    std::int64_t beta_star = 0;
    double tail_bound = 1.0;   ///< exp(-eta^2 / (2(phi + eta/3))) = 1/(n psi)
};

/// beta* = ceil(phi + eta) with L = log n + log psi. n is real-valued here.
BetaStar betaStarBound(double phi, double n, double psi);

// ---------------------------------------------------------------------------
// Chernoff-type tails (valid for negatively associated Bernoulli sums)
// ---------------------------------------------------------------------------

/// exp(-lam^2 / (2 (mu + lam/3))) bounding Pr(X > mu + lam).
double chernoffUpper(double mu, double lam);
/// exp(-lam^2 / (2 mu)) bounding Pr(X < mu - lam); 0 when mu = 0 < lam.
double chernoffLower(double mu, double lam);
/// (e^(K-1) K^-K)^mu bounding Pr(X > K mu); K > 1.
double chernoffMult(double mu, double K);
/// Same bound when only E X = rho <= mu is known.
double chernoffMultRelaxed(double rho, double mu, double K);
/// The bound obtained by applying chernoffMult at the true mean rho to the
/// level K mu: e^(K mu - rho) K^(-K mu) (mu/rho)^(-K mu). Never exceeds the
/// relaxed bound and equals it at mu = rho.
double chernoffMultHonest(double rho, double mu, double K);

// ---------------------------------------------------------------------------
// Perturbed intersection probability
// ---------------------------------------------------------------------------

struct PerturbedBound {
    double value = 0.0;             ///< (1 + 2 k^2 w / (q n^2)) q
    bool outside_regime = false;    ///< w log n >= n
};

PerturbedBound perturbedIntersectionBound(std::uint64_t n, std::uint64_t k, std::uint64_t w_size);

// ---------------------------------------------------------------------------
// Regime parameters
// ---------------------------------------------------------------------------

struct RegimeParams {
    double phi_star = 0.0;     ///< log^3 n / log(1/q)
    std::int64_t alpha = 0;
    std::int64_t gamma = 0;    ///< min{alpha, floor(phi*/3)}
    double tau = 0.0;          ///< (1 - eps) gamma
    double lambda = 0.0;       ///< max of the two branches below
    double lambda_root_branch = 0.0;    ///< sqrt(log n) / log(1/q)
    double lambda_ratio_branch = 0.0;   ///< 2 sqrt(log n / log(1/q))
    double xi = 0.0;           ///< log(1/q) / (2 log n)
    double r0 = 0.0;           ///< xi phi
    double zeta_cap = 0.0;     ///< gamma / eps
    double eps = 0.0;
};

/// Regime parameters from raw values; throws DomainError("degenerate: q=1")
/// when log(1/q) is zero.
RegimeParams regimeFromValues(double log_n, double q, std::int64_t alpha, double phi, double eps);

RegimeParams regimeParams(const ModelParams& params, const AlphaBeta& ab);
RegimeParams regimeParams(const ModelParams& params);

// ---------------------------------------------------------------------------
// Threshold estimate
// ---------------------------------------------------------------------------

struct ThresholdEstimate {
    double phi0 = 0.0;          ///< estimated threshold in expected-degree units
    double reference = 0.0;     ///< log n / log(1/q)
    std::int64_t alpha1_at_phi0 = 0;
    double phi_top = 0.0;       ///< upper end of the examined range
    bool found = true;          ///< false if the condition fails even at phi_top (then phi0 = phi_top)
};

struct ThresholdOptions {
    double rel_tol = 1e-6;
    std::optional<double> psi;   ///< defaults to log n
};

/// Smallest phi such that Lambda_phi(alpha1(phi)) <= eps_thr holds for every
/// phi' in [phi, phi_top]; alpha1 is the lower degree bracket at phi'.
/// Found plateau by plateau of alpha1, scanning down from phi_top, which is
/// capped at C(n-1,k-1).
ThresholdEstimate thresholdEstimate(std::uint64_t n, std::uint64_t k, double eps_thr, ThresholdOptions opts = {});

/// Lambda_phi(alpha1(phi)) <= eps_thr at a single phi (log-space tails).
bool thresholdCondition(std::uint64_t n, std::uint64_t k, double phi, double eps_thr, double psi);

}  // namespace ekrlab
