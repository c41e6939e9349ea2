#include "ekrlab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ekrlab/errors.hpp"

namespace ekrlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double toDoubleOrInf(const BigInt& x) {
    double d = x.convert_to<double>();
    return std::isfinite(d) ? d : std::numeric_limits<double>::infinity();
}

Rational rationalPow(Rational base, std::uint64_t e) {
    Rational r = 1;
    while (e) {
        if (e & 1U) r *= base;
        base *= base;
        e >>= 1U;
    }
    return r;
}

BigInt bigPow(BigInt base, std::uint64_t e) {
    BigInt r = 1;
    while (e) {
        if (e & 1U) r *= base;
        base *= base;
        e >>= 1U;
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModelParams
// ---------------------------------------------------------------------------

ModelParams ModelParams::fromP(std::uint64_t n, std::uint64_t k, double p) {
    ModelParams mp;
    mp.n = n;
    mp.k = k;
    mp.p = p;
    mp.given = Given::P;
    mp.psi = n > 1 ? std::log(static_cast<double>(n)) : 1.0;
    if (k >= 1 && n >= k) mp.phi = p * toDoubleOrInf(mp.degreeTrials());
    return mp;
}

ModelParams ModelParams::fromPhi(std::uint64_t n, std::uint64_t k, double phi) {
    ModelParams mp;
    mp.n = n;
    mp.k = k;
    mp.phi = phi;
    mp.given = Given::Phi;
    mp.psi = n > 1 ? std::log(static_cast<double>(n)) : 1.0;
    if (k >= 1 && n >= k) mp.p = phi / toDoubleOrInf(mp.degreeTrials());
    return mp;
}

ModelParams& ModelParams::withPsi(double v) {
    psi = v;
    return *this;
}
ModelParams& ModelParams::withEpsThr(double v) {
    eps_thr = v;
    return *this;
}
ModelParams& ModelParams::withCRegime(double v) {
    c_regime = v;
    return *this;
}

void ModelParams::validate() const {
    if (k < 1) throw DomainError("k must be positive");
    if (!(n > 2 * k))
        throw DomainError("n > 2k required (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
    if (!(phi >= 0.0)) throw DomainError("phi must be nonnegative");
    if (!(psi > 0.0)) throw DomainError("psi must be positive");
    if (!(eps_thr > 0.0 && eps_thr < 1.0)) throw DomainError("eps_thr must lie in (0,1)");
    if (!(c_regime > 0.0 && c_regime < 0.25)) throw DomainError("c_regime must lie in (0,1/4)");
}

double ModelParams::logN() const { return std::log(static_cast<double>(n)); }

double ModelParams::mbar() const { return phi * static_cast<double>(n) / static_cast<double>(k); }

BigInt ModelParams::degreeTrials() const { return binomialBig(n - 1, k - 1); }

double ModelParams::logDegreeTrials() const {
    return logBinomial(static_cast<double>(n - 1), static_cast<double>(k - 1));
}

Rational ModelParams::exactP() const {
    if (given == Given::P) return exactRational(p);
    return exactRational(phi) / Rational(degreeTrials());
}

Rational ModelParams::exactPhi() const {
    if (given == Given::Phi) return exactRational(phi);
    return exactRational(p) * Rational(degreeTrials());
}

// ---------------------------------------------------------------------------
// Intersection probability
// ---------------------------------------------------------------------------

Rational intersectionProbabilityExact(std::uint64_t n, std::uint64_t k, bool allow_degenerate) {
    if (k < 1) throw DomainError("k must be positive");
    if (n < 2 * k) {
        if (allow_degenerate) return Rational(1);
        throw DomainError("two disjoint k-sets need n >= 2k (got n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
    }
    Rational theta(fallingFactorial(n - k, k), fallingFactorial(n, k));
    return Rational(1) - theta;
}

double logTheta(std::uint64_t n, std::uint64_t k) {
    double s = 0.0;
    const auto kd = static_cast<double>(k);
    for (std::uint64_t i = 0; i < k; ++i) s += std::log1p(-kd / static_cast<double>(n - i));
    return s;
}

double intersectionProbability(std::uint64_t n, std::uint64_t k, bool allow_degenerate) {
    if (k < 1) throw DomainError("k must be positive");
    if (n < 2 * k) {
        if (allow_degenerate) return 1.0;
        throw DomainError("two disjoint k-sets need n >= 2k (got n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
    }
    return -std::expm1(logTheta(n, k));
}

DerivedQuantities derivedQuantities(const ModelParams& params, ExactnessOptions opts) {
    params.validate();
    DerivedQuantities d;
    const auto n = static_cast<double>(params.n);
    const auto k = static_cast<double>(params.k);
    d.M = params.degreeTrials();
    d.mbar = params.mbar();
    d.q = intersectionProbability(params.n, params.k);
    d.theta = std::exp(logTheta(params.n, params.k));

    auto total = binomialU64(params.n, params.k);
    if (total && *total <= opts.exact_cutoff) {
        d.exact = true;
        d.q_exact = intersectionProbabilityExact(params.n, params.k);
        d.theta_exact = Rational(1) - *d.q_exact;
        d.mbar_exact = params.exactPhi() * Rational(params.n) / Rational(params.k);
    }

    d.m0 = d.mbar + params.psi * std::sqrt(d.mbar);
    d.w = std::max(params.phi * params.phi * k * k / n, 6.0 * std::log(n));
    d.qhat = (1.0 + 2.0 * k * k * d.w / (d.q * n * n)) * d.q;
    return d;
}

// ---------------------------------------------------------------------------
// Lambda
// ---------------------------------------------------------------------------

double SignedLog::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

SignedLog logLambdaT(double mbar, double q, std::uint64_t t) {
    SignedLog out;
    double s = 0.0;
    for (std::uint64_t i = 0; i < t; ++i) {
        double f = mbar - static_cast<double>(i);
        if (f == 0.0) return SignedLog{0, kNegInf};
        if (f < 0) out.sign = -out.sign;
        s += std::log(std::fabs(f)) - std::log(static_cast<double>(i + 1));
    }
    const double pairs = static_cast<double>(t) * static_cast<double>(t - (t > 0 ? 1 : 0)) / 2.0;
    if (pairs > 0) {
        if (q == 0.0) return SignedLog{0, kNegInf};
        s += pairs * std::log(q);
    }
    out.log_abs = s;
    return out;
}

double lambdaT(double mbar, double q, std::uint64_t t) {
    // Direct product keeps Lambda(1) = mbar exact; log space takes over only
    // when the running value leaves the comfortable double range.
    double v = 1.0;
    double qi = 1.0;
    for (std::uint64_t i = 0; i < t; ++i) {
        v *= (mbar - static_cast<double>(i)) / static_cast<double>(i + 1);
        v *= qi;
        qi *= q;
        if (v == 0.0) return 0.0;
        const double a = std::fabs(v);
        if (a > 1e280 || a < 1e-280) return logLambdaT(mbar, q, t).value();
    }
    return v;
}

Rational lambdaTExact(const Rational& mbar, const Rational& q, std::uint64_t t) {
    Rational v = 1;
    for (std::uint64_t i = 0; i < t; ++i) {
        v *= (mbar - Rational(i)) / Rational(i + 1);
    }
    const std::uint64_t pairs = t * (t > 0 ? t - 1 : 0) / 2;
    return v * rationalPow(q, pairs);
}

double lambdaPrimeT(double mbar, double q, std::uint64_t t) {
    if (t <= 2) return 0.0;
    return lambdaT(mbar, q, t);
}

std::uint64_t lambdaPeak(double mbar, double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("lambdaPeak requires 0 < q < 1");
    if (!(mbar > 0.0)) throw DomainError("lambdaPeak requires mbar > 0");
    // Lambda(t+1)/Lambda(t) = ((mbar - t)/(t+1)) q^t is decreasing in t.
    std::uint64_t t = 0;
    const double logq = std::log(q);
    for (;;) {
        const double num = mbar - static_cast<double>(t);
        if (num <= 0.0) break;
        const double logRatio = std::log(num) - std::log(static_cast<double>(t + 1)) + static_cast<double>(t) * logq;
        // Compare the ratio itself when it is near 1 so exact ties (ratio == 1) resolve upward.
        const double ratio = (num / static_cast<double>(t + 1)) * std::pow(q, static_cast<double>(t));
        if (!(ratio >= 1.0) && !(logRatio > 0.0)) break;
        ++t;
    }
    return t;
}

// ---------------------------------------------------------------------------
// DegreeDistribution
// ---------------------------------------------------------------------------

DegreeDistribution DegreeDistribution::exact(BigInt M, Rational p) {
    if (p < 0 || p > 1) throw DomainError("probability outside [0,1]");
    DegreeDistribution d;
    d.exact_ = Exact{M, boost::multiprecision::numerator(p), boost::multiprecision::denominator(p)};
    d.M_ = toDoubleOrInf(M);
    d.logM_ = std::log(d.M_);
    d.invM_ = 1.0 / d.M_;
    d.phi_ = toDouble(p * Rational(M));
    return d;
}

DegreeDistribution DegreeDistribution::logSpace(double logM, double phi) {
    if (!(phi >= 0.0)) throw DomainError("phi must be nonnegative");
    DegreeDistribution d;
    d.logM_ = logM;
    d.phi_ = phi;
    d.M_ = std::exp(logM);
    d.invM_ = std::exp(-logM);
    if (std::isfinite(d.M_)) {
        d.M_ = std::round(d.M_);
        if (phi > d.M_ * (1 + 1e-12)) throw DomainError("phi exceeds C(n-1,k-1)");
        d.phi_ = std::min(phi, d.M_);
    }
    return d;
}

double DegreeDistribution::logPmf(std::int64_t t) const {
    if (t < 0) return kNegInf;
    const auto td = static_cast<double>(t);
    if (std::isfinite(M_) && td > M_) return kNegInf;
    if (phi_ == 0.0) return t == 0 ? 0.0 : kNegInf;
    const double p = phi_ * invM_;
    if (std::isfinite(M_) && phi_ >= M_) return td == M_ ? 0.0 : kNegInf;
    double s = td * std::log(phi_) - std::lgamma(td + 1.0);
    if (invM_ > 0.0) {
        for (std::int64_t i = 1; i < t; ++i) s += std::log1p(-static_cast<double>(i) * invM_);
    }
    if (std::isfinite(M_)) {
        s += (M_ - td) * std::log1p(-p);
    } else {
        s += -phi_;
    }
    return s;
}

double DegreeDistribution::ratio(std::int64_t j) const {
    const auto jd = static_cast<double>(j);
    return phi_ * (1.0 - jd * invM_) / ((jd + 1.0) * (1.0 - phi_ * invM_));
}

std::int64_t DegreeDistribution::mode() const {
    return static_cast<std::int64_t>(std::floor(phi_ + phi_ * invM_));
}

double DegreeDistribution::upperTailFloat(std::int64_t t) const {
    if (t <= 0) return 1.0;
    const auto td = static_cast<double>(t);
    if (std::isfinite(M_) && td > M_) return 0.0;
    if (phi_ == 0.0) return 0.0;
    if (std::isfinite(M_) && phi_ >= M_) return 1.0;
    const std::int64_t md = mode();
    if (t > md) {
        double term = std::exp(logPmf(t));
        double sum = term;
        std::int64_t j = t;
        while (term > 0.0) {
            if (std::isfinite(M_) && static_cast<double>(j) >= M_) break;
            term *= ratio(j);
            ++j;
            sum += term;
            if (term <= sum * 1e-17) break;
        }
        return std::min(sum, 1.0);
    }
    std::int64_t j = t - 1;
    double term = std::exp(logPmf(j));
    double sum = term;
    while (j > 0 && term > 0.0) {
        term /= ratio(j - 1);
        --j;
        sum += term;
        if (term <= sum * 1e-17) break;
    }
    return std::max(0.0, 1.0 - sum);
}

double DegreeDistribution::upperTail(std::int64_t t) const {
    if (!exact_) return upperTailFloat(t);
    const auto& e = *exact_;
    if (t <= 0) return 1.0;
    if (BigInt(t) > e.M) return 0.0;
    if (e.u == 0) return 0.0;
    if (e.u == e.v) return 1.0;
    const BigInt total = bigPow(e.v, e.M.convert_to<std::uint64_t>());
    BigInt term = bigPow(e.v - e.u, e.M.convert_to<std::uint64_t>());
    BigInt lower = 0;
    const auto M = e.M.convert_to<std::uint64_t>();
    for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(t); ++j) {
        lower += term;
        term = term * (M - j) * e.u / ((j + 1) * (e.v - e.u));
    }
    return toDouble(Rational(total - lower, total));
}

std::int64_t DegreeDistribution::largestWithUpperTailAtLeast(double threshold) const {
    if (!(threshold > 0.0)) throw DomainError("tail threshold must be positive");
    if (threshold > 1.0) return 0;

    if (exact_) {
        const auto& e = *exact_;
        const auto M = e.M.convert_to<std::uint64_t>();
        if (e.u == 0) return 0;
        if (e.u == e.v) return static_cast<std::int64_t>(M);
        const Rational thr = exactRational(threshold);
        const BigInt a = boost::multiprecision::numerator(thr);
        const BigInt b = boost::multiprecision::denominator(thr);
        const BigInt total = bigPow(e.v, M);
        BigInt term = bigPow(e.v - e.u, M);   // C(M,0) u^0 (v-u)^M
        BigInt lower = 0;                     // sum of terms below t
        std::uint64_t t = 0;
        for (;;) {
            // Pr(d >= t) = (total - lower) / total >= a / b
            if ((total - lower) * b < a * total) return t == 0 ? 0 : static_cast<std::int64_t>(t - 1);
            if (t == M) return static_cast<std::int64_t>(M);
            lower += term;
            term = term * (M - t) * e.u / ((t + 1) * (e.v - e.u));
            ++t;
        }
    }

    // Pr(d >= 0) = 1 >= threshold. Bracket then bisect on the monotone tail.
    std::int64_t lo = 0;
    std::int64_t hi = std::max<std::int64_t>(mode() + 1, 1);
    const bool finiteM = std::isfinite(M_);
    const auto Mi = finiteM ? static_cast<std::int64_t>(M_) : std::numeric_limits<std::int64_t>::max();
    while (upperTailFloat(hi) >= threshold) {
        lo = hi;
        if (hi > Mi) break;
        hi = std::min<std::int64_t>(hi * 2, finiteM ? Mi + 1 : hi * 2);
        if (hi == lo) break;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (upperTailFloat(mid) >= threshold) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

// ---------------------------------------------------------------------------
// alpha / beta
// ---------------------------------------------------------------------------

std::int64_t alphaTwo(double mbar, double q, double eps) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("alpha2 requires 0 < q < 1");
    const double logEps = std::log(eps);
    const double logq = std::log(q);
    // Running log|Lambda(t)| and sign; Lambda(0) = 1.
    double logAbs = 0.0;
    int sign = 1;
    constexpr std::int64_t kLimit = 50'000'000;
    for (std::int64_t t = 0; t < kLimit; ++t) {
        if (sign <= 0 || logAbs <= logEps) return t;
        const double f = mbar - static_cast<double>(t);
        if (f == 0.0) {
            sign = 0;
            continue;
        }
        if (f < 0) sign = -sign;
        logAbs += std::log(std::fabs(f)) - std::log(static_cast<double>(t + 1)) + static_cast<double>(t) * logq;
    }
    throw DomainError("alpha2 search did not terminate; q too close to 1");
}

AlphaBeta computeAlphaBeta(const ModelParams& params, AlphaBetaOptions opts) {
    params.validate();
    const BigInt M = params.degreeTrials();
    const auto dist = M <= opts.exact_cutoff ? DegreeDistribution::exact(M, params.exactP())
                                             : DegreeDistribution::logSpace(params.logDegreeTrials(), params.phi);
    const auto n = static_cast<double>(params.n);
    AlphaBeta ab;
    ab.exact = dist.isExact();
    ab.alpha1 = dist.largestWithUpperTailAtLeast(params.psi / n);
    // min{t : Pr(d > t) < x} is the largest t with Pr(d >= t) >= x.
    ab.beta = dist.largestWithUpperTailAtLeast(1.0 / (n * params.psi));
    ab.alpha2 = alphaTwo(params.mbar(), intersectionProbability(params.n, params.k), params.eps_thr);
    ab.alpha = std::max(ab.alpha1, ab.alpha2);
    ab.alpha_le_beta = ab.alpha <= ab.beta;
    return ab;
}

BetaStar betaStarBound(double phi, double n, double psi) {
    if (!(phi >= 0.0)) throw DomainError("phi must be nonnegative");
    const double L = std::log(n) + std::log(psi);
    if (L < 0.0) throw DomainError("n psi < 1: log n + log psi is negative");
    BetaStar b;
    b.eta = L / 3.0 + std::sqrt(L * L / 9.0 + 2.0 * phi * L);
    b.beta_star = static_cast<std::int64_t>(std::ceil(phi + b.eta));
    const double denom = 2.0 * (phi + b.eta / 3.0);
    b.tail_bound = denom > 0.0 ? std::exp(-b.eta * b.eta / denom) : 1.0;
    return b;
}

// ---------------------------------------------------------------------------
// Chernoff
// ---------------------------------------------------------------------------

double chernoffUpper(double mu, double lam) {
    if (mu < 0 || lam < 0) throw ArgumentError("chernoffUpper requires mu, lam >= 0");
    if (lam == 0.0) return 1.0;
    return std::exp(-lam * lam / (2.0 * (mu + lam / 3.0)));
}

double chernoffLower(double mu, double lam) {
    if (mu < 0 || lam < 0) throw ArgumentError("chernoffLower requires mu, lam >= 0");
    if (lam == 0.0) return 1.0;
    if (mu == 0.0) return 0.0;
    return std::exp(-lam * lam / (2.0 * mu));
}

double chernoffMult(double mu, double K) {
    if (mu < 0) throw ArgumentError("chernoffMult requires mu >= 0");
    if (!(K > 1.0)) throw ArgumentError("chernoffMult requires K > 1");
    return std::exp(mu * (K - 1.0 - K * std::log(K)));
}

double chernoffMultRelaxed(double rho, double mu, double K) {
    if (!(rho >= 0.0 && rho <= mu)) throw ArgumentError("chernoffMultRelaxed requires 0 <= rho <= mu");
    return chernoffMult(mu, K);
}

double chernoffMultHonest(double rho, double mu, double K) {
    if (!(rho >= 0.0 && rho <= mu)) throw ArgumentError("chernoffMultHonest requires 0 <= rho <= mu");
    if (!(K > 1.0)) throw ArgumentError("chernoffMultHonest requires K > 1");
    if (rho == 0.0) return 0.0;
    const double Km = K * mu;
    return std::exp(Km - rho - Km * std::log(K) - Km * std::log(mu / rho));
}

// ---------------------------------------------------------------------------
// Perturbed intersection bound
// ---------------------------------------------------------------------------

PerturbedBound perturbedIntersectionBound(std::uint64_t n, std::uint64_t k, std::uint64_t w_size) {
    const double q = intersectionProbability(n, k);
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    const auto wd = static_cast<double>(w_size);
    PerturbedBound b;
    b.value = (1.0 + 2.0 * kd * kd * wd / (q * nd * nd)) * q;
    b.outside_regime = wd * std::log(nd) >= nd;
    return b;
}

// ---------------------------------------------------------------------------
// Regime parameters
// ---------------------------------------------------------------------------

RegimeParams regimeFromValues(double log_n, double q, std::int64_t alpha, double phi, double eps) {
    if (!(q > 0.0)) throw DomainError("degenerate: q=0");
    const double logInvQ = -std::log(q);
    if (!(logInvQ > 0.0)) throw DomainError("degenerate: q=1");
    if (!(log_n > 0.0)) throw DomainError("regime parameters need log n > 0");
    if (!(eps > 0.0)) throw DomainError("eps = 1/4 - c must be positive");
    RegimeParams r;
    r.eps = eps;
    r.alpha = alpha;
    r.phi_star = log_n * log_n * log_n / logInvQ;
    // Relative slack so that phi* = 60 computed as 59.999... still gives 20.
    const auto thirdFloor = static_cast<std::int64_t>(std::floor(r.phi_star / 3.0 * (1.0 + 1e-12)));
    r.gamma = std::min(alpha, thirdFloor);
    r.tau = (1.0 - eps) * static_cast<double>(r.gamma);
    r.lambda_root_branch = std::sqrt(log_n) / logInvQ;
    r.lambda_ratio_branch = 2.0 * std::sqrt(log_n / logInvQ);
    r.lambda = std::max(r.lambda_root_branch, r.lambda_ratio_branch);
    r.xi = logInvQ / (2.0 * log_n);
    r.r0 = r.xi * phi;
    r.zeta_cap = static_cast<double>(r.gamma) / eps;
    return r;
}

RegimeParams regimeParams(const ModelParams& params, const AlphaBeta& ab) {
    params.validate();
    return regimeFromValues(params.logN(), intersectionProbability(params.n, params.k), ab.alpha, params.phi,
                            params.eps());
}

RegimeParams regimeParams(const ModelParams& params) { return regimeParams(params, computeAlphaBeta(params)); }

// ---------------------------------------------------------------------------
// Threshold
// ---------------------------------------------------------------------------

namespace {

struct ThresholdContext {
    std::uint64_t n, k;
    double logM, q, tailThreshold, logEps;

    double mbar(double phi) const { return phi * static_cast<double>(n) / static_cast<double>(k); }

    std::int64_t alpha1(double phi) const {
        return DegreeDistribution::logSpace(logM, phi).largestWithUpperTailAtLeast(tailThreshold);
    }

    bool lambdaSmall(double phi, std::int64_t a) const {
        const auto L = logLambdaT(mbar(phi), q, static_cast<std::uint64_t>(a));
        return L.sign <= 0 || L.log_abs <= logEps;
    }

    bool condition(double phi) const { return lambdaSmall(phi, alpha1(phi)); }
};

}  // namespace

bool thresholdCondition(std::uint64_t n, std::uint64_t k, double phi, double eps_thr, double psi) {
    const double q = intersectionProbability(n, k);
    ThresholdContext ctx{n, k, logBinomial(static_cast<double>(n - 1), static_cast<double>(k - 1)), q,
                         psi / static_cast<double>(n), std::log(eps_thr)};
    return ctx.condition(phi);
}

ThresholdEstimate thresholdEstimate(std::uint64_t n, std::uint64_t k, double eps_thr, ThresholdOptions opts) {
    if (k < 1 || !(n > 2 * k)) throw DomainError("n > 2k required");
    if (!(eps_thr > 0.0 && eps_thr < 1.0)) throw DomainError("eps_thr must lie in (0,1)");
    const double q = intersectionProbability(n, k);
    if (!(q < 1.0)) throw DomainError("degenerate: q=1");
    const double logn = std::log(static_cast<double>(n));
    const double psi = opts.psi.value_or(logn);
    const ThresholdContext ctx{n, k, logBinomial(static_cast<double>(n - 1), static_cast<double>(k - 1)), q,
                               psi / static_cast<double>(n), std::log(eps_thr)};

    ThresholdEstimate est;
    est.reference = logn / -std::log(q);

    const double phiMax = std::isfinite(std::exp(ctx.logM)) ? std::round(std::exp(ctx.logM)) : std::numeric_limits<double>::infinity();
    double phiTop = std::min(4.0 * std::max(est.reference, 1.0), phiMax);
    for (int i = 0; i < 64 && phiTop < phiMax && !ctx.condition(phiTop); ++i) phiTop = std::min(2.0 * phiTop, phiMax);
    est.phi_top = phiTop;
    if (!ctx.condition(phiTop)) {
        est.found = false;
        est.phi0 = phiTop;
        est.alpha1_at_phi0 = ctx.alpha1(phiTop);
        return est;
    }

    // Start of the alpha1 plateau at level a: the least phi with
    // Pr(Bin(M, phi/M) >= a) >= psi/n, monotone in phi.
    auto plateauStart = [&](std::int64_t a) {
        double lo = 0.0;
        double hi = phiTop;
        while (hi - lo > opts.rel_tol * hi) {
            const double mid = 0.5 * (lo + hi);
            if (DegreeDistribution::logSpace(ctx.logM, mid).upperTail(a) >= ctx.tailThreshold) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return hi;
    };

    // Lambda_phi(a) grows with phi, so a plateau [start, upper) is free of
    // violations iff the condition holds at its upper end.
    double upper = phiTop;
    double phi0 = 0.0;
    for (std::int64_t a = ctx.alpha1(phiTop); a >= 0; --a) {
        const double start = a == 0 ? 0.0 : plateauStart(a);
        if (start < upper && !ctx.lambdaSmall(upper, a)) {
            phi0 = upper;
            break;
        }
        upper = start;
    }
    est.phi0 = phi0;
    est.alpha1_at_phi0 = ctx.alpha1(phi0);
    return est;
}

}  // namespace ekrlab
