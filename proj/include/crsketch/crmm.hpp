#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "crsketch/errors.hpp"
#include "crsketch/linalg.hpp"
#include "crsketch/rng.hpp"

namespace crsketch {

// Probabilities {p_i} over the N column/row pairs of a product A*B.
struct SamplingDistribution {
    std::vector<double> probs;
};

// The multiset S of r sampled indices, in draw order.
struct SampleMultiset {
    int N = 0;
    std::vector<int> draws;

    std::vector<long long> counts() const {
        std::vector<long long> c(std::size_t(N), 0);
        for (int i : draws) {
            ++c[std::size_t(i)];
        }
        return c;
    }
};

namespace detail {

inline double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

inline void validate_distribution(const SamplingDistribution& dist, int N) {
    if (int(dist.probs.size()) != N) {
        throw ShapeError("sampling distribution size does not match the inner dimension");
    }
    for (double p : dist.probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw InvalidParameter("sampling probabilities must be finite and nonnegative");
        }
    }
    if (std::abs(kahan_sum(dist.probs) - 1.0) > 1e-12) {
        throw InvalidParameter("sampling probabilities must sum to 1 within 1e-12");
    }
}

// Rounds up, but snaps values within ~1e-12 relative of an integer first so
// that floating-point noise in a bound formula cannot inflate the result.
inline long long ceil_with_slack(double x) {
    if (!std::isfinite(x)) {
        throw InvalidParameter("bound formula evaluated to a non-finite value");
    }
    if (x >= 9.0e18) {
        throw InvalidParameter("bound exceeds the representable sample-count range");
    }
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-12 * std::max(1.0, std::abs(x))) {
        return (long long)(nearest);
    }
    return (long long)(std::ceil(x));
}

} // namespace detail

// p_i = ||A^(i)|| * ||B_(i)|| / sum_l ||A^(l)|| * ||B_(l)|| over columns of A
// and rows of B; invariant under rescaling of either factor.
inline SamplingDistribution cr_probabilities(const GeneralMatrix& A, const GeneralMatrix& B) {
    if (A.cols() != B.rows()) {
        throw ShapeError("inner dimensions of A and B do not match");
    }
    if (!A.allFinite() || !B.allFinite()) {
        throw InvalidMatrix("cr_probabilities requires finite entries");
    }
    const int N = int(A.cols());
    std::vector<double> prod(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        prod[std::size_t(i)] = A.col(i).norm() * B.row(i).norm();
    }
    double total = 0.0;
    for (double x : prod) {
        total += x;
    }
    if (total <= 0.0) {
        throw DegenerateDistribution("every column/row norm product is zero");
    }
    SamplingDistribution dist;
    dist.probs.resize(std::size_t(N));
    for (int i = 0; i < N; ++i) {
        dist.probs[std::size_t(i)] = prod[std::size_t(i)] / total;
    }
    return dist;
}

// Result of one CR multiplication run. Y is accumulated by streaming rank-1
// updates; the compressed factors C (L x r) and R (r x M) are materialized
// only on request and satisfy C * R = Y up to roundoff.
struct CRResult {
    GeneralMatrix Y;
    SampleMultiset samples;
    SamplingDistribution probabilities;

    GeneralMatrix compressed_left(const GeneralMatrix& A) const {
        const long long r = (long long)(samples.draws.size());
        GeneralMatrix C(A.rows(), r);
        for (long long j = 0; j < r; ++j) {
            const int i = samples.draws[std::size_t(j)];
            C.col(j) = A.col(i) / std::sqrt(double(r) * probabilities.probs[std::size_t(i)]);
        }
        return C;
    }

    GeneralMatrix compressed_right(const GeneralMatrix& B) const {
        const long long r = (long long)(samples.draws.size());
        GeneralMatrix R(r, B.cols());
        for (long long j = 0; j < r; ++j) {
            const int i = samples.draws[std::size_t(j)];
            R.row(j) = B.row(i) / std::sqrt(double(r) * probabilities.probs[std::size_t(i)]);
        }
        return R;
    }
};

// CR approximate multiplication with an explicit sampling distribution:
// draw r index pairs with replacement, Y = sum A^(j) B_(j) / (r p_j).
// Unbiased whenever every contributing index has positive probability,
// which is enforced here.
inline CRResult cr_multiply(const GeneralMatrix& A, const GeneralMatrix& B, long long r,
                            std::uint64_t seed, const SamplingDistribution& dist) {
    if (A.cols() != B.rows()) {
        throw ShapeError("inner dimensions of A and B do not match");
    }
    if (!A.allFinite() || !B.allFinite()) {
        throw InvalidMatrix("cr_multiply requires finite entries");
    }
    if (r < 1) {
        throw InvalidParameter("sample count r must be >= 1");
    }
    const int N = int(A.cols());
    detail::validate_distribution(dist, N);
    for (int i = 0; i < N; ++i) {
        if (dist.probs[std::size_t(i)] == 0.0 && A.col(i).norm() * B.row(i).norm() > 0.0) {
            throw DegenerateDistribution("zero probability assigned to a contributing index");
        }
    }

    DiscreteSampler sampler(dist.probs);
    Rng gen = make_rng(seed);
    CRResult result;
    result.Y = GeneralMatrix::Zero(A.rows(), B.cols());
    result.samples.N = N;
    result.samples.draws.reserve(std::size_t(r));
    for (long long j = 0; j < r; ++j) {
        const int i = sampler.draw(gen);
        result.samples.draws.push_back(i);
        const double scale = 1.0 / (double(r) * dist.probs[std::size_t(i)]);
        result.Y.noalias() += scale * (A.col(i) * B.row(i));
    }
    result.probabilities = dist;
    return result;
}

// CR multiplication with the variance-minimizing norm-product probabilities.
inline CRResult cr_multiply(const GeneralMatrix& A, const GeneralMatrix& B, long long r,
                            std::uint64_t seed) {
    return cr_multiply(A, B, r, seed, cr_probabilities(A, B));
}

// Sample mean of ||AB - Y||_F^2 over independent trials with derived seeds.
inline double empirical_variance(const GeneralMatrix& A, const GeneralMatrix& B, long long r,
                                 long long trials, std::uint64_t seed,
                                 const SamplingDistribution& dist) {
    if (trials < 2) {
        throw InvalidParameter("empirical_variance requires at least 2 trials");
    }
    const GeneralMatrix exact = A * B;
    double acc = 0.0;
    for (long long t = 0; t < trials; ++t) {
        const CRResult run = cr_multiply(A, B, r, derive_seed(seed, std::uint64_t(t)), dist);
        acc += (exact - run.Y).squaredNorm();
    }
    return acc / double(trials);
}

inline double empirical_variance(const GeneralMatrix& A, const GeneralMatrix& B, long long r,
                                 long long trials, std::uint64_t seed) {
    return empirical_variance(A, B, r, trials, seed, cr_probabilities(A, B));
}

// Samples sufficient for the Frobenius tail bound: r >= 1/(delta^2 eps^2).
inline long long r_min_frobenius(double eps, double delta) {
    if (!(eps > 0.0) || !(delta > 0.0)) {
        throw InvalidParameter("r_min_frobenius requires positive eps and delta");
    }
    return detail::ceil_with_slack(1.0 / (delta * delta * eps * eps));
}

// Samples sufficient for the spectral-norm tail on A*A^T:
// r >= (96 F / eps^2) * ln(96 F / (eps^2 sqrt(delta))) for F = ||A||_F^2,
// valid in the regime F >= 1/24. The companion condition r <= N is advisory
// in the source analysis and deliberately not enforced here.
inline long long r_min_spectral(double frobsq, double eps, double delta) {
    if (!(eps > 0.0) || eps >= 1.0 || !(delta > 0.0) || delta > 1.0 || !std::isfinite(frobsq)) {
        throw InvalidParameter("r_min_spectral requires eps in (0,1) and delta in (0,1]");
    }
    if (frobsq < 1.0 / 24.0) {
        throw AssumptionViolated("r_min_spectral assumes ||A||_F^2 >= 1/24");
    }
    const double c = 96.0 * frobsq / (eps * eps);
    return std::max(1LL, detail::ceil_with_slack(c * std::log(c / std::sqrt(delta))));
}

// Samples sufficient for the multiplicative sparsifier guarantee:
// r >= 6 gamma^2 ln(gamma^2 / sqrt(delta)) with gamma = 8W / (eps sigma_max(B)).
// Clamped to >= 1 when the formula goes nonpositive for tiny gamma.
inline long long r_min_prop2(double W, double sigma_max_B, double eps, double delta) {
    if (!(W > 0.0) || !(sigma_max_B > 0.0) || !(eps > 0.0) || eps >= 1.0 || !(delta > 0.0) ||
        delta > 1.0) {
        throw InvalidParameter("r_min_prop2 requires positive inputs, eps in (0,1), delta in (0,1]");
    }
    const double gamma = 8.0 * W / (eps * sigma_max_B);
    const double gamma_sq = gamma * gamma;
    const double value = 6.0 * gamma_sq * std::log(gamma_sq / std::sqrt(delta));
    return std::max(1LL, detail::ceil_with_slack(value));
}

} // namespace crsketch
