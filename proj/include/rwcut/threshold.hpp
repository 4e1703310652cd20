#pragma once

#include <cstdint>
#include <functional>

#include "rwcut/graph.hpp"
#include "rwcut/walk.hpp"

namespace rwcut {

inline constexpr double kSigma0 = 0.22815;

struct AlgoParams {
    double eps = 0.1;    ///< assumed maxcut deficit
    double mu = 1.0;     ///< runtime exponent
    double delta = 0.05; ///< spectral slack
    double gamma = 0.05; ///< geometric threshold step
    double kappa = 8.0;  ///< walk-count constant
    double alpha = 1.0;  ///< bound on max_j p_j / d_j
    double c_vol = 1.0;  ///< constant of the success volume condition
    /// Walk steps one Find may spend before giving up; 0 means only the
    /// global walk cap applies.
    std::uint64_t step_budget = 50'000'000;
    unsigned threads = 1;

    /// Throws InvalidParams when a field is out of range.
    void validate() const;
};

/// 1 - (1 - eps)^{1 + 1/mu}.
double sigma_fn(double eps, double mu);

/// 0.5 above 1/3; (-1 + sqrt(4s^2 - 8s + 5)) / (2(1 - s)) on (sigma0, 1/3];
/// 1 / (1 + 2 sqrt(s(1 - s))) up to sigma0.
double soto_fn(double sigma);

/// -ln(1 - eps).
double eps_prime(double eps);

/// ceil(kappa ln(n) max(alpha, t) / t^2). Throws InvalidInput when t <= 0.
std::uint64_t walk_count(double t, double alpha, std::size_t n, double kappa);

/// ceil(mu ln(4m / delta^2) / (2 (delta + eps'))), at least 1. m is the
/// degree sum. Not clamped; callers compare against kMaxWalkLength.
std::uint32_t walk_length(const AlgoParams& params, double m);

/// walk_length clamped to [1, kMaxWalkLength].
std::uint32_t capped_walk_length(const AlgoParams& params, double m);

/// Moves every unclassified j with q(j) > t to Even and q(j) < -t to Odd.
/// Returns how many vertices were newly classified.
std::size_t threshold_classify(const WeightedGraph& g, double t, const WalkTally& tally, Tripartition& part);

struct FindResult {
    bool succeeded = false;
    Tripartition partition;
    double threshold = 0.0; ///< t_r of the last round examined
    std::uint32_t rounds = 0;
    std::uint32_t length = 0;
    std::uint64_t walks = 0;
    std::uint64_t steps = 0;
    CutMetrics metrics;
    bool budget_exhausted = false;
    bool aborted = false;
};

/// Called after every round with the steps spent so far; returning true
/// stops the search (result is a failure with aborted = true).
using FindAbort = std::function<bool(std::uint64_t steps)>;

/**
 * Scans t_r = (1 - gamma)^r while t_r >= gamma / m^{1 + mu/2}. Each round
 * tops the tally up to walk_count(t_r) walks (earlier walks are kept) and
 * classifies. Succeeds at the first round with
 *   cut(Even, Odd) >= soto(sigma) inc(Even, Odd)  and
 *   vol(Even u Odd) >= c_vol / (t_r^2 m^{1+mu} ln n).
 * Fails when thresholds run out or the next top-up would exceed the step
 * budget. Requires m > 0.
 */
FindResult find_threshold(const WeightedGraph& g, VertexId start, const AlgoParams& params, std::uint64_t seed,
                          const FindAbort& abort = {});

/// The success predicate, evaluated from scratch on `part`.
bool find_success(const WeightedGraph& g, const Tripartition& part, const AlgoParams& params, double t);

} // namespace rwcut
