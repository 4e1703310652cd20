#include "rwcut/threshold.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rwcut/error.hpp"

namespace rwcut {

void AlgoParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(eps) || eps < 0.0 || eps > 0.5) {
        throw InvalidParams("eps must lie in [0, 0.5]");
    }
    if (!finite(mu) || mu <= 0.0) {
        throw InvalidParams("mu must be positive");
    }
    if (!finite(delta) || delta <= 0.0) {
        throw InvalidParams("delta must be positive");
    }
    if (!finite(gamma) || gamma <= 0.0 || gamma >= 1.0) {
        throw InvalidParams("gamma must lie in (0, 1)");
    }
    if (!finite(kappa) || kappa <= 0.0) {
        throw InvalidParams("kappa must be positive");
    }
    if (!finite(alpha) || alpha <= 0.0 || alpha > 1.0) {
        throw InvalidParams("alpha must lie in (0, 1]");
    }
    if (!finite(c_vol) || c_vol < 0.0) {
        throw InvalidParams("c_vol must be non-negative");
    }
}

double sigma_fn(double eps, double mu) {
    return 1.0 - std::pow(1.0 - eps, 1.0 + 1.0 / mu);
}

double soto_fn(double sigma) {
    if (sigma > 1.0 / 3.0) {
        return 0.5;
    }
    if (sigma > kSigma0) {
        return (-1.0 + std::sqrt(4.0 * sigma * sigma - 8.0 * sigma + 5.0)) / (2.0 * (1.0 - sigma));
    }
    return 1.0 / (1.0 + 2.0 * std::sqrt(sigma * (1.0 - sigma)));
}

double eps_prime(double eps) {
    return -std::log1p(-eps);
}

std::uint64_t walk_count(double t, double alpha, std::size_t n, double kappa) {
    if (!(t > 0.0)) {
        throw InvalidInput("walk_count: threshold must be positive");
    }
    const double w = std::ceil(kappa * std::log(static_cast<double>(n)) * std::max(alpha, t) / (t * t));
    if (w >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(std::max(w, 1.0));
}

std::uint32_t walk_length(const AlgoParams& params, double m) {
    const double l = std::ceil(params.mu * std::log(4.0 * m / (params.delta * params.delta)) /
                               (2.0 * (params.delta + eps_prime(params.eps))));
    if (!(l >= 1.0)) {
        return 1;
    }
    if (l > static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
        return std::numeric_limits<std::uint32_t>::max();
    }
    return static_cast<std::uint32_t>(l);
}

std::uint32_t capped_walk_length(const AlgoParams& params, double m) {
    return std::min(walk_length(params, m), kMaxWalkLength);
}

std::size_t threshold_classify(const WeightedGraph& g, double t, const WalkTally& tally, Tripartition& part) {
    std::size_t added = 0;
    for (VertexId j = 0; j < g.vertex_count(); ++j) {
        if (part.classified(j)) {
            continue;
        }
        const double q = signed_estimate(tally, g, j);
        if (q > t) {
            part.classify(j, TriSide::Even);
            ++added;
        } else if (q < -t) {
            part.classify(j, TriSide::Odd);
            ++added;
        }
    }
    return added;
}

namespace {

bool success_predicate(const WeightedGraph& g, const CutMetrics& m, double volume, const AlgoParams& params,
                       double t) {
    if (!(m.inc > 0.0)) {
        return false;
    }
    const double target = soto_fn(sigma_fn(params.eps, params.mu));
    const double total = g.total_weight();
    const double n = static_cast<double>(g.vertex_count());
    const double min_volume = params.c_vol / (t * t * std::pow(total, 1.0 + params.mu) * std::log(n));
    return m.cut >= target * m.inc && volume >= min_volume;
}

} // namespace

bool find_success(const WeightedGraph& g, const Tripartition& part, const AlgoParams& params, double t) {
    return success_predicate(g, part.metrics(), part.classified_volume(), params, t);
}

FindResult find_threshold(const WeightedGraph& g, VertexId start, const AlgoParams& params, std::uint64_t seed,
                          const FindAbort& abort) {
    params.validate();
    if (!(g.total_weight() > 0.0)) {
        throw InvalidInput("find_threshold: graph has no edges");
    }
    if (start >= g.vertex_count()) {
        throw InvalidInput("find_threshold: start out of range");
    }
    const double m = g.total_weight();
    const std::size_t n = std::max<std::size_t>(g.vertex_count(), 2);
    const std::uint32_t length = capped_walk_length(params, m);
    const double t_min = params.gamma / std::pow(m, 1.0 + params.mu / 2.0);
    const std::uint64_t budget = params.step_budget > 0 ? params.step_budget : kMaxWalkSteps;

    FindResult res{false, Tripartition(g), 0.0, 0, length, 0, 0, {}, false, false};
    WalkTally tally(g.vertex_count(), length, false);
    double t = 1.0;
    for (std::uint32_t r = 0; t >= t_min; ++r, t *= 1.0 - params.gamma) {
        const std::uint64_t need = walk_count(t, params.alpha, n, params.kappa);
        if (need > tally.walks()) {
            const std::uint64_t extra = need - tally.walks();
            if (extra > (budget - res.steps) / std::max<std::uint32_t>(length, 1)) {
                res.budget_exhausted = true;
                break;
            }
            WalkConfig cfg;
            cfg.length = length;
            cfg.walk_count = extra;
            cfg.seed = seed;
            cfg.first_walk = tally.walks();
            cfg.threads = params.threads;
            tally.merge(run_walks(g, start, cfg));
            res.walks = tally.walks();
            res.steps = res.walks * length;
        }
        res.rounds = r + 1;
        res.threshold = t;
        if (threshold_classify(g, t, tally, res.partition) > 0) {
            res.metrics = res.partition.metrics();
        }
        if (success_predicate(g, res.metrics, res.partition.classified_volume(), params, t)) {
            res.succeeded = true;
            return res;
        }
        if (abort && abort(res.steps)) {
            res.aborted = true;
            break;
        }
    }
    return res;
}

} // namespace rwcut
