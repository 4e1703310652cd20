#include "rwcut/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "rwcut/error.hpp"
#include "rwcut/harness.hpp"

namespace rwcut {

LaplacianOperator::LaplacianOperator(const WeightedGraph& g) : graph_(&g), inv_sqrt_(g.vertex_count(), 0.0) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const double d = g.degree(v);
        inv_sqrt_[v] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
    }
}

void LaplacianOperator::apply(std::span<const double> x, std::span<double> out) const {
    const std::size_t n = graph_->vertex_count();
    if (x.size() != n || out.size() != n) {
        throw InvalidInput("LaplacianOperator: vector size mismatch");
    }
    for (VertexId j = 0; j < n; ++j) {
        double ax = 0.0;
        for (const Arc& a : graph_->neighbors(j)) {
            ax += a.weight * inv_sqrt_[a.to] * x[a.to];
        }
        out[j] = x[j] - inv_sqrt_[j] * ax;
    }
}

std::vector<double> LaplacianOperator::apply(std::span<const double> x) const {
    std::vector<double> out(x.size());
    apply(x, out);
    return out;
}

std::vector<double> power_laplacian_vector(const WeightedGraph& g, VertexId start, std::uint32_t length) {
    if (start >= g.vertex_count()) {
        throw InvalidInput("power_laplacian_vector: start out of range");
    }
    if (!(g.degree(start) > 0.0)) {
        throw InvalidInput("power_laplacian_vector: start vertex is isolated");
    }
    const LaplacianOperator op(g);
    std::vector<double> q(g.vertex_count(), 0.0);
    q[start] = 1.0 / std::sqrt(g.degree(start));
    std::vector<double> next(q.size());
    for (std::uint32_t l = 0; l < length; ++l) {
        op.apply(q, next);
        for (std::size_t j = 0; j < q.size(); ++j) {
            q[j] = 0.5 * next[j];
        }
    }
    return q;
}

double rayleigh_quotient(const LaplacianOperator& op, std::span<const double> x) {
    const double norm2 = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    if (!(norm2 > 0.0)) {
        throw InvalidInput("rayleigh_quotient: zero vector");
    }
    const std::vector<double> lx = op.apply(x);
    return std::inner_product(x.begin(), x.end(), lx.begin(), 0.0) / norm2;
}

SweepCut sweep_cut_best(const WeightedGraph& g, std::span<const double> y) {
    const std::size_t n = g.vertex_count();
    if (y.size() != n) {
        throw InvalidInput("sweep_cut_best: vector size mismatch");
    }
    std::vector<VertexId> order;
    for (VertexId v = 0; v < n; ++v) {
        if (y[v] != 0.0) {
            order.push_back(v);
        }
    }
    if (order.empty()) {
        throw DegenerateInput("sweep_cut_best: y is identically zero");
    }
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        const double ya = std::abs(y[a]);
        const double yb = std::abs(y[b]);
        return ya != yb ? ya > yb : a < b;
    });

    // +1 positive, -1 negative, 0 unclassified
    std::vector<int> sign(n, 0);
    CutMetrics running;
    double volume = 0.0;
    std::size_t best_end = 0;
    CutMetrics best_metrics;
    double best_ratio = -1.0;
    double best_volume = -1.0;
    double best_t = 0.0;

    std::size_t k = 0;
    while (k < order.size()) {
        const double t = std::abs(y[order[k]]);
        std::size_t group_end = k;
        while (group_end < order.size() && std::abs(y[order[group_end]]) == t) {
            ++group_end;
        }
        for (; k < group_end; ++k) {
            const VertexId v = order[k];
            const int sv = y[v] > 0.0 ? 1 : -1;
            for (const Arc& a : g.neighbors(v)) {
                const int su = sign[a.to];
                if (su == 0) {
                    running.inc += a.weight;
                    running.cross += a.weight;
                } else {
                    running.cross -= a.weight;
                    if (su != sv) {
                        running.good += a.weight;
                    }
                }
            }
            sign[v] = sv;
            volume += g.degree(v);
        }
        running.cut = running.good + running.cross / 2.0;
        const double ratio = running.ratio();
        // t decreases along the sweep: on equal ratio and volume the later group wins
        const bool better = ratio > best_ratio || (ratio == best_ratio && volume >= best_volume);
        if (better) {
            best_ratio = ratio;
            best_volume = volume;
            best_t = t;
            best_end = group_end;
            best_metrics = running;
        }
    }

    SweepCut out{VertexSet(g), VertexSet(g), best_t, best_metrics, 0.0};
    for (std::size_t i = 0; i < best_end; ++i) {
        const VertexId v = order[i];
        (y[v] > 0.0 ? out.positive : out.negative).insert(v);
    }
    // report metrics recomputed from the sets rather than the running sums
    out.metrics = cut_metrics(g, out.positive, out.negative);
    out.ratio = out.metrics.ratio();
    return out;
}

unsigned default_power_iterations(std::size_t n) {
    const double lg = n > 1 ? std::ceil(std::log2(static_cast<double>(n))) : 1.0;
    return std::max(8u, 8u * static_cast<unsigned>(lg));
}

std::vector<double> top_laplacian_eigenvector(const WeightedGraph& g, unsigned iterations, std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    const LaplacianOperator op(g);
    std::vector<double> stationary(n);
    double snorm = 0.0;
    for (VertexId v = 0; v < n; ++v) {
        stationary[v] = std::sqrt(g.degree(v));
        snorm += g.degree(v);
    }
    snorm = std::sqrt(snorm);
    auto deflate_normalize = [&](std::vector<double>& x) {
        if (snorm > 0.0) {
            double dot = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                dot += x[j] * stationary[j];
            }
            dot /= snorm * snorm;
            for (std::size_t j = 0; j < n; ++j) {
                x[j] -= dot * stationary[j];
            }
        }
        const double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
        if (norm > 0.0) {
            for (double& v : x) {
                v /= norm;
            }
        }
    };

    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) {
        v = gauss(rng);
    }
    deflate_normalize(x);
    std::vector<double> next(n);
    for (unsigned it = 0; it < iterations; ++it) {
        op.apply(x, next);
        x.swap(next);
        deflate_normalize(x);
    }
    return x;
}

Partition trevisan_baseline(const WeightedGraph& g, unsigned power_iters, std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    std::vector<std::optional<Side>> placed(n);
    std::vector<VertexId> remaining(n);
    std::iota(remaining.begin(), remaining.end(), VertexId{0});

    for (std::uint64_t level = 0; !remaining.empty(); ++level) {
        const Subgraph sub = induced_subgraph(g, remaining);
        if (!(sub.graph.edge_weight() > 0.0)) {
            break;
        }
        const unsigned iters = power_iters > 0 ? power_iters : default_power_iterations(sub.graph.vertex_count());
        std::vector<double> y = top_laplacian_eigenvector(sub.graph, iters, derive_seed(seed, level));
        const LaplacianOperator op(sub.graph);
        for (std::size_t j = 0; j < y.size(); ++j) {
            y[j] *= op.inv_sqrt_degrees()[j];
        }
        if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) {
            break;
        }
        const SweepCut sweep = sweep_cut_best(sub.graph, y);
        if (sweep.ratio <= 0.5) {
            break;
        }
        // orientation: positive -> Left cuts edges from positive to placed Right
        // and from negative to placed Left
        double keep = 0.0;
        double flip = 0.0;
        for (VertexId local = 0; local < sub.graph.vertex_count(); ++local) {
            const bool pos = sweep.positive.contains(local);
            if (!pos && !sweep.negative.contains(local)) {
                continue;
            }
            for (const Arc& a : g.neighbors(sub.to_parent[local])) {
                if (!placed[a.to]) {
                    continue;
                }
                const bool right = *placed[a.to] == Side::Right;
                (pos == right ? keep : flip) += a.weight;
            }
        }
        const Side pos_side = keep >= flip ? Side::Left : Side::Right;
        std::vector<VertexId> next;
        for (VertexId local = 0; local < sub.graph.vertex_count(); ++local) {
            const VertexId v = sub.to_parent[local];
            if (sweep.positive.contains(local)) {
                placed[v] = pos_side;
            } else if (sweep.negative.contains(local)) {
                placed[v] = opposite(pos_side);
            } else {
                next.push_back(v);
            }
        }
        remaining.swap(next);
    }
    return greedy_extend(g, placed);
}

} // namespace rwcut
