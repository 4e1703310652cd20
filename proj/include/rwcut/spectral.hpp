#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwcut/graph.hpp"
#include "rwcut/random.hpp"

namespace rwcut {

/// x -> x - D^{-1/2} A D^{-1/2} x, matrix-free. Rows of isolated vertices
/// act as the identity.
class LaplacianOperator {
public:
    explicit LaplacianOperator(const WeightedGraph& g);

    void apply(std::span<const double> x, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> x) const;

    const WeightedGraph& graph() const noexcept { return *graph_; }
    /// 1/sqrt(d_j), 0 for isolated vertices.
    std::span<const double> inv_sqrt_degrees() const noexcept { return inv_sqrt_; }

private:
    const WeightedGraph* graph_;
    std::vector<double> inv_sqrt_;
};

/// 2^{-l} L^l (e_start / sqrt(d_start)). Throws InvalidInput when d_start = 0.
std::vector<double> power_laplacian_vector(const WeightedGraph& g, VertexId start, std::uint32_t length);

/// x^T L x / x^T x. Throws InvalidInput on a zero vector.
double rayleigh_quotient(const LaplacianOperator& op, std::span<const double> x);

struct SweepCut {
    VertexSet positive; ///< { j : y_j >= t }
    VertexSet negative; ///< { j : y_j <= -t }
    double threshold = 0.0;
    CutMetrics metrics;
    double ratio = 0.0;
};

/**
 * Best threshold tripartition of y over t in { |y_j| > 0 }: maximizes
 * cut / inc, ties to larger classified volume, then smaller t.
 * Throws DegenerateInput when y is identically zero.
 */
SweepCut sweep_cut_best(const WeightedGraph& g, std::span<const double> y);

/// 8 * ceil(log2 n), at least 8.
unsigned default_power_iterations(std::size_t n);

/// Power method for the top eigenvector of L from a random start, deflated
/// against D^{1/2} 1 every iteration. Returns a unit vector.
std::vector<double> top_laplacian_eigenvector(const WeightedGraph& g, unsigned iterations, std::uint64_t seed);

/**
 * Recursive spectral partition: on the unclassified remainder take y =
 * D^{-1/2} x for the approximate top eigenvector x, keep the best sweep
 * tripartition, orient it against already placed vertices, recurse. Stops
 * once the best ratio is at most 1/2 and places the rest greedily.
 * power_iters = 0 selects default_power_iterations.
 */
Partition trevisan_baseline(const WeightedGraph& g, unsigned power_iters = 0, std::uint64_t seed = 0);

} // namespace rwcut
