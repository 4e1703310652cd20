#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rwcut/graph.hpp"

namespace rwcut {

/// Root of -ln((sqrt(1 - 2 phi) + sqrt(1 + 2 phi)) / 2) = psi on [0, 1/2).
/// Throws InvalidInput unless psi lies in [0, 1/8).
double solve_phi(double psi);

/**
 * Lovasz-Simonovits curve over lazy volume: vertices sorted by
 * p_j / (2 d_j) descending (ties by id), breakpoints at cumulative 2 d_j.
 * Mass on isolated vertices sits at x = 0.
 */
class LSCurve {
public:
    LSCurve() = default;
    explicit LSCurve(std::vector<std::pair<double, double>> breakpoints);

    /// Linear interpolation; x is clamped to [0, 2m].
    double operator()(double x) const;

    std::span<const std::pair<double, double>> breakpoints() const noexcept { return points_; }
    double x_max() const noexcept { return points_.empty() ? 0.0 : points_.back().first; }

private:
    std::vector<std::pair<double, double>> points_;
};

/// Throws InvalidInput if p has a negative entry or does not sum to 1 (1e-9).
LSCurve build_ls_curve(const WeightedGraph& g, std::span<const double> p);

struct ChordCheck {
    double lhs = 0.0; ///< p^l(S)
    double rhs = 0.0; ///< (I^{l-1}(x - 2 phi_S xh) + I^{l-1}(x + 2 phi_S xh)) / 2
    bool holds = false;
};

/// Evaluates the chord inequality for S with p^l one exact lazy step after
/// p_prev. `tolerance` absorbs rounding only.
ChordCheck ls_chord_check(const WeightedGraph& g, std::span<const double> p_prev, const VertexSet& s,
                          double tolerance = 1e-12);

struct CutOrBoundOptions {
    /// Walk steps allowed; when w * l exceeds it the walk count is cut down
    /// and the result is flagged as truncated. 0 means the global cap.
    std::uint64_t step_cap = 0;
    unsigned threads = 1;
    /// Keep the empirical curve of every length that was examined.
    bool record_curves = false;
};

struct CutOrBoundStats {
    double alpha = 0.0;
    double phi = 0.0;
    std::uint32_t length = 0;     ///< l = ceil(ln m / zeta)
    std::uint64_t walks = 0;      ///< walks actually run
    std::uint64_t walks_full = 0; ///< ceil(30 l^2 ln n / alpha)
    std::uint64_t prefix_cap = 0; ///< b = ceil(l / (2 (1 - 2 phi) alpha))
    std::uint64_t steps = 0;
    bool truncated = false;
    std::vector<LSCurve> curves; ///< per examined length when recorded
};

struct CutOrBoundResult {
    bool is_cut = false;
    std::vector<VertexId> set; ///< the low-conductance prefix, sorted by id
    double conductance = 0.0;
    std::uint32_t cut_length = 0; ///< walk length at which the prefix was found
    double bound = 0.0;           ///< 256 alpha for a Bound
    CutOrBoundStats stats;
};

/**
 * Advances w lazy walks from `start` one length at a time. At each length
 * l = 0..ell the vertices are ordered by empirical count / d_j (ties by id)
 * and padded with unvisited vertices in id order up to b; the first prefix
 * with conductance < phi is returned as a Cut. Prefixes with an empty side
 * volume are skipped. Otherwise reports Bound(256 alpha).
 *
 * alpha = m^{-tau}, ell = ceil(ln m / zeta), phi = solve_phi(zeta tau).
 * Throws InvalidInput unless 0 <= tau < 1, zeta > 0 and zeta tau < 1/8, or
 * when the graph has no edges.
 */
CutOrBoundResult cut_or_bound(const WeightedGraph& g, VertexId start, double tau, double zeta, std::uint64_t seed,
                              const CutOrBoundOptions& options = {});

} // namespace rwcut
