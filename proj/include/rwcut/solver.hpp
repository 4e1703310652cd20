#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rwcut/graph.hpp"

namespace rwcut {

struct SolverOptions {
    double delta = 0.05;
    double gamma = 0.05;
    double kappa = 8.0;
    double c_vol = 1.0;
    /// Walk steps one Find probe may spend.
    std::uint64_t find_budget = 2'000'000;
    /// Walk steps one CutOrBound call may spend (walk count is cut down beyond it).
    std::uint64_t cob_step_cap = 5'000'000;
    /// Probes per level; 0 means ceil(ln n).
    unsigned probes = 0;
    unsigned threads = 1;
    /// Return the greedy cut when it beats the walk-based one.
    bool greedy_floor = true;
};

struct LevelLog {
    std::uint32_t sweep = 0; ///< index r of eps_r in the outer sweep
    std::uint32_t level = 0;
    std::string branch;      ///< tripartition | low-conductance | brute-force | trivial | fallback
    std::size_t vertices = 0;
    double edge_weight = 0.0;
    double eps = 0.0;
    double threshold = 0.0;
    double classified_volume = 0.0;
    double xi = 0.0;
    double conductance = 0.0;
    std::uint64_t steps = 0;
};

struct SolveReport {
    std::string algorithm;
    std::uint64_t seed = 0;
    Partition sides;
    double cut_value = 0.0;
    double walk_cut_value = 0.0; ///< value before the greedy floor
    double greedy_value = 0.0;
    bool greedy_used = false;
    std::vector<LevelLog> levels;
    std::uint64_t walks = 0;
    std::uint64_t steps = 0;
    double wall_seconds = 0.0; ///< not serialized

    /// JSON text. Wall time is left out so that reports are reproducible.
    std::string to_json(int indent = 2) const;
};

/**
 * Threshold-cut recursion with an eps sweep: for 1 - eps_r = (1 - gamma)^r
 * down to 1/2, run the recursion with (eps_r, mu, alpha = 1) and keep the
 * best cut. Each level samples probe starts by degree, takes the first
 * successful Find (fewest walk steps, ties by probe index), puts Even/Odd
 * on a fair coin's side, sets eps' = eps / xi and recurses on the
 * unclassified vertices. Remainders are placed greedily.
 */
SolveReport simple_solve(const WeightedGraph& g, double mu, const SolverOptions& opts, std::uint64_t seed);

/**
 * Decomposition solver: CutOrBound probes with alpha = m^{-tau} and walk
 * length l(eps1, mu1); a low-conductance set is solved by simple_solve(mu2)
 * and joined in its better orientation, otherwise one Find round with
 * (eps1, mu1, alpha = min(1, 512 m^{-tau})) classifies vertices. eps1 NaN
 * selects eps_bar(mu1). Throws InvalidParams for an invalid (b, mu1).
 */
SolveReport balance_solve(const WeightedGraph& g, double b, double mu1, double eps1, const SolverOptions& opts,
                          std::uint64_t seed);

inline constexpr double kDefaultEps1 = std::numeric_limits<double>::quiet_NaN();

} // namespace rwcut
