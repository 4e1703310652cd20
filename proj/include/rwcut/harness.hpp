#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "rwcut/graph.hpp"
#include "rwcut/random.hpp"

namespace rwcut {

inline constexpr std::size_t kBruteForceMaxVertices = 22;

struct ExactCut {
    double value = 0.0; ///< cut_value of `sides`
    Partition sides;
};

/// Exhaustive search with vertex 0 pinned Left. Ties go to the numerically
/// smallest assignment mask, so the witness does not depend on `threads`.
/// Throws ResourceError when n > kBruteForceMaxVertices.
ExactCut brute_force_maxcut(const WeightedGraph& g, unsigned threads = 1);

/// Visits vertices by descending degree (ties by id) and puts each on the
/// side cutting more weight to already placed neighbours; ties go Left.
Partition greedy_cut(const WeightedGraph& g);

/// Greedy completion of a partial assignment: assigned vertices keep their
/// side, the rest are placed as in greedy_cut.
Partition greedy_extend(const WeightedGraph& g, std::span<const std::optional<Side>> partial);

/// Independent fair coin per vertex.
Partition random_cut(const WeightedGraph& g, Rng& rng);

VertexSet left_side(const WeightedGraph& g, const Partition& sides);

struct PlantedInstance {
    WeightedGraph graph;
    Partition planted;
    double planted_value = 0.0;
    double target_eps = 0.0;
    double avg_degree = 0.0;
    std::uint64_t seed = 0;
};

/**
 * Random bipartition into halves, then n * avg_degree / 2 distinct unit edges:
 * each draw is a crossing pair with probability 1 - target_eps and a
 * same-side pair otherwise. Duplicate draws are rejected and redrawn.
 *
 * Throws InvalidParams for odd n, n < 2, target_eps outside [0, 0.5),
 * avg_degree < 1, or an edge count the halves cannot host.
 */
PlantedInstance gen_planted(std::size_t n, double target_eps, double avg_degree, std::uint64_t seed);

/**
 * Even cycle with extra odd chords: vertex i is joined to i + j (mod n) for
 * every j in `odd_jumps`, which keeps the graph bipartite by parity. Then
 * `noise_edges` distinct same-parity edges are added. The planted side is
 * the parity of i. Large diameter keeps walk statistics informative at
 * small sizes.
 */
PlantedInstance gen_planted_ring(std::size_t n, std::span<const std::size_t> odd_jumps, std::size_t noise_edges,
                                 std::uint64_t seed);

/// Writes `<stem>.el` (edge list) and `<stem>.json` (planted side, target
/// eps, seed, planted value).
void write_instance(const std::filesystem::path& stem, const PlantedInstance& inst);

} // namespace rwcut
