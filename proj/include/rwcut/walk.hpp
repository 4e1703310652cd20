#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rwcut/graph.hpp"
#include "rwcut/random.hpp"

namespace rwcut {

inline constexpr std::uint32_t kMaxWalkLength = 200;
inline constexpr std::uint64_t kMaxWalkSteps = 1'000'000'000ULL;
/// Cap on n * (length + 1) entries kept by the exact distribution oracle.
inline constexpr std::uint64_t kMaxExactEntries = 50'000'000ULL;

struct WalkConfig {
    std::uint32_t length = 0;
    std::uint64_t walk_count = 1;
    bool record_per_length = false;
    std::uint64_t seed = 0;
    /// Absolute index of the first walk. Walk k always uses stream (seed, k),
    /// so topping up a tally with first_walk = tally.walks() is equivalent to
    /// having run all walks at once.
    std::uint64_t first_walk = 0;
    unsigned threads = 1;
};

/// Endpoint counts split by hop parity, at the final length and optionally
/// at every intermediate length.
class WalkTally {
public:
    WalkTally() = default;
    WalkTally(std::size_t vertex_count, std::uint32_t length, bool per_length);

    std::size_t vertex_count() const noexcept { return n_; }
    std::uint32_t length() const noexcept { return length_; }
    bool per_length() const noexcept { return per_length_; }
    std::uint64_t walks() const noexcept { return walks_; }

    std::uint64_t even(VertexId j) const { return even_[slot(length_, j)]; }
    std::uint64_t odd(VertexId j) const { return odd_[slot(length_, j)]; }
    /// Requires per_length() unless l == length().
    std::uint64_t even_at(std::uint32_t l, VertexId j) const { return even_[slot(l, j)]; }
    std::uint64_t odd_at(std::uint32_t l, VertexId j) const { return odd_[slot(l, j)]; }
    std::uint64_t count_at(std::uint32_t l, VertexId j) const { return even_at(l, j) + odd_at(l, j); }

    void record(std::uint32_t l, VertexId j, bool odd_parity) {
        auto& bucket = odd_parity ? odd_ : even_;
        ++bucket[slot(l, j)];
    }
    void add_walk() noexcept { ++walks_; }

    /// Sums counts; shapes must match.
    void merge(const WalkTally& other);

    bool operator==(const WalkTally& other) const = default;

private:
    std::size_t slot(std::uint32_t l, VertexId j) const;

    std::size_t n_ = 0;
    std::uint32_t length_ = 0;
    bool per_length_ = false;
    std::uint64_t walks_ = 0;
    std::vector<std::uint64_t> even_;
    std::vector<std::uint64_t> odd_;
};

/**
 * Runs cfg.walk_count lazy walks of cfg.length steps from `start`. Each step
 * stays put with probability 1/2, otherwise moves along an arc chosen with
 * probability proportional to its weight and flips the hop parity. A
 * degree-0 start walks in place. Results depend only on (graph, start,
 * length, seed, walk index range), never on cfg.threads.
 *
 * Throws InvalidInput for a bad start or length > kMaxWalkLength and
 * ResourceError when walk_count * length > kMaxWalkSteps.
 */
WalkTally run_walks(const WeightedGraph& g, VertexId start, const WalkConfig& cfg);

/// (even_j - odd_j) / (d_j * walks); 0 for isolated vertices or an empty tally.
double signed_estimate(const WalkTally& tally, const WeightedGraph& g, VertexId j);

/// Diagnostic dump, one "vertex length even odd" line per nonzero entry.
void write_tally(std::ostream& out, const WalkTally& tally);

/**
 * A batch of walks advanced in lockstep, one length at a time. Walk k uses
 * the same stream as in run_walks, so after l steps the positions agree
 * with run_walks at length l.
 */
class WalkBatch {
public:
    WalkBatch(const WeightedGraph& g, VertexId start, std::uint64_t count, std::uint64_t seed);

    void step(unsigned threads = 1);

    std::uint32_t length() const noexcept { return length_; }
    std::uint64_t size() const noexcept { return positions_.size(); }
    std::span<const VertexId> positions() const noexcept { return positions_; }
    std::span<const std::uint8_t> parities() const noexcept { return parities_; }

private:
    const WeightedGraph* graph_;
    std::uint32_t length_ = 0;
    std::vector<VertexId> positions_;
    std::vector<std::uint8_t> parities_;
    std::vector<SplitMix64> streams_;
};

/**
 * Exact lazy-walk distribution from one start vertex.
 * p^l(j) = Pr[at j after l steps]; s^l(j) = sum_h (-1)^h Pr[at j after l steps with h hops].
 */
struct ExactWalkDist {
    std::uint32_t length = 0;
    bool per_length = true;
    std::vector<std::vector<double>> p; ///< p[l] when per_length, otherwise only p[0] = p^length
    std::vector<std::vector<double>> s;

    std::span<const double> p_at(std::uint32_t l) const;
    std::span<const double> s_at(std::uint32_t l) const;
    std::span<const double> final_p() const { return p.back(); }
    std::span<const double> final_s() const { return s.back(); }
};

/// Throws InvalidInput for a bad start, ResourceError when n * (length + 1)
/// exceeds kMaxExactEntries or length > kMaxWalkLength.
ExactWalkDist exact_walk_distribution(const WeightedGraph& g, VertexId start, std::uint32_t length,
                                      bool per_length = true);

/// One exact lazy step: out(j) = x(j)/2 +- sum_k x(k) w_kj / (2 d_k), with
/// the minus sign when `flip_sign` (the signed vector). Isolated vertices keep
/// their mass.
std::vector<double> exact_lazy_step(const WeightedGraph& g, std::span<const double> x, bool flip_sign = false);

} // namespace rwcut
