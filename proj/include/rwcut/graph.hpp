#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rwcut/random.hpp"

namespace rwcut {

using VertexId = std::uint32_t;

struct Edge {
    VertexId u;
    VertexId v;
    double weight;
};

struct Arc {
    VertexId to;
    double weight;
};

/**
 * Immutable weighted undirected graph in CSR form.
 *
 * Parallel input edges are merged by summing weights; self-loops are
 * rejected (the lazy half-step of the walk is virtual). Degrees are the
 * weighted degrees d_j and total_weight() is m = sum_j d_j, i.e. twice the
 * edge-weight total. Every vertex also carries a prefix-sum table over its
 * arc weights so that a weighted neighbour can be drawn by binary search.
 */
class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Throws InvalidInput on self-loops, non-positive/non-finite weights or
    /// out-of-range endpoints.
    WeightedGraph(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return degrees_.size(); }
    std::size_t edge_count() const noexcept { return arcs_.size() / 2; }

    std::span<const Arc> neighbors(VertexId v) const noexcept {
        return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
    }
    /// cumulative[k] = sum of the first k+1 arc weights of v.
    std::span<const double> cumulative_weights(VertexId v) const noexcept {
        return {cumulative_.data() + offsets_[v], cumulative_.data() + offsets_[v + 1]};
    }

    double degree(VertexId v) const noexcept { return degrees_[v]; }
    std::span<const double> degrees() const noexcept { return degrees_; }

    /// m = sum of weighted degrees.
    double total_weight() const noexcept { return total_weight_; }
    /// Sum of edge weights, m / 2.
    double edge_weight() const noexcept { return total_weight_ / 2.0; }
    double max_degree() const noexcept { return max_degree_; }

    /// Each undirected edge once, u < v, sorted.
    std::vector<Edge> edges() const;

    /// Draws a neighbour of v with probability proportional to arc weight.
    /// `unit` must lie in [0, 1). v must have positive degree.
    VertexId neighbor_at(VertexId v, double unit) const noexcept;

    bool operator==(const WeightedGraph& other) const;

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<Arc> arcs_;
    std::vector<double> cumulative_;
    std::vector<double> degrees_;
    double total_weight_ = 0.0;
    double max_degree_ = 0.0;
};

/// Induced subgraph plus the map back to the parent's vertex ids.
struct Subgraph {
    WeightedGraph graph;
    std::vector<VertexId> to_parent;
};

/// `vertices` must be distinct; local id k corresponds to vertices[k].
Subgraph induced_subgraph(const WeightedGraph& g, std::span<const VertexId> vertices);

/// Membership set over the vertices of one graph with a cached volume.
class VertexSet {
public:
    explicit VertexSet(const WeightedGraph& g);
    VertexSet(const WeightedGraph& g, std::span<const VertexId> members);

    bool contains(VertexId v) const { return member_[v] != 0; }
    void insert(VertexId v);
    void erase(VertexId v);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::size_t universe_size() const noexcept { return member_.size(); }

    /// vol(S) = sum of member degrees.
    double volume() const noexcept { return volume_; }
    /// vol'(S) = 2 vol(S), the volume with the lazy self-loops counted.
    double lazy_volume() const noexcept { return 2.0 * volume_; }
    double recompute_volume() const;

    std::vector<VertexId> members() const;
    VertexSet complement() const;

private:
    const WeightedGraph* graph_;
    std::vector<std::uint8_t> member_;
    std::size_t size_ = 0;
    double volume_ = 0.0;
};

/// Edge-weight totals of a (partial) two-sided classification.
struct CutMetrics {
    double good = 0.0;  ///< weight of A-B edges
    double cross = 0.0; ///< weight of edges with exactly one endpoint in A u B
    double inc = 0.0;   ///< weight of edges touching A u B
    double cut = 0.0;   ///< good + cross / 2

    /// cut / inc, 0 when nothing is incident.
    double ratio() const noexcept { return inc > 0.0 ? cut / inc : 0.0; }
};

CutMetrics cut_metrics(const WeightedGraph& g, const VertexSet& a, const VertexSet& b);

/// Lazy-walk conductance: w(S, S^c) / min(2 vol S, 2 vol S^c).
double conductance(const WeightedGraph& g, const VertexSet& s);

/// Fraction of edge weight crossing (left, V \ left); 0 on an edgeless graph.
double cut_value(const WeightedGraph& g, const VertexSet& left);

enum class Side : std::uint8_t { Left = 0, Right = 1 };

inline Side opposite(Side s) noexcept { return s == Side::Left ? Side::Right : Side::Left; }

using Partition = std::vector<Side>;

/// Same as cut_value, on a full side assignment.
double cut_value(const WeightedGraph& g, const Partition& sides);
/// Absolute crossing edge weight.
double cut_weight(const WeightedGraph& g, const Partition& sides);

enum class TriSide : std::uint8_t { Unclassified = 0, Even = 1, Odd = 2 };

/**
 * Even / Odd / Unclassified assignment. A vertex may be classified once;
 * attempts to reclassify throw InvalidInput.
 */
class Tripartition {
public:
    explicit Tripartition(const WeightedGraph& g);

    TriSide side(VertexId v) const { return sides_[v]; }
    bool classified(VertexId v) const { return sides_[v] != TriSide::Unclassified; }
    void classify(VertexId v, TriSide side);

    std::size_t classified_count() const noexcept { return classified_count_; }
    double classified_volume() const noexcept { return classified_volume_; }
    std::size_t vertex_count() const noexcept { return sides_.size(); }

    VertexSet even_set() const;
    VertexSet odd_set() const;
    std::vector<VertexId> unclassified() const;

    /// Recomputed from the adjacency of the classified vertices.
    CutMetrics metrics() const;

private:
    const WeightedGraph* graph_;
    std::vector<TriSide> sides_;
    std::size_t classified_count_ = 0;
    double classified_volume_ = 0.0;
};

/// Samples vertex i with probability d_i / m.
class DegreeSampler {
public:
    explicit DegreeSampler(const WeightedGraph& g);
    VertexId operator()(Rng& rng) const;

private:
    std::vector<double> prefix_;
};

/// One-shot form of DegreeSampler. Throws InvalidInput when m = 0.
VertexId sample_vertex_by_degree(const WeightedGraph& g, Rng& rng);

} // namespace rwcut
