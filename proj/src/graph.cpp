#include "rwcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwcut/error.hpp"

namespace rwcut {

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::span<const Edge> edges) {
    std::vector<Edge> sorted;
    sorted.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u >= vertex_count || e.v >= vertex_count) {
            throw InvalidInput("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
        }
        if (e.u == e.v) {
            throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw InvalidInput("edge weight must be positive and finite");
        }
        sorted.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
    }
    // stable so that merged weights are summed in input order
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    std::vector<Edge> merged;
    merged.reserve(sorted.size());
    for (const Edge& e : sorted) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
            merged.back().weight += e.weight;
        } else {
            merged.push_back(e);
        }
    }

    std::vector<std::size_t> count(vertex_count, 0);
    for (const Edge& e : merged) {
        ++count[e.u];
        ++count[e.v];
    }
    offsets_.assign(vertex_count + 1, 0);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        offsets_[v + 1] = offsets_[v] + count[v];
    }
    arcs_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // merged is sorted by (u, v): filling in this order leaves every list sorted by neighbour
    for (const Edge& e : merged) {
        arcs_[fill[e.u]++] = {e.v, e.weight};
    }
    for (const Edge& e : merged) {
        arcs_[fill[e.v]++] = {e.u, e.weight};
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        std::sort(arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                  [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }

    cumulative_.resize(arcs_.size());
    degrees_.assign(vertex_count, 0.0);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        double acc = 0.0;
        for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) {
            acc += arcs_[k].weight;
            cumulative_[k] = acc;
        }
        degrees_[v] = acc;
        total_weight_ += acc;
        max_degree_ = std::max(max_degree_, acc);
    }
}

std::vector<Edge> WeightedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u) {
        for (const Arc& a : neighbors(u)) {
            if (u < a.to) {
                out.push_back({u, a.to, a.weight});
            }
        }
    }
    return out;
}

VertexId WeightedGraph::neighbor_at(VertexId v, double unit) const noexcept {
    const auto cum = cumulative_weights(v);
    const double target = unit * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    if (it == cum.end()) {
        --it;
    }
    return arcs_[offsets_[v] + static_cast<std::size_t>(it - cum.begin())].to;
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
    if (vertex_count() != other.vertex_count() || offsets_ != other.offsets_) {
        return false;
    }
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
        if (arcs_[k].to != other.arcs_[k].to || arcs_[k].weight != other.arcs_[k].weight) {
            return false;
        }
    }
    return true;
}

Subgraph induced_subgraph(const WeightedGraph& g, std::span<const VertexId> vertices) {
    constexpr VertexId kAbsent = ~VertexId{0};
    std::vector<VertexId> local(g.vertex_count(), kAbsent);
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (vertices[k] >= g.vertex_count()) {
            throw InvalidInput("induced_subgraph: vertex out of range");
        }
        if (local[vertices[k]] != kAbsent) {
            throw InvalidInput("induced_subgraph: duplicate vertex");
        }
        local[vertices[k]] = static_cast<VertexId>(k);
    }
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        const VertexId u = vertices[k];
        for (const Arc& a : g.neighbors(u)) {
            const VertexId lv = local[a.to];
            if (lv != kAbsent && u < a.to) {
                edges.push_back({static_cast<VertexId>(k), lv, a.weight});
            }
        }
    }
    return {WeightedGraph(vertices.size(), edges), std::vector<VertexId>(vertices.begin(), vertices.end())};
}

// ---------------------------------------------------------------------------

VertexSet::VertexSet(const WeightedGraph& g) : graph_(&g), member_(g.vertex_count(), 0) {}

VertexSet::VertexSet(const WeightedGraph& g, std::span<const VertexId> members) : VertexSet(g) {
    for (VertexId v : members) {
        insert(v);
    }
}

void VertexSet::insert(VertexId v) {
    if (v >= member_.size()) {
        throw InvalidInput("VertexSet: vertex out of range");
    }
    if (!member_[v]) {
        member_[v] = 1;
        ++size_;
        volume_ += graph_->degree(v);
    }
}

void VertexSet::erase(VertexId v) {
    if (v < member_.size() && member_[v]) {
        member_[v] = 0;
        --size_;
        volume_ -= graph_->degree(v);
    }
}

double VertexSet::recompute_volume() const {
    double vol = 0.0;
    for (VertexId v = 0; v < member_.size(); ++v) {
        if (member_[v]) {
            vol += graph_->degree(v);
        }
    }
    return vol;
}

std::vector<VertexId> VertexSet::members() const {
    std::vector<VertexId> out;
    out.reserve(size_);
    for (VertexId v = 0; v < member_.size(); ++v) {
        if (member_[v]) {
            out.push_back(v);
        }
    }
    return out;
}

VertexSet VertexSet::complement() const {
    VertexSet out(*graph_);
    for (VertexId v = 0; v < member_.size(); ++v) {
        if (!member_[v]) {
            out.insert(v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

CutMetrics cut_metrics(const WeightedGraph& g, const VertexSet& a, const VertexSet& b) {
    CutMetrics m;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (a.contains(u) && b.contains(u)) {
            throw InvalidInput("cut_metrics: sets overlap at vertex " + std::to_string(u));
        }
    }
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        const bool ua = a.contains(u);
        const bool ub = b.contains(u);
        for (const Arc& arc : g.neighbors(u)) {
            if (arc.to < u) {
                continue;
            }
            const bool va = a.contains(arc.to);
            const bool vb = b.contains(arc.to);
            const bool u_in = ua || ub;
            const bool v_in = va || vb;
            if (!u_in && !v_in) {
                continue;
            }
            m.inc += arc.weight;
            if (u_in != v_in) {
                m.cross += arc.weight;
            } else if ((ua && vb) || (ub && va)) {
                m.good += arc.weight;
            }
        }
    }
    m.cut = m.good + m.cross / 2.0;
    return m;
}

double conductance(const WeightedGraph& g, const VertexSet& s) {
    if (s.empty() || s.size() == g.vertex_count()) {
        throw InvalidInput("conductance: set must be a nonempty proper subset");
    }
    double boundary = 0.0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (!s.contains(u)) {
            continue;
        }
        for (const Arc& a : g.neighbors(u)) {
            if (!s.contains(a.to)) {
                boundary += a.weight;
            }
        }
    }
    const double vol = s.recompute_volume();
    const double denom = 2.0 * std::min(vol, g.total_weight() - vol);
    if (denom <= 0.0) {
        return 0.0;
    }
    return boundary / denom;
}

double cut_value(const WeightedGraph& g, const VertexSet& left) {
    if (g.edge_weight() <= 0.0) {
        return 0.0;
    }
    double crossing = 0.0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (const Arc& a : g.neighbors(u)) {
            if (u < a.to && left.contains(u) != left.contains(a.to)) {
                crossing += a.weight;
            }
        }
    }
    return crossing / g.edge_weight();
}

double cut_weight(const WeightedGraph& g, const Partition& sides) {
    if (sides.size() != g.vertex_count()) {
        throw InvalidInput("partition size does not match graph");
    }
    double crossing = 0.0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (const Arc& a : g.neighbors(u)) {
            if (u < a.to && sides[u] != sides[a.to]) {
                crossing += a.weight;
            }
        }
    }
    return crossing;
}

double cut_value(const WeightedGraph& g, const Partition& sides) {
    const double w = cut_weight(g, sides);
    return g.edge_weight() > 0.0 ? w / g.edge_weight() : 0.0;
}

// ---------------------------------------------------------------------------

Tripartition::Tripartition(const WeightedGraph& g)
    : graph_(&g), sides_(g.vertex_count(), TriSide::Unclassified) {}

void Tripartition::classify(VertexId v, TriSide side) {
    if (v >= sides_.size()) {
        throw InvalidInput("Tripartition: vertex out of range");
    }
    if (side == TriSide::Unclassified) {
        throw InvalidInput("Tripartition: cannot unclassify");
    }
    if (sides_[v] != TriSide::Unclassified) {
        throw InvalidInput("Tripartition: vertex " + std::to_string(v) + " already classified");
    }
    sides_[v] = side;
    ++classified_count_;
    classified_volume_ += graph_->degree(v);
}

VertexSet Tripartition::even_set() const {
    VertexSet s(*graph_);
    for (VertexId v = 0; v < sides_.size(); ++v) {
        if (sides_[v] == TriSide::Even) {
            s.insert(v);
        }
    }
    return s;
}

VertexSet Tripartition::odd_set() const {
    VertexSet s(*graph_);
    for (VertexId v = 0; v < sides_.size(); ++v) {
        if (sides_[v] == TriSide::Odd) {
            s.insert(v);
        }
    }
    return s;
}

std::vector<VertexId> Tripartition::unclassified() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < sides_.size(); ++v) {
        if (sides_[v] == TriSide::Unclassified) {
            out.push_back(v);
        }
    }
    return out;
}

CutMetrics Tripartition::metrics() const {
    CutMetrics m;
    for (VertexId u = 0; u < sides_.size(); ++u) {
        const TriSide su = sides_[u];
        if (su == TriSide::Unclassified) {
            continue;
        }
        for (const Arc& a : graph_->neighbors(u)) {
            const TriSide sv = sides_[a.to];
            if (sv == TriSide::Unclassified) {
                m.inc += a.weight;
                m.cross += a.weight;
            } else if (u < a.to) {
                m.inc += a.weight;
                if (su != sv) {
                    m.good += a.weight;
                }
            }
        }
    }
    m.cut = m.good + m.cross / 2.0;
    return m;
}

// ---------------------------------------------------------------------------

DegreeSampler::DegreeSampler(const WeightedGraph& g) : prefix_(g.vertex_count()) {
    double acc = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        acc += g.degree(v);
        prefix_[v] = acc;
    }
    if (!(acc > 0.0)) {
        throw InvalidInput("sample_vertex_by_degree: graph has no edges");
    }
}

VertexId DegreeSampler::operator()(Rng& rng) const {
    const double target = to_unit(rng()) * prefix_.back();
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), target);
    if (it == prefix_.end()) {
        --it;
    }
    return static_cast<VertexId>(it - prefix_.begin());
}

VertexId sample_vertex_by_degree(const WeightedGraph& g, Rng& rng) {
    return DegreeSampler(g)(rng);
}

} // namespace rwcut
