#include "rwcut/walk.hpp"

#include <ostream>
#include <string>

#include "rwcut/error.hpp"
#include "rwcut/parallel.hpp"

namespace rwcut {
namespace {

constexpr std::uint64_t kLow53 = (std::uint64_t{1} << 53) - 1;

// One lazy step. The top bit of the draw is the lazy coin; the low 53 bits
// pick the arc.
inline VertexId lazy_step(const WeightedGraph& g, VertexId at, SplitMix64& rng, std::uint8_t& parity) {
    const std::uint64_t bits = rng();
    if ((bits >> 63) == 0 || g.degree(at) <= 0.0) {
        return at;
    }
    parity ^= 1;
    return g.neighbor_at(at, static_cast<double>(bits & kLow53) * 0x1.0p-53);
}

void check_start(const WeightedGraph& g, VertexId start) {
    if (start >= g.vertex_count()) {
        throw InvalidInput("walk start " + std::to_string(start) + " out of range");
    }
}

} // namespace

WalkTally::WalkTally(std::size_t vertex_count, std::uint32_t length, bool per_length)
    : n_(vertex_count), length_(length), per_length_(per_length) {
    const std::size_t layers = per_length ? std::size_t{length} + 1 : 1;
    even_.assign(layers * n_, 0);
    odd_.assign(layers * n_, 0);
}

std::size_t WalkTally::slot(std::uint32_t l, VertexId j) const {
    if (per_length_) {
        return std::size_t{l} * n_ + j;
    }
    if (l != length_) {
        throw InvalidInput("WalkTally: per-length counts were not recorded");
    }
    return j;
}

void WalkTally::merge(const WalkTally& other) {
    if (other.n_ != n_ || other.length_ != length_ || other.per_length_ != per_length_) {
        throw InvalidInput("WalkTally::merge: shape mismatch");
    }
    for (std::size_t k = 0; k < even_.size(); ++k) {
        even_[k] += other.even_[k];
        odd_[k] += other.odd_[k];
    }
    walks_ += other.walks_;
}

WalkTally run_walks(const WeightedGraph& g, VertexId start, const WalkConfig& cfg) {
    check_start(g, start);
    if (cfg.length > kMaxWalkLength) {
        throw InvalidInput("walk length " + std::to_string(cfg.length) + " exceeds cap");
    }
    if (cfg.walk_count > 0 && cfg.length > 0 && cfg.walk_count > kMaxWalkSteps / cfg.length) {
        throw ResourceError("walk request exceeds the aggregate step cap");
    }
    const unsigned workers = std::max(1u, cfg.threads);
    std::vector<WalkTally> partial(workers, WalkTally(g.vertex_count(), cfg.length, cfg.record_per_length));
    parallel_shards(cfg.walk_count, workers, [&](std::size_t shard, std::size_t begin, std::size_t end) {
        WalkTally& tally = partial[shard];
        for (std::size_t k = begin; k < end; ++k) {
            SplitMix64 rng(derive_seed(cfg.seed, cfg.first_walk + k));
            VertexId at = start;
            std::uint8_t parity = 0;
            if (cfg.record_per_length) {
                tally.record(0, at, false);
            }
            for (std::uint32_t l = 1; l <= cfg.length; ++l) {
                at = lazy_step(g, at, rng, parity);
                if (cfg.record_per_length) {
                    tally.record(l, at, parity != 0);
                }
            }
            if (!cfg.record_per_length) {
                tally.record(cfg.length, at, parity != 0);
            }
            tally.add_walk();
        }
    });
    WalkTally total(g.vertex_count(), cfg.length, cfg.record_per_length);
    for (const auto& t : partial) {
        total.merge(t);
    }
    return total;
}

double signed_estimate(const WalkTally& tally, const WeightedGraph& g, VertexId j) {
    const double d = g.degree(j);
    if (d <= 0.0 || tally.walks() == 0) {
        return 0.0;
    }
    const double diff = static_cast<double>(tally.even(j)) - static_cast<double>(tally.odd(j));
    return diff / (d * static_cast<double>(tally.walks()));
}

void write_tally(std::ostream& out, const WalkTally& tally) {
    const std::uint32_t first = tally.per_length() ? 0 : tally.length();
    for (std::uint32_t l = first; l <= tally.length(); ++l) {
        for (VertexId j = 0; j < tally.vertex_count(); ++j) {
            const auto e = tally.even_at(l, j);
            const auto o = tally.odd_at(l, j);
            if (e != 0 || o != 0) {
                out << j << ' ' << l << ' ' << e << ' ' << o << '\n';
            }
        }
    }
}

// ---------------------------------------------------------------------------

WalkBatch::WalkBatch(const WeightedGraph& g, VertexId start, std::uint64_t count, std::uint64_t seed)
    : graph_(&g), positions_(count, start), parities_(count, 0) {
    check_start(g, start);
    streams_.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        streams_.emplace_back(derive_seed(seed, k));
    }
}

void WalkBatch::step(unsigned threads) {
    parallel_shards(positions_.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            positions_[k] = lazy_step(*graph_, positions_[k], streams_[k], parities_[k]);
        }
    });
    ++length_;
}

// ---------------------------------------------------------------------------

std::span<const double> ExactWalkDist::p_at(std::uint32_t l) const {
    if (per_length) {
        return p.at(l);
    }
    if (l != length) {
        throw InvalidInput("ExactWalkDist: intermediate lengths were not kept");
    }
    return p.back();
}

std::span<const double> ExactWalkDist::s_at(std::uint32_t l) const {
    if (per_length) {
        return s.at(l);
    }
    if (l != length) {
        throw InvalidInput("ExactWalkDist: intermediate lengths were not kept");
    }
    return s.back();
}

std::vector<double> exact_lazy_step(const WeightedGraph& g, std::span<const double> x, bool flip_sign) {
    const std::size_t n = g.vertex_count();
    if (x.size() != n) {
        throw InvalidInput("exact_lazy_step: vector size mismatch");
    }
    const double move_sign = flip_sign ? -1.0 : 1.0;
    std::vector<double> out(n, 0.0);
    for (VertexId k = 0; k < n; ++k) {
        const double mass = x[k];
        if (mass == 0.0) {
            continue;
        }
        const double d = g.degree(k);
        if (d <= 0.0) {
            out[k] += mass;
            continue;
        }
        out[k] += 0.5 * mass;
        const double per_weight = move_sign * 0.5 * mass / d;
        for (const Arc& a : g.neighbors(k)) {
            out[a.to] += per_weight * a.weight;
        }
    }
    return out;
}

ExactWalkDist exact_walk_distribution(const WeightedGraph& g, VertexId start, std::uint32_t length, bool per_length) {
    check_start(g, start);
    if (length > kMaxWalkLength) {
        throw ResourceError("exact_walk_distribution: length exceeds cap");
    }
    const std::uint64_t layers = per_length ? std::uint64_t{length} + 1 : 2;
    if (static_cast<std::uint64_t>(g.vertex_count()) * layers > kMaxExactEntries) {
        throw ResourceError("exact_walk_distribution: graph too large for the exact oracle");
    }
    ExactWalkDist dist;
    dist.length = length;
    dist.per_length = per_length;
    std::vector<double> p(g.vertex_count(), 0.0);
    p[start] = 1.0;
    std::vector<double> s = p;
    if (per_length) {
        dist.p.push_back(p);
        dist.s.push_back(s);
    }
    for (std::uint32_t l = 1; l <= length; ++l) {
        p = exact_lazy_step(g, p, false);
        s = exact_lazy_step(g, s, true);
        if (per_length) {
            dist.p.push_back(p);
            dist.s.push_back(s);
        }
    }
    if (!per_length) {
        dist.p.push_back(std::move(p));
        dist.s.push_back(std::move(s));
    }
    return dist;
}

} // namespace rwcut
