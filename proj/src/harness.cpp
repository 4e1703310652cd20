#include "rwcut/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "rwcut/error.hpp"
#include "rwcut/graph_io.hpp"
#include "rwcut/parallel.hpp"

namespace rwcut {

ExactCut brute_force_maxcut(const WeightedGraph& g, unsigned threads) {
    const std::size_t n = g.vertex_count();
    if (n > kBruteForceMaxVertices) {
        throw ResourceError("brute_force_maxcut: n = " + std::to_string(n) + " exceeds " +
                            std::to_string(kBruteForceMaxVertices));
    }
    if (n <= 1) {
        return {0.0, Partition(n, Side::Left)};
    }
    const std::vector<Edge> edges = g.edges();
    // bit k of the mask is vertex k + 1; set means Right
    const std::uint64_t masks = std::uint64_t{1} << (n - 1);
    const unsigned workers = std::max(1u, threads);
    std::vector<std::pair<double, std::uint64_t>> best(workers, {-1.0, 0});
    parallel_shards(masks, workers, [&](std::size_t shard, std::size_t begin, std::size_t end) {
        auto& b = best[shard];
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            const std::uint64_t full = mask << 1;
            double w = 0.0;
            for (const Edge& e : edges) {
                w += e.weight * static_cast<double>(((full >> e.u) ^ (full >> e.v)) & 1U);
            }
            if (w > b.first) {
                b = {w, mask};
            }
        }
    });
    auto winner = best.front();
    for (const auto& b : best) {
        if (b.first > winner.first || (b.first == winner.first && b.second < winner.second)) {
            winner = b;
        }
    }
    Partition sides(n, Side::Left);
    for (std::size_t v = 1; v < n; ++v) {
        if ((winner.second >> (v - 1)) & 1U) {
            sides[v] = Side::Right;
        }
    }
    return {cut_value(g, sides), std::move(sides)};
}

Partition greedy_extend(const WeightedGraph& g, std::span<const std::optional<Side>> partial) {
    const std::size_t n = g.vertex_count();
    if (partial.size() != n) {
        throw InvalidInput("greedy_extend: assignment size does not match graph");
    }
    std::vector<VertexId> order;
    for (VertexId v = 0; v < n; ++v) {
        if (!partial[v]) {
            order.push_back(v);
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
    std::vector<std::optional<Side>> placed(partial.begin(), partial.end());
    for (VertexId v : order) {
        double to_left = 0.0;
        double to_right = 0.0;
        for (const Arc& a : g.neighbors(v)) {
            if (placed[a.to] == Side::Left) {
                to_left += a.weight;
            } else if (placed[a.to] == Side::Right) {
                to_right += a.weight;
            }
        }
        // joining Left cuts the edges to Right neighbours
        placed[v] = to_right >= to_left ? Side::Left : Side::Right;
    }
    Partition out(n);
    for (VertexId v = 0; v < n; ++v) {
        out[v] = *placed[v];
    }
    return out;
}

Partition greedy_cut(const WeightedGraph& g) {
    const std::vector<std::optional<Side>> none(g.vertex_count());
    return greedy_extend(g, none);
}

Partition random_cut(const WeightedGraph& g, Rng& rng) {
    Partition out(g.vertex_count());
    for (auto& s : out) {
        s = (rng() >> 63) ? Side::Right : Side::Left;
    }
    return out;
}

VertexSet left_side(const WeightedGraph& g, const Partition& sides) {
    VertexSet s(g);
    for (VertexId v = 0; v < sides.size(); ++v) {
        if (sides[v] == Side::Left) {
            s.insert(v);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

namespace {

using PairSet = std::set<std::pair<VertexId, VertexId>>;

bool add_unique(PairSet& seen, std::vector<Edge>& edges, VertexId a, VertexId b) {
    if (a == b) {
        return false;
    }
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
        return false;
    }
    edges.push_back({key.first, key.second, 1.0});
    return true;
}

} // namespace

PlantedInstance gen_planted(std::size_t n, double target_eps, double avg_degree, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) {
        throw InvalidParams("gen_planted: n must be even and at least 2");
    }
    if (!(target_eps >= 0.0 && target_eps < 0.5)) {
        throw InvalidParams("gen_planted: target_eps must lie in [0, 0.5)");
    }
    if (!(avg_degree >= 1.0) || !std::isfinite(avg_degree)) {
        throw InvalidParams("gen_planted: avg_degree must be at least 1");
    }
    const std::size_t half = n / 2;
    const auto edge_target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg_degree / 2.0));
    const double crossing_pairs = static_cast<double>(half) * static_cast<double>(half);
    const double inner_pairs = static_cast<double>(half) * static_cast<double>(half - 1);
    // leave slack so rejection sampling terminates quickly
    const double expected_cross = (1.0 - target_eps) * static_cast<double>(edge_target);
    const double expected_inner = target_eps * static_cast<double>(edge_target);
    if (expected_cross > 0.5 * crossing_pairs || expected_inner > 0.5 * inner_pairs + 1.0 ||
        (target_eps > 0.0 && half < 2)) {
        throw InvalidParams("gen_planted: too many edges for n = " + std::to_string(n));
    }

    Rng rng(seed);
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Partition planted(n, Side::Right);
    for (std::size_t k = 0; k < half; ++k) {
        planted[perm[k]] = Side::Left;
    }
    const VertexId* left = perm.data();
    const VertexId* right = perm.data() + half;
    std::uniform_int_distribution<std::size_t> pick(0, half - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    PairSet seen;
    std::vector<Edge> edges;
    edges.reserve(edge_target);
    const std::size_t max_draws = 100 * edge_target + 1000;
    std::size_t draws = 0;
    while (edges.size() < edge_target) {
        if (++draws > max_draws) {
            throw InvalidParams("gen_planted: could not place distinct edges");
        }
        if (coin(rng) >= target_eps) {
            add_unique(seen, edges, left[pick(rng)], right[pick(rng)]);
        } else {
            const VertexId* side = coin(rng) < 0.5 ? left : right;
            add_unique(seen, edges, side[pick(rng)], side[pick(rng)]);
        }
    }
    PlantedInstance inst;
    inst.graph = WeightedGraph(n, edges);
    inst.planted = std::move(planted);
    inst.planted_value = cut_value(inst.graph, inst.planted);
    inst.target_eps = target_eps;
    inst.avg_degree = avg_degree;
    inst.seed = seed;
    return inst;
}

PlantedInstance gen_planted_ring(std::size_t n, std::span<const std::size_t> odd_jumps, std::size_t noise_edges,
                                 std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) {
        throw InvalidParams("gen_planted_ring: n must be even and at least 4");
    }
    PairSet seen;
    std::vector<Edge> edges;
    for (std::size_t j : odd_jumps) {
        if (j % 2 == 0 || j >= n) {
            throw InvalidParams("gen_planted_ring: jumps must be odd and below n");
        }
        for (std::size_t i = 0; i < n; ++i) {
            add_unique(seen, edges, static_cast<VertexId>(i), static_cast<VertexId>((i + j) % n));
        }
    }
    const std::size_t half = n / 2;
    if (noise_edges > half * (half - 1) / 2) {
        throw InvalidParams("gen_planted_ring: too many noise edges");
    }
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, half - 1);
    std::size_t added = 0;
    while (added < noise_edges) {
        const std::size_t parity = rng() >> 63;
        const auto a = static_cast<VertexId>(2 * pick(rng) + parity);
        const auto b = static_cast<VertexId>(2 * pick(rng) + parity);
        if (add_unique(seen, edges, a, b)) {
            ++added;
        }
    }
    PlantedInstance inst;
    inst.graph = WeightedGraph(n, edges);
    inst.planted.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        inst.planted[i] = i % 2 == 0 ? Side::Left : Side::Right;
    }
    inst.planted_value = cut_value(inst.graph, inst.planted);
    inst.target_eps = 1.0 - inst.planted_value;
    inst.avg_degree = inst.graph.total_weight() / static_cast<double>(n);
    inst.seed = seed;
    return inst;
}

void write_instance(const std::filesystem::path& stem, const PlantedInstance& inst) {
    std::filesystem::path graph_path = stem;
    graph_path += ".el";
    std::filesystem::path meta_path = stem;
    meta_path += ".json";
    write_graph(graph_path, inst.graph);

    nlohmann::ordered_json meta;
    meta["vertices"] = inst.graph.vertex_count();
    meta["edges"] = inst.graph.edge_count();
    meta["target_eps"] = inst.target_eps;
    meta["avg_degree"] = inst.avg_degree;
    meta["seed"] = inst.seed;
    meta["planted_value"] = inst.planted_value;
    std::vector<VertexId> left;
    for (VertexId v = 0; v < inst.planted.size(); ++v) {
        if (inst.planted[v] == Side::Left) {
            left.push_back(v);
        }
    }
    meta["planted_left"] = left;
    std::ofstream out(meta_path);
    if (!out) {
        throw ResourceError("cannot write " + meta_path.string());
    }
    out << meta.dump(2) << '\n';
}

} // namespace rwcut
