#include "rwcut/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>

#include <json.hpp>

#include "rwcut/error.hpp"
#include "rwcut/harness.hpp"
#include "rwcut/local_partition.hpp"
#include "rwcut/parallel.hpp"
#include "rwcut/threshold.hpp"
#include "rwcut/tradeoff.hpp"

namespace rwcut {
namespace {

using Placement = std::vector<std::optional<Side>>;

constexpr std::size_t kFloorVertices = 8;
constexpr double kFloorWeight = 16.0;

std::vector<VertexId> sample_starts(const WeightedGraph& g, unsigned probes, std::uint64_t seed) {
    const auto count = probes > 0 ? probes
                                  : static_cast<unsigned>(std::max(
                                        1.0, std::ceil(std::log(static_cast<double>(g.vertex_count())))));
    const DegreeSampler sampler(g);
    Rng rng(seed);
    std::vector<VertexId> out(count);
    for (auto& v : out) {
        v = sampler(rng);
    }
    return out;
}

struct ProbeRound {
    std::optional<FindResult> winner;
    std::uint64_t steps = 0;
    std::uint64_t walks = 0;
};

// Runs one Find per start. The winner is the success with the fewest walk
// steps (ties by probe index); a probe is abandoned once it has spent more
// than the best success so far, which cannot change the winner. Work is
// charged as if all probes ran side by side until the winner finished, so
// the accounting does not depend on the thread count either.
ProbeRound run_probes(const WeightedGraph& g, const std::vector<VertexId>& starts, AlgoParams params,
                      std::uint64_t seed, unsigned threads) {
    params.threads = 1;
    std::vector<std::optional<FindResult>> results(starts.size());
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    parallel_shards(starts.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto abort = [&best](std::uint64_t steps) { return steps > best.load(); };
            FindResult r = find_threshold(g, starts[i], params, derive_seed(seed, i), abort);
            if (r.succeeded) {
                std::uint64_t cur = best.load();
                while (r.steps < cur && !best.compare_exchange_weak(cur, r.steps)) {
                }
            }
            results[i] = std::move(r);
        }
    });
    std::optional<std::size_t> win;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i]->succeeded && (!win || results[i]->steps < results[*win]->steps)) {
            win = i;
        }
    }
    ProbeRound out;
    const std::uint64_t cap = win ? results[*win]->steps : std::numeric_limits<std::uint64_t>::max();
    for (const auto& r : results) {
        out.steps += std::min(r->steps, cap);
    }
    if (!results.empty() && results.front()->length > 0) {
        out.walks = out.steps / results.front()->length;
    }
    if (win) {
        out.winner = std::move(results[*win]);
    }
    return out;
}

// Puts `vertices` (parent ids) on `sides`, flipped when that cuts more
// weight towards vertices that are already placed.
void place_best_orientation(const WeightedGraph& g, Placement& placed, const std::vector<VertexId>& vertices,
                            const std::vector<Side>& sides) {
    double keep = 0.0;
    double flip = 0.0;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        for (const Arc& a : g.neighbors(vertices[k])) {
            if (placed[a.to]) {
                (*placed[a.to] != sides[k] ? keep : flip) += a.weight;
            }
        }
    }
    const bool invert = flip > keep;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        placed[vertices[k]] = invert ? opposite(sides[k]) : sides[k];
    }
}

// Exhaustive search on small remainders; returns false when the remainder
// is too large for it.
bool try_brute_force(const WeightedGraph& g, Placement& placed, const Subgraph& sub, unsigned threads) {
    if (sub.graph.vertex_count() > kFloorVertices && sub.graph.edge_weight() > kFloorWeight) {
        return false;
    }
    std::vector<VertexId> active;
    for (VertexId v = 0; v < sub.graph.vertex_count(); ++v) {
        if (sub.graph.degree(v) > 0.0) {
            active.push_back(v);
        }
    }
    if (active.size() > kBruteForceMaxVertices) {
        return false;
    }
    const Subgraph core = induced_subgraph(sub.graph, active);
    const ExactCut exact = brute_force_maxcut(core.graph, threads);
    std::vector<VertexId> parents(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
        parents[k] = sub.to_parent[core.to_parent[k]];
    }
    place_best_orientation(g, placed, parents, exact.sides);
    return true;
}

void place_tripartition(const Subgraph& sub, const Tripartition& part, Side even_side, Placement& placed,
                        std::vector<VertexId>& remaining) {
    remaining.clear();
    for (VertexId v = 0; v < sub.graph.vertex_count(); ++v) {
        const VertexId parent = sub.to_parent[v];
        switch (part.side(v)) {
        case TriSide::Even:
            placed[parent] = even_side;
            break;
        case TriSide::Odd:
            placed[parent] = opposite(even_side);
            break;
        case TriSide::Unclassified:
            remaining.push_back(parent);
            break;
        }
    }
}

Side coin_side(Rng& coin) {
    return (coin() >> 63) ? Side::Right : Side::Left;
}

// Simple(G[remaining], eps, mu, alpha = 1), level by level. Unplaced
// vertices are left for the caller's greedy completion.
void simple_levels(const WeightedGraph& g, const SolverOptions& opts, SolveReport& report, Placement& placed,
                   std::vector<VertexId> remaining, double eps, double mu, std::uint64_t seed, std::uint32_t sweep) {
    Rng coin(derive_seed(seed, ~std::uint64_t{0}));
    for (std::uint32_t level = 0; !remaining.empty(); ++level) {
        const Subgraph sub = induced_subgraph(g, remaining);
        LevelLog log;
        log.sweep = sweep;
        log.level = level;
        log.vertices = sub.graph.vertex_count();
        log.edge_weight = sub.graph.edge_weight();
        log.eps = eps;
        if (!(sub.graph.edge_weight() > 0.0)) {
            break;
        }
        if (try_brute_force(g, placed, sub, opts.threads)) {
            log.branch = "brute-force";
            report.levels.push_back(log);
            break;
        }
        if (eps >= 1.0 || soto_fn(sigma_fn(eps, mu)) <= 0.5) {
            log.branch = "trivial";
            report.levels.push_back(log);
            break;
        }
        AlgoParams params;
        params.eps = eps;
        params.mu = mu;
        params.delta = opts.delta;
        params.gamma = opts.gamma;
        params.kappa = opts.kappa;
        params.alpha = 1.0;
        params.c_vol = opts.c_vol;
        params.step_budget = opts.find_budget;
        const auto starts = sample_starts(sub.graph, opts.probes, derive_seed(seed, 2 * level));
        ProbeRound round = run_probes(sub.graph, starts, params, derive_seed(seed, 2 * level + 1), opts.threads);
        report.steps += round.steps;
        report.walks += round.walks;
        log.steps = round.steps;
        if (!round.winner) {
            log.branch = "fallback";
            report.levels.push_back(log);
            break;
        }
        const FindResult& found = *round.winner;
        place_tripartition(sub, found.partition, coin_side(coin), placed, remaining);
        const double xi = 1.0 - found.metrics.inc / sub.graph.edge_weight();
        log.branch = "tripartition";
        log.threshold = found.threshold;
        log.classified_volume = found.partition.classified_volume();
        log.xi = xi;
        report.levels.push_back(log);
        eps = xi > 0.0 ? eps / xi : 1.0;
    }
}

void finalize(const WeightedGraph& g, const SolverOptions& opts, SolveReport& report, Partition walk_sides) {
    report.walk_cut_value = cut_value(g, walk_sides);
    Partition greedy = greedy_cut(g);
    report.greedy_value = cut_value(g, greedy);
    if (opts.greedy_floor && report.greedy_value > report.walk_cut_value) {
        report.sides = std::move(greedy);
        report.greedy_used = true;
    } else {
        report.sides = std::move(walk_sides);
    }
    report.cut_value = cut_value(g, report.sides);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

std::string SolveReport::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm;
    j["seed"] = seed;
    j["vertices"] = sides.size();
    j["cut_value"] = cut_value;
    j["walk_cut_value"] = walk_cut_value;
    j["greedy_value"] = greedy_value;
    j["greedy_used"] = greedy_used;
    j["walks"] = walks;
    j["steps"] = steps;
    auto& lv = j["levels"] = nlohmann::ordered_json::array();
    for (const LevelLog& l : levels) {
        nlohmann::ordered_json e;
        e["sweep"] = l.sweep;
        e["level"] = l.level;
        e["branch"] = l.branch;
        e["vertices"] = l.vertices;
        e["edge_weight"] = l.edge_weight;
        e["eps"] = l.eps;
        e["threshold"] = l.threshold;
        e["classified_volume"] = l.classified_volume;
        e["xi"] = l.xi;
        e["conductance"] = l.conductance;
        e["steps"] = l.steps;
        lv.push_back(std::move(e));
    }
    return j.dump(indent);
}

SolveReport simple_solve(const WeightedGraph& g, double mu, const SolverOptions& opts, std::uint64_t seed) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw InvalidParams("simple_solve: mu must be positive");
    }
    if (!(opts.gamma > 0.0 && opts.gamma < 1.0)) {
        throw InvalidParams("simple_solve: gamma must lie in (0, 1)");
    }
    const auto started = std::chrono::steady_clock::now();
    SolveReport report;
    report.algorithm = "simple";
    report.seed = seed;

    std::vector<VertexId> all(g.vertex_count());
    for (VertexId v = 0; v < all.size(); ++v) {
        all[v] = v;
    }
    Partition best(g.vertex_count(), Side::Left);
    double best_value = -1.0;
    double keep = 1.0;
    for (std::uint32_t r = 0;; ++r, keep *= 1.0 - opts.gamma) {
        const double eps = 1.0 - keep;
        if (eps > 0.5 || (r > 0 && soto_fn(sigma_fn(eps, mu)) <= 0.5)) {
            break;
        }
        Placement placed(g.vertex_count());
        simple_levels(g, opts, report, placed, all, eps, mu, derive_seed(seed, r), r);
        Partition sides = greedy_extend(g, placed);
        const double value = cut_value(g, sides);
        if (value > best_value) {
            best_value = value;
            best = std::move(sides);
        }
    }
    finalize(g, opts, report, std::move(best));
    report.wall_seconds = seconds_since(started);
    return report;
}

SolveReport balance_solve(const WeightedGraph& g, double b, double mu1, double eps1, const SolverOptions& opts,
                          std::uint64_t seed) {
    const BalanceParams bp = balance_params(b, mu1);
    if (std::isnan(eps1)) {
        eps1 = eps_bar(mu1);
    }
    if (!(eps1 > 0.0 && eps1 <= 0.5)) {
        throw InvalidParams("balance_solve: eps1 must lie in (0, 1/2]");
    }
    const auto started = std::chrono::steady_clock::now();
    SolveReport report;
    report.algorithm = "balance";
    report.seed = seed;

    Placement placed(g.vertex_count());
    std::vector<VertexId> remaining(g.vertex_count());
    for (VertexId v = 0; v < remaining.size(); ++v) {
        remaining[v] = v;
    }
    Rng coin(derive_seed(seed, ~std::uint64_t{0}));
    for (std::uint32_t level = 0; !remaining.empty(); ++level) {
        const Subgraph sub = induced_subgraph(g, remaining);
        LevelLog log;
        log.level = level;
        log.vertices = sub.graph.vertex_count();
        log.edge_weight = sub.graph.edge_weight();
        log.eps = eps1;
        if (!(sub.graph.edge_weight() > 0.0)) {
            break;
        }
        if (try_brute_force(g, placed, sub, opts.threads)) {
            log.branch = "brute-force";
            report.levels.push_back(log);
            break;
        }
        const double m = sub.graph.total_weight();
        AlgoParams params;
        params.eps = eps1;
        params.mu = mu1;
        params.delta = opts.delta;
        params.gamma = opts.gamma;
        params.kappa = opts.kappa;
        params.c_vol = opts.c_vol;
        params.step_budget = opts.find_budget;
        // the walk length l(eps1, mu1) fixes zeta through l = ln m / zeta
        double zeta = std::log(m) / static_cast<double>(walk_length(params, m));
        if (bp.tau > 0.0 && zeta * bp.tau >= 0.125) {
            zeta = 0.124 / bp.tau;
        }
        const auto starts = sample_starts(sub.graph, opts.probes, derive_seed(seed, 4 * level));

        std::optional<CutOrBoundResult> low;
        CutOrBoundOptions cob;
        cob.step_cap = opts.cob_step_cap;
        cob.threads = opts.threads;
        const std::uint64_t cob_seed = derive_seed(seed, 4 * level + 1);
        for (std::size_t i = 0; i < starts.size(); ++i) {
            CutOrBoundResult r = cut_or_bound(sub.graph, starts[i], bp.tau, zeta, derive_seed(cob_seed, i), cob);
            report.steps += r.stats.steps;
            report.walks += r.stats.walks;
            log.steps += r.stats.steps;
            if (r.is_cut) {
                low = std::move(r);
                break;
            }
        }
        if (low) {
            const Subgraph block = induced_subgraph(sub.graph, low->set);
            SolverOptions inner_opts = opts;
            inner_opts.greedy_floor = true;
            const SolveReport inner = simple_solve(block.graph, bp.mu2, inner_opts, derive_seed(seed, 4 * level + 2));
            report.steps += inner.steps;
            report.walks += inner.walks;
            log.steps += inner.steps;
            std::vector<VertexId> parents(block.graph.vertex_count());
            for (std::size_t k = 0; k < parents.size(); ++k) {
                parents[k] = sub.to_parent[block.to_parent[k]];
            }
            place_best_orientation(g, placed, parents, inner.sides);
            std::vector<VertexId> rest;
            for (VertexId v : remaining) {
                if (!placed[v]) {
                    rest.push_back(v);
                }
            }
            remaining.swap(rest);
            log.branch = "low-conductance";
            log.conductance = low->conductance;
            log.classified_volume = 0.0;
            for (VertexId v : low->set) {
                log.classified_volume += sub.graph.degree(v);
            }
            report.levels.push_back(log);
            continue;
        }

        params.alpha = std::min(1.0, 512.0 * std::pow(m, -bp.tau));
        ProbeRound round = run_probes(sub.graph, starts, params, derive_seed(seed, 4 * level + 3), opts.threads);
        report.steps += round.steps;
        report.walks += round.walks;
        log.steps += round.steps;
        if (!round.winner) {
            log.branch = "fallback";
            report.levels.push_back(log);
            break;
        }
        const FindResult& found = *round.winner;
        place_tripartition(sub, found.partition, coin_side(coin), placed, remaining);
        log.branch = "tripartition";
        log.threshold = found.threshold;
        log.classified_volume = found.partition.classified_volume();
        log.xi = 1.0 - found.metrics.inc / sub.graph.edge_weight();
        report.levels.push_back(log);
    }
    finalize(g, opts, report, greedy_extend(g, placed));
    report.wall_seconds = seconds_since(started);
    return report;
}

} // namespace rwcut
