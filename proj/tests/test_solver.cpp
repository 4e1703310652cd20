#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include <json.hpp>

#include "rwcut/error.hpp"
#include "rwcut/harness.hpp"
#include "rwcut/local_partition.hpp"
#include "rwcut/solver.hpp"
#include "rwcut/tradeoff.hpp"
#include "support.hpp"

using namespace rwcut;
using namespace rwcut::testing;

namespace {

SolverOptions fast_options() {
    SolverOptions o;
    o.find_budget = 300'000;
    o.cob_step_cap = 500'000;
    return o;
}

// Two K_{k,k} joined by one edge between their first vertices.
WeightedGraph bipartite_dumbbell(std::size_t k) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t block = 0; block < 2; ++block) {
        const auto base = static_cast<VertexId>(2 * k * block);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                edges.emplace_back(base + i, base + k + j);
            }
        }
    }
    edges.emplace_back(0, static_cast<VertexId>(2 * k));
    return make_graph(4 * k, edges);
}

// Structural checks on the level logs shared by both solvers.
void check_levels(const SolveReport& r) {
    std::map<std::uint32_t, std::vector<const LevelLog*>> by_sweep;
    for (const LevelLog& l : r.levels) {
        by_sweep[l.sweep].push_back(&l);
        if (l.branch == "tripartition") {
            CHECK(l.xi > 0.0);
            CHECK(l.xi <= 1.0);
            CHECK(l.classified_volume > 0.0);
        }
    }
    for (const auto& [sweep, levels] : by_sweep) {
        for (std::size_t i = 0; i < levels.size(); ++i) {
            CHECK(levels[i]->level == i);
            if (levels[i]->branch == "fallback" || levels[i]->branch == "brute-force" ||
                levels[i]->branch == "trivial") {
                CHECK(i + 1 == levels.size());
            }
            if (i > 0) {
                CHECK(levels[i]->vertices < levels[i - 1]->vertices);
                if (r.algorithm == "simple" && levels[i - 1]->branch == "tripartition") {
                    CHECK(levels[i]->eps == doctest::Approx(levels[i - 1]->eps / levels[i - 1]->xi));
                }
            }
        }
    }
}

} // namespace

TEST_CASE("simple_solve on bipartite rings") {
    const std::vector<std::size_t> jumps{1, 3};
    SolverOptions o = fast_options();
    o.greedy_floor = false;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const PlantedInstance inst = gen_planted_ring(60, jumps, 0, seed);
        const SolveReport r = simple_solve(inst.graph, 0.25, o, seed);
        CHECK(r.cut_value >= 0.9);
        CHECK(r.cut_value == cut_value(inst.graph, r.sides));
        CHECK_FALSE(r.greedy_used);
        check_levels(r);
    }
}

TEST_CASE("solvers stay between the greedy floor and the optimum on small graphs") {
    std::mt19937_64 rng(31);
    const SolverOptions o = fast_options();
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng() % 11);
        const WeightedGraph g = random_graph(n, 0.4, rng, rep % 2 == 0);
        const double best = exhaustive_maxcut(g);
        const double greedy = cut_value(g, greedy_cut(g));
        const SolveReport s = simple_solve(g, 1.0, o, static_cast<std::uint64_t>(rep));
        const SolveReport b = balance_solve(g, 2.0, 0.5, kDefaultEps1, o, static_cast<std::uint64_t>(rep));
        for (const SolveReport* r : {&s, &b}) {
            CHECK(r->cut_value <= best + 1e-12);
            CHECK(r->cut_value >= greedy - 1e-12);
            CHECK(r->cut_value >= 0.5);
            CHECK(r->sides.size() == n);
            CHECK(r->cut_value == cut_value(g, r->sides));
            check_levels(*r);
        }
    }
}

TEST_CASE("greedy floor off still yields a complete partition") {
    std::mt19937_64 rng(37);
    SolverOptions o = fast_options();
    o.greedy_floor = false;
    for (int rep = 0; rep < 5; ++rep) {
        const WeightedGraph g = random_graph(80, 0.08, rng, false);
        const SolveReport r = simple_solve(g, 1.0, o, static_cast<std::uint64_t>(rep));
        CHECK(r.sides.size() == 80);
        CHECK(r.cut_value == r.walk_cut_value);
        CHECK(r.cut_value >= 0.5);
        check_levels(r);
    }
}

TEST_CASE("balance splits off low-conductance sets and keeps bipartite blocks cut") {
    const WeightedGraph g = bipartite_dumbbell(10);
    SolverOptions o;
    o.greedy_floor = false;
    int isolated = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SolveReport r = balance_solve(g, 2.0, 0.25, kDefaultEps1, o, seed);
        bool low = false;
        for (const LevelLog& l : r.levels) {
            if (l.branch == "low-conductance") {
                low = true;
                // zeta tau is kept below 1/8
                CHECK(l.conductance < solve_phi(0.124));
            }
        }
        isolated += low ? 1 : 0;
        for (std::size_t block = 0; block < 2; ++block) {
            double cut = 0.0;
            for (VertexId i = 0; i < 10; ++i) {
                for (VertexId j = 10; j < 20; ++j) {
                    const auto u = static_cast<VertexId>(20 * block + i);
                    const auto v = static_cast<VertexId>(20 * block + j);
                    cut += r.sides[u] != r.sides[v] ? 1.0 : 0.0;
                }
            }
            CHECK(cut / 100.0 >= 0.9);
        }
        check_levels(r);
    }
    CHECK(isolated >= 3);
}

TEST_CASE("reports are reproducible and thread-count independent") {
    const PlantedInstance inst = gen_planted(120, 0.05, 6.0, 4);
    SolverOptions o = fast_options();
    const SolveReport a = simple_solve(inst.graph, 1.0, o, 9);
    const SolveReport b = balance_solve(inst.graph, 2.0, 0.5, kDefaultEps1, o, 9);
    o.threads = 4;
    const SolveReport c = simple_solve(inst.graph, 1.0, o, 9);
    const SolveReport d = balance_solve(inst.graph, 2.0, 0.5, kDefaultEps1, o, 9);
    CHECK(a.to_json() == c.to_json());
    CHECK(a.sides == c.sides);
    CHECK(b.to_json() == d.to_json());
    CHECK(b.sides == d.sides);
    o.threads = 1;
    CHECK(simple_solve(inst.graph, 1.0, o, 9).to_json() == a.to_json());
}

TEST_CASE("report JSON fields") {
    const PlantedInstance inst = gen_planted(60, 0.05, 4.0, 2);
    const SolveReport r = simple_solve(inst.graph, 1.0, fast_options(), 5);
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["algorithm"] == "simple");
    CHECK(j["seed"].get<std::uint64_t>() == 5);
    CHECK(j["vertices"].get<std::size_t>() == 60);
    CHECK(j["cut_value"].get<double>() == r.cut_value);
    CHECK(j["greedy_value"].get<double>() == r.greedy_value);
    CHECK(j["steps"].get<std::uint64_t>() == r.steps);
    CHECK(j["levels"].size() == r.levels.size());
    CHECK_FALSE(j.contains("wall_seconds"));
    std::uint64_t level_steps = 0;
    for (const LevelLog& l : r.levels) {
        level_steps += l.steps;
    }
    CHECK(level_steps == r.steps);
}

TEST_CASE("solvers reject bad parameters") {
    const WeightedGraph g = cycle(10);
    const SolverOptions o;
    CHECK_THROWS_AS(simple_solve(g, 0.0, o, 1), InvalidParams);
    CHECK_THROWS_AS(balance_solve(g, 1.5, 0.5, kDefaultEps1, o, 1), InvalidParams);
    CHECK_THROWS_AS(balance_solve(g, 2.0, 1.0, kDefaultEps1, o, 1), InvalidParams);
    CHECK_THROWS_AS(balance_solve(g, 2.0, 0.5, 0.7, o, 1), InvalidParams);
    SolverOptions bad;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(simple_solve(g, 1.0, bad, 1), InvalidParams);
}

TEST_CASE("edgeless and tiny graphs") {
    const WeightedGraph empty(4, {});
    const SolveReport r = simple_solve(empty, 1.0, SolverOptions{}, 1);
    CHECK(r.sides.size() == 4);
    CHECK(r.cut_value == 0.0);
    CHECK(simple_solve(single_edge(), 1.0, SolverOptions{}, 1).cut_value == 1.0);
    CHECK(balance_solve(triangle(), 2.0, 0.5, kDefaultEps1, SolverOptions{}, 1).cut_value ==
          doctest::Approx(2.0 / 3.0));
}
