#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "rwcut/error.hpp"
#include "rwcut/graph_io.hpp"
#include "rwcut/harness.hpp"
#include "support.hpp"

using namespace rwcut;
using namespace rwcut::testing;

TEST_CASE("brute force on small named graphs") {
    CHECK(brute_force_maxcut(triangle()).value == doctest::Approx(2.0 / 3.0));
    CHECK(brute_force_maxcut(cycle(5)).value == doctest::Approx(0.8));
    CHECK(brute_force_maxcut(complete_bipartite(3, 4)).value == 1.0);
    CHECK(brute_force_maxcut(cycle(8)).value == 1.0);
    const ExactCut k4 = brute_force_maxcut(complete(4));
    CHECK(k4.value == doctest::Approx(4.0 / 6.0));
    CHECK(cut_value(complete(4), k4.sides) == k4.value);
}

TEST_CASE("brute force agrees with exhaustive enumeration") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng() % 10);
        const WeightedGraph g = random_graph(n, 0.4, rng, rep % 2 == 0);
        const ExactCut a = brute_force_maxcut(g);
        CHECK(a.value == doctest::Approx(exhaustive_maxcut(g)).epsilon(1e-12));
        CHECK(cut_value_of(g, labels(a.sides)) == doctest::Approx(a.value).epsilon(1e-12));
        const ExactCut b = brute_force_maxcut(g, 4);
        CHECK(a.value == b.value);
        CHECK(a.sides == b.sides);
    }
    CHECK_THROWS_AS(brute_force_maxcut(cycle(kBruteForceMaxVertices + 2)), ResourceError);
}

TEST_CASE("greedy examples") {
    CHECK(cut_value(single_edge(), greedy_cut(single_edge())) == 1.0);
    CHECK(cut_value(triangle(), greedy_cut(triangle())) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("greedy always cuts at least half") {
    std::mt19937_64 rng(10);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 60);
        const WeightedGraph g = random_graph(n, 0.2, rng, rep % 2 == 1);
        CHECK(cut_value(g, greedy_cut(g)) >= 0.5);
    }
}

TEST_CASE("greedy_extend keeps fixed vertices") {
    const WeightedGraph g = cycle(6);
    std::vector<std::optional<Side>> partial(6);
    partial[0] = Side::Left;
    partial[1] = Side::Left;
    const Partition p = greedy_extend(g, partial);
    CHECK(p[0] == Side::Left);
    CHECK(p[1] == Side::Left);
    // the path 1-2-3-4-5-0 has odd length and equal ends, so one more edge is lost
    CHECK(cut_value(g, p) == doctest::Approx(4.0 / 6.0));
    CHECK_THROWS_AS(greedy_extend(g, std::vector<std::optional<Side>>(3)), InvalidInput);
}

TEST_CASE("random cut averages one half") {
    std::mt19937_64 rng(12);
    WeightedGraph g;
    do {
        g = random_graph(40, 0.2, rng, false);
    } while (g.edge_count() < 150 || g.edge_count() > 250);
    double sum = 0.0;
    constexpr int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        Rng r(static_cast<std::uint64_t>(s));
        sum += cut_value(g, random_cut(g, r));
    }
    CHECK(std::abs(sum / seeds - 0.5) <= 0.01);
    Rng a(5);
    Rng b(5);
    CHECK(random_cut(g, a) == random_cut(g, b));
    const WeightedGraph empty(5, {});
    Rng c(1);
    CHECK(cut_value(empty, random_cut(empty, c)) == 0.0);
}

TEST_CASE("planted generator") {
    const PlantedInstance zero = gen_planted(4, 0.0, 1.0, 3);
    CHECK(zero.planted_value == 1.0);
    CHECK(zero.graph.edge_count() == 2);

    const PlantedInstance inst = gen_planted(500, 0.1, 8.0, 1);
    CHECK(inst.planted_value >= 0.88);
    CHECK(inst.planted_value <= 0.92);
    CHECK(inst.planted_value == cut_value(inst.graph, inst.planted));
    CHECK(inst.graph.total_weight() == doctest::Approx(500.0 * 8.0));

    const PlantedInstance again = gen_planted(500, 0.1, 8.0, 1);
    CHECK(again.graph == inst.graph);
    CHECK(again.planted == inst.planted);
    CHECK_FALSE(gen_planted(500, 0.1, 8.0, 2).graph == inst.graph);

    CHECK_THROWS_AS(gen_planted(7, 0.1, 4.0, 1), InvalidParams);
    CHECK_THROWS_AS(gen_planted(10, 0.6, 4.0, 1), InvalidParams);
    CHECK_THROWS_AS(gen_planted(10, 0.1, 50.0, 1), InvalidParams);
}

TEST_CASE("planted ring generator") {
    const std::vector<std::size_t> jumps{1, 3};
    const PlantedInstance ring = gen_planted_ring(40, jumps, 0, 1);
    CHECK(ring.planted_value == 1.0);
    CHECK(ring.graph.edge_count() == 80);
    const PlantedInstance noisy = gen_planted_ring(40, jumps, 4, 1);
    CHECK(noisy.planted_value == doctest::Approx(80.0 / 84.0));
    const std::vector<std::size_t> even{2};
    CHECK_THROWS_AS(gen_planted_ring(40, even, 0, 1), InvalidParams);
}

TEST_CASE("instance files") {
    const auto dir = std::filesystem::temp_directory_path() / "rwcut_harness_test";
    std::filesystem::create_directories(dir);
    const PlantedInstance inst = gen_planted(50, 0.1, 4.0, 9);
    write_instance(dir / "inst", inst);
    CHECK(load_graph(dir / "inst.el") == inst.graph);
    std::ifstream meta(dir / "inst.json");
    const auto j = nlohmann::json::parse(meta);
    CHECK(j["planted_value"].get<double>() == inst.planted_value);
    CHECK(j["seed"].get<std::uint64_t>() == 9);
    std::filesystem::remove_all(dir);
}
