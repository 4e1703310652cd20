#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rwcut/error.hpp"
#include "rwcut/local_partition.hpp"
#include "rwcut/walk.hpp"
#include "support.hpp"

using namespace rwcut;
using namespace rwcut::testing;

namespace {

double psi_of(double phi) {
    return -std::log(0.5 * (std::sqrt(1.0 - 2.0 * phi) + std::sqrt(1.0 + 2.0 * phi)));
}

// Plain bisection on psi_of, independent of the library's root finder.
double phi_reference(double psi) {
    double lo = 0.0;
    double hi = 0.5;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (psi_of(mid) < psi ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> random_distribution(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(n);
    double total = 0.0;
    for (double& v : p) {
        v = e(rng);
        total += v;
    }
    for (double& v : p) {
        v /= total;
    }
    return p;
}

} // namespace

TEST_CASE("solve_phi values") {
    CHECK(solve_phi(0.0) == 0.0);
    const double phi = solve_phi(0.02);
    CHECK(phi == doctest::Approx(0.199).epsilon(0.005));
    CHECK(phi == doctest::Approx(phi_reference(0.02)).epsilon(1e-10));
    // series psi = phi^2 / 2 + 3 phi^4 / 4 + O(phi^6)
    CHECK(phi * phi / 2.0 + 0.75 * std::pow(phi, 4) == doctest::Approx(0.02).epsilon(1e-3));
    CHECK_THROWS_AS(solve_phi(0.125), InvalidInput);
    CHECK_THROWS_AS(solve_phi(-0.01), InvalidInput);
}

TEST_CASE("solve_phi is increasing and psi >= phi^2 / 2") {
    double prev = -1.0;
    for (int i = 1; i < 125; ++i) {
        const double psi = i / 1000.0;
        const double phi = solve_phi(psi);
        CHECK(phi > prev);
        CHECK(psi >= phi * phi / 2.0);
        CHECK(phi < 0.5);
        CHECK(phi == doctest::Approx(phi_reference(psi)).epsilon(1e-9));
        prev = phi;
    }
}

TEST_CASE("LS curve of the stationary distribution is a straight line") {
    std::mt19937_64 rng(3);
    const WeightedGraph g = random_graph(20, 0.2, rng, true);
    const double m = g.total_weight();
    std::vector<double> p(20);
    for (VertexId v = 0; v < 20; ++v) {
        p[v] = g.degree(v) / m;
    }
    const LSCurve c = build_ls_curve(g, p);
    CHECK(c.x_max() == doctest::Approx(2.0 * m));
    for (int i = 0; i <= 100; ++i) {
        const double x = 2.0 * m * i / 100.0;
        CHECK(c(x) == doctest::Approx(x / (2.0 * m)).epsilon(1e-12));
    }
}

TEST_CASE("LS curve of a point mass") {
    std::mt19937_64 rng(5);
    const WeightedGraph g = random_graph(15, 0.3, rng, true);
    for (VertexId i = 0; i < 15; ++i) {
        std::vector<double> p(15, 0.0);
        p[i] = 1.0;
        const LSCurve c = build_ls_curve(g, p);
        for (int k = 0; k <= 50; ++k) {
            const double x = c.x_max() * k / 50.0;
            CHECK(c(x) == doctest::Approx(std::min(x / (2.0 * g.degree(i)), 1.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("LS curve equals the best subset mass at its breakpoints") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const WeightedGraph g = random_graph(9, 0.35, rng, true);
        const auto p = random_distribution(9, rng);
        const LSCurve c = build_ls_curve(g, p);
        std::vector<std::pair<double, double>> subsets;
        for (unsigned mask = 0; mask < (1U << 9); ++mask) {
            double x = 0.0;
            double mass = 0.0;
            for (VertexId v = 0; v < 9; ++v) {
                if (mask & (1U << v)) {
                    x += 2.0 * g.degree(v);
                    mass += p[v];
                }
            }
            CHECK(mass <= c(x) + 1e-12);
            subsets.emplace_back(x, mass);
        }
        for (const auto& [bx, by] : c.breakpoints()) {
            const bool attained = std::any_of(subsets.begin(), subsets.end(), [&](const auto& s) {
                return std::abs(s.first - bx) <= 1e-9 && std::abs(s.second - by) <= 1e-12;
            });
            CHECK(attained);
        }
    }
}

TEST_CASE("LS curves dominate the stationary line and are concave") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        const WeightedGraph g = random_graph(25, 0.15, rng, rep % 2 == 0);
        const auto p = random_distribution(25, rng);
        const LSCurve c = build_ls_curve(g, p);
        const double two_m = 2.0 * g.total_weight();
        double prev_slope = 1e300;
        const auto pts = c.breakpoints();
        for (std::size_t k = 1; k < pts.size(); ++k) {
            CHECK(pts[k].second >= pts[k].first / two_m - 1e-12);
            const double dx = pts[k].first - pts[k - 1].first;
            if (dx > 0.0) {
                const double slope = (pts[k].second - pts[k - 1].second) / dx;
                CHECK(slope <= prev_slope + 1e-12);
                prev_slope = slope;
            }
        }
        CHECK(c(two_m) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("LS curves from exact distributions decrease with the length") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const WeightedGraph g = random_graph(20, 0.2, rng, true);
        const ExactWalkDist d = exact_walk_distribution(g, static_cast<VertexId>(rep), 10);
        for (std::uint32_t l = 1; l <= 10; ++l) {
            const LSCurve prev = build_ls_curve(g, d.p_at(l - 1));
            const LSCurve cur = build_ls_curve(g, d.p_at(l));
            for (const auto& [x, y] : cur.breakpoints()) {
                CHECK(y <= prev(x) + 1e-12);
            }
            for (const auto& [x, y] : prev.breakpoints()) {
                CHECK(cur(x) <= y + 1e-12);
            }
        }
    }
}

TEST_CASE("build_ls_curve input checks") {
    const WeightedGraph e = single_edge();
    CHECK_THROWS_AS(build_ls_curve(e, std::vector<double>{0.5}), InvalidInput);
    CHECK_THROWS_AS(build_ls_curve(e, std::vector<double>{0.5, 0.6}), InvalidInput);
    CHECK_THROWS_AS(build_ls_curve(e, std::vector<double>{1.5, -0.5}), InvalidInput);
}

TEST_CASE("chord inequality on exact distributions") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng() % 27);
        const WeightedGraph g = random_graph(n, 0.25, rng, rep % 2 == 0);
        const auto len = 1 + static_cast<std::uint32_t>(rng() % 10);
        const ExactWalkDist d = exact_walk_distribution(g, static_cast<VertexId>(rng() % n), len);
        VertexSet s(g);
        for (VertexId v = 0; v < n; ++v) {
            if (rng() % 2) {
                s.insert(v);
            }
        }
        const ChordCheck c = ls_chord_check(g, d.p_at(len - 1), s);
        CHECK(c.holds);
        double direct = 0.0;
        for (VertexId v = 0; v < n; ++v) {
            if (s.contains(v)) {
                direct += d.p_at(len)[v];
            }
        }
        CHECK(c.lhs == doctest::Approx(direct).epsilon(1e-12));
    }
    const WeightedGraph g = cycle(7);
    const ExactWalkDist d = exact_walk_distribution(g, 0, 3);
    std::vector<VertexId> all{0, 1, 2, 3, 4, 5, 6};
    const ChordCheck full = ls_chord_check(g, d.p_at(2), VertexSet(g, all));
    CHECK(full.lhs == doctest::Approx(1.0));
    CHECK(full.rhs == doctest::Approx(1.0));
    CHECK(full.holds);
}

TEST_CASE("CutOrBound finds a clique of the dumbbell") {
    const WeightedGraph g = dumbbell(20);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CutOrBoundResult r = cut_or_bound(g, 3, 0.25, 0.45, seed);
        REQUIRE(r.is_cut);
        CHECK(r.conductance < r.stats.phi);
        const double exact = conductance(g, VertexSet(g, r.set));
        CHECK(std::abs(exact - r.conductance) <= 1e-9);
        // the first qualifying prefix stays inside the start's clique
        CHECK(r.set.back() < 20);
    }
    // the whole clique: one crossing edge over twice its volume 2 * 190 + 1
    std::vector<VertexId> clique(20);
    for (VertexId v = 0; v < 20; ++v) {
        clique[v] = v;
    }
    CHECK(conductance(g, VertexSet(g, clique)) == doctest::Approx(1.0 / (2.0 * (20.0 * 19.0 + 1.0))));
}

TEST_CASE("CutOrBound declares a correct bound on a complete graph") {
    const WeightedGraph g = complete(50);
    // phi stays below 25 / 98, the least conductance of any K_50 subset
    const double tau = 0.1;
    const double zeta = 0.3;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const CutOrBoundResult r = cut_or_bound(g, 0, tau, zeta, seed);
        REQUIRE_FALSE(r.is_cut);
        CHECK(r.bound == doctest::Approx(256.0 * std::pow(g.total_weight(), -tau)));
        const ExactWalkDist d = exact_walk_distribution(g, 0, r.stats.length, false);
        double worst = 0.0;
        for (VertexId j = 0; j < 50; ++j) {
            worst = std::max(worst, d.final_p()[j] / (2.0 * g.degree(j)));
        }
        CHECK(worst <= r.bound);
    }
}

TEST_CASE("CutOrBound parameters follow their formulas") {
    const WeightedGraph g = dumbbell(10);
    CutOrBoundOptions opts;
    opts.step_cap = 200000;
    const CutOrBoundResult r = cut_or_bound(g, 0, 0.3, 0.2, 1, opts);
    const double m = g.total_weight();
    const double alpha = std::pow(m, -0.3);
    const auto len = static_cast<std::uint32_t>(std::ceil(std::log(m) / 0.2));
    CHECK(r.stats.alpha == doctest::Approx(alpha));
    CHECK(r.stats.phi == doctest::Approx(phi_reference(0.06)).epsilon(1e-9));
    CHECK(r.stats.length == len);
    CHECK(r.stats.walks_full == static_cast<std::uint64_t>(std::ceil(30.0 * len * len * std::log(20.0) / alpha)));
    CHECK(r.stats.prefix_cap ==
          static_cast<std::uint64_t>(std::ceil(len / (2.0 * (1.0 - 2.0 * r.stats.phi) * alpha))));
    CHECK(r.stats.walks == std::min<std::uint64_t>(r.stats.walks_full, 200000 / len));
    CHECK(r.stats.truncated == (r.stats.walks < r.stats.walks_full));
}

TEST_CASE("empirical curves sit inside the sandwich around exact curves") {
    std::mt19937_64 rng(19);
    const double tau = 0.05;
    const double zeta = 0.5;
    int good = 0;
    int runs = 0;
    std::size_t lengths = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 20 + static_cast<std::size_t>(rng() % 21);
        const WeightedGraph g = random_graph(n, 6.0 / static_cast<double>(n), rng, false);
        const auto start = static_cast<VertexId>(rng() % n);
        CutOrBoundOptions opts;
        opts.record_curves = true;
        const CutOrBoundResult r = cut_or_bound(g, start, tau, zeta, rng(), opts);
        const ExactWalkDist d = exact_walk_distribution(g, start, r.stats.length);
        const double dh = 1.0 / r.stats.length;
        const double alpha = r.stats.alpha;
        bool inside = true;
        for (std::uint32_t l = 0; l < r.stats.curves.size(); ++l) {
            const LSCurve& emp = r.stats.curves[l];
            const LSCurve exact = build_ls_curve(g, d.p_at(l));
            std::vector<double> xs;
            for (const auto& pt : emp.breakpoints()) {
                xs.push_back(pt.first);
            }
            for (const auto& pt : exact.breakpoints()) {
                xs.push_back(pt.first);
            }
            for (double x : xs) {
                const double lo = (1.0 - dh) * exact(x) - dh * alpha * x;
                const double hi = (1.0 + dh) * exact(x) + dh * alpha * x;
                if (emp(x) < lo - 1e-12 || emp(x) > hi + 1e-12) {
                    inside = false;
                }
            }
        }
        ++runs;
        good += inside ? 1 : 0;
        lengths += r.stats.curves.size();
    }
    CHECK(good >= (95 * runs + 99) / 100);
    CHECK(lengths >= 5 * static_cast<std::size_t>(runs));
}

TEST_CASE("CutOrBound is reproducible across worker counts") {
    std::mt19937_64 rng(23);
    const WeightedGraph g = random_graph(60, 0.08, rng, true);
    CutOrBoundOptions one;
    one.step_cap = 2'000'000;
    CutOrBoundOptions four = one;
    four.threads = 4;
    const CutOrBoundResult a = cut_or_bound(g, 5, 0.3, 0.3, 9, one);
    const CutOrBoundResult b = cut_or_bound(g, 5, 0.3, 0.3, 9, four);
    CHECK(a.is_cut == b.is_cut);
    CHECK(a.set == b.set);
    CHECK(a.cut_length == b.cut_length);
    CHECK(a.stats.steps == b.stats.steps);
}

TEST_CASE("CutOrBound input checks") {
    const WeightedGraph g = dumbbell(5);
    CHECK_THROWS_AS(cut_or_bound(g, 0, 0.25, 0.5, 1), InvalidInput);
    CHECK_THROWS_AS(cut_or_bound(g, 0, 1.0, 0.1, 1), InvalidInput);
    CHECK_THROWS_AS(cut_or_bound(g, 99, 0.2, 0.1, 1), InvalidInput);
    CHECK_THROWS_AS(cut_or_bound(WeightedGraph(4, {}), 0, 0.2, 0.1, 1), InvalidInput);
}
