#pragma once

// Small graph builders and dense reference computations shared by the tests.
// The dense routines work from the edge list only, so they do not share code
// with the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rwcut/graph.hpp"

namespace rwcut::testing {

inline WeightedGraph make_graph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) {
        edges.push_back({u, v, 1.0});
    }
    return WeightedGraph(n, edges);
}

inline WeightedGraph single_edge() { return make_graph(2, {{0, 1}}); }

inline WeightedGraph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline WeightedGraph cycle(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> e;
    for (std::size_t i = 0; i < n; ++i) {
        e.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
    }
    return make_graph(n, e);
}

inline WeightedGraph complete(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> e;
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = i + 1; j < n; ++j) {
            e.emplace_back(i, j);
        }
    }
    return make_graph(n, e);
}

inline WeightedGraph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<std::pair<VertexId, VertexId>> e;
    for (VertexId i = 0; i < a; ++i) {
        for (VertexId j = 0; j < b; ++j) {
            e.emplace_back(i, static_cast<VertexId>(a + j));
        }
    }
    return make_graph(a + b, e);
}

// Two K_k joined by the edge (k - 1, k).
inline WeightedGraph dumbbell(std::size_t k) {
    std::vector<std::pair<VertexId, VertexId>> e;
    for (std::size_t side = 0; side < 2; ++side) {
        const auto base = static_cast<VertexId>(side * k);
        for (VertexId i = 0; i < k; ++i) {
            for (VertexId j = i + 1; j < k; ++j) {
                e.emplace_back(base + i, base + j);
            }
        }
    }
    e.emplace_back(static_cast<VertexId>(k - 1), static_cast<VertexId>(k));
    return make_graph(2 * k, e);
}

// G(n, p) with weights 1 or uniform in [0.5, 3] when `weighted`; a spanning
// path keeps every vertex at positive degree.
inline WeightedGraph random_graph(std::size_t n, double p, std::mt19937_64& rng, bool weighted) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> w(0.5, 3.0);
    std::vector<Edge> edges;
    for (VertexId i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1, weighted ? w(rng) : 1.0});
    }
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = i + 2; j < n; ++j) {
            if (coin(rng) < p) {
                edges.push_back({i, j, weighted ? w(rng) : 1.0});
            }
        }
    }
    return WeightedGraph(n, edges);
}

using Matrix = std::vector<std::vector<double>>;

// Dense normalized Laplacian I - D^{-1/2} A D^{-1/2} assembled from the edges.
inline Matrix dense_laplacian(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<double> deg(n, 0.0);
    Matrix a(n, std::vector<double>(n, 0.0));
    for (const Edge& e : g.edges()) {
        a[e.u][e.v] += e.weight;
        a[e.v][e.u] += e.weight;
        deg[e.u] += e.weight;
        deg[e.v] += e.weight;
    }
    Matrix l(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double norm = deg[i] > 0.0 && deg[j] > 0.0 ? a[i][j] / std::sqrt(deg[i] * deg[j]) : 0.0;
            l[i][j] = (i == j && deg[i] > 0.0 ? 1.0 : 0.0) - norm;
        }
    }
    return l;
}

inline std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            y[i] += m[i][j] * x[j];
        }
    }
    return y;
}

// Lazy-walk transition matrix W[i][j] = P(step i -> j) = 1/2 [i = j] + A_ij / (2 d_i).
inline Matrix dense_lazy_walk(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    Matrix w(n, std::vector<double>(n, 0.0));
    for (const Edge& e : g.edges()) {
        w[e.u][e.v] += e.weight / (2.0 * g.degree(e.u));
        w[e.v][e.u] += e.weight / (2.0 * g.degree(e.v));
    }
    for (std::size_t i = 0; i < n; ++i) {
        w[i][i] += g.degree(static_cast<VertexId>(i)) > 0.0 ? 0.5 : 1.0;
    }
    return w;
}

// Row vector times matrix: p W.
inline std::vector<double> vec_mat(const std::vector<double>& p, const Matrix& m) {
    std::vector<double> y(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            y[j] += p[i] * m[i][j];
        }
    }
    return y;
}

// Edge-list cut value of a 0/1 labelling.
inline double cut_value_of(const WeightedGraph& g, const std::vector<int>& label) {
    double cut = 0.0;
    double total = 0.0;
    for (const Edge& e : g.edges()) {
        total += e.weight;
        if (label[e.u] != label[e.v]) {
            cut += e.weight;
        }
    }
    return total > 0.0 ? cut / total : 0.0;
}

// Exhaustive maximum over all 2^n labellings, n small.
inline double exhaustive_maxcut(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    double best = 0.0;
    std::vector<int> label(n, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            label[i] = static_cast<int>((mask >> i) & 1U);
        }
        best = std::max(best, cut_value_of(g, label));
    }
    return best;
}

inline std::vector<int> labels(const Partition& p) {
    std::vector<int> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = p[i] == Side::Left ? 0 : 1;
    }
    return out;
}

} // namespace rwcut::testing
