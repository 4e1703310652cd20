#include "rwcut/local_partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "rwcut/error.hpp"
#include "rwcut/walk.hpp"

namespace rwcut {

double solve_phi(double psi) {
    if (!(psi >= 0.0 && psi < 0.125)) {
        throw InvalidInput("solve_phi: psi must lie in [0, 1/8)");
    }
    if (psi == 0.0) {
        return 0.0;
    }
    auto f = [psi](double phi) {
        return -std::log(0.5 * (std::sqrt(1.0 - 2.0 * phi) + std::sqrt(1.0 + 2.0 * phi))) - psi;
    };
    auto close = [](double a, double b) { return std::abs(b - a) <= 1e-12; };
    const auto [lo, hi] = boost::math::tools::bisect(f, 0.0, 0.5, close);
    return 0.5 * (lo + hi);
}

LSCurve::LSCurve(std::vector<std::pair<double, double>> breakpoints) : points_(std::move(breakpoints)) {}

double LSCurve::operator()(double x) const {
    if (points_.empty()) {
        return 0.0;
    }
    x = std::clamp(x, 0.0, points_.back().first);
    // first breakpoint strictly right of x; vertical jumps at x take the upper value
    auto it = std::upper_bound(points_.begin(), points_.end(), x,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    if (it == points_.end()) {
        return points_.back().second;
    }
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double span = right.first - left.first;
    return left.second + (right.second - left.second) * (x - left.first) / span;
}

LSCurve build_ls_curve(const WeightedGraph& g, std::span<const double> p) {
    const std::size_t n = g.vertex_count();
    if (p.size() != n) {
        throw InvalidInput("build_ls_curve: vector size mismatch");
    }
    double total = 0.0;
    for (double v : p) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw InvalidInput("build_ls_curve: entries must be non-negative");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidInput("build_ls_curve: probabilities sum to " + std::to_string(total));
    }
    double isolated_mass = 0.0;
    std::vector<VertexId> order;
    order.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        if (g.degree(v) > 0.0) {
            order.push_back(v);
        } else {
            isolated_mass += p[v];
        }
    }
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        // p_a / d_a > p_b / d_b without dividing
        const double lhs = p[a] * g.degree(b);
        const double rhs = p[b] * g.degree(a);
        return lhs != rhs ? lhs > rhs : a < b;
    });
    std::vector<std::pair<double, double>> pts;
    pts.reserve(order.size() + 2);
    pts.emplace_back(0.0, 0.0);
    double x = 0.0;
    double y = isolated_mass;
    if (y > 0.0) {
        pts.emplace_back(0.0, y);
    }
    for (VertexId v : order) {
        x += 2.0 * g.degree(v);
        y += p[v];
        pts.emplace_back(x, y);
    }
    return LSCurve(std::move(pts));
}

ChordCheck ls_chord_check(const WeightedGraph& g, std::span<const double> p_prev, const VertexSet& s,
                          double tolerance) {
    const std::vector<double> p = exact_lazy_step(g, p_prev, false);
    const LSCurve curve = build_ls_curve(g, p_prev);
    ChordCheck out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (s.contains(v)) {
            out.lhs += p[v];
        }
    }
    const double two_m = 2.0 * g.total_weight();
    const double x = s.lazy_volume();
    const double x_hat = std::min(x, two_m - x);
    double phi = 0.0;
    if (!s.empty() && s.size() < g.vertex_count() && x_hat > 0.0) {
        phi = conductance(g, s);
    }
    out.rhs = 0.5 * (curve(x - 2.0 * phi * x_hat) + curve(x + 2.0 * phi * x_hat));
    out.holds = out.lhs <= out.rhs + tolerance;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

LSCurve empirical_curve(const WeightedGraph& g, std::span<const std::uint64_t> counts, std::uint64_t walks) {
    std::vector<double> p(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        p[j] = static_cast<double>(counts[j]) / static_cast<double>(walks);
    }
    return build_ls_curve(g, p);
}

} // namespace

CutOrBoundResult cut_or_bound(const WeightedGraph& g, VertexId start, double tau, double zeta, std::uint64_t seed,
                              const CutOrBoundOptions& options) {
    if (!(tau >= 0.0 && tau < 1.0)) {
        throw InvalidInput("cut_or_bound: tau must lie in [0, 1)");
    }
    if (!(zeta > 0.0) || !(zeta * tau < 0.125)) {
        throw InvalidInput("cut_or_bound: need zeta > 0 and zeta * tau < 1/8");
    }
    const double m = g.total_weight();
    if (!(m > 0.0)) {
        throw InvalidInput("cut_or_bound: graph has no edges");
    }
    if (start >= g.vertex_count()) {
        throw InvalidInput("cut_or_bound: start out of range");
    }
    const std::size_t n = g.vertex_count();
    const double log_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));

    CutOrBoundResult res;
    CutOrBoundStats& st = res.stats;
    st.alpha = std::pow(m, -tau);
    st.phi = solve_phi(zeta * tau);
    const double ell = std::ceil(std::log(m) / zeta);
    st.length = static_cast<std::uint32_t>(std::clamp(ell, 1.0, static_cast<double>(kMaxWalkLength)));
    const double l2 = static_cast<double>(st.length);
    st.walks_full = static_cast<std::uint64_t>(std::ceil(30.0 * l2 * l2 * log_n / st.alpha));
    st.prefix_cap = static_cast<std::uint64_t>(std::ceil(l2 / (2.0 * (1.0 - 2.0 * st.phi) * st.alpha)));
    const std::uint64_t cap = options.step_cap > 0 ? options.step_cap : kMaxWalkSteps;
    st.walks = std::min<std::uint64_t>(st.walks_full, std::max<std::uint64_t>(cap / st.length, 1));
    st.truncated = st.walks < st.walks_full;
    res.bound = 256.0 * st.alpha;

    const std::size_t prefix_limit = std::min<std::uint64_t>(st.prefix_cap, n - 1);
    WalkBatch batch(g, start, st.walks, seed);
    std::vector<std::uint64_t> counts(n, 0);
    std::vector<VertexId> touched;
    std::vector<std::uint8_t> in_set(n, 0);
    std::vector<VertexId> prefix;

    for (std::uint32_t l = 0; l <= st.length; ++l) {
        if (l > 0) {
            batch.step(options.threads);
            st.steps += st.walks;
        }
        for (VertexId v : touched) {
            counts[v] = 0;
        }
        touched.clear();
        for (VertexId v : batch.positions()) {
            if (counts[v]++ == 0) {
                touched.push_back(v);
            }
        }
        if (options.record_curves) {
            st.curves.push_back(empirical_curve(g, counts, st.walks));
        }
        std::sort(touched.begin(), touched.end(), [&](VertexId a, VertexId b) {
            const double da = g.degree(a);
            const double db = g.degree(b);
            // count / d descending; isolated vertices (d = 0) first
            const double lhs = static_cast<double>(counts[a]) * db;
            const double rhs = static_cast<double>(counts[b]) * da;
            return lhs != rhs ? lhs > rhs : a < b;
        });
        prefix.assign(touched.begin(), touched.begin() + std::min(touched.size(), prefix_limit));
        for (VertexId v = 0; prefix.size() < prefix_limit && v < n; ++v) {
            if (counts[v] == 0) {
                prefix.push_back(v);
            }
        }

        double volume = 0.0;
        double boundary = 0.0;
        for (std::size_t k = 0; k < prefix.size(); ++k) {
            const VertexId v = prefix[k];
            for (const Arc& a : g.neighbors(v)) {
                boundary += in_set[a.to] ? -a.weight : a.weight;
            }
            in_set[v] = 1;
            volume += g.degree(v);
            const double smaller = std::min(volume, m - volume);
            if (!(volume > 0.0) || !(m - volume > 0.0)) {
                continue;
            }
            if (std::max(boundary, 0.0) / (2.0 * smaller) >= st.phi) {
                continue;
            }
            std::vector<VertexId> set(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(k + 1));
            std::sort(set.begin(), set.end());
            // the running sums only nominate; the reported value is recomputed
            const double exact = conductance(g, VertexSet(g, set));
            if (exact < st.phi) {
                res.is_cut = true;
                res.set = std::move(set);
                res.conductance = exact;
                res.cut_length = l;
                return res;
            }
        }
        for (VertexId v : prefix) {
            in_set[v] = 0;
        }
    }
    return res;
}

} // namespace rwcut
