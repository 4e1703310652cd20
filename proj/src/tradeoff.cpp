#include "rwcut/tradeoff.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "rwcut/error.hpp"
#include "rwcut/threshold.hpp"

namespace rwcut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Evaluates f on `points` equally spaced nodes of [lo, hi], then zooms into
// the cell pair around the best node `passes` times. Returns (argmin, min).
template <typename F>
std::pair<double, double> grid_minimize(F&& f, double lo, double hi, int points, int passes) {
    double best_x = lo;
    double best = kInf;
    double a = lo;
    double b = hi;
    int count = std::max(points, 2);
    for (int pass = 0; pass <= passes; ++pass) {
        const double step = (b - a) / (count - 1);
        for (int i = 0; i < count; ++i) {
            const double x = a + step * i;
            const double v = f(x);
            if (v < best) {
                best = v;
                best_x = x;
            }
        }
        a = std::max(lo, best_x - step);
        b = std::min(hi, best_x + step);
        count = 21;
    }
    return {best_x, best};
}

// H(., mu) tabulated on [0, 1/2] for the inner minimisation.
class HTable {
public:
    HTable(double mu, int nodes) : values_(static_cast<std::size_t>(nodes)), step_(0.5 / (nodes - 1)) {
        for (int i = 0; i < nodes; ++i) {
            values_[static_cast<std::size_t>(i)] = H_fn(step_ * i, mu);
        }
    }

    double operator()(double x) const {
        const double pos = std::clamp(x / step_, 0.0, static_cast<double>(values_.size() - 1));
        const auto k = std::min(static_cast<std::size_t>(pos), values_.size() - 2);
        const double frac = pos - static_cast<double>(k);
        return values_[k] + (values_[k + 1] - values_[k]) * frac;
    }

private:
    std::vector<double> values_;
    double step_;
};

constexpr int kHTableNodes = 2001;

// Minimum over (X, Z) of H1 + cX X + cZ Z on the polygon
// X, Z >= 0, (1 + chi) X + Z <= 1, es X + eps1 Z <= eps.
double lp_min(double es, double hs, double h1, double chi, double eps1, double eps) {
    const double cx = hs + chi / 2.0 - h1 * (1.0 + chi);
    const double cz = 0.5 - h1;
    std::array<std::pair<double, double>, 6> pts{};
    std::size_t count = 0;
    pts[count++] = {0.0, 0.0};
    pts[count++] = {1.0 / (1.0 + chi), 0.0};
    pts[count++] = {0.0, 1.0};
    if (es > 0.0) {
        pts[count++] = {eps / es, 0.0};
    }
    if (eps1 > 0.0) {
        pts[count++] = {0.0, eps / eps1};
    }
    const double det = (1.0 + chi) * eps1 - es;
    if (std::abs(det) > 1e-15) {
        const double x = (eps1 - eps) / det;
        pts[count++] = {x, 1.0 - (1.0 + chi) * x};
    }
    constexpr double slack = 1e-12;
    double best = kInf;
    for (std::size_t i = 0; i < count; ++i) {
        const auto [x, z] = pts[i];
        if (x < -slack || z < -slack || (1.0 + chi) * x + z > 1.0 + slack || es * x + eps1 * z > eps + slack) {
            continue;
        }
        best = std::min(best, h1 + cx * x + cz * z);
    }
    return best;
}

double objective_with_table(double eps1, double mu1, double tau, const HTable& h2, const TradeoffGrid& grid) {
    const double chi = chi_fn(eps1, mu1, tau);
    const double h1 = H_fn(eps1, mu1);
    auto inner = [&](double eps) {
        auto lp = [&](double es) { return lp_min(es, h2(es), h1, chi, eps1, eps); };
        return grid_minimize(lp, 0.0, 0.5, grid.eps_s_points, grid.refine_passes).second;
    };
    auto outer = [&](double eps) { return std::max(0.5, inner(eps)) / (1.0 - eps); };
    return grid_minimize(outer, 0.0, 0.5, grid.eps_points, grid.refine_passes).second;
}

double eps1_upper(double mu1, double tau) {
    // phi = sqrt(4 eps1 tau / mu1) < 1/2
    const double limit = tau > 0.0 ? mu1 / (16.0 * tau) : 0.5;
    return std::min(0.5, limit);
}

} // namespace

double h_zstar(double eps, double mu) {
    if (eps <= 0.0) {
        return 0.0;
    }
    auto f = [&](double z) { return sigma_fn(std::min(eps / z, 1.0), mu) - 1.0 / 3.0; };
    if (f(1.0) >= 0.0) {
        return 1.0;
    }
    auto close = [](double a, double b) { return std::abs(b - a) <= 1e-14; };
    const auto [lo, hi] = boost::math::tools::bisect(f, eps, 1.0, close);
    return 0.5 * (lo + hi);
}

double H_fn(double eps, double mu) {
    if (eps <= 0.0) {
        return 1.0;
    }
    const double zstar = h_zstar(eps, mu);
    if (zstar >= 1.0) {
        return 0.5;
    }
    auto integrand = [&](double z) { return soto_fn(sigma_fn(eps / z, mu)); };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    // soto has a kink where sigma = sigma0; integrate the two smooth pieces
    const double x0 = 1.0 - std::pow(1.0 - kSigma0, mu / (1.0 + mu));
    const double zkink = eps / x0;
    double integral = 0.0;
    if (zkink > zstar && zkink < 1.0) {
        integral = Quad::integrate(integrand, zstar, zkink, 15, 1e-12) + Quad::integrate(integrand, zkink, 1.0, 15, 1e-12);
    } else {
        integral = Quad::integrate(integrand, zstar, 1.0, 15, 1e-12);
    }
    return zstar / 2.0 + integral;
}

double eps_bar(double mu) {
    return 1.0 - std::pow(0.75, mu / (1.0 + mu));
}

double simple_ratio(double mu) {
    auto f = [mu](double eps) { return H_fn(eps, mu) / (1.0 - eps); };
    return grid_minimize(f, 0.0, 0.5, 201, 2).second;
}

BalanceParams balance_params(double b, double mu1) {
    if (!(b > 1.5) || !std::isfinite(b)) {
        throw InvalidParams("balance_params: b must exceed 1.5");
    }
    if (!(mu1 > 0.0) || !std::isfinite(mu1)) {
        throw InvalidParams("balance_params: mu1 must be positive");
    }
    const double tau = 2.0 + mu1 - b;
    if (!(tau >= 0.0 && tau < 1.0)) {
        throw InvalidParams("balance_params: tau = 2 + mu1 - b must lie in [0, 1)");
    }
    const double mu2 = (2.0 * b - mu1 - 3.0) / tau;
    if (!(mu2 > 0.0) || !std::isfinite(mu2)) {
        throw InvalidParams("balance_params: mu2 = (2b - mu1 - 3) / tau must be positive");
    }
    return {tau, mu2};
}

double chi_fn(double eps1, double mu1, double tau) {
    if (!(eps1 >= 0.0) || !(mu1 > 0.0) || !(tau >= 0.0)) {
        throw InvalidParams("chi_fn: parameters out of range");
    }
    const double phi = std::sqrt(4.0 * eps1 * tau / mu1);
    if (!(phi < 0.5)) {
        throw InvalidParams("chi_fn: phi = sqrt(4 eps1 tau / mu1) must stay below 1/2");
    }
    return 4.0 * phi / (1.0 - 2.0 * phi);
}

double tradeoff_objective(double eps1, double mu1, double mu2, double tau, const TradeoffGrid& grid) {
    if (!(eps1 > 0.0 && eps1 <= 0.5) || !(mu2 > 0.0) || !std::isfinite(mu2)) {
        throw InvalidParams("tradeoff_objective: need 0 < eps1 <= 1/2 and mu2 > 0");
    }
    const HTable h2(mu2, kHTableNodes);
    return objective_with_table(eps1, mu1, tau, h2, grid);
}

TradeoffPoint best_tradeoff(double b, const TradeoffGrid& grid) {
    if (!(b > 1.5) || !std::isfinite(b)) {
        throw InvalidParams("best_tradeoff: b must exceed 1.5");
    }
    const double mu1_lo = std::max(0.0, b - 2.0);
    const double mu1_hi = std::min(2.0 * b - 3.0, b - 1.0);

    TradeoffPoint best;
    best.b = b;
    best.balance_ratio = -kInf;
    auto consider = [&](double mu1, double eps1, const HTable& h2, const BalanceParams& bp) {
        if (!(eps1 > 0.0) || !(eps1 < eps1_upper(mu1, bp.tau))) {
            return;
        }
        const double r = objective_with_table(eps1, mu1, bp.tau, h2, grid);
        if (r > best.balance_ratio) {
            best.balance_ratio = r;
            best.mu1 = mu1;
            best.eps1 = eps1;
            best.tau = bp.tau;
            best.mu2 = bp.mu2;
        }
    };
    auto scan = [&](double m_lo, double m_hi, int m_points, double e_lo_frac, double e_hi_frac, int e_points,
                    bool interior_only) {
        for (int i = 0; i < m_points; ++i) {
            const double mu1 = interior_only ? m_lo + (m_hi - m_lo) * (i + 1) / (m_points + 1)
                                             : m_lo + (m_hi - m_lo) * i / std::max(m_points - 1, 1);
            if (!(mu1 > mu1_lo && mu1 < mu1_hi)) {
                continue;
            }
            BalanceParams bp;
            try {
                bp = balance_params(b, mu1);
            } catch (const InvalidParams&) {
                continue;
            }
            const HTable h2(bp.mu2, kHTableNodes);
            const double upper = eps1_upper(mu1, bp.tau);
            for (int j = 0; j < e_points; ++j) {
                const double frac = interior_only ? e_lo_frac + (e_hi_frac - e_lo_frac) * (j + 1) / (e_points + 1)
                                                  : e_lo_frac + (e_hi_frac - e_lo_frac) * j / std::max(e_points - 1, 1);
                consider(mu1, frac * upper, h2, bp);
            }
        }
    };
    // eps1 is searched as a fraction of its admissible upper limit
    scan(mu1_lo, mu1_hi, grid.mu1_points, 0.0, 1.0, grid.eps1_points, true);
    if (best.balance_ratio > -kInf) {
        double m_step = (mu1_hi - mu1_lo) / (grid.mu1_points + 1);
        double e_step = 1.0 / (grid.eps1_points + 1);
        for (int pass = 0; pass < grid.refine_passes; ++pass) {
            const double upper = eps1_upper(best.mu1, best.tau);
            const double frac = best.eps1 / upper;
            scan(best.mu1 - m_step, best.mu1 + m_step, 7, std::max(frac - e_step, 1e-6),
                 std::min(frac + e_step, 1.0 - 1e-9), 7, false);
            m_step /= 3.0;
            e_step /= 3.0;
        }
    } else {
        best.balance_ratio = 0.0;
    }
    best.simple_ratio = b > 2.0 ? simple_ratio(b - 2.0) : 0.0;
    best.ratio = std::max(best.balance_ratio, best.simple_ratio);
    return best;
}

} // namespace rwcut
