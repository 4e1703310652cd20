#pragma once

#include <vector>

namespace rwcut {

/// Largest z in (0, 1] with soto(sigma(eps / z, mu)) = 1/2, by bisection;
/// 0 when eps = 0.
double h_zstar(double eps, double mu);

/// z* / 2 + integral_{z*}^{1} soto(sigma(eps / z, mu)) dz.
double H_fn(double eps, double mu);

/// 1 - (3/4)^{mu / (1 + mu)}, where sigma(eps, mu) = 1/4.
double eps_bar(double mu);

/// min over eps in [0, 1/2] of H(eps, mu) / (1 - eps): the ratio of the
/// recursive threshold solver alone with exponent mu.
double simple_ratio(double mu);

struct BalanceParams {
    double tau = 0.0;
    double mu2 = 0.0;
};

/// tau = 2 + mu1 - b, mu2 = (2b - mu1 - 3) / tau. Throws InvalidParams
/// unless b > 1.5, mu1 > 0, 0 <= tau < 1 and mu2 > 0.
BalanceParams balance_params(double b, double mu1);

/// 4 phi / (1 - 2 phi) with phi = sqrt(4 eps1 tau / mu1). Throws
/// InvalidParams when phi >= 1/2.
double chi_fn(double eps1, double mu1, double tau);

/// Resolution of the numeric optimisation.
struct TradeoffGrid {
    int eps_s_points = 200; ///< inner grid over eps'_S
    int eps_points = 200;   ///< grid over the adversary's eps
    int mu1_points = 16;
    int eps1_points = 24;
    int refine_passes = 2;
};

/**
 * min over eps in [0, 1/2] of max(1 / (2(1 - eps)), OBJ(eps)) where OBJ is
 * the smallest value of
 *   [(H(e_S, mu2) + chi/2) X + H(eps1, mu1) Y + Z/2] / (1 - eps)
 * subject to e_S X + eps1 Z <= eps, (1 + chi) X + Y + Z = 1, X, Y, Z >= 0,
 * 0 <= e_S <= 1/2. For fixed e_S this is an LP in (X, Z) solved at its
 * vertices. Throws InvalidParams for an infeasible parameter box.
 */
double tradeoff_objective(double eps1, double mu1, double mu2, double tau, const TradeoffGrid& grid = {});

struct TradeoffPoint {
    double b = 0.0;
    double mu1 = 0.0;
    double eps1 = 0.0;
    double tau = 0.0;
    double mu2 = 0.0;
    double balance_ratio = 0.0; ///< best Balance bound over (mu1, eps1)
    double simple_ratio = 0.0;  ///< simple_ratio(b - 2) when b > 2, else 0
    double ratio = 0.0;         ///< the larger of the two
};

/// Maximizes the Balance bound over mu1 in the valid box and eps1, then
/// compares with the plain recursive solver at the same exponent.
/// Throws InvalidParams when b <= 1.5.
TradeoffPoint best_tradeoff(double b, const TradeoffGrid& grid = {});

} // namespace rwcut
