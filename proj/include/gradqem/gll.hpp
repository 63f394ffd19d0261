#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gradqem {

/// Gauss-Lobatto-Legendre grid: nodes (including both endpoints) and
/// quadrature weights on [-1, 1]. Doubles as the element node set and
/// the integration rule.
struct NodeGrid {
    std::vector<double> nodes;    // ascending, nodes.front() == -1, nodes.back() == +1
    std::vector<double> weights;  // positive, symmetric, sums to 2

    std::size_t order() const { return nodes.size(); }
};

namespace detail {

/// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
inline void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    double d0 = 0.0, d1 = 1.0;
    if (n == 0) {
        p = p0;
        dp = d0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        const double d2 = d0 + (2.0 * k - 1.0) * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    p = p1;
    dp = d1;
}

}  // namespace detail

/// Build the N-point GLL rule. Interior nodes are the roots of P'_{N-1},
/// found by Newton iteration from Chebyshev-Gauss-Lobatto guesses;
/// weights are H_i = 2 / (N (N-1) P_{N-1}(x_i)^2).
inline NodeGrid gll_grid(std::size_t n) {
    if (n < 3) throw std::invalid_argument("gll_grid: need at least 3 nodes");
    const int deg = static_cast<int>(n) - 1;  // Legendre degree N-1

    NodeGrid grid;
    grid.nodes.resize(n);
    grid.weights.resize(n);
    grid.nodes.front() = -1.0;
    grid.nodes.back() = 1.0;

    const double pi = std::acos(-1.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double x = -std::cos(pi * static_cast<double>(i) / deg);
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            detail::legendre(deg, x, p, dp);
            // P'' from the Legendre ODE: (1-x^2) P'' = 2x P' - n(n+1) P
            const double ddp = (2.0 * x * dp - deg * (deg + 1.0) * p) / (1.0 - x * x);
            const double dx = dp / ddp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p, dp;
        detail::legendre(deg, x, p, dp);
        if (std::abs(dp) > 1e-13) throw std::runtime_error("gll_grid: Newton did not converge");
        grid.nodes[i] = x;
    }

    // enforce exact symmetry of the node set
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double v = 0.5 * (grid.nodes[i] - grid.nodes[n - 1 - i]);
        grid.nodes[i] = v;
        grid.nodes[n - 1 - i] = -v;
    }
    if (n % 2 == 1) grid.nodes[n / 2] = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        double p, dp;
        detail::legendre(deg, grid.nodes[i], p, dp);
        grid.weights[i] = 2.0 / (n * (n - 1.0) * p * p);
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double w = 0.5 * (grid.weights[i] + grid.weights[n - 1 - i]);
        grid.weights[i] = w;
        grid.weights[n - 1 - i] = w;
    }
    return grid;
}

/// Integrate nodal samples with the grid's weights.
inline double integrate(const NodeGrid& grid, const std::vector<double>& values) {
    if (values.size() != grid.order()) throw std::invalid_argument("integrate: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.order(); ++i) s += grid.weights[i] * values[i];
    return s;
}

}  // namespace gradqem
