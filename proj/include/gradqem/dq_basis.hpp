#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "gradqem/gll.hpp"
#include "gradqem/matrix.hpp"

namespace gradqem {

// Column convention shared by every module, for the four augmented columns
// of the N x (N+4) matrices below (0-based):
//   column N   <-> w'  at the first node
//   column N+1 <-> w'  at the last node
//   column N+2 <-> w'' at the first node
//   column N+3 <-> w'' at the last node
// All derivative dofs live in the xi coordinate on [-1, 1].

/// Conventional DQ weighting matrices of the Lagrange basis: A, B, C give
/// nodal values of the 1st, 2nd and 3rd derivative of the interpolant.
struct DerivativeSet {
    NodeGrid grid;
    RealMatrix a;  // A_ij = L_j'(xi_i)
    RealMatrix b;  // B = A*A
    RealMatrix c;  // C = B*A
};

/// Boundary-augmented weighting matrices. Interior rows equal the
/// conventional ones; the first and last row route the end slope and end
/// curvature dofs into the derivative evaluation.
struct ModifiedDerivativeSet {
    NodeGrid grid;
    RealMatrix a_bar;  // N x (N+4), augmented columns identically zero
    RealMatrix b_bar;  // N x (N+4)
    RealMatrix c_bar;  // N x (N+4)
};

/// Values and first three derivatives of the N+4 C^2-Hermite basis
/// functions at the grid nodes. Row i, column j holds the derivative of
/// basis function j at node i; columns follow the convention above.
struct HermiteBasisSet {
    NodeGrid grid;
    RealMatrix g0;  // values (identity over the first N columns)
    RealMatrix g1;
    RealMatrix g2;
    RealMatrix g3;
};

inline DerivativeSet lagrange_derivatives(const NodeGrid& grid) {
    const std::size_t n = grid.order();
    if (n < 2) throw std::invalid_argument("lagrange_derivatives: need at least 2 nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(grid.nodes[i] < grid.nodes[i + 1]))
            throw std::invalid_argument("lagrange_derivatives: nodes must be strictly ascending");

    const auto& x = grid.nodes;
    // pi_i = prod_{k != i} (x_i - x_k)
    std::vector<double> pi(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) pi[i] *= x[i] - x[k];

    DerivativeSet d;
    d.grid = grid;
    d.a = RealMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            d.a(i, j) = pi[i] / ((x[i] - x[j]) * pi[j]);
            diag += 1.0 / (x[i] - x[j]);
        }
        d.a(i, i) = diag;
    }
    d.b = d.a * d.a;
    d.c = d.b * d.a;
    return d;
}

inline ModifiedDerivativeSet modify_for_boundary_dofs(const DerivativeSet& d) {
    const std::size_t n = d.grid.order();
    if (n < 4) throw std::invalid_argument("modify_for_boundary_dofs: need at least 4 nodes");

    ModifiedDerivativeSet m;
    m.grid = d.grid;
    m.a_bar = RealMatrix(n, n + 4);
    m.b_bar = RealMatrix(n, n + 4);
    m.c_bar = RealMatrix(n, n + 4);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.a_bar(i, j) = d.a(i, j);

    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m.b_bar(i, j) = d.b(i, j);
            m.c_bar(i, j) = d.c(i, j);
        }

    // boundary rows: the end derivative is chained through interior nodes
    // only; the end slope/curvature contributions become augmented columns
    for (std::size_t i : {std::size_t{0}, n - 1}) {
        for (std::size_t j = 0; j < n; ++j) {
            double sb = 0.0, sc = 0.0;
            for (std::size_t k = 1; k + 1 < n; ++k) {
                sb += d.a(i, k) * d.a(k, j);
                sc += d.b(i, k) * d.a(k, j);
            }
            m.b_bar(i, j) = sb;
            m.c_bar(i, j) = sc;
        }
        m.b_bar(i, n) = d.a(i, 0);
        m.b_bar(i, n + 1) = d.a(i, n - 1);
        m.c_bar(i, n + 2) = d.a(i, 0);
        m.c_bar(i, n + 3) = d.a(i, n - 1);
    }
    return m;
}

namespace detail {

/// Value and first three derivatives of a low-degree polynomial factor.
struct Poly3 {
    double v, d1, d2, d3;
};

// (x-p)^2 (x-q)^2
inline Poly3 quad_sq(double x, double p, double q) {
    const double u = x - p, w = x - q;
    const double r = u * w;        // r' = u + w, r'' = 2
    const double dr = u + w;
    return {r * r, 2.0 * r * dr, 2.0 * (dr * dr + 2.0 * r), 12.0 * dr};
}

// (x-p) (x-q)^2
inline Poly3 lin_quad(double x, double p, double q) {
    const double u = x - p, w = x - q;
    return {u * w * w, w * w + 2.0 * u * w, 4.0 * w + 2.0 * u, 6.0};
}

// (x-q)^2
inline Poly3 quad(double x, double q) {
    const double w = x - q;
    return {w * w, 2.0 * w, 2.0, 0.0};
}

}  // namespace detail

/// Build the Hermite basis derivative tables. Each basis function is a
/// product L_j(xi) * P(xi) with P of degree <= 4, so derivatives at nodes
/// come from the Leibniz rule against the exact nodal Lagrange derivative
/// values (A, B, C); no differencing is involved.
inline HermiteBasisSet hermite_basis(const NodeGrid& grid) {
    const std::size_t n = grid.order();
    if (n < 4) throw std::invalid_argument("hermite_basis: need at least 4 nodes");
    const DerivativeSet d = lagrange_derivatives(grid);
    const auto& x = grid.nodes;

    HermiteBasisSet h;
    h.grid = grid;
    h.g0 = RealMatrix(n, n + 4);
    h.g1 = RealMatrix(n, n + 4);
    h.g2 = RealMatrix(n, n + 4);
    h.g3 = RealMatrix(n, n + 4);

    // accumulate coeff * L_j * P into column `col` of all four tables
    auto add_product = [&](std::size_t col, std::size_t j, double coeff,
                           auto&& poly_at) {
        for (std::size_t i = 0; i < n; ++i) {
            const detail::Poly3 p = poly_at(x[i]);
            const double lv = (i == j) ? 1.0 : 0.0;
            const double l1 = d.a(i, j);
            const double l2 = d.b(i, j);
            const double l3 = d.c(i, j);
            h.g0(i, col) += coeff * lv * p.v;
            h.g1(i, col) += coeff * (l1 * p.v + lv * p.d1);
            h.g2(i, col) += coeff * (l2 * p.v + 2.0 * l1 * p.d1 + lv * p.d2);
            h.g3(i, col) += coeff * (l3 * p.v + 3.0 * l2 * p.d1 + 3.0 * l1 * p.d2 + lv * p.d3);
        }
    };
    auto add_column = [&](std::size_t dst, std::size_t src, double coeff) {
        for (std::size_t i = 0; i < n; ++i) {
            h.g0(i, dst) += coeff * h.g0(i, src);
            h.g1(i, dst) += coeff * h.g1(i, src);
            h.g2(i, dst) += coeff * h.g2(i, src);
            h.g3(i, dst) += coeff * h.g3(i, src);
        }
    };

    // end curvature and slope functions, then end displacement functions
    for (int side = 0; side < 2; ++side) {
        const std::size_t j = (side == 0) ? 0 : n - 1;
        const std::size_t opp = n - 1 - j;
        const double e = x[j] - x[opp];
        const std::size_t slope_col = n + side;
        const std::size_t curv_col = n + 2 + side;

        // curvature: L_j (xi-xi_j)^2 (xi-xi_opp)^2 / (2 e^2)
        add_product(curv_col, j, 1.0 / (2.0 * e * e),
                    [&](double xi) { return detail::quad_sq(xi, x[j], x[opp]); });

        // slope: L_j (xi-xi_j)(xi-xi_opp)^2 / e^2 - (2 L_j'(xi_j) + 4/e) * curvature
        add_product(slope_col, j, 1.0 / (e * e),
                    [&](double xi) { return detail::lin_quad(xi, x[j], x[opp]); });
        add_column(slope_col, curv_col, -(2.0 * d.a(j, j) + 4.0 / e));

        // end displacement: L_j (xi-xi_opp)^2 / e^2 minus slope/curvature corrections
        add_product(j, j, 1.0 / (e * e),
                    [&](double xi) { return detail::quad(xi, x[opp]); });
        add_column(j, slope_col, -(d.a(j, j) + 2.0 / e));
        add_column(j, curv_col,
                   -(d.b(j, j) + 4.0 * d.a(j, j) / e + 2.0 / (e * e)));
    }

    // interior displacement functions: L_j (xi-xi_1)^2 (xi-xi_N)^2, normalized at xi_j
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double denom = (x[j] - x[0]) * (x[j] - x[0]) * (x[j] - x[n - 1]) * (x[j] - x[n - 1]);
        add_product(j, j, 1.0 / denom,
                    [&](double xi) { return detail::quad_sq(xi, x[0], x[n - 1]); });
    }
    return h;
}

}  // namespace gradqem
