#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradqem/matrix.hpp"

namespace gradqem {

class singular_matrix_error : public std::runtime_error {
public:
    explicit singular_matrix_error(const std::string& what) : std::runtime_error(what) {}
};

class eigen_convergence_error : public std::runtime_error {
public:
    explicit eigen_convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Solve A*X = B by Gaussian elimination with partial pivoting.
/// Rows of [A|B] are equilibrated by their max magnitude in A before
/// factorization; a pivot below 1e-13 of the largest initial pivot
/// raises singular_matrix_error.
inline RealMatrix solve_linear(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear: A must be square");
    if (b.rows() != a.rows()) throw std::invalid_argument("solve_linear: B row count mismatch");
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();

    RealMatrix lhs = a;
    RealMatrix rhs = b;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r = std::max(r, std::abs(lhs(i, j)));
        if (r == 0.0) throw singular_matrix_error("solve_linear: zero row");
        const double inv = 1.0 / r;
        for (std::size_t j = 0; j < n; ++j) lhs(i, j) *= inv;
        for (std::size_t j = 0; j < m; ++j) rhs(i, j) *= inv;
    }

    const double pivot_floor = 1e-13 * lhs.max_abs();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lhs(i, k)) > std::abs(lhs(piv, k))) piv = i;
        if (std::abs(lhs(piv, k)) < pivot_floor)
            throw singular_matrix_error("solve_linear: pivot below threshold, matrix singular");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lhs(k, j), lhs(piv, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(rhs(k, j), rhs(piv, j));
        }
        const double inv_pivot = 1.0 / lhs(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lhs(i, k) * inv_pivot;
            if (f == 0.0) continue;
            lhs(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) lhs(i, j) -= f * lhs(k, j);
            for (std::size_t j = 0; j < m; ++j) rhs(i, j) -= f * rhs(k, j);
        }
    }

    RealMatrix x(n, m);
    for (std::size_t jc = 0; jc < m; ++jc) {
        for (std::size_t ii = n; ii-- > 0;) {
            double s = rhs(ii, jc);
            for (std::size_t j = ii + 1; j < n; ++j) s -= lhs(ii, j) * x(j, jc);
            x(ii, jc) = s / lhs(ii, ii);
        }
    }
    return x;
}

struct SymEigResult {
    std::vector<double> values;  // ascending
    RealMatrix vectors;          // column k pairs with values[k]
};

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Intended for the dense problems of this project (order <= ~300).
inline SymEigResult sym_eig(const RealMatrix& s_in) {
    if (s_in.rows() != s_in.cols()) throw std::invalid_argument("sym_eig: matrix must be square");
    if (!s_in.is_symmetric(1e-9))
        throw std::invalid_argument("sym_eig: matrix not symmetric to 1e-9 relative tolerance");
    const std::size_t n = s_in.rows();

    RealMatrix s = s_in;
    s.symmetrize();
    RealMatrix v = RealMatrix::identity(n);

    auto off_norm = [&]() {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) sum += s(i, j) * s(i, j);
        return std::sqrt(sum);
    };
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) frob += s(i, j) * s(i, j);
    frob = std::sqrt(frob);

    const int max_sweeps = 50;
    bool converged = (n == 1) || frob == 0.0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_norm() <= 1e-14 * frob) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = s(p, p);
                const double aqq = s(q, q);
                // rotation angle from the standard Jacobi formulas
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                s(p, p) = app - t * apq;
                s(q, q) = aqq + t * apq;
                s(p, q) = 0.0;
                s(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double sip = s(i, p);
                        const double siq = s(i, q);
                        s(i, p) = sip - sn * (siq + tau * sip);
                        s(i, q) = siq + sn * (sip - tau * siq);
                        s(p, i) = s(i, p);
                        s(q, i) = s(i, q);
                    }
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = vip - sn * (viq + tau * vip);
                    v(i, q) = viq + sn * (vip - tau * viq);
                }
            }
        }
    }
    if (!converged && off_norm() > 1e-12 * frob)
        throw eigen_convergence_error("sym_eig: Jacobi iteration did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return s(i, i) < s(j, j); });

    SymEigResult out;
    out.values.resize(n);
    out.vectors = RealMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = s(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

/// Schur complement K_dd - K_db * K_bb^{-1} * K_bd over an index partition.
/// The b set carries no load, so eliminating it is exact. Roundoff
/// asymmetry is removed by symmetrizing the result when K is symmetric.
inline RealMatrix static_condense(const RealMatrix& k,
                                  const std::vector<std::size_t>& b_set,
                                  const std::vector<std::size_t>& d_set) {
    if (k.rows() != k.cols()) throw std::invalid_argument("static_condense: K must be square");
    if (b_set.size() + d_set.size() != k.rows())
        throw std::invalid_argument("static_condense: index sets must partition the dofs");
    if (d_set.empty()) throw std::invalid_argument("static_condense: empty domain set");

    const bool sym = k.is_symmetric(1e-9);
    RealMatrix kdd = k.sub(d_set, d_set);
    if (b_set.empty()) return kdd;

    RealMatrix kbb = k.sub(b_set, b_set);
    RealMatrix kbd = k.sub(b_set, d_set);
    RealMatrix kdb = k.sub(d_set, b_set);
    RealMatrix x;
    try {
        x = solve_linear(kbb, kbd);
    } catch (const singular_matrix_error&) {
        throw singular_matrix_error("static_condense: singular k_bb (ill-posed boundary set)");
    }
    RealMatrix result = kdd - kdb * x;
    if (sym) result.symmetrize();
    return result;
}

/// Determinant kept as mantissa * 10^exponent10 so that entries like
/// e^(k*L) cannot overflow the product of pivots.
struct LogDet {
    Complex mantissa{0.0, 0.0};  // zero, or magnitude in [1, 10)
    double exponent10 = 0.0;

    double log10_abs() const {
        if (mantissa == Complex(0.0, 0.0)) return -std::numeric_limits<double>::infinity();
        return std::log10(std::abs(mantissa)) + exponent10;
    }

    Complex value() const { return mantissa * std::pow(10.0, exponent10); }
};

inline LogDet complex_det(const ComplexMatrix& f_in) {
    const std::size_t n = f_in.order();
    ComplexMatrix f = f_in;
    Complex mant(1.0, 0.0);
    double expo = 0.0;
    int sign = 1;

    auto fold = [&](Complex factor) {
        mant *= factor;
        double m = std::abs(mant);
        if (m == 0.0) return false;
        while (m >= 10.0) {
            mant /= 10.0;
            expo += 1.0;
            m = std::abs(mant);
        }
        while (m < 1.0) {
            mant *= 10.0;
            expo -= 1.0;
            m = std::abs(mant);
        }
        return true;
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f(i, k)) > std::abs(f(piv, k))) piv = i;
        if (std::abs(f(piv, k)) == 0.0) return LogDet{Complex(0.0, 0.0), 0.0};
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f(k, j), f(piv, j));
            sign = -sign;
        }
        if (!fold(f(k, k))) return LogDet{Complex(0.0, 0.0), 0.0};
        const Complex inv = 1.0 / f(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex fac = f(i, k) * inv;
            if (fac == Complex(0.0, 0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) f(i, j) -= fac * f(k, j);
        }
    }
    return LogDet{static_cast<double>(sign) * mant, expo};
}

}  // namespace gradqem
