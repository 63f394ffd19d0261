#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradqem/linalg.hpp"
#include "gradqem/matrix.hpp"

namespace gradqem {

class assembly_error : public std::runtime_error {
public:
    explicit assembly_error(const std::string& what) : std::runtime_error(what) {}
};

/// Assembled stiffness/mass with the dof bookkeeping needed for boundary
/// treatment. Dof id semantics belong to the producing module (beam or
/// plate); boundary_set / domain_set index the current rows and are
/// filled by the bc step.
struct AssembledSystem {
    RealMatrix stiffness;
    std::vector<double> mass_diag;          // aligned with rows; zero on derivative dofs
    std::vector<std::size_t> dof_ids;       // current row -> original dof id
    std::vector<std::size_t> boundary_set;  // Delta_b
    std::vector<std::size_t> domain_set;    // Delta_d
};

struct ModalResult {
    std::vector<double> omega_bar;  // ascending, requested count (rigid modes included)
    RealMatrix mode_shapes;         // |Delta_d| x modes, M-orthonormal columns
    int rigid_mode_count = 0;
};

namespace detail {

/// K += scale * sum_p w_p * row_p^T row_p over the upper triangle.
inline void add_weighted_gram(RealMatrix& k, const RealMatrix& rows,
                              const std::vector<double>& weights, double scale) {
    const std::size_t npts = rows.rows();
    const std::size_t dim = rows.cols();
    for (std::size_t p = 0; p < npts; ++p) {
        const double w = scale * weights[p];
        for (std::size_t i = 0; i < dim; ++i) {
            const double ri = rows(p, i);
            if (ri == 0.0) continue;
            const double f = w * ri;
            for (std::size_t j = i; j < dim; ++j) k(i, j) += f * rows(p, j);
        }
    }
}

inline void mirror_upper(RealMatrix& k) {
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = i + 1; j < k.cols(); ++j) k(j, i) = k(i, j);
}

inline int count_rigid_modes(const std::vector<double>& omega_all) {
    // largest r such that every mode below r sits under 1e-4 of the first
    // elastic candidate omega_all[r] (or of 1, whichever is larger)
    int rigid = 0;
    for (std::size_t r = 0; r < omega_all.size(); ++r) {
        const double thresh = 1e-4 * std::max(omega_all[r], 1.0);
        bool ok = true;
        for (std::size_t i = 0; i < r; ++i)
            if (!(omega_all[i] < thresh)) ok = false;
        if (ok) rigid = static_cast<int>(r);
    }
    return rigid;
}

/// Shared modal pipeline: condense Delta_b, scale by M^(-1/2), solve the
/// symmetric eigenproblem and nondimensionalize with `nd_factor`.
inline ModalResult modal_solve(const AssembledSystem& sys, double nd_factor,
                               std::size_t mode_count) {
    if (mode_count == 0 || mode_count > sys.domain_set.size())
        throw std::invalid_argument("modal_solve: mode_count exceeds domain dofs");

    RealMatrix k_cond = static_condense(sys.stiffness, sys.boundary_set, sys.domain_set);

    const std::size_t nd = sys.domain_set.size();
    std::vector<double> inv_sqrt_m(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        const double m = sys.mass_diag[sys.domain_set[i]];
        if (!(m > 0.0)) throw assembly_error("modal_solve: nonpositive mass on a domain dof");
        inv_sqrt_m[i] = 1.0 / std::sqrt(m);
    }
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nd; ++j) k_cond(i, j) *= inv_sqrt_m[i] * inv_sqrt_m[j];
    k_cond.symmetrize();

    SymEigResult eig = sym_eig(k_cond);

    const double lam_scale = std::max(std::abs(eig.values.back()), 1.0);
    std::vector<double> omega_all(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        double lam = eig.values[i];
        if (lam < -1e-6 * lam_scale)
            throw assembly_error("modal_solve: negative eigenvalue, inconsistent assembly");
        if (lam < 0.0) lam = 0.0;
        omega_all[i] = std::sqrt(lam) * nd_factor;
    }

    ModalResult res;
    res.rigid_mode_count = count_rigid_modes(omega_all);
    res.omega_bar.assign(omega_all.begin(), omega_all.begin() + mode_count);
    res.mode_shapes = RealMatrix(nd, mode_count);
    for (std::size_t k = 0; k < mode_count; ++k)
        for (std::size_t i = 0; i < nd; ++i)
            res.mode_shapes(i, k) = inv_sqrt_m[i] * eig.vectors(i, k);
    return res;
}

}  // namespace detail
}  // namespace gradqem
