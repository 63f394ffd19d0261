#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gradqem/assembly.hpp"
#include "gradqem/dq_basis.hpp"
#include "gradqem/gll.hpp"
#include "gradqem/matrix.hpp"

namespace gradqem {

struct BeamModel {
    double young_modulus = 3.0e6;  // E
    double second_moment = 1.0;    // I
    double area = 1.0;             // cross section A
    double density = 1.0;          // rho
    double length = 1.0;           // L
    double gradient_scale = 0.0;   // g >= 0

    void validate() const {
        if (!(young_modulus > 0.0) || !(second_moment > 0.0) || !(area > 0.0) ||
            !(density > 0.0) || !(length > 0.0) || !(gradient_scale >= 0.0))
            throw std::invalid_argument("BeamModel: parameters must be positive (g >= 0)");
    }

    /// omega_bar = omega * L^2 * sqrt(rho A / (E I))
    double nondim_factor() const {
        return length * length * std::sqrt(density * area / (young_modulus * second_moment));
    }
};

enum class BeamBc { SimplySupported, Clamped, FreeFree, Cantilever, ProppedCantilever };
enum class BeamBasis { Lagrange, Hermite };

// Beam dof ids: 0..N-1 nodal deflections, then N = w' at the first node,
// N+1 = w' at the last, N+2 = w'' at the first, N+3 = w'' at the last
// (xi-space derivatives, matching the augmented-column order).

namespace detail {

inline AssembledSystem assemble_beam_common(const BeamModel& model, const NodeGrid& grid,
                                            const RealMatrix& second_rows,
                                            const RealMatrix& third_rows) {
    model.validate();
    const std::size_t n = grid.order();
    if (n < 6) throw std::invalid_argument("beam assembly: need at least 6 nodes");

    const double ei = model.young_modulus * model.second_moment;
    const double len = model.length;
    const double g = model.gradient_scale;
    const double c_bend = 8.0 * ei / (len * len * len);
    const double c_grad = g * g * 32.0 * ei / std::pow(len, 5);

    AssembledSystem sys;
    sys.stiffness = RealMatrix(n + 4, n + 4);
    add_weighted_gram(sys.stiffness, second_rows, grid.weights, c_bend);
    if (g > 0.0) add_weighted_gram(sys.stiffness, third_rows, grid.weights, c_grad);
    mirror_upper(sys.stiffness);

    sys.mass_diag.assign(n + 4, 0.0);
    const double m_scale = model.density * model.area * len / 2.0;
    for (std::size_t i = 0; i < n; ++i) sys.mass_diag[i] = m_scale * grid.weights[i];

    sys.dof_ids.resize(n + 4);
    for (std::size_t i = 0; i < n + 4; ++i) sys.dof_ids[i] = i;
    return sys;
}

}  // namespace detail

inline AssembledSystem assemble_lagrange_beam(const BeamModel& model, const NodeGrid& grid,
                                              const ModifiedDerivativeSet& mods) {
    return detail::assemble_beam_common(model, grid, mods.b_bar, mods.c_bar);
}

inline AssembledSystem assemble_hermite_beam(const BeamModel& model, const NodeGrid& grid,
                                             const HermiteBasisSet& herm) {
    return detail::assemble_beam_common(model, grid, herm.g2, herm.g3);
}

/// Dofs removed by the essential conditions of each support type. The
/// remaining derivative dofs form Delta_b; natural conditions are
/// satisfied weakly by retention.
inline std::vector<std::size_t> beam_essential_dofs(BeamBc bc, std::size_t n) {
    const std::size_t w_first = 0, w_last = n - 1;
    const std::size_t sl_first = n, sl_last = n + 1, cv_first = n + 2, cv_last = n + 3;
    switch (bc) {
        case BeamBc::SimplySupported:
            return {w_first, w_last, cv_first, cv_last};
        case BeamBc::Clamped:
            return {w_first, w_last, sl_first, sl_last, cv_first, cv_last};
        case BeamBc::FreeFree:
            return {};
        case BeamBc::Cantilever:
            return {w_first, sl_first, cv_first};
        case BeamBc::ProppedCantilever:
            return {w_first, sl_first, cv_first, w_last, cv_last};
    }
    throw std::invalid_argument("beam_essential_dofs: unknown boundary condition");
}

inline AssembledSystem apply_beam_bc(const AssembledSystem& sys, BeamBc bc) {
    const std::size_t n = sys.dof_ids.size() - 4;
    const std::vector<std::size_t> drop = beam_essential_dofs(bc, n);

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < sys.dof_ids.size(); ++i)
        if (std::find(drop.begin(), drop.end(), sys.dof_ids[i]) == drop.end()) keep.push_back(i);

    AssembledSystem out;
    out.stiffness = sys.stiffness.sub(keep, keep);
    out.mass_diag.reserve(keep.size());
    out.dof_ids.reserve(keep.size());
    for (std::size_t i : keep) {
        out.mass_diag.push_back(sys.mass_diag[i]);
        out.dof_ids.push_back(sys.dof_ids[i]);
    }
    for (std::size_t i = 0; i < out.dof_ids.size(); ++i) {
        if (out.dof_ids[i] < n) {
            out.domain_set.push_back(i);
            continue;
        }
        // a derivative dof with a vanished stiffness row (g = 0 removes the
        // curvature columns entirely) carries nothing and is dropped
        double row_norm = 0.0;
        for (std::size_t j = 0; j < out.stiffness.cols(); ++j)
            row_norm = std::max(row_norm, std::abs(out.stiffness(i, j)));
        if (row_norm > 0.0) out.boundary_set.push_back(i);
    }
    return out;
}

/// Full free-vibration pipeline for one beam configuration.
inline ModalResult beam_frequencies(const BeamModel& model, BeamBc bc, BeamBasis basis,
                                    std::size_t n, std::size_t mode_count) {
    const NodeGrid grid = gll_grid(n);
    AssembledSystem sys;
    if (basis == BeamBasis::Lagrange) {
        const ModifiedDerivativeSet mods = modify_for_boundary_dofs(lagrange_derivatives(grid));
        sys = assemble_lagrange_beam(model, grid, mods);
    } else {
        sys = assemble_hermite_beam(model, grid, hermite_basis(grid));
    }
    sys = apply_beam_bc(sys, bc);
    return detail::modal_solve(sys, model.nondim_factor(), mode_count);
}

}  // namespace gradqem
