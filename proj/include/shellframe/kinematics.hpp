#pragma once

#include "shellframe/covariant.hpp"
#include "shellframe/grid.hpp"
#include "shellframe/surface.hpp"

namespace shellframe {

/// Kirchhoff-Love displacement: tangential u (mid-section frame components)
/// and normal deflection w (positive along +z).
struct DisplacementField {
    VectorField2 u;
    ScalarField w;

    DisplacementField() = default;
    explicit DisplacementField(const Grid& g) : u(g), w(g) {}
};

/// Closure-based displacement for pointwise (grid-free) evaluation.
struct AnalyticDisplacement {
    SurfaceFunction u1, u2, w;
};

/// Membrane strain eps0 (dimensionless) and bending strain eps1 (1/length).
struct StrainState {
    SymTensor2Field eps0;
    SymTensor2Field eps1;
};

/// beta~_a = -d-hat_a w.
VectorField2 rotation_field(const DisplacementField& disp, const SurfacePatch& patch);

/// eps0 = (1/2) L_u(a) + w d = sym covariant grad u + w d.
SymTensor2Field membrane_strain(const DisplacementField& disp, const SurfacePatch& patch);

/// eps1 = -(Hess w - d^2 w - L_u(d)).
SymTensor2Field bending_strain(const DisplacementField& disp, const SurfacePatch& patch);

StrainState strain_state(const DisplacementField& disp, const SurfacePatch& patch);

/// eps0 + z * eps1.
SymTensor2Field strain_at_z(const StrainState& state, double z);

// ---- Pointwise (analytic) evaluation.

Vec2 rotation_field_at(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                       const SurfacePoint& p);
Mat2 membrane_strain_at(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                        const SurfacePoint& p);
Mat2 bending_strain_at(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                       const SurfacePoint& p);

/// Full 3D linearized strain (1/2) L_U(g) in the mid-section frame, computed by
/// flow-differencing the shell metric (fourth-order stencil in the flow
/// parameter). U is assembled from (u, w) per the Kirchhoff-Love ansatz with
/// beta = beta~ + d.u. Validates the thin-shell expansion.
Mat3 lie_strain_3d_oracle(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                          const SurfacePoint& p, double z, double eps = 1e-2);

} // namespace shellframe
