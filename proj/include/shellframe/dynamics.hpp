#pragma once

#include <array>
#include <functional>
#include <string>

#include "shellframe/constitutive.hpp"
#include "shellframe/forms.hpp"
#include "shellframe/kinematics.hpp"

namespace shellframe {

/// Surface loads: tangential/normal force per area plus a body moment per
/// area. Face tractions and thickness-integrated body forces enter through q.
struct LoadState {
    VectorField2 q_t;  // q^1, q^2
    ScalarField q_n;   // q^3
    VectorField2 m;    // body moment

    LoadState() = default;
    explicit LoadState(const Grid& g) : q_t(g), q_n(g), m(g) {}
};

/// Equation-of-motion residual; zero for exact solutions.
struct ResidualState {
    VectorField2 tangential;
    ScalarField normal;

    ResidualState() = default;
    explicit ResidualState(const Grid& g) : tangential(g), normal(g) {}
};

struct DynamicState {
    DisplacementField disp;
    DisplacementField velocity;

    DynamicState() = default;
    explicit DynamicState(const Grid& g) : disp(g), velocity(g) {}
};

struct ModeResult {
    double wavenumber = 0.0;
    double omega = 0.0;
    std::string label;
};

// ---- Grid residual evaluators (second-order stencils).

/// Covariant form: r^a = div(N)^a + d^a_b Q^b + q^a - rho h u-ddot^a,
/// r^3 = div(Q) - N:d + q^3 - rho h w-ddot, with Q = div(M) + m.
ResidualState covariant_eom_residual(const DisplacementField& disp,
                                     const DisplacementField& accel,
                                     const Material& mat, const SurfacePatch& patch,
                                     const LoadState& loads);

/// Classical Lame-coefficient form (five rows, Q eliminated through the two
/// moment rows): e.g. A1 A2 rho h u-ddot^1 = d1(A2 N11) + d2(A1 N21)
/// + A1,2 N12 - A2,1 N22 + A1 A2 (k1 Q^1 + q^1).
ResidualState classical_eom_residual(const DisplacementField& disp,
                                     const DisplacementField& accel,
                                     const Material& mat, const SurfacePatch& patch,
                                     const LoadState& loads);

// ---- Pointwise residual evaluators over closure-based resultants.
// Both consume the same N/M closures and differentiate them with
// fourth-order stencils, so the two algebraic routes can be compared far
// below grid truncation error.

struct ResultantProvider {
    std::function<Mat2(const SurfacePoint&)> N;
    std::function<Mat2(const SurfacePoint&)> M;
};

ResultantProvider resultant_provider(const AnalyticDisplacement& disp,
                                     const SurfacePatch& patch, const Material& mat);

struct ResidualPoint {
    Vec2 tangential = Vec2::Zero();
    double normal = 0.0;
};

/// Internal-force balance only (loads and inertia enter both forms
/// identically and cancel in any cross-comparison).
ResidualPoint covariant_eom_residual_at(const ResultantProvider& res,
                                        const SurfacePatch& patch, const SurfacePoint& p);
ResidualPoint classical_eom_residual_at(const ResultantProvider& res,
                                        const SurfacePatch& patch, const SurfacePoint& p);

/// Reduced semi-discrete system after Q-elimination:
/// rho h u-ddot^a = div(N)^a + d^a_b div(M)^b + q^a,
/// rho h w-ddot   = div(div M) - N:d + q^3. Returned in a DisplacementField
/// (u slot = u-ddot, w slot = w-ddot); rotary inertia is neglected.
DisplacementField reduced_acceleration(const DisplacementField& disp, const Material& mat,
                                       const SurfacePatch& patch, const LoadState& loads);

/// One velocity-Verlet step of the reduced system. Throws divergence_error
/// (carrying step_index) when a non-finite value appears.
DynamicState time_step(const DynamicState& state, const Material& mat,
                       const SurfacePatch& patch, const LoadState& loads, double dt,
                       long step_index = 0);

/// Kinetic plus elastic energy, area-weighted (A1 A2 dA) grid sum.
double discrete_energy(const DynamicState& state, const Material& mat,
                       const SurfacePatch& patch);

/// Stability estimate for the explicit integrator: dt <= safety * 2/omega_max
/// with omega_max from the grid-Nyquist bending wavenumber.
double stable_dt(const Grid& grid, const Material& mat, const SurfacePatch& patch,
                 double safety = 0.5);

enum class DispersionKind {
    plate_bending,
    cylinder_breathing,
    sphere_breathing,
    cylinder_axisymmetric,
};

std::string to_string(DispersionKind kind);
DispersionKind dispersion_kind_from_string(const std::string& name);

/// Closed-form frequencies: plate_bending sqrt(B/(rho h)) k^2;
/// cylinder_breathing (1/R) sqrt(E/(rho(1-nu^2)));
/// sphere_breathing (1/R) sqrt(2E/(rho(1-nu)));
/// cylinder_axisymmetric: lower root of the coupled (u1, w) plane-wave
/// system (see cylinder_axisymmetric_roots).
double dispersion_analytic(DispersionKind kind, const Material& mat, double radius,
                           double k);

/// Both roots (ascending) of the 2x2 axial plane-wave eigenproblem obtained
/// by substituting u1, w ~ e^{ik alpha1} into the reduced system on a
/// cylinder of radius R.
std::array<double, 2> cylinder_axisymmetric_roots(const Material& mat, double radius,
                                                  double k);

/// Rayleigh quotient of the reduced operator on a given discrete mode:
/// omega = sqrt(-<phi, accel(phi)> / <phi, rho h phi>), area-weighted.
double numeric_dispersion(const SurfacePatch& patch, const Material& mat,
                          const DisplacementField& mode);

/// Covariant divergence of the 3D stress two-forms tau^i = sigma^{ji} (*theta^j):
/// returns the three 3-forms d tau^i + omega^i_j ^ tau^j. sigma is a symmetric
/// 3x3 field over (alpha1, alpha2, z) in frame components.
std::array<FrameForm, 3> stress_form_divergence_oracle(
    const std::function<Mat3(const ShellPoint&)>& sigma, const SurfacePatch& patch);

} // namespace shellframe
