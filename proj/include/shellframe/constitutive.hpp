#pragma once

#include "shellframe/covariant.hpp"
#include "shellframe/kinematics.hpp"
#include "shellframe/surface.hpp"

namespace shellframe {

/// Isotropic elastic material plus shell thickness. Validated on construction.
struct Material {
    double E = 1.0;     // Young's modulus
    double nu = 0.3;    // Poisson ratio, in (-1, 0.5)
    double rho = 1.0;   // mass density
    double h = 0.01;    // thickness

    Material() = default;
    Material(double E_, double nu_, double rho_, double h_);

    /// Extensional stiffness E h / (1 - nu^2).
    double C() const { return E * h / (1.0 - nu * nu); }
    /// Bending stiffness E h^3 / (12 (1 - nu^2)).
    double B() const { return E * h * h * h / (12.0 * (1.0 - nu * nu)); }
};

/// Plane-stress law: sigma = E nu/(1-nu^2) tr(eps) I + E/(1+nu) eps.
Mat2 plane_stress(const Mat2& eps, const Material& mat);

/// The dimensionless stiffness kernel H(eps) = (1-nu) eps + nu tr(eps) I,
/// so that sigma = E/(1-nu^2) H(eps).
Mat2 h_tensor_apply(const Mat2& eps, double nu);

/// Membrane force N and bending moment M per unit length (frame components).
/// Both pick up curvature couplings through dmod = tr(d) I - d and are not
/// symmetric in general:
///   N = C H(eps0) + B dmod H(eps1)
///   M = B (H(eps1) + dmod H(eps0))
struct ResultantPoint {
    Mat2 N;
    Mat2 M;
};

ResultantPoint resultants_at(const Mat2& eps0, const Mat2& eps1,
                             double k1, double k2, const Material& mat);

struct ResultantField {
    Tensor2Field N;
    Tensor2Field M;
};

ResultantField resultants(const StrainState& state, const SurfacePatch& patch,
                          const Material& mat);

/// Transverse shear from moment balance: Q^a = (div M)^a + m^a.
VectorField2 shear_resultant(const Tensor2Field& M, const SurfacePatch& patch);
VectorField2 shear_resultant(const Tensor2Field& M, const SurfacePatch& patch,
                             const VectorField2& moment_load);

/// (N12 - N21) - (M21 k2 - M12 k1); vanishes identically for resultants
/// derived from symmetric strains.
double resultant_constraint_residual(const ResultantPoint& r, double k1, double k2);
ScalarField resultant_constraint_residual(const ResultantField& r, const SurfacePatch& patch);

/// Independent check of the closed-form resultants: integrates the
/// plane-stress field sigma(z) = sigma(eps0 + z eps1) weighted by the
/// complementary shell factor (1 + z dmod_a) through the thickness with
/// n-point Gauss-Legendre quadrature (n in 2..6). Exact for n >= 2 since the
/// integrand is cubic in z.
ResultantPoint thickness_quadrature_oracle(const Mat2& eps0, const Mat2& eps1,
                                           double k1, double k2, const Material& mat,
                                           int npts = 2);

} // namespace shellframe
