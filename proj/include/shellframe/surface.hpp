#pragma once

#include <array>
#include <functional>
#include <string>

#include "shellframe/errors.hpp"
#include "shellframe/types.hpp"

namespace shellframe {

using Scalar2Fn = std::function<double(double, double)>;

/// Scalar function of (alpha1, alpha2) with first and second partial
/// derivatives. Derivative slots left empty at construction are synthesized
/// by finite differences (see SurfacePatch::from_functions).
struct SurfaceFunction {
    Scalar2Fn f;
    Scalar2Fn d1, d2;
    Scalar2Fn d11, d12, d22;

    double operator()(double a1, double a2) const { return f(a1, a2); }
    double deriv(int dir, double a1, double a2) const {
        return dir == 1 ? d1(a1, a2) : d2(a1, a2);
    }
    double deriv2(int i, int j, double a1, double a2) const {
        if (i == 1 && j == 1) return d11(a1, a2);
        if (i == 2 && j == 2) return d22(a1, a2);
        return d12(a1, a2);
    }
    bool complete() const { return f && d1 && d2 && d11 && d12 && d22; }
};

SurfaceFunction constant_function(double value);

/// Fill empty derivative slots of `fn` by central differences of step `h`,
/// falling back to one-sided stencils at non-periodic domain edges.
void synthesize_partials(SurfaceFunction& fn, const Domain& dom,
                         std::array<bool, 2> periodic, double h1, double h2);

/// First and second fundamental tensors in frame components, plus the
/// modified curvature tensor and the total curvature.
struct FundamentalTensors {
    Mat2 a;               // identity in an orthonormal frame
    Mat2 d;               // diag(kappa1, kappa2)
    Mat2 dmod;            // tr(d) * a - d
    double total_curvature; // K = kappa1 * kappa2
};

enum class SurfaceKind { plate, cylinder, sphere, cone, torus };

std::string to_string(SurfaceKind kind);
SurfaceKind surface_kind_from_string(const std::string& name);

/// Mid-section surface in lines-of-curvature coordinates: Lame parameters
/// A1, A2 and principal curvatures kappa = 1/R. Immutable after construction;
/// all evaluations are pure.
class SurfacePatch {
public:
    /// Constructs and eagerly validates Gauss/Codazzi residuals on a coarse
    /// probe grid. Throws validation_error on an invalid surface.
    SurfacePatch(SurfaceFunction A1, SurfaceFunction A2,
                 SurfaceFunction k1, SurfaceFunction k2,
                 Domain domain, std::array<bool, 2> periodic,
                 double validation_tol = 1e-8, int probe_n = 8);

    /// Value-only closures; partials synthesized by central differences with
    /// absolute steps hFD1/hFD2 (default 1e-5 x extent per coordinate).
    static SurfacePatch from_functions(Scalar2Fn A1, Scalar2Fn A2,
                                       Scalar2Fn k1, Scalar2Fn k2,
                                       Domain domain, std::array<bool, 2> periodic,
                                       double hFD1 = -1.0, double hFD2 = -1.0,
                                       double validation_tol = 1e-4, int probe_n = 8);

    /// Skips eager validation. Used for deliberately invalid fixtures.
    static SurfacePatch unchecked(SurfaceFunction A1, SurfaceFunction A2,
                                  SurfaceFunction k1, SurfaceFunction k2,
                                  Domain domain, std::array<bool, 2> periodic);

    const Domain& domain() const { return domain_; }
    const std::array<bool, 2>& periodic() const { return periodic_; }

    double A(int dir, const SurfacePoint& p) const {
        return dir == 1 ? A1_(p.a1, p.a2) : A2_(p.a1, p.a2);
    }
    double kappa(int dir, const SurfacePoint& p) const {
        return dir == 1 ? k1_(p.a1, p.a2) : k2_(p.a1, p.a2);
    }
    const SurfaceFunction& A1() const { return A1_; }
    const SurfaceFunction& A2() const { return A2_; }
    const SurfaceFunction& k1() const { return k1_; }
    const SurfaceFunction& k2() const { return k2_; }

    FundamentalTensors fundamental_tensors(const SurfacePoint& p) const;

    /// (A1,2 k2 - (A1 k1),2 , A2,1 k1 - (A2 k2),1); both vanish on a valid surface.
    std::pair<double, double> codazzi_residual(const SurfacePoint& p) const;

    /// (A1,2/A2),2 + (A2,1/A1),1 + A1 A2 k1 k2; vanishes on a valid surface.
    double gauss_residual(const SurfacePoint& p) const;

    /// (A1(1+z k1), A2(1+z k2), 1). Throws degenerate_frame_error when
    /// |z kappa_i| >= 1.
    Vec3 shell_scale_factors(const SurfacePoint& p, double z) const;

    void require_inside(const SurfacePoint& p) const;

private:
    SurfacePatch() = default;
    void validate(double tol, int probe_n) const;

    SurfaceFunction A1_, A2_, k1_, k2_;
    Domain domain_;
    std::array<bool, 2> periodic_{false, false};
};

struct CanonicalParams {
    // plate: lengths; cylinder: radius+length; sphere: radius (+polar margin);
    // cone: half_angle + slant range; torus: major/minor radii.
    double radius = 1.0;
    double major_radius = 2.0;
    double minor_radius = 0.5;
    double length = 1.0;
    double width = 1.0;
    double half_angle = 0.5;
    double slant_min = 0.5;
    double slant_max = 2.0;
    double polar_margin = 0.1;

    bool operator==(const CanonicalParams&) const = default;
};

SurfacePatch make_canonical(SurfaceKind kind, const CanonicalParams& params = {});

SurfacePatch make_plate(double length = 2.0 * M_PI, double width = 2.0 * M_PI);
SurfacePatch make_cylinder(double radius, double length = 2.0 * M_PI);
SurfacePatch make_sphere(double radius, double polar_margin = 0.1);
SurfacePatch make_cone(double half_angle, double slant_min, double slant_max);
SurfacePatch make_torus(double major_radius, double minor_radius);

/// Returns an (invalid) copy of `patch` with kappa2 scaled by `factor`.
/// Construction is unchecked; residual operations are expected to flag it.
SurfacePatch perturb_curvature(const SurfacePatch& patch, double factor);

} // namespace shellframe
