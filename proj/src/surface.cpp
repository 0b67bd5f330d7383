#include "shellframe/surface.hpp"

#include <cmath>
#include <utility>

namespace shellframe {

namespace {

// Central difference of a closure along one coordinate, one-sided second
// order at non-periodic edges.
double fd1(const Scalar2Fn& f, int dir, double a1, double a2, double h,
           double lo, double hi, bool periodic) {
    auto at = [&](double t) { return dir == 1 ? f(t, a2) : f(a1, t); };
    double x = dir == 1 ? a1 : a2;
    if (periodic || (x - h >= lo && x + h <= hi))
        return (at(x + h) - at(x - h)) / (2.0 * h);
    if (x - h < lo)
        return (-3.0 * at(x) + 4.0 * at(x + h) - at(x + 2.0 * h)) / (2.0 * h);
    return (3.0 * at(x) - 4.0 * at(x - h) + at(x - 2.0 * h)) / (2.0 * h);
}

double fd2(const Scalar2Fn& f, int dir, double a1, double a2, double h,
           double lo, double hi, bool periodic) {
    auto at = [&](double t) { return dir == 1 ? f(t, a2) : f(a1, t); };
    double x = dir == 1 ? a1 : a2;
    if (periodic || (x - h >= lo && x + h <= hi))
        return (at(x + h) - 2.0 * at(x) + at(x - h)) / (h * h);
    if (x - h < lo)
        return (2.0 * at(x) - 5.0 * at(x + h) + 4.0 * at(x + 2.0 * h) - at(x + 3.0 * h)) / (h * h);
    return (2.0 * at(x) - 5.0 * at(x - h) + 4.0 * at(x - 2.0 * h) - at(x - 3.0 * h)) / (h * h);
}

} // namespace

SurfaceFunction constant_function(double value) {
    SurfaceFunction fn;
    fn.f = [value](double, double) { return value; };
    auto zero = [](double, double) { return 0.0; };
    fn.d1 = fn.d2 = fn.d11 = fn.d12 = fn.d22 = zero;
    return fn;
}

void synthesize_partials(SurfaceFunction& fn, const Domain& dom,
                         std::array<bool, 2> periodic, double h1, double h2) {
    const Scalar2Fn f = fn.f;
    const double lo1 = dom.a1min, hi1 = dom.a1max;
    const double lo2 = dom.a2min, hi2 = dom.a2max;
    const bool p1 = periodic[0], p2 = periodic[1];
    if (!fn.d1)
        fn.d1 = [=](double a1, double a2) { return fd1(f, 1, a1, a2, h1, lo1, hi1, p1); };
    if (!fn.d2)
        fn.d2 = [=](double a1, double a2) { return fd1(f, 2, a1, a2, h2, lo2, hi2, p2); };
    if (!fn.d11)
        fn.d11 = [=](double a1, double a2) { return fd2(f, 1, a1, a2, h1, lo1, hi1, p1); };
    if (!fn.d22)
        fn.d22 = [=](double a1, double a2) { return fd2(f, 2, a1, a2, h2, lo2, hi2, p2); };
    if (!fn.d12) {
        const Scalar2Fn g = fn.d1;
        fn.d12 = [=](double a1, double a2) { return fd1(g, 2, a1, a2, h2, lo2, hi2, p2); };
    }
}

std::string to_string(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::plate: return "plate";
        case SurfaceKind::cylinder: return "cylinder";
        case SurfaceKind::sphere: return "sphere";
        case SurfaceKind::cone: return "cone";
        case SurfaceKind::torus: return "torus";
    }
    return "?";
}

SurfaceKind surface_kind_from_string(const std::string& name) {
    if (name == "plate") return SurfaceKind::plate;
    if (name == "cylinder") return SurfaceKind::cylinder;
    if (name == "sphere") return SurfaceKind::sphere;
    if (name == "cone") return SurfaceKind::cone;
    if (name == "torus") return SurfaceKind::torus;
    throw validation_error("unknown surface kind: " + name);
}

SurfacePatch::SurfacePatch(SurfaceFunction A1, SurfaceFunction A2,
                           SurfaceFunction k1, SurfaceFunction k2,
                           Domain domain, std::array<bool, 2> periodic,
                           double validation_tol, int probe_n)
    : A1_(std::move(A1)), A2_(std::move(A2)), k1_(std::move(k1)), k2_(std::move(k2)),
      domain_(domain), periodic_(periodic) {
    for (const SurfaceFunction* fn : {&A1_, &A2_, &k1_, &k2_})
        if (!fn->complete())
            throw validation_error("SurfacePatch: incomplete partials; use from_functions()");
    validate(validation_tol, probe_n);
}

SurfacePatch SurfacePatch::from_functions(Scalar2Fn A1, Scalar2Fn A2,
                                          Scalar2Fn k1, Scalar2Fn k2,
                                          Domain domain, std::array<bool, 2> periodic,
                                          double hFD1, double hFD2,
                                          double validation_tol, int probe_n) {
    if (hFD1 <= 0.0) hFD1 = 1e-5 * domain.extent1();
    if (hFD2 <= 0.0) hFD2 = 1e-5 * domain.extent2();
    SurfaceFunction fa1{std::move(A1), {}, {}, {}, {}, {}};
    SurfaceFunction fa2{std::move(A2), {}, {}, {}, {}, {}};
    SurfaceFunction fk1{std::move(k1), {}, {}, {}, {}, {}};
    SurfaceFunction fk2{std::move(k2), {}, {}, {}, {}, {}};
    for (SurfaceFunction* fn : {&fa1, &fa2, &fk1, &fk2})
        synthesize_partials(*fn, domain, periodic, hFD1, hFD2);
    return SurfacePatch(std::move(fa1), std::move(fa2), std::move(fk1), std::move(fk2),
                        domain, periodic, validation_tol, probe_n);
}

SurfacePatch SurfacePatch::unchecked(SurfaceFunction A1, SurfaceFunction A2,
                                     SurfaceFunction k1, SurfaceFunction k2,
                                     Domain domain, std::array<bool, 2> periodic) {
    SurfacePatch p;
    p.A1_ = std::move(A1);
    p.A2_ = std::move(A2);
    p.k1_ = std::move(k1);
    p.k2_ = std::move(k2);
    p.domain_ = domain;
    p.periodic_ = periodic;
    return p;
}

void SurfacePatch::validate(double tol, int probe_n) const {
    for (int i = 0; i < probe_n; ++i) {
        for (int j = 0; j < probe_n; ++j) {
            SurfacePoint p{domain_.a1min + (i + 0.5) / probe_n * domain_.extent1(),
                           domain_.a2min + (j + 0.5) / probe_n * domain_.extent2()};
            if (A(1, p) <= 0.0 || A(2, p) <= 0.0)
                throw validation_error("SurfacePatch: non-positive Lame parameter");
            auto [c1, c2] = codazzi_residual(p);
            double g = gauss_residual(p);
            if (std::abs(c1) > tol || std::abs(c2) > tol || std::abs(g) > tol)
                throw validation_error("SurfacePatch: Gauss-Codazzi residual exceeds tolerance");
        }
    }
}

FundamentalTensors SurfacePatch::fundamental_tensors(const SurfacePoint& p) const {
    require_inside(p);
    FundamentalTensors ft;
    ft.a = Mat2::Identity();
    double ka = kappa(1, p), kb = kappa(2, p);
    ft.d = Vec2(ka, kb).asDiagonal();
    ft.dmod = ft.d.trace() * ft.a - ft.d;
    ft.total_curvature = ka * kb;
    return ft;
}

std::pair<double, double> SurfacePatch::codazzi_residual(const SurfacePoint& p) const {
    require_inside(p);
    const double a1 = p.a1, a2 = p.a2;
    // A1,2 k2 - (A1 k1),2  and the index-swapped counterpart.
    double r1 = A1_.deriv(2, a1, a2) * k2_(a1, a2) -
                (A1_.deriv(2, a1, a2) * k1_(a1, a2) + A1_(a1, a2) * k1_.deriv(2, a1, a2));
    double r2 = A2_.deriv(1, a1, a2) * k1_(a1, a2) -
                (A2_.deriv(1, a1, a2) * k2_(a1, a2) + A2_(a1, a2) * k2_.deriv(1, a1, a2));
    return {r1, r2};
}

double SurfacePatch::gauss_residual(const SurfacePoint& p) const {
    require_inside(p);
    const double a1 = p.a1, a2 = p.a2;
    double A1 = A1_(a1, a2), A2 = A2_(a1, a2);
    // (A1,2 / A2),2
    double t1 = (A1_.deriv2(2, 2, a1, a2) * A2 - A1_.deriv(2, a1, a2) * A2_.deriv(2, a1, a2)) / (A2 * A2);
    // (A2,1 / A1),1
    double t2 = (A2_.deriv2(1, 1, a1, a2) * A1 - A2_.deriv(1, a1, a2) * A1_.deriv(1, a1, a2)) / (A1 * A1);
    return t1 + t2 + A1 * A2 * k1_(a1, a2) * k2_(a1, a2);
}

Vec3 SurfacePatch::shell_scale_factors(const SurfacePoint& p, double z) const {
    require_inside(p);
    double f1 = 1.0 + z * kappa(1, p);
    double f2 = 1.0 + z * kappa(2, p);
    if (f1 <= 0.0 || f2 <= 0.0)
        throw degenerate_frame_error("shell frame degenerates: |z*kappa| >= 1");
    return {A(1, p) * f1, A(2, p) * f2, 1.0};
}

void SurfacePatch::require_inside(const SurfacePoint& p) const {
    // Periodic coordinates wrap and are never out of range.
    double s1 = 1e-12 * domain_.extent1();
    double s2 = 1e-12 * domain_.extent2();
    if (!periodic_[0] && (p.a1 < domain_.a1min - s1 || p.a1 > domain_.a1max + s1))
        throw domain_error("point outside patch domain");
    if (!periodic_[1] && (p.a2 < domain_.a2min - s2 || p.a2 > domain_.a2max + s2))
        throw domain_error("point outside patch domain");
}

SurfacePatch make_plate(double length, double width) {
    if (length <= 0.0 || width <= 0.0)
        throw validation_error("plate: dimensions must be positive");
    Domain dom{0.0, length, 0.0, width};
    return SurfacePatch(constant_function(1.0), constant_function(1.0),
                        constant_function(0.0), constant_function(0.0),
                        dom, {true, true}, 1e-10);
}

SurfacePatch make_cylinder(double radius, double length) {
    if (radius <= 0.0 || length <= 0.0)
        throw validation_error("cylinder: radius and length must be positive");
    Domain dom{0.0, length, 0.0, 2.0 * M_PI};
    return SurfacePatch(constant_function(1.0), constant_function(radius),
                        constant_function(0.0), constant_function(1.0 / radius),
                        dom, {false, true}, 1e-10);
}

SurfacePatch make_sphere(double radius, double polar_margin) {
    if (radius <= 0.0)
        throw validation_error("sphere: radius must be positive");
    if (polar_margin <= 0.0 || polar_margin >= M_PI / 2.0)
        throw validation_error("sphere: polar margin must be in (0, pi/2)");
    Domain dom{polar_margin, M_PI - polar_margin, 0.0, 2.0 * M_PI};
    const double R = radius;
    SurfaceFunction A2;
    A2.f = [R](double t, double) { return R * std::sin(t); };
    A2.d1 = [R](double t, double) { return R * std::cos(t); };
    A2.d11 = [R](double t, double) { return -R * std::sin(t); };
    auto zero = [](double, double) { return 0.0; };
    A2.d2 = A2.d12 = A2.d22 = zero;
    return SurfacePatch(constant_function(R), std::move(A2),
                        constant_function(1.0 / R), constant_function(1.0 / R),
                        dom, {false, true}, 1e-10);
}

SurfacePatch make_cone(double half_angle, double slant_min, double slant_max) {
    if (half_angle <= 0.0 || half_angle >= M_PI / 2.0)
        throw validation_error("cone: half-angle must be in (0, pi/2)");
    if (slant_min <= 0.0 || slant_max <= slant_min)
        throw validation_error("cone: slant range must satisfy 0 < s0 < s1");
    Domain dom{slant_min, slant_max, 0.0, 2.0 * M_PI};
    const double sp = std::sin(half_angle), cp = std::cos(half_angle);
    auto zero = [](double, double) { return 0.0; };
    SurfaceFunction A2;
    A2.f = [sp](double s, double) { return s * sp; };
    A2.d1 = [sp](double, double) { return sp; };
    A2.d2 = A2.d11 = A2.d12 = A2.d22 = zero;
    SurfaceFunction k2;
    k2.f = [sp, cp](double s, double) { return cp / (s * sp); };
    k2.d1 = [sp, cp](double s, double) { return -cp / (s * s * sp); };
    k2.d11 = [sp, cp](double s, double) { return 2.0 * cp / (s * s * s * sp); };
    k2.d2 = k2.d12 = k2.d22 = zero;
    return SurfacePatch(constant_function(1.0), std::move(A2),
                        constant_function(0.0), std::move(k2),
                        dom, {false, true}, 1e-10);
}

SurfacePatch make_torus(double major_radius, double minor_radius) {
    if (minor_radius <= 0.0 || major_radius <= minor_radius)
        throw validation_error("torus: require 0 < r < R0");
    Domain dom{0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI};
    const double R0 = major_radius, r = minor_radius;
    auto zero = [](double, double) { return 0.0; };
    SurfaceFunction A2;
    A2.f = [R0, r](double v, double) { return R0 + r * std::cos(v); };
    A2.d1 = [r](double v, double) { return -r * std::sin(v); };
    A2.d11 = [r](double v, double) { return -r * std::cos(v); };
    A2.d2 = A2.d12 = A2.d22 = zero;
    SurfaceFunction k2;
    k2.f = [R0, r](double v, double) { return std::cos(v) / (R0 + r * std::cos(v)); };
    k2.d1 = [R0, r](double v, double) {
        double den = R0 + r * std::cos(v);
        return -R0 * std::sin(v) / (den * den);
    };
    k2.d11 = [R0, r](double v, double) {
        double c = std::cos(v), s = std::sin(v), den = R0 + r * c;
        return (-R0 * c * den - 2.0 * R0 * r * s * s) / (den * den * den);
    };
    k2.d2 = k2.d12 = k2.d22 = zero;
    return SurfacePatch(constant_function(r), std::move(A2),
                        constant_function(1.0 / r), std::move(k2),
                        dom, {true, true}, 1e-10);
}

SurfacePatch make_canonical(SurfaceKind kind, const CanonicalParams& p) {
    switch (kind) {
        case SurfaceKind::plate: return make_plate(p.length, p.width);
        case SurfaceKind::cylinder: return make_cylinder(p.radius, p.length);
        case SurfaceKind::sphere: return make_sphere(p.radius, p.polar_margin);
        case SurfaceKind::cone: return make_cone(p.half_angle, p.slant_min, p.slant_max);
        case SurfaceKind::torus: return make_torus(p.major_radius, p.minor_radius);
    }
    throw validation_error("make_canonical: unknown kind");
}

SurfacePatch perturb_curvature(const SurfacePatch& patch, double factor) {
    SurfaceFunction k2 = patch.k2();
    SurfaceFunction scaled;
    auto scale = [factor](const Scalar2Fn& g) {
        return [factor, g](double a, double b) { return factor * g(a, b); };
    };
    scaled.f = scale(k2.f);
    scaled.d1 = scale(k2.d1);
    scaled.d2 = scale(k2.d2);
    scaled.d11 = scale(k2.d11);
    scaled.d12 = scale(k2.d12);
    scaled.d22 = scale(k2.d22);
    return SurfacePatch::unchecked(patch.A1(), patch.A2(), patch.k1(), std::move(scaled),
                                   patch.domain(), patch.periodic());
}

} // namespace shellframe
