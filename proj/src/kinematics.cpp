#include "shellframe/kinematics.hpp"

#include <cmath>

namespace shellframe {

VectorField2 rotation_field(const DisplacementField& disp, const SurfacePatch& patch) {
    ScalarField w1 = frame_partial(disp.w, 1, patch);
    ScalarField w2 = frame_partial(disp.w, 2, patch);
    VectorField2 beta(disp.w.grid);
    for (int i = 0; i < beta.grid.n1; ++i)
        for (int j = 0; j < beta.grid.n2; ++j)
            beta.set(i, j, Vec2(-w1.at(i, j), -w2.at(i, j)));
    return beta;
}

SymTensor2Field membrane_strain(const DisplacementField& disp, const SurfacePatch& patch) {
    // eps0 = (1/2) L_u(a) + w d.
    SymTensor2Field eps = lie_derivative_metric(disp.u, patch);
    for (double& v : eps.v) v *= 0.5;
    const Grid& g = eps.grid;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            double w = disp.w.at(i, j);
            eps.at(i, j, 0) += w * patch.kappa(1, p);
            eps.at(i, j, 2) += w * patch.kappa(2, p);
        }
    return eps;
}

SymTensor2Field bending_strain(const DisplacementField& disp, const SurfacePatch& patch) {
    SymTensor2Field H = covariant_hessian_scalar(disp.w, patch);
    SymTensor2Field L = lie_derivative_curvature(disp.u, patch);
    const Grid& g = H.grid;
    SymTensor2Field eps1(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            double k1 = patch.kappa(1, p), k2 = patch.kappa(2, p);
            double w = disp.w.at(i, j);
            Mat2 d2 = Mat2::Zero();
            d2(0, 0) = k1 * k1;
            d2(1, 1) = k2 * k2;
            eps1.set(i, j, -(H.mat(i, j) - d2 * w - L.mat(i, j)));
        }
    return eps1;
}

StrainState strain_state(const DisplacementField& disp, const SurfacePatch& patch) {
    return {membrane_strain(disp, patch), bending_strain(disp, patch)};
}

SymTensor2Field strain_at_z(const StrainState& state, double z) {
    SymTensor2Field out(state.eps0.grid);
    for (size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = state.eps0.v[k] + z * state.eps1.v[k];
    return out;
}

namespace {

Vec2 hatted_grad(const SurfaceFunction& w, const SurfacePatch& patch, const SurfacePoint& p) {
    return {w.deriv(1, p.a1, p.a2) / patch.A(1, p),
            w.deriv(2, p.a1, p.a2) / patch.A(2, p)};
}

// wh2(a,b) = d-hat_a (d-hat_b w), from analytic first/second partials.
Mat2 hatted_hessian_raw(const SurfaceFunction& w, const SurfacePatch& patch,
                        const SurfacePoint& p) {
    const SurfaceFunction* A[2] = {&patch.A1(), &patch.A2()};
    Mat2 out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double Aa = (*A[a])(p.a1, p.a2);
            double Ab = (*A[b])(p.a1, p.a2);
            double dAb_a = A[b]->deriv(a + 1, p.a1, p.a2);
            double wb = w.deriv(b + 1, p.a1, p.a2);
            double wab = w.deriv2(a + 1, b + 1, p.a1, p.a2);
            out(a, b) = (wab / Ab - wb * dAb_a / (Ab * Ab)) / Aa;
        }
    return out;
}

} // namespace

Vec2 rotation_field_at(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                       const SurfacePoint& p) {
    return -hatted_grad(disp.w, patch, p);
}

Mat2 membrane_strain_at(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                        const SurfacePoint& p) {
    Mat2 eps = 0.5 * lie_derivative_metric_at({disp.u1, disp.u2}, patch, p);
    double w = disp.w(p.a1, p.a2);
    eps(0, 0) += w * patch.kappa(1, p);
    eps(1, 1) += w * patch.kappa(2, p);
    return eps;
}

Mat2 bending_strain_at(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                       const SurfacePoint& p) {
    MidPointGeom g = mid_point_geometry(patch, p);
    Mat2 H = covariant_hessian_kernel(hatted_grad(disp.w, patch, p),
                                      hatted_hessian_raw(disp.w, patch, p), g);
    Mat2 L = lie_derivative_curvature_at({disp.u1, disp.u2}, patch, p);
    double w = disp.w(p.a1, p.a2);
    Mat2 d2 = Mat2::Zero();
    d2(0, 0) = g.k1 * g.k1;
    d2(1, 1) = g.k2 * g.k2;
    return -(H - d2 * w - L);
}

namespace {

struct ShellCoord {
    double a1, a2, z;
};

// Coordinate velocity of the Kirchhoff-Love 3D displacement
// U = (u + z beta, w), beta = -grad-hat w + d.u, divided by the shell
// scale factors to give d(coord)/dt.
Vec3 shell_velocity(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                    const ShellCoord& c) {
    SurfacePoint p{c.a1, c.a2};
    Vec3 h = patch.shell_scale_factors(p, c.z);
    Vec2 beta = -hatted_grad(disp.w, patch, p);
    double u1 = disp.u1(p.a1, p.a2), u2 = disp.u2(p.a1, p.a2);
    beta(0) += patch.kappa(1, p) * u1;
    beta(1) += patch.kappa(2, p) * u2;
    return {(u1 + c.z * beta(0)) / h(0), (u2 + c.z * beta(1)) / h(1),
            disp.w(p.a1, p.a2)};
}

ShellCoord flow3(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                 ShellCoord c, double eps, int substeps = 4) {
    double dt = eps / substeps;
    auto step = [&](const ShellCoord& q, double s, const Vec3& k) {
        return ShellCoord{q.a1 + s * k(0), q.a2 + s * k(1), q.z + s * k(2)};
    };
    for (int s = 0; s < substeps; ++s) {
        Vec3 k1 = shell_velocity(disp, patch, c);
        Vec3 k2 = shell_velocity(disp, patch, step(c, 0.5 * dt, k1));
        Vec3 k3 = shell_velocity(disp, patch, step(c, 0.5 * dt, k2));
        Vec3 k4 = shell_velocity(disp, patch, step(c, dt, k3));
        Vec3 k = (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        c = step(c, dt, k);
    }
    return c;
}

// Pulled-back coordinate components of the shell metric diag(h1^2, h2^2, 1).
Mat3 pullback_metric(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                     const ShellCoord& c, double eps) {
    auto coord = [&](const ShellCoord& q, int i) {
        return i == 0 ? q.a1 : (i == 1 ? q.a2 : q.z);
    };
    ShellCoord q = flow3(disp, patch, c, eps);
    Mat3 J;
    for (int i = 0; i < 3; ++i) {
        double ci = coord(c, i);
        double delta = 1e-5 * std::max(1.0, std::abs(ci));
        ShellCoord cp = c, cm = c;
        (i == 0 ? cp.a1 : (i == 1 ? cp.a2 : cp.z)) = ci + delta;
        (i == 0 ? cm.a1 : (i == 1 ? cm.a2 : cm.z)) = ci - delta;
        ShellCoord qp = flow3(disp, patch, cp, eps);
        ShellCoord qm = flow3(disp, patch, cm, eps);
        for (int k = 0; k < 3; ++k)
            J(k, i) = (coord(qp, k) - coord(qm, k)) / (2.0 * delta);
    }
    const Domain& dom = patch.domain();
    if ((!patch.periodic()[0] && (q.a1 < dom.a1min || q.a1 > dom.a1max)) ||
        (!patch.periodic()[1] && (q.a2 < dom.a2min || q.a2 > dom.a2max)))
        throw domain_error("lie_strain_3d_oracle: flow leaves the patch domain");
    Vec3 hq = patch.shell_scale_factors({q.a1, q.a2}, q.z);
    Mat3 gq = Mat3::Zero();
    gq(0, 0) = hq(0) * hq(0);
    gq(1, 1) = hq(1) * hq(1);
    gq(2, 2) = 1.0;
    return J.transpose() * gq * J;
}

} // namespace

Mat3 lie_strain_3d_oracle(const AnalyticDisplacement& disp, const SurfacePatch& patch,
                          const SurfacePoint& p, double z, double eps) {
    ShellCoord c{p.a1, p.a2, z};
    // Fourth-order stencil in the flow parameter keeps the oracle error
    // well below the O(z^2) terms being measured.
    Mat3 P2p = pullback_metric(disp, patch, c, 2.0 * eps);
    Mat3 P1p = pullback_metric(disp, patch, c, eps);
    Mat3 P1m = pullback_metric(disp, patch, c, -eps);
    Mat3 P2m = pullback_metric(disp, patch, c, -2.0 * eps);
    Mat3 Lg = (-P2p + 8.0 * P1p - 8.0 * P1m + P2m) / (12.0 * eps);
    // Components with respect to the mid-section frame (A1 da1, A2 da2, dz),
    // the frame in which the eps0 + z eps1 expansion is stated.
    Vec3 h{patch.A(1, p), patch.A(2, p), 1.0};
    Mat3 strain;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            strain(i, j) = 0.5 * Lg(i, j) / (h(i) * h(j));
    return strain;
}

} // namespace shellframe
