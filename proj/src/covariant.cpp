#include "shellframe/covariant.hpp"

#include <cmath>

namespace shellframe {

double ConnectionCoefficients::gamma(int a, int c, int b) const {
    // Only Gamma^1_{c2} and Gamma^2_{c1} = -Gamma^1_{c2} survive.
    if (a == 0 && b == 1) return c == 0 ? g112 : g122;
    if (a == 1 && b == 0) return c == 0 ? -g112 : -g122;
    return 0.0;
}

MidPointGeom mid_point_geometry(const SurfacePatch& patch, const SurfacePoint& p) {
    MidPointGeom g;
    g.A1 = patch.A(1, p);
    g.A2 = patch.A(2, p);
    g.k1 = patch.kappa(1, p);
    g.k2 = patch.kappa(2, p);
    g.grad_k1 = Vec2(patch.k1().deriv(1, p.a1, p.a2) / g.A1,
                     patch.k1().deriv(2, p.a1, p.a2) / g.A2);
    g.grad_k2 = Vec2(patch.k2().deriv(1, p.a1, p.a2) / g.A1,
                     patch.k2().deriv(2, p.a1, p.a2) / g.A2);
    double A1A2 = g.A1 * g.A2;
    g.conn.g112 = patch.A1().deriv(2, p.a1, p.a2) / A1A2;
    g.conn.g122 = -patch.A2().deriv(1, p.a1, p.a2) / A1A2;
    return g;
}

Mat2 covariant_grad_vector_kernel(const Vec2& u, const Mat2& duhat, const MidPointGeom& g) {
    Mat2 grad;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double s = duhat(a, b);
            for (int c = 0; c < 2; ++c) s += g.conn.gamma(a, b, c) * u(c);
            grad(a, b) = s;
        }
    return grad;
}

Vec2 covariant_div_tensor_kernel(const Mat2& T, const Mat2 dThat[2], const MidPointGeom& g) {
    Vec2 out = Vec2::Zero();
    for (int a = 0; a < 2; ++a) {
        double s = dThat[0](0, a) + dThat[1](1, a);
        for (int d = 0; d < 2; ++d) s += g.conn.trace(d) * T(d, a);
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d) s += g.conn.gamma(a, b, d) * T(b, d);
        out(a) = s;
    }
    return out;
}

Mat2 covariant_hessian_kernel(const Vec2& wh, const Mat2& wh2, const MidPointGeom& g) {
    Mat2 H;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double s = wh2(a, b);
            for (int c = 0; c < 2; ++c) s -= g.conn.gamma(c, a, b) * wh(c);
            H(a, b) = s;
        }
    return symmetrize(H);
}

Mat2 lie_derivative_metric_kernel(const Vec2& u, const Mat2& duhat, const MidPointGeom& g) {
    Mat2 grad = covariant_grad_vector_kernel(u, duhat, g);
    return grad + grad.transpose();
}

Mat2 lie_derivative_curvature_kernel(const Vec2& u, const Mat2& duhat, const MidPointGeom& g) {
    // L_u(d)_ab = d_ab;c u^c + d_a^c u_b;c + d^c_b u_a;c, with diagonal d.
    Mat2 grad = covariant_grad_vector_kernel(u, duhat, g);
    double k1 = g.k1, k2 = g.k2;
    Mat2 L;
    L(0, 0) = g.grad_k1.dot(u) + 2.0 * k1 * grad(0, 0);
    L(1, 1) = g.grad_k2.dot(u) + 2.0 * k2 * grad(1, 1);
    // d_12;c = Gamma^1_{c2} (k2 - k1)
    double d12c_u = (g.conn.g112 * u(0) + g.conn.g122 * u(1)) * (k2 - k1);
    // L_u(d)_12 = u.grad(d)_12 + d_c2 grad_1 u^c + d_1c grad_2 u^c.
    L(0, 1) = d12c_u + k2 * grad(1, 0) + k1 * grad(0, 1);
    L(1, 0) = L(0, 1);
    return L;
}

ScalarField frame_partial(const ScalarField& f, int dir, const SurfacePatch& patch) {
    ScalarField out = grid_partial(f, dir);
    const Grid& g = f.grid;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j)
            out.at(i, j) /= patch.A(dir, g.point(i, j));
    return out;
}

namespace {

struct GridHattedPartials {
    ScalarField d1, d2;
};

GridHattedPartials hatted(const ScalarField& f, const SurfacePatch& patch) {
    return {frame_partial(f, 1, patch), frame_partial(f, 2, patch)};
}

ScalarField extract(const VectorField2& u, int c) {
    ScalarField f(u.grid);
    for (int i = 0; i < u.grid.n1; ++i)
        for (int j = 0; j < u.grid.n2; ++j) f.at(i, j) = u.at(i, j, c);
    return f;
}

ScalarField extract(const Tensor2Field& T, int a, int b) {
    ScalarField f(T.grid);
    for (int i = 0; i < T.grid.n1; ++i)
        for (int j = 0; j < T.grid.n2; ++j) f.at(i, j) = T.at(i, j, a, b);
    return f;
}

} // namespace

Tensor2Field covariant_grad_vector(const VectorField2& u, const SurfacePatch& patch) {
    const Grid& g = u.grid;
    auto h1 = hatted(extract(u, 0), patch);
    auto h2 = hatted(extract(u, 1), patch);
    Tensor2Field out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            MidPointGeom mp = mid_point_geometry(patch, g.point(i, j));
            Mat2 duhat;
            duhat << h1.d1.at(i, j), h1.d2.at(i, j), h2.d1.at(i, j), h2.d2.at(i, j);
            out.set(i, j, covariant_grad_vector_kernel(u.vec(i, j), duhat, mp));
        }
    return out;
}

VectorField2 covariant_div_tensor(const Tensor2Field& T, const SurfacePatch& patch) {
    const Grid& g = T.grid;
    GridHattedPartials hp[2][2] = {{hatted(extract(T, 0, 0), patch), hatted(extract(T, 0, 1), patch)},
                                   {hatted(extract(T, 1, 0), patch), hatted(extract(T, 1, 1), patch)}};
    VectorField2 out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            MidPointGeom mp = mid_point_geometry(patch, g.point(i, j));
            Mat2 dThat[2];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    dThat[0](a, b) = hp[a][b].d1.at(i, j);
                    dThat[1](a, b) = hp[a][b].d2.at(i, j);
                }
            out.set(i, j, covariant_div_tensor_kernel(T.mat(i, j), dThat, mp));
        }
    return out;
}

ScalarField covariant_div_vector(const VectorField2& q, const SurfacePatch& patch) {
    const Grid& g = q.grid;
    auto h1 = hatted(extract(q, 0), patch);
    auto h2 = hatted(extract(q, 1), patch);
    ScalarField out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            MidPointGeom mp = mid_point_geometry(patch, g.point(i, j));
            out.at(i, j) = h1.d1.at(i, j) + h2.d2.at(i, j) +
                           mp.conn.trace(0) * q.at(i, j, 0) + mp.conn.trace(1) * q.at(i, j, 1);
        }
    return out;
}

SymTensor2Field covariant_hessian_scalar(const ScalarField& w, const SurfacePatch& patch) {
    const Grid& g = w.grid;
    ScalarField w1 = frame_partial(w, 1, patch);
    ScalarField w2 = frame_partial(w, 2, patch);
    auto h1 = hatted(w1, patch);
    auto h2 = hatted(w2, patch);
    SymTensor2Field out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            MidPointGeom mp = mid_point_geometry(patch, g.point(i, j));
            Vec2 wh(w1.at(i, j), w2.at(i, j));
            Mat2 wh2;
            wh2 << h1.d1.at(i, j), h2.d1.at(i, j), h1.d2.at(i, j), h2.d2.at(i, j);
            out.set(i, j, covariant_hessian_kernel(wh, wh2, mp));
        }
    return out;
}

SymTensor2Field lie_derivative_metric(const VectorField2& u, const SurfacePatch& patch) {
    Tensor2Field grad = covariant_grad_vector(u, patch);
    SymTensor2Field out(u.grid);
    for (int i = 0; i < u.grid.n1; ++i)
        for (int j = 0; j < u.grid.n2; ++j)
            out.set(i, j, Mat2(grad.mat(i, j) + grad.mat(i, j).transpose()));
    return out;
}

SymTensor2Field lie_derivative_curvature(const VectorField2& u, const SurfacePatch& patch) {
    const Grid& g = u.grid;
    auto h1 = hatted(extract(u, 0), patch);
    auto h2 = hatted(extract(u, 1), patch);
    SymTensor2Field out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            MidPointGeom mp = mid_point_geometry(patch, g.point(i, j));
            Mat2 duhat;
            duhat << h1.d1.at(i, j), h1.d2.at(i, j), h2.d1.at(i, j), h2.d2.at(i, j);
            out.set(i, j, lie_derivative_curvature_kernel(u.vec(i, j), duhat, mp));
        }
    return out;
}

namespace {

Mat2 analytic_duhat(const AnalyticVectorField2& u, const SurfacePatch& patch,
                    const SurfacePoint& p) {
    double A1 = patch.A(1, p), A2 = patch.A(2, p);
    Mat2 d;
    d << u.u1.deriv(1, p.a1, p.a2) / A1, u.u1.deriv(2, p.a1, p.a2) / A2,
         u.u2.deriv(1, p.a1, p.a2) / A1, u.u2.deriv(2, p.a1, p.a2) / A2;
    return d;
}

} // namespace

Mat2 covariant_grad_vector_at(const AnalyticVectorField2& u, const SurfacePatch& patch,
                              const SurfacePoint& p) {
    MidPointGeom mp = mid_point_geometry(patch, p);
    Vec2 uv(u.u1(p.a1, p.a2), u.u2(p.a1, p.a2));
    return covariant_grad_vector_kernel(uv, analytic_duhat(u, patch, p), mp);
}

Mat2 lie_derivative_metric_at(const AnalyticVectorField2& u, const SurfacePatch& patch,
                              const SurfacePoint& p) {
    Mat2 grad = covariant_grad_vector_at(u, patch, p);
    return grad + grad.transpose();
}

Mat2 lie_derivative_curvature_at(const AnalyticVectorField2& u, const SurfacePatch& patch,
                                 const SurfacePoint& p) {
    MidPointGeom mp = mid_point_geometry(patch, p);
    Vec2 uv(u.u1(p.a1, p.a2), u.u2(p.a1, p.a2));
    return lie_derivative_curvature_kernel(uv, analytic_duhat(u, patch, p), mp);
}

namespace {

// RK4 integration of the coordinate flow d(alpha)/dt = u_frame / A.
SurfacePoint flow(const AnalyticVectorField2& u, const SurfacePatch& patch,
                  SurfacePoint p, double eps, int substeps = 4) {
    auto vel = [&](const SurfacePoint& q) {
        return Vec2(u.u1(q.a1, q.a2) / patch.A(1, q), u.u2(q.a1, q.a2) / patch.A(2, q));
    };
    double dt = eps / substeps;
    for (int s = 0; s < substeps; ++s) {
        Vec2 k1 = vel(p);
        Vec2 k2 = vel({p.a1 + 0.5 * dt * k1(0), p.a2 + 0.5 * dt * k1(1)});
        Vec2 k3 = vel({p.a1 + 0.5 * dt * k2(0), p.a2 + 0.5 * dt * k2(1)});
        Vec2 k4 = vel({p.a1 + dt * k3(0), p.a2 + dt * k3(1)});
        p.a1 += dt / 6.0 * (k1(0) + 2.0 * k2(0) + 2.0 * k3(0) + k4(0));
        p.a2 += dt / 6.0 * (k1(1) + 2.0 * k2(1) + 2.0 * k3(1) + k4(1));
    }
    return p;
}

// Pulled-back coordinate components of the tensor at the flowed point.
Mat2 pullback(const AnalyticVectorField2& u,
              const std::function<Mat2(const SurfacePoint&)>& tensor,
              const SurfacePatch& patch, const SurfacePoint& p, double eps) {
    const double delta1 = 1e-5 * std::max(1.0, std::abs(p.a1));
    const double delta2 = 1e-5 * std::max(1.0, std::abs(p.a2));
    SurfacePoint q = flow(u, patch, p, eps);
    // Jacobian d(phi^k)/d(alpha^i) by central differences of the flow map.
    SurfacePoint q1p = flow(u, patch, {p.a1 + delta1, p.a2}, eps);
    SurfacePoint q1m = flow(u, patch, {p.a1 - delta1, p.a2}, eps);
    SurfacePoint q2p = flow(u, patch, {p.a1, p.a2 + delta2}, eps);
    SurfacePoint q2m = flow(u, patch, {p.a1, p.a2 - delta2}, eps);
    Mat2 J;
    J(0, 0) = (q1p.a1 - q1m.a1) / (2.0 * delta1);
    J(1, 0) = (q1p.a2 - q1m.a2) / (2.0 * delta1);
    J(0, 1) = (q2p.a1 - q2m.a1) / (2.0 * delta2);
    J(1, 1) = (q2p.a2 - q2m.a2) / (2.0 * delta2);
    const Domain& dom = patch.domain();
    if ((!patch.periodic()[0] && (q.a1 < dom.a1min || q.a1 > dom.a1max)) ||
        (!patch.periodic()[1] && (q.a2 < dom.a2min || q.a2 > dom.a2max)))
        throw domain_error("flow_lie_oracle: flow leaves the patch domain");
    // Coordinate components at q: T_ij = t_ab A_a A_b (diagonal frame).
    Mat2 t = tensor(q);
    double Aq1 = patch.A(1, q), Aq2 = patch.A(2, q);
    Mat2 Tc;
    Tc << t(0, 0) * Aq1 * Aq1, t(0, 1) * Aq1 * Aq2,
          t(1, 0) * Aq2 * Aq1, t(1, 1) * Aq2 * Aq2;
    return J.transpose() * Tc * J;
}

} // namespace

Mat2 flow_lie_oracle(const AnalyticVectorField2& u,
                     const std::function<Mat2(const SurfacePoint&)>& tensor,
                     const SurfacePatch& patch, const SurfacePoint& p, double eps) {
    Mat2 plus = pullback(u, tensor, patch, p, eps);
    Mat2 minus = pullback(u, tensor, patch, p, -eps);
    Mat2 Lcoord = (plus - minus) / (2.0 * eps);
    double A1 = patch.A(1, p), A2 = patch.A(2, p);
    Mat2 L;
    L << Lcoord(0, 0) / (A1 * A1), Lcoord(0, 1) / (A1 * A2),
         Lcoord(1, 0) / (A2 * A1), Lcoord(1, 1) / (A2 * A2);
    return L;
}

} // namespace shellframe
