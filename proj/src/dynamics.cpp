#include "shellframe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace shellframe {

namespace {

ScalarField extract(const Tensor2Field& T, int a, int b) {
    ScalarField f(T.grid);
    for (int i = 0; i < T.grid.n1; ++i)
        for (int j = 0; j < T.grid.n2; ++j) f.at(i, j) = T.at(i, j, a, b);
    return f;
}

/// Classical row a of the tensor divergence (per unit A1 A2):
/// a=0: [d1(A2 T11) + d2(A1 T21) + A1,2 T12 - A2,1 T22] / (A1 A2)
/// a=1: [d1(A2 T12) + d2(A1 T22) + A2,1 T21 - A1,2 T11] / (A1 A2)
ScalarField classical_div_row(const Tensor2Field& T, int a, const SurfacePatch& patch) {
    const Grid& g = T.grid;
    ScalarField P1(g), P2(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            P1.at(i, j) = patch.A(2, p) * T.at(i, j, 0, a);
            P2.at(i, j) = patch.A(1, p) * T.at(i, j, 1, a);
        }
    ScalarField dP1 = grid_partial(P1, 1);
    ScalarField dP2 = grid_partial(P2, 2);
    ScalarField out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            double A12 = patch.A1().deriv(2, p.a1, p.a2);
            double A21 = patch.A2().deriv(1, p.a1, p.a2);
            double cross = a == 0 ? A12 * T.at(i, j, 0, 1) - A21 * T.at(i, j, 1, 1)
                                  : A21 * T.at(i, j, 1, 0) - A12 * T.at(i, j, 0, 0);
            out.at(i, j) = (dP1.at(i, j) + dP2.at(i, j) + cross) /
                           (patch.A(1, p) * patch.A(2, p));
        }
    return out;
}

double n_contract_d(const Tensor2Field& N, const SurfacePatch& patch, int i, int j) {
    SurfacePoint p = N.grid.point(i, j);
    return patch.kappa(1, p) * N.at(i, j, 0, 0) + patch.kappa(2, p) * N.at(i, j, 1, 1);
}

} // namespace

ResidualState covariant_eom_residual(const DisplacementField& disp,
                                     const DisplacementField& accel,
                                     const Material& mat, const SurfacePatch& patch,
                                     const LoadState& loads) {
    StrainState s = strain_state(disp, patch);
    ResultantField r = resultants(s, patch, mat);
    VectorField2 divN = covariant_div_tensor(r.N, patch);
    VectorField2 Q = shear_resultant(r.M, patch, loads.m);
    ScalarField divQ = covariant_div_vector(Q, patch);
    const Grid& g = disp.w.grid;
    double rh = mat.rho * mat.h;
    ResidualState out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            for (int a = 0; a < 2; ++a)
                out.tangential.at(i, j, a) = divN.at(i, j, a) +
                                             patch.kappa(a + 1, p) * Q.at(i, j, a) +
                                             loads.q_t.at(i, j, a) - rh * accel.u.at(i, j, a);
            out.normal.at(i, j) = divQ.at(i, j) - n_contract_d(r.N, patch, i, j) +
                                  loads.q_n.at(i, j) - rh * accel.w.at(i, j);
        }
    return out;
}

ResidualState classical_eom_residual(const DisplacementField& disp,
                                     const DisplacementField& accel,
                                     const Material& mat, const SurfacePatch& patch,
                                     const LoadState& loads) {
    StrainState s = strain_state(disp, patch);
    ResultantField r = resultants(s, patch, mat);
    const Grid& g = disp.w.grid;
    double rh = mat.rho * mat.h;

    VectorField2 Q(g);
    for (int a = 0; a < 2; ++a) {
        ScalarField row = classical_div_row(r.M, a, patch);
        for (int i = 0; i < g.n1; ++i)
            for (int j = 0; j < g.n2; ++j)
                Q.at(i, j, a) = row.at(i, j) + loads.m.at(i, j, a);
    }

    ResidualState out(g);
    for (int a = 0; a < 2; ++a) {
        ScalarField row = classical_div_row(r.N, a, patch);
        for (int i = 0; i < g.n1; ++i)
            for (int j = 0; j < g.n2; ++j) {
                SurfacePoint p = g.point(i, j);
                out.tangential.at(i, j, a) = row.at(i, j) +
                                             patch.kappa(a + 1, p) * Q.at(i, j, a) +
                                             loads.q_t.at(i, j, a) - rh * accel.u.at(i, j, a);
            }
    }

    // Normal row: [d1(A2 Q1) + d2(A1 Q2)]/(A1 A2) - N:d + q3 - rho h w-ddot.
    ScalarField P1(g), P2(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            P1.at(i, j) = patch.A(2, p) * Q.at(i, j, 0);
            P2.at(i, j) = patch.A(1, p) * Q.at(i, j, 1);
        }
    ScalarField dP1 = grid_partial(P1, 1);
    ScalarField dP2 = grid_partial(P2, 2);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            out.normal.at(i, j) = (dP1.at(i, j) + dP2.at(i, j)) /
                                      (patch.A(1, p) * patch.A(2, p)) -
                                  n_contract_d(r.N, patch, i, j) + loads.q_n.at(i, j) -
                                  rh * accel.w.at(i, j);
        }
    return out;
}

ResultantProvider resultant_provider(const AnalyticDisplacement& disp,
                                     const SurfacePatch& patch, const Material& mat) {
    const SurfacePatch* pp = &patch;
    auto both = [disp, pp, mat](const SurfacePoint& q) {
        Mat2 e0 = membrane_strain_at(disp, *pp, q);
        Mat2 e1 = bending_strain_at(disp, *pp, q);
        return resultants_at(e0, e1, pp->kappa(1, q), pp->kappa(2, q), mat);
    };
    ResultantProvider res;
    res.N = [both](const SurfacePoint& q) { return both(q).N; };
    res.M = [both](const SurfacePoint& q) { return both(q).M; };
    return res;
}

namespace {

constexpr double kFd4Step = 1e-3;

// Fourth-order first derivative of a closure along coordinate `dir`.
template <typename F>
auto fd4(const F& f, const SurfacePoint& p, int dir) {
    double h = kFd4Step;
    auto shift = [&](double s) {
        return dir == 1 ? SurfacePoint{p.a1 + s, p.a2} : SurfacePoint{p.a1, p.a2 + s};
    };
    // Evaluate eagerly: with Eigen-valued closures the expression template
    // would otherwise outlive its operands.
    using R = std::decay_t<decltype(f(p))>;
    R r = (-f(shift(2.0 * h)) + 8.0 * f(shift(h)) - 8.0 * f(shift(-h)) +
           f(shift(-2.0 * h))) /
          (12.0 * h);
    return r;
}

} // namespace

ResidualPoint covariant_eom_residual_at(const ResultantProvider& res,
                                        const SurfacePatch& patch, const SurfacePoint& p) {
    auto div_at = [&](const std::function<Mat2(const SurfacePoint&)>& T,
                      const SurfacePoint& q) {
        MidPointGeom g = mid_point_geometry(patch, q);
        Mat2 dThat[2] = {fd4(T, q, 1) / g.A1, fd4(T, q, 2) / g.A2};
        return covariant_div_tensor_kernel(T(q), dThat, g);
    };
    auto Q = [&](const SurfacePoint& q) { return div_at(res.M, q); };

    MidPointGeom g = mid_point_geometry(patch, p);
    Vec2 divN = div_at(res.N, p);
    Vec2 Qp = Q(p);
    double divQ = fd4(Q, p, 1)(0) / g.A1 + fd4(Q, p, 2)(1) / g.A2 +
                  g.conn.trace(0) * Qp(0) + g.conn.trace(1) * Qp(1);
    Mat2 Np = res.N(p);
    ResidualPoint out;
    out.tangential = divN + Vec2(g.k1 * Qp(0), g.k2 * Qp(1));
    out.normal = divQ - (g.k1 * Np(0, 0) + g.k2 * Np(1, 1));
    return out;
}

ResidualPoint classical_eom_residual_at(const ResultantProvider& res,
                                        const SurfacePatch& patch, const SurfacePoint& p) {
    auto row = [&](const std::function<Mat2(const SurfacePoint&)>& T, int a,
                   const SurfacePoint& q) {
        auto P1 = [&](const SurfacePoint& r) { return patch.A(2, r) * T(r)(0, a); };
        auto P2 = [&](const SurfacePoint& r) { return patch.A(1, r) * T(r)(1, a); };
        double A12 = patch.A1().deriv(2, q.a1, q.a2);
        double A21 = patch.A2().deriv(1, q.a1, q.a2);
        Mat2 Tq = T(q);
        double cross = a == 0 ? A12 * Tq(0, 1) - A21 * Tq(1, 1)
                              : A21 * Tq(1, 0) - A12 * Tq(0, 0);
        return (fd4(P1, q, 1) + fd4(P2, q, 2) + cross) / (patch.A(1, q) * patch.A(2, q));
    };
    auto Q = [&](const SurfacePoint& q) {
        return Vec2(row(res.M, 0, q), row(res.M, 1, q));
    };

    ResidualPoint out;
    Vec2 Qp = Q(p);
    out.tangential(0) = row(res.N, 0, p) + patch.kappa(1, p) * Qp(0);
    out.tangential(1) = row(res.N, 1, p) + patch.kappa(2, p) * Qp(1);
    auto PQ1 = [&](const SurfacePoint& r) { return patch.A(2, r) * Q(r)(0); };
    auto PQ2 = [&](const SurfacePoint& r) { return patch.A(1, r) * Q(r)(1); };
    Mat2 Np = res.N(p);
    out.normal = (fd4(PQ1, p, 1) + fd4(PQ2, p, 2)) / (patch.A(1, p) * patch.A(2, p)) -
                 (patch.kappa(1, p) * Np(0, 0) + patch.kappa(2, p) * Np(1, 1));
    return out;
}

DisplacementField reduced_acceleration(const DisplacementField& disp, const Material& mat,
                                       const SurfacePatch& patch, const LoadState& loads) {
    StrainState s = strain_state(disp, patch);
    ResultantField r = resultants(s, patch, mat);
    VectorField2 divN = covariant_div_tensor(r.N, patch);
    VectorField2 Q = shear_resultant(r.M, patch, loads.m);
    ScalarField divQ = covariant_div_vector(Q, patch);
    const Grid& g = disp.w.grid;
    double rh = mat.rho * mat.h;
    DisplacementField accel(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            for (int a = 0; a < 2; ++a)
                accel.u.at(i, j, a) = (divN.at(i, j, a) +
                                       patch.kappa(a + 1, p) * Q.at(i, j, a) +
                                       loads.q_t.at(i, j, a)) /
                                      rh;
            accel.w.at(i, j) = (divQ.at(i, j) - n_contract_d(r.N, patch, i, j) +
                                loads.q_n.at(i, j)) /
                               rh;
        }
    return accel;
}

namespace {

void check_finite(const DisplacementField& f, long step_index) {
    const Grid& g = f.w.grid;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            if (!std::isfinite(f.u.at(i, j, 0)) || !std::isfinite(f.u.at(i, j, 1)) ||
                !std::isfinite(f.w.at(i, j)))
                throw divergence_error("time_step: non-finite state at grid point (" +
                                           std::to_string(i) + ", " + std::to_string(j) +
                                           "), step " + std::to_string(step_index),
                                       step_index);
        }
}

void axpy(DisplacementField& y, double a, const DisplacementField& x) {
    for (size_t k = 0; k < y.u.v.size(); ++k) y.u.v[k] += a * x.u.v[k];
    for (size_t k = 0; k < y.w.v.size(); ++k) y.w.v[k] += a * x.w.v[k];
}

} // namespace

DynamicState time_step(const DynamicState& state, const Material& mat,
                       const SurfacePatch& patch, const LoadState& loads, double dt,
                       long step_index) {
    DisplacementField a0 = reduced_acceleration(state.disp, mat, patch, loads);
    DynamicState next = state;
    axpy(next.disp, dt, state.velocity);
    axpy(next.disp, 0.5 * dt * dt, a0);
    DisplacementField a1 = reduced_acceleration(next.disp, mat, patch, loads);
    axpy(next.velocity, 0.5 * dt, a0);
    axpy(next.velocity, 0.5 * dt, a1);
    check_finite(next.disp, step_index);
    check_finite(next.velocity, step_index);
    return next;
}

double discrete_energy(const DynamicState& state, const Material& mat,
                       const SurfacePatch& patch) {
    StrainState s = strain_state(state.disp, patch);
    ResultantField r = resultants(s, patch, mat);
    const Grid& g = state.disp.w.grid;
    double rh = mat.rho * mat.h;
    double total = 0.0;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            double dA = patch.A(1, p) * patch.A(2, p) * g.d1 * g.d2;
            double v1 = state.velocity.u.at(i, j, 0);
            double v2 = state.velocity.u.at(i, j, 1);
            double vw = state.velocity.w.at(i, j);
            double kinetic = 0.5 * rh * (v1 * v1 + v2 * v2 + vw * vw);
            double elastic = 0.5 * ((s.eps0.mat(i, j).array() * r.N.mat(i, j).array()).sum() +
                                    (s.eps1.mat(i, j).array() * r.M.mat(i, j).array()).sum());
            total += (kinetic + elastic) * dA;
        }
    return total;
}

double stable_dt(const Grid& grid, const Material& mat, const SurfacePatch& patch,
                 double safety) {
    double min_spacing = std::numeric_limits<double>::max();
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            SurfacePoint p = grid.point(i, j);
            min_spacing = std::min(min_spacing, patch.A(1, p) * grid.d1);
            min_spacing = std::min(min_spacing, patch.A(2, p) * grid.d2);
        }
    double k_nyq = M_PI / min_spacing;
    double rh = mat.rho * mat.h;
    double omega_bend = std::sqrt(mat.B() / rh) * k_nyq * k_nyq;
    double omega_mem = std::sqrt(mat.E / (mat.rho * (1.0 - mat.nu * mat.nu))) * k_nyq;
    double omega_max = std::sqrt(omega_bend * omega_bend + omega_mem * omega_mem);
    return safety * 2.0 / omega_max;
}

std::string to_string(DispersionKind kind) {
    switch (kind) {
        case DispersionKind::plate_bending: return "plate_bending";
        case DispersionKind::cylinder_breathing: return "cylinder_breathing";
        case DispersionKind::sphere_breathing: return "sphere_breathing";
        case DispersionKind::cylinder_axisymmetric: return "cylinder_axisymmetric";
    }
    throw validation_error("unknown dispersion kind");
}

DispersionKind dispersion_kind_from_string(const std::string& name) {
    if (name == "plate_bending") return DispersionKind::plate_bending;
    if (name == "cylinder_breathing") return DispersionKind::cylinder_breathing;
    if (name == "sphere_breathing") return DispersionKind::sphere_breathing;
    if (name == "cylinder_axisymmetric") return DispersionKind::cylinder_axisymmetric;
    throw validation_error("unknown dispersion kind: " + name);
}

std::array<double, 2> cylinder_axisymmetric_roots(const Material& mat, double R,
                                                  double k) {
    // rho h (u-ddot, w-ddot) = K (u, w) for u1, w ~ e^{ik alpha1}; K has real
    // diagonal and conjugate-signed imaginary off-diagonal entries whose
    // product is real, so the eigenvalues are real.
    double C = mat.C(), B = mat.B(), nu = mat.nu;
    double K00 = -C * k * k;
    double K11 = -k * k * B * (k * k + 2.0 * nu / (R * R)) - C / (R * R);
    double offprod = k * k * (C * nu + B * k * k + B * nu / (R * R)) *
                     (B * k * k + C * nu) / (R * R);
    double mean = 0.5 * (K00 + K11);
    double disc = std::sqrt(0.25 * (K00 - K11) * (K00 - K11) + offprod);
    double rh = mat.rho * mat.h;
    double w2a = -(mean + disc) / rh;
    double w2b = -(mean - disc) / rh;
    double wa = std::sqrt(std::max(0.0, w2a));
    double wb = std::sqrt(std::max(0.0, w2b));
    if (wa > wb) std::swap(wa, wb);
    return {wa, wb};
}

double dispersion_analytic(DispersionKind kind, const Material& mat, double radius,
                           double k) {
    if (!(mat.E > 0.0 && mat.rho > 0.0 && mat.h > 0.0))
        throw validation_error("dispersion_analytic: invalid material");
    switch (kind) {
        case DispersionKind::plate_bending:
            return std::sqrt(mat.B() / (mat.rho * mat.h)) * k * k;
        case DispersionKind::cylinder_breathing:
            return std::sqrt(mat.E / (mat.rho * (1.0 - mat.nu * mat.nu))) / radius;
        case DispersionKind::sphere_breathing:
            return std::sqrt(2.0 * mat.E / (mat.rho * (1.0 - mat.nu))) / radius;
        case DispersionKind::cylinder_axisymmetric:
            return cylinder_axisymmetric_roots(mat, radius, k)[0];
    }
    throw validation_error("unknown dispersion kind");
}

double numeric_dispersion(const SurfacePatch& patch, const Material& mat,
                          const DisplacementField& mode) {
    LoadState loads(mode.w.grid);
    DisplacementField accel = reduced_acceleration(mode, mat, patch, loads);
    const Grid& g = mode.w.grid;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            double dA = patch.A(1, p) * patch.A(2, p) * g.d1 * g.d2;
            double dot = mode.u.at(i, j, 0) * accel.u.at(i, j, 0) +
                         mode.u.at(i, j, 1) * accel.u.at(i, j, 1) +
                         mode.w.at(i, j) * accel.w.at(i, j);
            double norm = mode.u.at(i, j, 0) * mode.u.at(i, j, 0) +
                          mode.u.at(i, j, 1) * mode.u.at(i, j, 1) +
                          mode.w.at(i, j) * mode.w.at(i, j);
            // reduced_acceleration already folds in 1/(rho h): the quotient is
            // -<phi, phi-ddot> / <phi, phi>.
            num += -dot * dA;
            den += norm * dA;
        }
    if (den <= 0.0) throw validation_error("numeric_dispersion: zero mode shape");
    return std::sqrt(std::max(0.0, num / den));
}

std::array<FrameForm, 3> stress_form_divergence_oracle(
    const std::function<Mat3(const ShellPoint&)>& sigma, const SurfacePatch& patch) {
    // tau^i = sigma^{ji} *theta^j with *theta^1 = th2^th3, *theta^2 = -th1^th3,
    // *theta^3 = th1^th2; two-form slots are ordered {12},{13},{23}.
    std::array<FrameForm, 3> tau{FrameForm::zero(2), FrameForm::zero(2),
                                 FrameForm::zero(2)};
    for (int i = 0; i < 3; ++i) {
        tau[i].component(0) = Field3([sigma, i](const ShellPoint& p) { return sigma(p)(2, i); });
        tau[i].component(1) = Field3([sigma, i](const ShellPoint& p) { return -sigma(p)(1, i); });
        tau[i].component(2) = Field3([sigma, i](const ShellPoint& p) { return sigma(p)(0, i); });
    }
    ConnectionMatrix conn = shell_connection(patch);
    std::array<FrameForm, 3> out{FrameForm::zero(3), FrameForm::zero(3),
                                 FrameForm::zero(3)};
    for (int i = 0; i < 3; ++i) {
        FrameForm div = exterior_derivative(tau[i], patch);
        for (int j = 0; j < 3; ++j)
            if (j != i) div = div + wedge(conn.omega(i + 1, j + 1), tau[j]);
        out[i] = div;
    }
    return out;
}

} // namespace shellframe
