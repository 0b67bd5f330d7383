// Acceptance gate: one pass/fail line per criterion, with the measured
// quantity and the pinned tolerance. Exit status is the number of failures.

#include <chrono>
#include <thread>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "shellframe/commands.hpp"
#include "shellframe/config.hpp"
#include "shellframe/constitutive.hpp"
#include "shellframe/covariant.hpp"
#include "shellframe/dynamics.hpp"
#include "shellframe/fieldfile.hpp"
#include "shellframe/forms.hpp"
#include "shellframe/kinematics.hpp"
#include "shellframe/surface.hpp"

#include "test_support.hpp"

#ifndef SHELLFRAME_CLI_PATH
#define SHELLFRAME_CLI_PATH ""
#endif
#ifndef SHELLFRAME_CONFIG_DIR
#define SHELLFRAME_CONFIG_DIR ""
#endif

using namespace shellframe;
using namespace shellframe::testing;

namespace {

int g_failures = 0;

void report(int idx, const char* title, bool pass, const std::string& detail) {
    std::printf("criterion %2d [%s]: %s (%s)\n", idx, title, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<SurfacePoint> probe_grid(const SurfacePatch& patch, int n) {
    const Domain& dom = patch.domain();
    std::vector<SurfacePoint> pts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pts.push_back({dom.a1min + dom.extent1() * (i + 0.5) / n,
                           dom.a2min + dom.extent2() * (j + 0.5) / n});
    return pts;
}

// Fourth-order central difference of a point closure along coordinate dir.
template <typename F>
auto deriv4(F&& f, const SurfacePoint& p, int dir, double step) {
    auto shift = [&](double s) {
        SurfacePoint q = p;
        (dir == 1 ? q.a1 : q.a2) += s;
        return f(q);
    };
    using R = std::decay_t<decltype(f(p))>;
    R out = (shift(-2 * step) - R(8.0 * shift(-step)) + R(8.0 * shift(step)) -
             shift(2 * step));
    return R(out / (12.0 * step));
}

double deriv4s(const std::function<double(const SurfacePoint&)>& f, const SurfacePoint& p,
               int dir, double step) {
    auto shift = [&](double s) {
        SurfacePoint q = p;
        (dir == 1 ? q.a1 : q.a2) += s;
        return f(q);
    };
    return (shift(-2 * step) - 8.0 * shift(-step) + 8.0 * shift(step) - shift(2 * step)) /
           (12.0 * step);
}

// ---- 1. Geometry validity -------------------------------------------------

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    double h = 0.01;
    double worst = 0.0;
    for (SurfaceKind kind : {SurfaceKind::plate, SurfaceKind::cylinder, SurfaceKind::sphere,
                             SurfaceKind::cone, SurfaceKind::torus}) {
        SurfacePatch patch = make_canonical(kind);
        auto torsion = torsion_residual(patch);
        auto curvature = curvature_residual(patch);
        for (const SurfacePoint& p : probe_grid(patch, 8)) {
            auto [c1, c2] = patch.codazzi_residual(p);
            worst = std::max({worst, std::abs(c1), std::abs(c2),
                              std::abs(patch.gauss_residual(p))});
            for (double z : {-h / 2, 0.0, h / 2}) {
                ShellPoint sp{p.a1, p.a2, z};
                for (const FrameForm& f : torsion) worst = std::max(worst, f.max_abs(sp));
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        worst = std::max(worst, curvature[i][j].max_abs(sp));
            }
        }
    }

    // Finite-difference partials: residual drops ~4x per halving of the step.
    double R0 = 2.0, r = 0.5;
    Domain dom{0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI};
    auto A1 = [r](double, double) { return r; };
    auto A2 = [R0, r](double v, double) { return R0 + r * std::cos(v); };
    auto k1 = [r](double, double) { return 1.0 / r; };
    auto k2 = [R0, r](double v, double) { return std::cos(v) / (R0 + r * std::cos(v)); };
    double res[2];
    double steps[2] = {1e-2, 5e-3};
    for (int s = 0; s < 2; ++s) {
        SurfacePatch patch = SurfacePatch::from_functions(A1, A2, k1, k2, dom, {true, true},
                                                          steps[s], steps[s], 1.0);
        double w = 0.0;
        for (const SurfacePoint& p : probe_grid(patch, 8)) {
            auto [c1, c2] = patch.codazzi_residual(p);
            w = std::max({w, std::abs(c1), std::abs(c2), std::abs(patch.gauss_residual(p))});
        }
        res[s] = w;
    }
    double ratio = res[0] / res[1];
    double dt = seconds_since(t0);
    bool pass = worst <= 1e-8 && ratio > 3.0 && ratio < 5.0 && dt < 1.0;
    report(1, "geometry validity", pass,
           "max residual " + num(worst) + " <= 1e-8, FD ratio " + num(ratio) +
               " in (3,5), " + num(dt) + " s < 1 s");
}

// ---- 2. Lie-derivative correctness -----------------------------------------

void criterion_2() {
    double worst_dev = 0.0;
    auto metric = [](const SurfacePoint&) { return Mat2::Identity().eval(); };
    for (int which = 0; which < 2; ++which) {
        SurfacePatch patch = which == 0 ? make_sphere(1.0) : make_torus(2.0, 0.5);
        const SurfacePatch* pp = &patch;
        auto curv = [pp](const SurfacePoint& q) {
            Mat2 d = Mat2::Zero();
            d(0, 0) = pp->kappa(1, q);
            d(1, 1) = pp->kappa(2, q);
            return d;
        };
        // Fit the slope of the sup-norm error over the 5-field family: a single
        // field can have an accidentally tiny eps^2 coefficient, which parks its
        // error on the oracle's finite-difference floor and corrupts a per-field fit.
        std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
        std::vector<double> err_a(eps.size(), 0.0), err_d(eps.size(), 0.0);
        for (unsigned seed = 1; seed <= 5; ++seed) {
            AnalyticVectorField2 u = random_tangent_field(patch, seed, 0.5);
            SurfacePoint p{patch.domain().a1min + (0.3 + 0.07 * seed) * patch.domain().extent1(),
                           patch.domain().a2min + (0.6 - 0.05 * seed) * patch.domain().extent2()};
            Mat2 la = lie_derivative_metric_at(u, patch, p);
            Mat2 ld = lie_derivative_curvature_at(u, patch, p);
            for (size_t k = 0; k < eps.size(); ++k) {
                err_a[k] = std::max(err_a[k], (flow_lie_oracle(u, metric, patch, p, eps[k]) - la)
                                                  .cwiseAbs()
                                                  .maxCoeff());
                err_d[k] = std::max(err_d[k], (flow_lie_oracle(u, curv, patch, p, eps[k]) - ld)
                                                  .cwiseAbs()
                                                  .maxCoeff());
            }
        }
        worst_dev = std::max(worst_dev, std::abs(loglog_slope(eps, err_a) - 2.0));
        worst_dev = std::max(worst_dev, std::abs(loglog_slope(eps, err_d) - 2.0));
    }
    report(2, "Lie derivative vs flow oracle", worst_dev <= 0.1,
           "max |order - 2.0| = " + num(worst_dev) + " <= 0.1, 5 random fields on sphere and torus");
}

// ---- 3. Strain expansion ----------------------------------------------------

void criterion_3() {
    double worst_dev = 0.0, worst_e33 = 0.0, worst_shear = 0.0;
    for (int which = 0; which < 2; ++which) {
        double R = 1.0;
        SurfacePatch patch = which == 0 ? make_sphere(R) : make_cylinder(R);
        double h = R / 100.0;
        AnalyticDisplacement disp = random_displacement(patch, 7 + which, 0.05);
        // Slope of the sup-norm defect over the probe set: per-point fits break
        // down where the local z^2 coefficient dips to the oracle noise floor.
        std::vector<double> zs{h / 2, h / 4, h / 8}, errs(zs.size(), 0.0);
        for (const SurfacePoint& p : interior_points(patch, 2)) {
            Mat2 e0 = membrane_strain_at(disp, patch, p);
            Mat2 e1 = bending_strain_at(disp, patch, p);
            for (size_t k = 0; k < zs.size(); ++k) {
                Mat3 full = lie_strain_3d_oracle(disp, patch, p, zs[k]);
                Mat2 tangent = full.topLeftCorner<2, 2>();
                errs[k] = std::max(errs[k], (tangent - (e0 + zs[k] * e1)).cwiseAbs().maxCoeff());
                worst_e33 = std::max(worst_e33, std::abs(full(2, 2)));
            }
            Mat3 mid = lie_strain_3d_oracle(disp, patch, p, 0.0);
            worst_shear = std::max({worst_shear, std::abs(mid(0, 2)), std::abs(mid(1, 2))});
        }
        worst_dev = std::max(worst_dev, std::abs(loglog_slope(zs, errs) - 2.0));
    }
    bool pass = worst_dev <= 0.15 && worst_e33 <= 1e-10 && worst_shear <= 1e-8;
    report(3, "thickness expansion of 3D strain", pass,
           "max |order - 2.0| = " + num(worst_dev) + " <= 0.15, eps33 " + num(worst_e33) +
               " <= 1e-10, eps_a3(z=0) " + num(worst_shear) + " <= 1e-8");
}

// ---- 4. Rigid-motion annihilation -------------------------------------------

void criterion_4() {
    double worst = 0.0;
    auto run = [&](const SurfacePatch& patch, const std::vector<AnalyticDisplacement>& gens) {
        for (const AnalyticDisplacement& g : gens)
            for (const SurfacePoint& p : interior_points(patch, 4)) {
                worst = std::max(worst, membrane_strain_at(g, patch, p).cwiseAbs().maxCoeff());
                worst = std::max(worst, bending_strain_at(g, patch, p).cwiseAbs().maxCoeff());
            }
    };
    run(make_plate(), plate_isometries());
    run(make_cylinder(1.3), cylinder_isometries());
    run(make_sphere(1.0), sphere_isometries());
    report(4, "rigid motions produce zero strain", worst <= 1e-8,
           "max |eps0|,|eps1| over all isometry generators = " + num(worst) + " <= 1e-8");
}

// ---- 5. Constitutive identities ----------------------------------------------

void criterion_5() {
    Material mat(1.7, 0.32, 1.0, 0.02);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst_rel = 0.0, worst_constraint = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Mat2 e0, e1;
        e0 << U(rng), U(rng), 0.0, U(rng);
        e0(1, 0) = e0(0, 1);
        e1 << U(rng), U(rng), 0.0, U(rng);
        e1(1, 0) = e1(0, 1);
        double k1 = U(rng), k2 = U(rng);
        ResultantPoint r = resultants_at(e0, e1, k1, k2, mat);
        ResultantPoint q = thickness_quadrature_oracle(e0, e1, k1, k2, mat, 2);
        double scale = std::max({r.N.cwiseAbs().maxCoeff(), r.M.cwiseAbs().maxCoeff(), 1e-30});
        double diff = std::max((r.N - q.N).cwiseAbs().maxCoeff(),
                               (r.M - q.M).cwiseAbs().maxCoeff());
        worst_rel = std::max(worst_rel, diff / scale);
        worst_constraint =
            std::max(worst_constraint, std::abs(resultant_constraint_residual(r, k1, k2)));
    }
    bool pass = worst_rel <= 1e-13 && worst_constraint <= 1e-12;
    report(5, "resultants vs thickness quadrature", pass,
           "max rel diff " + num(worst_rel) + " <= 1e-13, constraint residual " +
               num(worst_constraint) + " <= 1e-12, 50 random states");
}

// ---- 6. Classical vs covariant equations of motion -----------------------------

void criterion_6() {
    auto t0 = std::chrono::steady_clock::now();
    Material mat(1.0, 0.3, 1.0, 0.02);
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
        SurfacePatch patch = which == 0 ? make_sphere(1.0) : make_cylinder(1.6);
        AnalyticDisplacement disp = random_displacement(patch, 31 + which, 0.1);
        ResultantProvider res = resultant_provider(disp, patch, mat);
        std::vector<SurfacePoint> pts = probe_grid(patch, 32);
        // Residual evaluation is pure; split the probe set across threads.
        unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
        std::vector<double> partial(nthreads, 0.0);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (size_t i = t; i < pts.size(); i += nthreads) {
                    ResidualPoint a = classical_eom_residual_at(res, patch, pts[i]);
                    ResidualPoint b = covariant_eom_residual_at(res, patch, pts[i]);
                    partial[t] =
                        std::max({partial[t], (a.tangential - b.tangential).cwiseAbs().maxCoeff(),
                                  std::abs(a.normal - b.normal)});
                }
            });
        for (std::thread& th : pool) th.join();
        for (double v : partial) worst = std::max(worst, v);
    }
    double dt = seconds_since(t0);
    bool pass = worst <= 1e-8 && dt < 5.0;
    report(6, "classical vs covariant EOM", pass,
           "max residual difference " + num(worst) + " <= 1e-8 on 32x32 points, " + num(dt) +
               " s < 5 s");
}

// ---- 7. Dispersion limits -------------------------------------------------------

void criterion_7() {
    auto t0 = std::chrono::steady_clock::now();

    // Cylinder breathing mode: derivative-free up to algebra, exact to roundoff.
    double Rc = 1.3;
    SurfacePatch cyl = make_cylinder(Rc);
    Material cyl_mat(2.0, 0.3, 1.5, 1e-4);
    Grid cyl_grid(8, 16, cyl.domain(), false, true);
    DisplacementField breath(cyl_grid);
    for (double& v : breath.w.v) v = 1.0;
    double cyl_rel =
        std::abs(numeric_dispersion(cyl, cyl_mat, breath) -
                 dispersion_analytic(DispersionKind::cylinder_breathing, cyl_mat, Rc, 0.0)) /
        dispersion_analytic(DispersionKind::cylinder_breathing, cyl_mat, Rc, 0.0);

    // Sphere breathing mode: the operator keeps an O(h^2/R^2) bending
    // correction absent from the membrane closed form, so probe the membrane
    // limit h -> 0.
    double Rs = 1.0;
    SurfacePatch sph = make_sphere(Rs);
    Material sph_mat(1.0, 0.3, 1.0, 1e-6 * Rs);
    Grid sph_grid(8, 16, sph.domain(), false, true);
    DisplacementField sbreath(sph_grid);
    for (double& v : sbreath.w.v) v = 1.0;
    double sph_rel =
        std::abs(numeric_dispersion(sph, sph_mat, sbreath) -
                 dispersion_analytic(DispersionKind::sphere_breathing, sph_mat, Rs, 0.0)) /
        dispersion_analytic(DispersionKind::sphere_breathing, sph_mat, Rs, 0.0);

    // Plate bending branch: 1% at 64 points with second-order convergence.
    SurfacePatch plate = make_plate();
    Material plate_mat(1.0, 0.3, 1.0, 0.05);
    double k = 1.0;
    double exact = dispersion_analytic(DispersionKind::plate_bending, plate_mat, 0.0, k);
    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
        Grid grid(n, n, plate.domain(), true, true);
        DisplacementField mode(grid);
        for (int i = 0; i < grid.n1; ++i)
            for (int j = 0; j < grid.n2; ++j)
                mode.w.at(i, j) = std::cos(k * grid.point(i, j).a1);
        errs.push_back(std::abs(numeric_dispersion(plate, plate_mat, mode) - exact) / exact);
    }
    double ratio1 = errs[0] / errs[1], ratio2 = errs[1] / errs[2];
    double dt = seconds_since(t0);
    bool pass = cyl_rel <= 1e-12 && sph_rel <= 1e-12 && errs[1] <= 1e-2 && ratio1 > 3.5 &&
                ratio1 < 4.5 && ratio2 > 3.5 && ratio2 < 4.5 && dt < 10.0;
    report(7, "dispersion limits", pass,
           "cylinder breathing rel err " + num(cyl_rel) + " <= 1e-12, sphere " + num(sph_rel) +
               " <= 1e-12, plate err@64 " + num(errs[1]) + " <= 1e-2, ratios " + num(ratio1) +
               ", " + num(ratio2) + " in (3.5,4.5), " + num(dt) + " s < 10 s");
}

// ---- 8. Time integration -----------------------------------------------------------

void criterion_8() {
    double R = 1.0;
    SurfacePatch cyl = make_cylinder(R);
    Material mat(1.0, 0.3, 1.0, 1e-3);
    Grid grid(8, 8, cyl.domain(), false, true);
    double omega = dispersion_analytic(DispersionKind::cylinder_breathing, mat, R, 0.0);
    double T = 2.0 * M_PI / omega;
    double dt = T / 200.0;

    DynamicState state(grid);
    for (double& v : state.disp.w.v) v = 0.01;
    LoadState loads(grid);
    double e0 = discrete_energy(state, mat, cyl);

    std::vector<double> crossings;
    double prev_w = state.disp.w.at(4, 4);
    for (long s = 1; s <= 2000; ++s) {  // 10 periods
        state = time_step(state, mat, cyl, loads, dt, s);
        double w = state.disp.w.at(4, 4);
        if (prev_w < 0.0 && w >= 0.0)
            crossings.push_back((s - 1 + prev_w / (prev_w - w)) * dt);
        prev_w = w;
    }
    double drift = std::abs(discrete_energy(state, mat, cyl) - e0) / e0;
    double period_err = 1.0;
    if (crossings.size() >= 2) {
        double period = (crossings.back() - crossings.front()) / (crossings.size() - 1);
        period_err = std::abs(period - T) / T;
    }
    bool pass = period_err <= 0.005 && drift <= 0.01;
    report(8, "breathing-mode integration over 10 periods", pass,
           "period error " + num(period_err) + " <= 0.005, energy drift " + num(drift) +
               " <= 0.01, dt = T/200");
}

// ---- 9. Stress-form consistency ------------------------------------------------------

// Thickness integral int f(z) (1 + z k1)(1 + z k2) dz by trapezoid at n points.
double trapz_weighted(const std::function<double(double)>& f, double k1, double k2, double h,
                      int n) {
    double sum = 0.0, dz = h / (n - 1);
    for (int i = 0; i < n; ++i) {
        double z = -h / 2 + i * dz;
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sum += w * f(z) * (1.0 + z * k1) * (1.0 + z * k2) * dz;
    }
    return sum;
}

void criterion_9() {
    double R = 1.6;
    SurfacePatch cyl = make_cylinder(R);
    Material mat(1.0, 0.3, 1.0, 0.01);
    double h = mat.h;
    AnalyticDisplacement disp = random_displacement(cyl, 5, 0.1);

    // Membrane/bending stress sigma(z) = plane_stress(eps0 + z eps1), no
    // transverse components.
    auto sigma_t = [&](const ShellPoint& sp) {
        SurfacePoint p{sp.a1, sp.a2};
        Mat2 s = plane_stress(membrane_strain_at(disp, cyl, p) +
                                  sp.z * bending_strain_at(disp, cyl, p),
                              mat);
        Mat3 out = Mat3::Zero();
        out.topLeftCorner<2, 2>() = s;
        return out;
    };
    // Weighted thickness integrals of sigma: N^{ab} = int sigma^{ab} (1 + z k_b') dz
    // with k_b' the complementary curvature (3-point Gauss, exact for the
    // quadratic integrand).
    auto N_of = [&](const SurfacePoint& p) {
        Mat2 e0 = membrane_strain_at(disp, cyl, p);
        Mat2 e1 = bending_strain_at(disp, cyl, p);
        double k1 = cyl.kappa(1, p), k2 = cyl.kappa(2, p);
        Mat2 N = Mat2::Zero();
        double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
        double wts[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        for (int q = 0; q < 3; ++q) {
            double z = 0.5 * h * nodes[q];
            Mat2 s = plane_stress(e0 + z * e1, mat);
            Mat2 w = Mat2::Identity();
            w(0, 0) = 1.0 + z * k2;  // row 1 carries the alpha2 shell factor
            w(1, 1) = 1.0 + z * k1;
            N += (0.5 * h * wts[q]) * (w * s);
        }
        return N;
    };

    auto div3 = stress_form_divergence_oracle(sigma_t, cyl);
    double worst = 0.0, scale = 0.0;
    double step = 1e-3;
    for (const SurfacePoint& p : interior_points(cyl, 3)) {
        double A1 = cyl.A(1, p), A2 = cyl.A(2, p);
        double k1 = cyl.kappa(1, p), k2 = cyl.kappa(2, p);
        Mat2 Np = N_of(p);
        // Classical tangential rows of the N divergence (cross terms vanish on
        // the cylinder's constant Lame parameters).
        auto col = [&](int a) {
            Mat2 d1N = deriv4([&](const SurfacePoint& q) { return Mat2(cyl.A(2, q) * N_of(q)); },
                              p, 1, step);
            Mat2 d2N = deriv4([&](const SurfacePoint& q) { return Mat2(cyl.A(1, q) * N_of(q)); },
                              p, 2, step);
            return (d1N(0, a) + d2N(1, a)) / (A1 * A2);
        };
        Vec2 expected_t(col(0), col(1));
        double expected_n = -(k1 * Np(0, 0) + k2 * Np(1, 1));

        for (int i = 0; i < 3; ++i) {
            auto f = [&](double z) {
                return div3[i].eval({1, 2, 3}, ShellPoint{p.a1, p.a2, z});
            };
            double integral = trapz_weighted(f, k1, k2, h, 16);
            double target = i < 2 ? expected_t(i) : expected_n;
            worst = std::max(worst, std::abs(integral - target));
            scale = std::max(scale, std::abs(target));
        }
    }

    // Transverse shear profile: sigma^{13} = c (z^2 - h^2/4) cos(alpha1)
    // vanishes on the faces; its normal-direction integral must reproduce the
    // shear-divergence term d1(A2 Q^1)/(A1 A2).
    double c = 2.0;
    auto sigma_s = [&](const ShellPoint& sp) {
        Mat3 out = Mat3::Zero();
        out(0, 2) = out(2, 0) = c * (sp.z * sp.z - h * h / 4) * std::cos(sp.a1);
        return out;
    };
    auto Q1_of = [&](const SurfacePoint& p) {
        // int c (z^2 - h^2/4) cos(a1) (1 + z k2) dz = -c h^3/6 cos(a1)
        return -c * h * h * h / 6.0 * std::cos(p.a1);
    };
    auto div3s = stress_form_divergence_oracle(sigma_s, cyl);
    for (const SurfacePoint& p : interior_points(cyl, 3)) {
        double A1 = cyl.A(1, p), A2 = cyl.A(2, p);
        double k1 = cyl.kappa(1, p), k2 = cyl.kappa(2, p);
        double expected_n =
            deriv4s([&](const SurfacePoint& q) { return cyl.A(2, q) * Q1_of(q); }, p, 1, step) /
            (A1 * A2);
        double expected_t1 = k1 * Q1_of(p);  // zero: the cylinder axis is flat
        auto fn = [&](int i) {
            return [&, i](double z) {
                return div3s[i].eval({1, 2, 3}, ShellPoint{p.a1, p.a2, z});
            };
        };
        worst = std::max(worst, std::abs(trapz_weighted(fn(2), k1, k2, h, 16) - expected_n));
        worst = std::max(worst, std::abs(trapz_weighted(fn(0), k1, k2, h, 16) - expected_t1));
        scale = std::max(scale, std::abs(expected_n));
    }

    bool pass = worst <= 1e-6 && scale > 1e-7;
    report(9, "stress two-form divergence vs resultant EOM terms", pass,
           "max |trapezoid integral - EOM term| = " + num(worst) +
               " <= 1e-6 at 16 z-points (term scale " + num(scale) + ")");
}

// ---- 10. CLI contract -------------------------------------------------------------------

int run_cli(const std::string& args) {
    std::string cmd =
        std::string(SHELLFRAME_CLI_PATH) + " " + args + " > acceptance_cli_out.txt 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void criterion_10() {
    std::string cfg(SHELLFRAME_CONFIG_DIR);
    bool suite = true;
    for (const char* name : {"check_plate.json", "check_cylinder.json", "check_sphere.json",
                             "check_cone.json", "check_torus.json"})
        suite = suite && run_cli("check-geometry " + cfg + "/" + name) == 0;
    bool code1 = run_cli("check-geometry " + cfg + "/check_corrupted.json") == 1;
    bool code2 = run_cli("simulate " + cfg + "/simulate_diverge.json") == 2;
    bool code3 = run_cli("check-geometry " + cfg + "/missing.json") == 3;

    // Bit-exact field round-trip.
    SurfacePatch torus = make_torus(2.0, 0.5);
    Grid grid(6, 7, torus.domain(), true, true);
    VectorField2 f(grid);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1e3, 1e3);
    for (double& v : f.v) v = U(rng) * std::exp(U(rng) / 100.0);
    write_field("acceptance_roundtrip.field", make_field_data("f", f));
    VectorField2 g = to_vector_field(read_field("acceptance_roundtrip.field"));
    bool exact = g.grid == f.grid && g.v == f.v;

    bool pass = suite && code1 && code2 && code3 && exact;
    report(10, "CLI exit codes and field round-trip", pass,
           std::string("five-surface suite ") + (suite ? "ok" : "FAILED") +
               ", exit codes 1/2/3 " + (code1 && code2 && code3 ? "ok" : "FAILED") +
               ", bit-exact round-trip " + (exact ? "ok" : "FAILED"));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures;
}
