#include "shellframe/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "shellframe/dynamics.hpp"
#include "shellframe/errors.hpp"
#include "shellframe/fieldfile.hpp"
#include "shellframe/forms.hpp"

namespace shellframe {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<SurfacePoint> probe_points(const SurfacePatch& patch, int n = 8) {
    const Domain& dom = patch.domain();
    std::vector<SurfacePoint> pts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pts.push_back({dom.a1min + dom.extent1() * (i + 0.5) / n,
                           dom.a2min + dom.extent2() * (j + 0.5) / n});
    return pts;
}

void ensure_dir(const std::string& out_dir) {
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

double max_abs_field(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

int cmd_check_geometry(const ScenarioConfig& config, const std::string& out_dir,
                       std::ostream& out) {
    SurfacePatch patch = build_surface(config.surface);
    double h = config.material.h;
    std::vector<double> z_probes = config.options.z_probes;
    if (z_probes.empty()) z_probes = {-0.5 * h, 0.0, 0.5 * h};

    double max_codazzi = 0.0, max_gauss = 0.0;
    for (const SurfacePoint& p : probe_points(patch)) {
        auto [c1, c2] = patch.codazzi_residual(p);
        max_codazzi = std::max({max_codazzi, std::abs(c1), std::abs(c2)});
        max_gauss = std::max(max_gauss, std::abs(patch.gauss_residual(p)));
    }

    auto torsion = torsion_residual(patch);
    auto curvature = curvature_residual(patch);
    double max_torsion = 0.0, max_curv = 0.0;
    for (const SurfacePoint& p : probe_points(patch))
        for (double z : z_probes) {
            ShellPoint q{p.a1, p.a2, z};
            for (int i = 0; i < 3; ++i) {
                max_torsion = std::max(max_torsion, torsion[i].max_abs(q));
                for (int j = 0; j < 3; ++j)
                    max_curv = std::max(max_curv, curvature[i][j].max_abs(q));
            }
        }

    bool pass = max_codazzi <= config.options.tolerance &&
                max_gauss <= config.options.tolerance &&
                max_torsion <= config.options.tolerance &&
                max_curv <= config.options.tolerance;
    ordered_json report{{"surface", config.surface.kind},
                        {"max_codazzi", max_codazzi},
                        {"max_gauss", max_gauss},
                        {"max_torsion", max_torsion},
                        {"max_curvature_2form", max_curv},
                        {"tolerance", config.options.tolerance},
                        {"pass", pass}};
    out << report.dump(2) << "\n";
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        std::ofstream f(join(out_dir, "check_geometry.json"));
        f << report.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}

int cmd_strain(const ScenarioConfig& config, const std::string& out_dir,
               std::ostream& out) {
    SurfacePatch patch = build_surface(config.surface);
    Grid grid = build_grid(config.grid, patch);
    AnalyticDisplacement adisp = build_displacement(config.displacement, patch);
    DisplacementField disp = sample_displacement(adisp, grid);
    StrainState s = strain_state(disp, patch);

    ensure_dir(out_dir);
    write_field(join(out_dir, "eps0.field"), make_field_data("eps0", s.eps0));
    write_field(join(out_dir, "eps1.field"), make_field_data("eps1", s.eps1));

    ordered_json report{{"eps0_max", max_abs_field(s.eps0.v)},
                        {"eps1_max", max_abs_field(s.eps1.v)},
                        {"files", {"eps0.field", "eps1.field"}}};

    if (!config.options.oracle_z.empty()) {
        // Compare the tangential block of the 3D flow oracle against
        // eps0 + z eps1 at a few interior points; the defect must shrink
        // as O(z^2), reported as a log-log slope.
        std::vector<SurfacePoint> pts = probe_points(patch, 2);
        std::vector<double> zs = config.options.oracle_z;
        std::vector<double> errs;
        for (double z : zs) {
            double e = 0.0;
            for (const SurfacePoint& p : pts) {
                Mat3 full = lie_strain_3d_oracle(adisp, patch, p, z);
                Mat2 e0 = membrane_strain_at(adisp, patch, p);
                Mat2 e1 = bending_strain_at(adisp, patch, p);
                Mat2 defect = full.topLeftCorner<2, 2>() - (e0 + z * e1);
                e = std::max(e, defect.cwiseAbs().maxCoeff());
            }
            errs.push_back(e);
        }
        double slope = 0.0;
        if (zs.size() >= 2 && errs.front() > 0.0 && errs.back() > 0.0)
            slope = std::log(errs.front() / errs.back()) /
                    std::log(std::abs(zs.front() / zs.back()));
        report["oracle"] =
            ordered_json{{"z", zs}, {"max_defect", errs}, {"order", slope}};
    }
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_resultants(const ScenarioConfig& config, const std::string& out_dir,
                   std::ostream& out) {
    SurfacePatch patch = build_surface(config.surface);
    Grid grid = build_grid(config.grid, patch);
    DisplacementField disp =
        sample_displacement(build_displacement(config.displacement, patch), grid);
    StrainState s = strain_state(disp, patch);
    Material mat = config.material.material();
    ResultantField r = resultants(s, patch, mat);
    VectorField2 Q = shear_resultant(r.M, patch);
    ScalarField constraint = resultant_constraint_residual(r, patch);

    ensure_dir(out_dir);
    write_field(join(out_dir, "N.field"), make_field_data("N", r.N));
    write_field(join(out_dir, "M.field"), make_field_data("M", r.M));
    write_field(join(out_dir, "Q.field"), make_field_data("Q", Q));

    double cmax = max_abs_field(constraint.v);
    bool pass = cmax <= config.options.tolerance;
    ordered_json report{{"N_max", max_abs_field(r.N.v)},
                        {"M_max", max_abs_field(r.M.v)},
                        {"Q_max", max_abs_field(Q.v)},
                        {"constraint_residual_max", cmax},
                        {"tolerance", config.options.tolerance},
                        {"pass", pass},
                        {"files", {"N.field", "M.field", "Q.field"}}};
    out << report.dump(2) << "\n";
    return pass ? 0 : 1;
}

int cmd_residual(const ScenarioConfig& config, const std::string& out_dir,
                 std::ostream& out) {
    SurfacePatch patch = build_surface(config.surface);
    Grid grid = build_grid(config.grid, patch);
    DisplacementField disp =
        sample_displacement(build_displacement(config.displacement, patch), grid);
    DisplacementField accel(grid);
    Material mat = config.material.material();
    LoadState loads = build_load(config.load, patch, grid);

    ResidualState cov = covariant_eom_residual(disp, accel, mat, patch, loads);
    ResidualState cls = classical_eom_residual(disp, accel, mat, patch, loads);
    double diff = 0.0;
    for (size_t k = 0; k < cov.tangential.v.size(); ++k)
        diff = std::max(diff, std::abs(cov.tangential.v[k] - cls.tangential.v[k]));
    for (size_t k = 0; k < cov.normal.v.size(); ++k)
        diff = std::max(diff, std::abs(cov.normal.v[k] - cls.normal.v[k]));

    ensure_dir(out_dir);
    write_field(join(out_dir, "residual_tangential.field"),
                make_field_data("residual_tangential", cov.tangential));
    write_field(join(out_dir, "residual_normal.field"),
                make_field_data("residual_normal", cov.normal));

    ordered_json report{{"covariant_tangential_max", max_abs_field(cov.tangential.v)},
                        {"covariant_normal_max", max_abs_field(cov.normal.v)},
                        {"classical_vs_covariant_max_diff", diff}};
    out << report.dump(2) << "\n";
    return 0;
}

namespace {

DisplacementField dispersion_mode(DispersionKind kind, const Material& mat,
                                  const SurfacePatch& patch, const Grid& grid, double k) {
    DisplacementField mode(grid);
    switch (kind) {
        case DispersionKind::plate_bending:
            for (int i = 0; i < grid.n1; ++i)
                for (int j = 0; j < grid.n2; ++j)
                    mode.w.at(i, j) = std::cos(k * grid.point(i, j).a1);
            return mode;
        case DispersionKind::cylinder_breathing:
        case DispersionKind::sphere_breathing:
            for (double& v : mode.w.v) v = 1.0;
            return mode;
        case DispersionKind::cylinder_axisymmetric: {
            // Standing wave built from the eigenvector of the lower root.
            double R = 1.0 / patch.kappa(2, grid.point(0, 0));
            double C = mat.C(), B = mat.B(), nu = mat.nu;
            double K00 = -C * k * k;
            double k01 = k * (C * nu + B * k * k + B * nu / (R * R)) / R;
            double omega = cylinder_axisymmetric_roots(mat, R, k)[0];
            double lambda = -mat.rho * mat.h * omega * omega;
            double s = std::abs(lambda - K00) > 1e-14 * std::abs(K00 + 1.0)
                           ? k01 / (lambda - K00)
                           : 0.0;
            for (int i = 0; i < grid.n1; ++i)
                for (int j = 0; j < grid.n2; ++j) {
                    double a1 = grid.point(i, j).a1;
                    mode.u.at(i, j, 0) = -s * std::sin(k * a1);
                    mode.w.at(i, j) = std::cos(k * a1);
                }
            return mode;
        }
    }
    throw validation_error("unknown dispersion kind");
}

} // namespace

int cmd_dispersion(const ScenarioConfig& config, const std::string& out_dir,
                   std::ostream& out) {
    SurfacePatch patch = build_surface(config.surface);
    Grid grid = build_grid(config.grid, patch);
    Material mat = config.material.material();
    DispersionKind kind = dispersion_kind_from_string(config.options.dispersion_kind);
    double radius = config.surface.params.radius;

    std::ostringstream csv;
    csv << "k,omega_numeric,omega_analytic,rel_err\n";
    csv << std::setprecision(16);
    for (double k : config.options.wavenumbers) {
        double analytic = dispersion_analytic(kind, mat, radius, k);
        DisplacementField mode = dispersion_mode(kind, mat, patch, grid, k);
        double numeric = numeric_dispersion(patch, mat, mode);
        double rel = analytic != 0.0 ? std::abs(numeric - analytic) / analytic
                                     : std::abs(numeric);
        csv << k << "," << numeric << "," << analytic << "," << rel << "\n";
    }
    out << csv.str();
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        std::ofstream f(join(out_dir, "dispersion.csv"));
        f << csv.str();
    }
    return 0;
}

int cmd_simulate(const ScenarioConfig& config, const std::string& out_dir,
                 std::ostream& out) {
    SurfacePatch patch = build_surface(config.surface);
    Grid grid = build_grid(config.grid, patch);
    Material mat = config.material.material();
    LoadState loads = build_load(config.load, patch, grid);

    DynamicState state(grid);
    state.disp = sample_displacement(build_displacement(config.displacement, patch), grid);

    double dt = config.options.dt > 0.0 ? config.options.dt
                                        : stable_dt(grid, mat, patch);
    long steps = config.options.steps;
    long checkpoint_every = config.options.checkpoint_every;

    ensure_dir(out_dir);
    std::ostringstream energy_csv;
    energy_csv << "step,time,energy\n" << std::setprecision(16);
    energy_csv << 0 << "," << 0.0 << "," << discrete_energy(state, mat, patch) << "\n";

    auto checkpoint = [&](long step) {
        if (out_dir.empty()) return;
        char tag[32];
        std::snprintf(tag, sizeof(tag), "%06ld", step);
        write_field(join(out_dir, std::string("w_") + tag + ".field"),
                    make_field_data("w", state.disp.w));
        write_field(join(out_dir, std::string("u_") + tag + ".field"),
                    make_field_data("u", state.disp.u));
    };

    for (long step = 1; step <= steps; ++step) {
        state = time_step(state, mat, patch, loads, dt, step);
        energy_csv << step << "," << step * dt << ","
                   << discrete_energy(state, mat, patch) << "\n";
        if (checkpoint_every > 0 && step % checkpoint_every == 0) checkpoint(step);
    }
    checkpoint(steps);

    if (!out_dir.empty()) {
        std::ofstream f(join(out_dir, "energy.csv"));
        f << energy_csv.str();
    }
    ordered_json report{{"steps", steps},
                        {"dt", dt},
                        {"final_energy", discrete_energy(state, mat, patch)}};
    out << report.dump(2) << "\n";
    return 0;
}

int run_command(const std::string& name, const ScenarioConfig& config,
                const std::string& out_dir, std::ostream& out, std::ostream& err) {
    try {
        if (name == "check-geometry") return cmd_check_geometry(config, out_dir, out);
        if (name == "strain") return cmd_strain(config, out_dir, out);
        if (name == "resultants") return cmd_resultants(config, out_dir, out);
        if (name == "residual") return cmd_residual(config, out_dir, out);
        if (name == "dispersion") return cmd_dispersion(config, out_dir, out);
        if (name == "simulate") return cmd_simulate(config, out_dir, out);
        err << "unknown command: " << name << "\n";
        return 1;
    } catch (const divergence_error& e) {
        err << "divergence: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        err << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace shellframe
