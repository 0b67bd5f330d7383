#include "shellframe/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shellframe/errors.hpp"
#include "shellframe/fieldfile.hpp"

namespace shellframe {

using ordered_json = nlohmann::ordered_json;

namespace {

void check_keys(const ordered_json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) { known = true; break; }
        if (!known)
            throw validation_error(std::string("config: unknown key '") + it.key() +
                                   "' in " + where);
    }
}

template <typename T>
void get_to(const ordered_json& obj, const char* key, T& out) {
    if (obj.contains(key)) {
        try {
            obj.at(key).get_to(out);
        } catch (const ordered_json::exception& e) {
            throw validation_error(std::string("config: bad value for '") + key +
                                   "': " + e.what());
        }
    }
}

} // namespace

std::string serialize_config(const ScenarioConfig& c) {
    ordered_json j;
    j["surface"] = {{"kind", c.surface.kind},
                    {"radius", c.surface.params.radius},
                    {"major_radius", c.surface.params.major_radius},
                    {"minor_radius", c.surface.params.minor_radius},
                    {"length", c.surface.params.length},
                    {"width", c.surface.params.width},
                    {"half_angle", c.surface.params.half_angle},
                    {"slant_min", c.surface.params.slant_min},
                    {"slant_max", c.surface.params.slant_max},
                    {"polar_margin", c.surface.params.polar_margin},
                    {"k2_scale", c.surface.k2_scale},
                    {"field_file", c.surface.field_file}};
    j["material"] = {{"E", c.material.E},
                     {"nu", c.material.nu},
                     {"rho", c.material.rho},
                     {"h", c.material.h}};
    j["grid"] = {{"n1", c.grid.n1}, {"n2", c.grid.n2}};
    auto field = [](const FieldSpec& f) {
        return ordered_json{{"preset", f.preset},
                            {"amplitude", f.amplitude},
                            {"wavenumber", f.wavenumber},
                            {"seed", f.seed}};
    };
    j["displacement"] = field(c.displacement);
    j["load"] = field(c.load);
    j["options"] = {{"z_probes", c.options.z_probes},
                    {"wavenumbers", c.options.wavenumbers},
                    {"dispersion_kind", c.options.dispersion_kind},
                    {"dt", c.options.dt},
                    {"steps", c.options.steps},
                    {"checkpoint_every", c.options.checkpoint_every},
                    {"oracle_z", c.options.oracle_z},
                    {"tolerance", c.options.tolerance}};
    return j.dump(2);
}

ScenarioConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const ordered_json::exception& e) {
        // Malformed input text is an I/O failure, not a semantic validation failure.
        throw io_error(std::string("config: parse error: ") + e.what());
    }
    if (!j.is_object()) throw validation_error("config: top level must be an object");
    check_keys(j, "top level", {"surface", "material", "grid", "displacement", "load", "options"});

    ScenarioConfig c;
    if (j.contains("surface")) {
        const auto& s = j["surface"];
        check_keys(s, "surface",
                   {"kind", "radius", "major_radius", "minor_radius", "length", "width",
                    "half_angle", "slant_min", "slant_max", "polar_margin", "k2_scale",
                    "field_file"});
        get_to(s, "kind", c.surface.kind);
        get_to(s, "radius", c.surface.params.radius);
        get_to(s, "major_radius", c.surface.params.major_radius);
        get_to(s, "minor_radius", c.surface.params.minor_radius);
        get_to(s, "length", c.surface.params.length);
        get_to(s, "width", c.surface.params.width);
        get_to(s, "half_angle", c.surface.params.half_angle);
        get_to(s, "slant_min", c.surface.params.slant_min);
        get_to(s, "slant_max", c.surface.params.slant_max);
        get_to(s, "polar_margin", c.surface.params.polar_margin);
        get_to(s, "k2_scale", c.surface.k2_scale);
        get_to(s, "field_file", c.surface.field_file);
    }
    if (j.contains("material")) {
        const auto& m = j["material"];
        check_keys(m, "material", {"E", "nu", "rho", "h"});
        get_to(m, "E", c.material.E);
        get_to(m, "nu", c.material.nu);
        get_to(m, "rho", c.material.rho);
        get_to(m, "h", c.material.h);
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        check_keys(g, "grid", {"n1", "n2"});
        get_to(g, "n1", c.grid.n1);
        get_to(g, "n2", c.grid.n2);
    }
    auto parse_field = [&](const char* key, FieldSpec& out) {
        if (!j.contains(key)) return;
        const auto& f = j[key];
        check_keys(f, key, {"preset", "amplitude", "wavenumber", "seed"});
        get_to(f, "preset", out.preset);
        get_to(f, "amplitude", out.amplitude);
        get_to(f, "wavenumber", out.wavenumber);
        get_to(f, "seed", out.seed);
    };
    parse_field("displacement", c.displacement);
    parse_field("load", c.load);
    if (j.contains("options")) {
        const auto& o = j["options"];
        check_keys(o, "options",
                   {"z_probes", "wavenumbers", "dispersion_kind", "dt", "steps",
                    "checkpoint_every", "oracle_z", "tolerance"});
        get_to(o, "z_probes", c.options.z_probes);
        get_to(o, "wavenumbers", c.options.wavenumbers);
        get_to(o, "dispersion_kind", c.options.dispersion_kind);
        get_to(o, "dt", c.options.dt);
        get_to(o, "steps", c.options.steps);
        get_to(o, "checkpoint_every", c.options.checkpoint_every);
        get_to(o, "oracle_z", c.options.oracle_z);
        get_to(o, "tolerance", c.options.tolerance);
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

// Catmull-Rom interpolation of one tabulated component over the grid.
class SplineTable {
public:
    SplineTable(const Grid& grid, std::vector<double> values, int comp, int ncomp)
        : grid_(grid) {
        v_.resize(grid.size());
        for (int k = 0; k < grid.size(); ++k) v_[k] = values[k * ncomp + comp];
    }

    double operator()(double a1, double a2) const {
        double s = (a1 - grid_.a1min) / grid_.d1;
        double t = (a2 - grid_.a2min) / grid_.d2;
        int i0 = static_cast<int>(std::floor(s));
        int j0 = static_cast<int>(std::floor(t));
        double fs = s - i0, ft = t - j0;
        double rows[4];
        for (int di = -1; di <= 2; ++di) {
            double pts[4];
            for (int dj = -1; dj <= 2; ++dj)
                pts[dj + 1] = at(i0 + di, j0 + dj);
            rows[di + 1] = catmull_rom(pts, ft);
        }
        return catmull_rom(rows, fs);
    }

private:
    static double catmull_rom(const double p[4], double t) {
        return p[1] + 0.5 * t * (p[2] - p[0] +
               t * (2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3] +
               t * (3.0 * (p[1] - p[2]) + p[3] - p[0])));
    }

    double at(int i, int j) const {
        i = wrap(i, grid_.n1, grid_.p1);
        j = wrap(j, grid_.n2, grid_.p2);
        return v_[grid_.idx(i, j)];
    }

    static int wrap(int i, int n, bool periodic) {
        if (periodic) return ((i % n) + n) % n;
        return std::min(std::max(i, 0), n - 1);
    }

    Grid grid_;
    std::vector<double> v_;
};

SurfacePatch build_tabulated_surface(const SurfaceSpec& spec) {
    FieldData data = read_field(spec.field_file);
    if (data.rank != FieldRank::tensor2)
        throw io_error("tabulated surface '" + spec.field_file +
                       "': expected rank tensor2 (A1, A2, k1, k2 per point)");
    const Grid& g = data.grid;
    double a1max = g.a1min + g.d1 * (g.p1 ? g.n1 : g.n1 - 1);
    double a2max = g.a2min + g.d2 * (g.p2 ? g.n2 : g.n2 - 1);
    Domain dom{g.a1min, a1max, g.a2min, a2max};
    auto table = [&](int comp) { return SplineTable(g, data.values, comp, 4); };
    return SurfacePatch::from_functions(table(0), table(1), table(2), table(3), dom,
                                        {g.p1, g.p2}, -1.0, -1.0,
                                        /*validation_tol=*/1e-2);
}

} // namespace

SurfacePatch build_surface(const SurfaceSpec& spec) {
    SurfacePatch patch = spec.kind == "tabulated"
                             ? build_tabulated_surface(spec)
                             : make_canonical(surface_kind_from_string(spec.kind),
                                              spec.params);
    if (spec.k2_scale != 1.0) return perturb_curvature(patch, spec.k2_scale);
    return patch;
}

Grid build_grid(const GridSpec& spec, const SurfacePatch& patch) {
    return Grid(spec.n1, spec.n2, patch.domain(), patch.periodic()[0],
                patch.periodic()[1]);
}

namespace {

struct TrigMode {
    double amp, k1, k2, ph1, ph2;
};

// sum_m amp cos(k1 a1 + ph1) cos(k2 a2 + ph2), with analytic partials.
SurfaceFunction trig_sum(std::vector<TrigMode> modes) {
    auto eval = [modes](int d1, int d2, double a1, double a2) {
        double s = 0.0;
        for (const TrigMode& m : modes) {
            double f1 = d1 == 0   ? std::cos(m.k1 * a1 + m.ph1)
                        : d1 == 1 ? -m.k1 * std::sin(m.k1 * a1 + m.ph1)
                                  : -m.k1 * m.k1 * std::cos(m.k1 * a1 + m.ph1);
            double f2 = d2 == 0   ? std::cos(m.k2 * a2 + m.ph2)
                        : d2 == 1 ? -m.k2 * std::sin(m.k2 * a2 + m.ph2)
                                  : -m.k2 * m.k2 * std::cos(m.k2 * a2 + m.ph2);
            s += m.amp * f1 * f2;
        }
        return s;
    };
    SurfaceFunction fn;
    fn.f = [eval](double x, double y) { return eval(0, 0, x, y); };
    fn.d1 = [eval](double x, double y) { return eval(1, 0, x, y); };
    fn.d2 = [eval](double x, double y) { return eval(0, 1, x, y); };
    fn.d11 = [eval](double x, double y) { return eval(2, 0, x, y); };
    fn.d12 = [eval](double x, double y) { return eval(1, 1, x, y); };
    fn.d22 = [eval](double x, double y) { return eval(0, 2, x, y); };
    return fn;
}

SurfaceFunction random_trig(std::mt19937& rng, const SurfacePatch& patch, double amp,
                            int n_modes = 3) {
    const Domain& dom = patch.domain();
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> harmonic(1, 2);
    std::vector<TrigMode> modes;
    for (int m = 0; m < n_modes; ++m) {
        TrigMode mode;
        mode.amp = amp * unit(rng) / n_modes;
        // Periodic coordinates get commensurate wavenumbers so grid sampling
        // stays seamless; open coordinates get a mild incommensurate one.
        mode.k1 = patch.periodic()[0] ? 2.0 * M_PI * harmonic(rng) / dom.extent1()
                                      : (1.0 + 0.5 * unit(rng)) * M_PI / dom.extent1();
        mode.k2 = patch.periodic()[1] ? 2.0 * M_PI * harmonic(rng) / dom.extent2()
                                      : (1.0 + 0.5 * unit(rng)) * M_PI / dom.extent2();
        mode.ph1 = patch.periodic()[0] ? 0.5 * M_PI * harmonic(rng) : M_PI * unit(rng);
        mode.ph2 = patch.periodic()[1] ? 0.5 * M_PI * harmonic(rng) : M_PI * unit(rng);
        modes.push_back(mode);
    }
    return trig_sum(std::move(modes));
}

} // namespace

AnalyticDisplacement build_displacement(const FieldSpec& spec, const SurfacePatch& patch) {
    AnalyticDisplacement disp{constant_function(0.0), constant_function(0.0),
                              constant_function(0.0)};
    if (spec.preset == "zero") return disp;
    if (spec.preset == "sphere_inflation" || spec.preset == "breathing") {
        disp.w = constant_function(spec.amplitude);
        return disp;
    }
    if (spec.preset == "plate_bend") {
        // w = A sin(k a1) == A cos(k a1 - pi/2)
        disp.w = trig_sum({{spec.amplitude, spec.wavenumber, 0.0, -0.5 * M_PI, 0.0}});
        return disp;
    }
    if (spec.preset == "random_smooth") {
        std::mt19937 rng(spec.seed);
        disp.u1 = random_trig(rng, patch, spec.amplitude);
        disp.u2 = random_trig(rng, patch, spec.amplitude);
        disp.w = random_trig(rng, patch, spec.amplitude);
        return disp;
    }
    throw validation_error("unknown displacement preset: " + spec.preset);
}

DisplacementField sample_displacement(const AnalyticDisplacement& disp, const Grid& grid) {
    DisplacementField out(grid);
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            SurfacePoint p = grid.point(i, j);
            out.u.set(i, j, Vec2(disp.u1(p.a1, p.a2), disp.u2(p.a1, p.a2)));
            out.w.at(i, j) = disp.w(p.a1, p.a2);
        }
    return out;
}

LoadState build_load(const FieldSpec& spec, const SurfacePatch& patch, const Grid& grid) {
    LoadState loads(grid);
    if (spec.preset == "zero") return loads;
    if (spec.preset == "uniform_normal") {
        for (double& v : loads.q_n.v) v = spec.amplitude;
        return loads;
    }
    if (spec.preset == "normal_sine") {
        for (int i = 0; i < grid.n1; ++i)
            for (int j = 0; j < grid.n2; ++j)
                loads.q_n.at(i, j) = spec.amplitude *
                                     std::sin(spec.wavenumber * grid.point(i, j).a1);
        return loads;
    }
    (void)patch;
    throw validation_error("unknown load preset: " + spec.preset);
}

} // namespace shellframe
