#pragma once

#include <string>
#include <vector>

#include "shellframe/constitutive.hpp"
#include "shellframe/dynamics.hpp"
#include "shellframe/kinematics.hpp"
#include "shellframe/surface.hpp"

namespace shellframe {

/// Mid-section specification: a canonical shape with parameters, or a
/// tabulated field file (rank tensor2, components A1, A2, k1, k2) that is
/// interpolated with Catmull-Rom splines. k2_scale != 1 deliberately breaks
/// the integrability conditions (validation fixture).
struct SurfaceSpec {
    std::string kind = "plate";
    CanonicalParams params;
    std::string field_file;
    double k2_scale = 1.0;

    bool operator==(const SurfaceSpec&) const = default;
};

struct GridSpec {
    int n1 = 32;
    int n2 = 32;

    bool operator==(const GridSpec&) const = default;
};

struct MaterialSpec {
    double E = 1.0;
    double nu = 0.3;
    double rho = 1.0;
    double h = 0.01;

    bool operator==(const MaterialSpec&) const = default;
    Material material() const { return {E, nu, rho, h}; }
};

/// Named analytic displacement/load presets. `wavenumber` and `seed` are
/// ignored by presets that do not use them.
struct FieldSpec {
    std::string preset = "zero";
    double amplitude = 0.0;
    double wavenumber = 1.0;
    unsigned seed = 1;

    bool operator==(const FieldSpec&) const = default;
};

struct OptionsSpec {
    std::vector<double> z_probes;
    std::vector<double> wavenumbers;
    std::string dispersion_kind = "plate_bending";
    double dt = 0.0;
    long steps = 0;
    long checkpoint_every = 0;
    std::vector<double> oracle_z;
    double tolerance = 1e-8;

    bool operator==(const OptionsSpec&) const = default;
};

struct ScenarioConfig {
    SurfaceSpec surface;
    MaterialSpec material;
    GridSpec grid;
    FieldSpec displacement;
    FieldSpec load;
    OptionsSpec options;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Strict JSON round-trip: unknown keys are rejected with validation_error;
/// parse(serialize(config)) == config.
std::string serialize_config(const ScenarioConfig& config);
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

/// Builds the mid-section surface (canonical, tabulated, or corrupted).
SurfacePatch build_surface(const SurfaceSpec& spec);
Grid build_grid(const GridSpec& spec, const SurfacePatch& patch);

/// Analytic closures for a displacement preset (zero, sphere_inflation,
/// plate_bend, breathing, random_smooth).
AnalyticDisplacement build_displacement(const FieldSpec& spec, const SurfacePatch& patch);
DisplacementField sample_displacement(const AnalyticDisplacement& disp, const Grid& grid);

/// Load presets: zero, uniform_normal, normal_sine.
LoadState build_load(const FieldSpec& spec, const SurfacePatch& patch, const Grid& grid);

} // namespace shellframe
