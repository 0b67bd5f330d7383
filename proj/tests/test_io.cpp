#include <doctest.h>

#include <random>
#include <sstream>

#include "shellframe/config.hpp"
#include "shellframe/fieldfile.hpp"

using namespace shellframe;

TEST_CASE("field files round-trip bit-exact for every rank") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unit(-1e3, 1e3);
    Grid grid(5, 7, Domain{0.0, 1.0, -0.3, 2.2}, true, false);
    for (FieldRank rank : {FieldRank::scalar, FieldRank::vector2, FieldRank::tensor2sym,
                           FieldRank::tensor2}) {
        FieldData data;
        data.name = "probe";
        data.rank = rank;
        data.grid = grid;
        data.values.resize(static_cast<size_t>(components_per_point(rank)) * grid.size());
        for (double& v : data.values) v = unit(rng) * std::pow(10.0, unit(rng) / 500.0);

        std::stringstream s;
        write_field(s, data);
        FieldData back = read_field(s);
        CHECK(back.name == data.name);
        CHECK(back.rank == data.rank);
        CHECK(back.grid == data.grid);
        REQUIRE(back.values.size() == data.values.size());
        for (size_t k = 0; k < data.values.size(); ++k)
            CHECK(back.values[k] == data.values[k]);  // bit-exact
    }
}

TEST_CASE("malformed field files are rejected") {
    std::stringstream bad1("not-a-field-file\n");
    CHECK_THROWS_AS(read_field(bad1), io_error);
    std::stringstream bad2(
        "shellframe-field 1\nname x\nrank scalar\ndims 4 4\n"
        "domain 0 1 0 1\nspacing 0.25 0.25\nperiodic 1 1\ndata\n1 2 3\n");
    CHECK_THROWS_AS(read_field(bad2), io_error);  // record count mismatch
    CHECK_THROWS_AS(read_field("/nonexistent/path.field"), io_error);
}

TEST_CASE("scalar field conversion checks the rank") {
    Grid grid(4, 4, Domain{0, 1, 0, 1}, true, true);
    FieldData data = make_field_data("v", VectorField2(grid));
    CHECK_THROWS_AS(to_scalar_field(data), io_error);
    CHECK_NOTHROW(to_vector_field(data));
}

TEST_CASE("scenario config round-trips through JSON") {
    ScenarioConfig c;
    c.surface.kind = "torus";
    c.surface.params.major_radius = 2.5;
    c.surface.params.minor_radius = 0.4;
    c.surface.k2_scale = 1.0;
    c.material = {3.0, 0.27, 2.0, 0.015};
    c.grid = {48, 24};
    c.displacement = {"random_smooth", 0.1, 2.0, 99};
    c.load = {"normal_sine", 0.5, 3.0, 1};
    c.options.z_probes = {-0.0075, 0.0, 0.0075};
    c.options.wavenumbers = {1.0, 2.0, 3.0};
    c.options.dispersion_kind = "cylinder_axisymmetric";
    c.options.dt = 1e-4;
    c.options.steps = 100;
    c.options.checkpoint_every = 10;
    c.options.oracle_z = {0.01, 0.005};
    c.options.tolerance = 1e-9;
    ScenarioConfig back = parse_config(serialize_config(c));
    CHECK(back == c);
}

TEST_CASE("unknown config keys are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"surfaces": {}})"), validation_error);
    CHECK_THROWS_AS(parse_config(R"({"surface": {"kind": "plate", "radiu": 1.0}})"),
                    validation_error);
    CHECK_THROWS_AS(parse_config(R"({"material": {"E": "soft"}})"), validation_error);
    CHECK_THROWS_AS(parse_config("{"), io_error);
    CHECK_NOTHROW(parse_config("{}"));  // all defaults
}

TEST_CASE("displacement presets") {
    SurfacePatch sphere = make_sphere(1.0);
    FieldSpec spec;
    spec.preset = "sphere_inflation";
    spec.amplitude = 0.25;
    AnalyticDisplacement d = build_displacement(spec, sphere);
    CHECK(d.w(1.0, 2.0) == 0.25);
    CHECK(d.u1(1.0, 2.0) == 0.0);
    spec.preset = "does_not_exist";
    CHECK_THROWS_AS(build_displacement(spec, sphere), validation_error);
}

TEST_CASE("tabulated surfaces rebuild from sampled geometry") {
    // Sample a cylinder's A/kappa functions, write them out, and rebuild the
    // patch via spline interpolation; residuals stay at the spline/FD level.
    double R = 1.5;
    SurfacePatch cyl = make_cylinder(R, 2.0 * M_PI);
    Grid grid(32, 32, cyl.domain(), false, true);
    Tensor2Field table(grid);
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
            SurfacePoint p = grid.point(i, j);
            table.at(i, j, 0, 0) = cyl.A(1, p);
            table.at(i, j, 0, 1) = cyl.A(2, p);
            table.at(i, j, 1, 0) = cyl.kappa(1, p);
            table.at(i, j, 1, 1) = cyl.kappa(2, p);
        }
    std::string path = "tabulated_cylinder.field";
    write_field(path, make_field_data("surface", table));

    SurfaceSpec spec;
    spec.kind = "tabulated";
    spec.field_file = path;
    SurfacePatch rebuilt = build_surface(spec);
    SurfacePoint p{3.0, 1.0};
    CHECK(rebuilt.A(2, p) == doctest::Approx(R).epsilon(1e-10));
    CHECK(rebuilt.kappa(2, p) == doctest::Approx(1.0 / R).epsilon(1e-10));
    CHECK(std::abs(rebuilt.gauss_residual(p)) < 1e-4);
}
