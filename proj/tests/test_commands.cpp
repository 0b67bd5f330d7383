#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "shellframe/commands.hpp"

using namespace shellframe;

namespace {

nlohmann::json run_json(const std::string& name, const ScenarioConfig& config,
                        int expect_code) {
    std::ostringstream out, err;
    int code = run_command(name, config, "", out, err);
    CHECK(code == expect_code);
    INFO(err.str());
    return nlohmann::json::parse(out.str());
}

} // namespace

TEST_CASE("check-geometry passes all canonical surfaces") {
    for (const char* kind : {"plate", "cylinder", "sphere", "cone", "torus"}) {
        ScenarioConfig config;
        config.surface.kind = kind;
        nlohmann::json report = run_json("check-geometry", config, 0);
        CHECK(report["pass"] == true);
        CHECK(report["max_codazzi"].get<double>() <= 1e-9);
        CHECK(report["max_curvature_2form"].get<double>() <= 1e-8);
    }
}

TEST_CASE("check-geometry flags a corrupted curvature") {
    ScenarioConfig config;
    config.surface.kind = "sphere";
    config.surface.k2_scale = 1.3;
    nlohmann::json report = run_json("check-geometry", config, 1);
    CHECK(report["pass"] == false);
    CHECK(report["max_curvature_2form"].get<double>() > 1e-3);
}

TEST_CASE("strain command reports the inflation strain") {
    ScenarioConfig config;
    config.surface.kind = "sphere";
    config.displacement = {"sphere_inflation", 0.02, 1.0, 1};
    std::ostringstream out, err;
    int code = run_command("strain", config, "cmd_strain_out", out, err);
    CHECK(code == 0);
    auto report = nlohmann::json::parse(out.str());
    CHECK(report["eps0_max"].get<double>() == doctest::Approx(0.02).epsilon(1e-10));
}

TEST_CASE("strain oracle report shows quadratic thickness convergence") {
    ScenarioConfig config;
    config.surface.kind = "cylinder";
    config.displacement = {"random_smooth", 0.1, 1.0, 7};
    config.options.oracle_z = {5e-3, 2.5e-3, 1.25e-3};
    std::ostringstream out, err;
    int code = run_command("strain", config, "cmd_strain_out", out, err);
    CHECK(code == 0);
    auto report = nlohmann::json::parse(out.str());
    CHECK(report["oracle"]["order"].get<double>() == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("resultants command passes the constraint identity") {
    ScenarioConfig config;
    config.surface.kind = "torus";
    config.displacement = {"random_smooth", 0.05, 1.0, 3};
    config.options.tolerance = 1e-12;
    std::ostringstream out, err;
    int code = run_command("resultants", config, "cmd_resultants_out", out, err);
    CHECK(code == 0);
    auto report = nlohmann::json::parse(out.str());
    CHECK(report["pass"] == true);
}

TEST_CASE("residual command reports both formulations") {
    ScenarioConfig config;
    config.surface.kind = "plate";
    config.displacement = {"random_smooth", 0.05, 1.0, 5};
    std::ostringstream out, err;
    int code = run_command("residual", config, "cmd_residual_out", out, err);
    CHECK(code == 0);
    auto report = nlohmann::json::parse(out.str());
    CHECK(report["classical_vs_covariant_max_diff"].get<double>() < 1e-12);
}

TEST_CASE("dispersion command emits the CSV table") {
    ScenarioConfig config;
    config.surface.kind = "cylinder";
    config.surface.params.radius = 1.0;
    config.options.dispersion_kind = "cylinder_breathing";
    config.options.wavenumbers = {0.0};
    std::ostringstream out, err;
    int code = run_command("dispersion", config, "", out, err);
    CHECK(code == 0);
    std::string csv = out.str();
    CHECK(csv.rfind("k,omega_numeric,omega_analytic,rel_err\n", 0) == 0);
    // breathing mode is derivative-free: relative error column ~ 0
    auto last_comma = csv.find_last_of(',');
    double rel = std::stod(csv.substr(last_comma + 1));
    CHECK(rel < 1e-12);

    config.options.wavenumbers.clear();
    std::ostringstream out2, err2;
    CHECK(run_command("dispersion", config, "", out2, err2) == 0);
    CHECK(out2.str() == "k,omega_numeric,omega_analytic,rel_err\n");
}

TEST_CASE("simulate keeps a zero state at zero energy") {
    ScenarioConfig config;
    config.surface.kind = "plate";
    config.grid = {8, 8};
    config.options.dt = 1e-3;
    config.options.steps = 5;
    std::ostringstream out, err;
    int code = run_command("simulate", config, "", out, err);
    CHECK(code == 0);
    auto report = nlohmann::json::parse(out.str());
    CHECK(report["final_energy"].get<double>() == 0.0);
}

TEST_CASE("unknown command name fails validation") {
    ScenarioConfig config;
    std::ostringstream out, err;
    CHECK(run_command("frobnicate", config, "", out, err) == 1);
}
