#include <doctest.h>

#include <random>

#include "shellframe/constitutive.hpp"
#include "test_support.hpp"

using namespace shellframe;
using namespace shellframe::testing;

namespace {

Mat2 random_sym(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Mat2 m;
    double a = unit(rng), b = unit(rng), c = unit(rng);
    m << a, b, b, c;
    return m;
}

} // namespace

TEST_CASE("material parameters are validated") {
    CHECK_NOTHROW(Material(1.0, 0.3, 1.0, 0.01));
    CHECK_THROWS_AS(Material(-1.0, 0.3, 1.0, 0.01), validation_error);
    CHECK_THROWS_AS(Material(1.0, 0.5, 1.0, 0.01), validation_error);
    CHECK_THROWS_AS(Material(1.0, 0.3, 0.0, 0.01), validation_error);
    CHECK_THROWS_AS(Material(1.0, 0.3, 1.0, -0.01), validation_error);
}

TEST_CASE("stiffness moduli") {
    Material mat(200.0, 0.25, 1.0, 0.03);
    CHECK(mat.C() == doctest::Approx(200.0 * 0.03 / (1.0 - 0.0625)));
    CHECK(mat.B() == doctest::Approx(200.0 * 0.03 * 0.03 * 0.03 / (12.0 * (1.0 - 0.0625))));
}

TEST_CASE("plane stress factors through the dimensionless stiffness kernel") {
    Material mat(3.0, 0.3, 1.0, 0.01);
    std::mt19937 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        Mat2 eps = random_sym(rng);
        Mat2 direct = plane_stress(eps, mat);
        Mat2 via_h = mat.E / (1.0 - mat.nu * mat.nu) * h_tensor_apply(eps, mat.nu);
        CHECK((direct - via_h).cwiseAbs().maxCoeff() < 1e-14 * direct.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("plane stress is isotropic in the frame plane") {
    Material mat(2.0, 0.3, 1.0, 0.01);
    std::mt19937 rng(2);
    Mat2 eps = random_sym(rng);
    double phi = 0.7;
    Mat2 R;
    R << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    Mat2 a = plane_stress((R * eps * R.transpose()).eval(), mat);
    Mat2 b = R * plane_stress(eps, mat) * R.transpose();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("resultants match the thickness quadrature oracle") {
    Material mat(7.0, 0.31, 2.0, 0.05);
    std::mt19937 rng(3);
    std::vector<std::pair<double, double>> curvatures{
        {0.0, 0.0}, {0.0, 1.0 / 1.3}, {1.0 / 0.7, std::cos(1.1) / 2.3}};
    for (auto [k1, k2] : curvatures)
        for (int trial = 0; trial < 5; ++trial) {
            Mat2 e0 = random_sym(rng);
            Mat2 e1 = random_sym(rng);
            ResultantPoint closed = resultants_at(e0, e1, k1, k2, mat);
            for (int n = 2; n <= 6; ++n) {
                ResultantPoint quad = thickness_quadrature_oracle(e0, e1, k1, k2, mat, n);
                double scale = std::max(closed.N.cwiseAbs().maxCoeff(),
                                        closed.M.cwiseAbs().maxCoeff());
                CHECK((closed.N - quad.N).cwiseAbs().maxCoeff() < 1e-13 * scale);
                CHECK((closed.M - quad.M).cwiseAbs().maxCoeff() < 1e-13 * scale);
            }
        }
    CHECK_THROWS_AS(thickness_quadrature_oracle(Mat2::Zero(), Mat2::Zero(), 0, 0, mat, 7),
                    validation_error);
}

TEST_CASE("plate resultants reduce to the C/B closed forms") {
    Material mat(5.0, 0.3, 1.0, 0.02);
    Mat2 e0 = 0.1 * Mat2::Identity();
    Mat2 e1;
    e1 << 0.3, 0.1, 0.1, -0.2;
    ResultantPoint r = resultants_at(e0, e1, 0.0, 0.0, mat);
    CHECK((r.N - mat.C() * h_tensor_apply(e0, mat.nu)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((r.M - mat.B() * h_tensor_apply(e1, mat.nu)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("constraint residual vanishes for symmetric strain states") {
    Material mat(7.0, 0.31, 2.0, 0.05);
    std::mt19937 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        double k1 = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        double k2 = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        ResultantPoint r = resultants_at(random_sym(rng), random_sym(rng), k1, k2, mat);
        CHECK(std::abs(resultant_constraint_residual(r, k1, k2)) < 1e-12);
    }
}

TEST_CASE("moment resultant is symmetric on an umbilic surface") {
    // Sphere: dmod is a multiple of the identity, so M = B(H eps1 + dmod H eps0)
    // inherits the symmetry of the strains.
    Material mat(1.0, 0.3, 1.0, 0.01);
    std::mt19937 rng(5);
    double k = 1.0 / 1.7;
    ResultantPoint r = resultants_at(random_sym(rng), random_sym(rng), k, k, mat);
    CHECK(std::abs(r.M(0, 1) - r.M(1, 0)) < 1e-15);
}

TEST_CASE("grid resultants and constraint field") {
    SurfacePatch sphere = make_sphere(1.0);
    Grid grid(16, 16, sphere.domain(), false, true);
    Material mat(1.0, 0.3, 1.0, 0.01);
    DisplacementField disp(grid);
    for (double& v : disp.w.v) v = 0.02;  // uniform inflation
    StrainState s = strain_state(disp, sphere);
    ResultantField r = resultants(s, sphere, mat);
    // N = C(1+nu)(w/R) I + bending coupling, constant over the sphere.
    double expect = (mat.C() * (1.0 + mat.nu) * 0.02 +
                     mat.B() * (1.0 + mat.nu) * 0.02);
    CHECK(r.N.at(4, 7, 0, 0) == doctest::Approx(expect).epsilon(1e-10));
    ScalarField c = resultant_constraint_residual(r, sphere);
    for (double v : c.v) CHECK(std::abs(v) < 1e-12);
    VectorField2 Q = shear_resultant(r.M, sphere);
    for (double v : Q.v) CHECK(std::abs(v) < 1e-9);  // uniform state, zero shear
}
