#include "shellframe/constitutive.hpp"

#include <cmath>

namespace shellframe {

Material::Material(double E_, double nu_, double rho_, double h_)
    : E(E_), nu(nu_), rho(rho_), h(h_) {
    if (!(E > 0.0)) throw validation_error("material: E must be positive");
    if (!(nu > -1.0 && nu < 0.5))
        throw validation_error("material: nu must lie in (-1, 0.5)");
    if (!(rho > 0.0)) throw validation_error("material: rho must be positive");
    if (!(h > 0.0)) throw validation_error("material: h must be positive");
}

Mat2 plane_stress(const Mat2& eps, const Material& mat) {
    return mat.E * mat.nu / (1.0 - mat.nu * mat.nu) * eps.trace() * Mat2::Identity() +
           mat.E / (1.0 + mat.nu) * eps;
}

Mat2 h_tensor_apply(const Mat2& eps, double nu) {
    return (1.0 - nu) * eps + nu * eps.trace() * Mat2::Identity();
}

namespace {

Mat2 dmod_matrix(double k1, double k2) {
    Mat2 d = Mat2::Zero();
    d(0, 0) = k2;
    d(1, 1) = k1;
    return d;
}

} // namespace

ResultantPoint resultants_at(const Mat2& eps0, const Mat2& eps1,
                             double k1, double k2, const Material& mat) {
    Mat2 H0 = h_tensor_apply(eps0, mat.nu);
    Mat2 H1 = h_tensor_apply(eps1, mat.nu);
    Mat2 dmod = dmod_matrix(k1, k2);
    ResultantPoint r;
    r.N = mat.C() * H0 + mat.B() * dmod * H1;
    r.M = mat.B() * (H1 + dmod * H0);
    return r;
}

ResultantField resultants(const StrainState& state, const SurfacePatch& patch,
                          const Material& mat) {
    const Grid& g = state.eps0.grid;
    ResultantField out{Tensor2Field(g), Tensor2Field(g)};
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            ResultantPoint r = resultants_at(state.eps0.mat(i, j), state.eps1.mat(i, j),
                                             patch.kappa(1, p), patch.kappa(2, p), mat);
            out.N.set(i, j, r.N);
            out.M.set(i, j, r.M);
        }
    return out;
}

VectorField2 shear_resultant(const Tensor2Field& M, const SurfacePatch& patch) {
    return covariant_div_tensor(M, patch);
}

VectorField2 shear_resultant(const Tensor2Field& M, const SurfacePatch& patch,
                             const VectorField2& moment_load) {
    VectorField2 Q = covariant_div_tensor(M, patch);
    for (size_t k = 0; k < Q.v.size(); ++k) Q.v[k] += moment_load.v[k];
    return Q;
}

double resultant_constraint_residual(const ResultantPoint& r, double k1, double k2) {
    return (r.N(0, 1) - r.N(1, 0)) - (r.M(1, 0) * k2 - r.M(0, 1) * k1);
}

ScalarField resultant_constraint_residual(const ResultantField& r, const SurfacePatch& patch) {
    const Grid& g = r.N.grid;
    ScalarField out(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
            SurfacePoint p = g.point(i, j);
            out.at(i, j) = resultant_constraint_residual(
                {r.N.mat(i, j), r.M.mat(i, j)}, patch.kappa(1, p), patch.kappa(2, p));
        }
    return out;
}

namespace {

struct GaussRule {
    int n;
    const double* x;
    const double* w;
};

// Gauss-Legendre nodes/weights on [-1, 1].
const double x2[] = {-0.57735026918962576451, 0.57735026918962576451};
const double w2[] = {1.0, 1.0};
const double x3[] = {-0.77459666924148337704, 0.0, 0.77459666924148337704};
const double w3[] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
const double x4[] = {-0.86113631159405257522, -0.33998104358485626480,
                     0.33998104358485626480, 0.86113631159405257522};
const double w4[] = {0.34785484513745385737, 0.65214515486254614263,
                     0.65214515486254614263, 0.34785484513745385737};
const double x5[] = {-0.90617984593866399280, -0.53846931010568309104, 0.0,
                     0.53846931010568309104, 0.90617984593866399280};
const double w5[] = {0.23692688505618908751, 0.47862867049936646804,
                     0.56888888888888888889, 0.47862867049936646804,
                     0.23692688505618908751};
const double x6[] = {-0.93246951420315202781, -0.66120938646626451366,
                     -0.23861918608319690863, 0.23861918608319690863,
                     0.66120938646626451366, 0.93246951420315202781};
const double w6[] = {0.17132449237917034504, 0.36076157304813860757,
                     0.46791393457269104739, 0.46791393457269104739,
                     0.36076157304813860757, 0.17132449237917034504};

GaussRule gauss_rule(int n) {
    switch (n) {
        case 2: return {2, x2, w2};
        case 3: return {3, x3, w3};
        case 4: return {4, x4, w4};
        case 5: return {5, x5, w5};
        case 6: return {6, x6, w6};
        default: throw validation_error("thickness_quadrature_oracle: npts must be in 2..6");
    }
}

} // namespace

ResultantPoint thickness_quadrature_oracle(const Mat2& eps0, const Mat2& eps1,
                                           double k1, double k2, const Material& mat,
                                           int npts) {
    GaussRule rule = gauss_rule(npts);
    Mat2 dmod = dmod_matrix(k1, k2);
    ResultantPoint r{Mat2::Zero(), Mat2::Zero()};
    for (int q = 0; q < rule.n; ++q) {
        double z = 0.5 * mat.h * rule.x[q];
        double wz = 0.5 * mat.h * rule.w[q];
        Mat2 sigma = plane_stress(eps0 + z * eps1, mat);
        for (int a = 0; a < 2; ++a) {
            double shell = 1.0 + z * dmod(a, a); // complementary curvature of row a
            for (int b = 0; b < 2; ++b) {
                r.N(a, b) += wz * sigma(a, b) * shell;
                r.M(a, b) += wz * z * sigma(a, b) * shell;
            }
        }
    }
    return r;
}

} // namespace shellframe
