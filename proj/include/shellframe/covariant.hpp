#pragma once

#include <functional>

#include "shellframe/grid.hpp"
#include "shellframe/surface.hpp"

namespace shellframe {

/// Mid-section connection coefficients at a point, with index convention
/// Gamma^a_{c b}: c is the differentiation direction, b the source index.
/// Only Gamma^1_{c2} = -Gamma^2_{c1} are nonzero in the orthonormal frame.
struct ConnectionCoefficients {
    double g112 = 0.0; // Gamma^1_{12} =  A1,2 / (A1 A2)
    double g122 = 0.0; // Gamma^1_{22} = -A2,1 / (A1 A2)

    double gamma(int a, int c, int b) const; // 0-based indices
    /// trace(d) = sum_b Gamma^b_{b d}, needed by the tensor divergence.
    double trace(int d) const { return d == 0 ? -g122 : g112; }
};

/// Cached patch data at one point: Lame parameters, curvatures, their
/// hatted gradients, and the connection coefficients.
struct MidPointGeom {
    double A1 = 1.0, A2 = 1.0;
    double k1 = 0.0, k2 = 0.0;
    Vec2 grad_k1 = Vec2::Zero(); // hatted: (1/A_a) d kappa1 / d alpha^a
    Vec2 grad_k2 = Vec2::Zero();
    ConnectionCoefficients conn;
};

MidPointGeom mid_point_geometry(const SurfacePatch& patch, const SurfacePoint& p);

// ---- Pointwise kernels (inputs are hatted partials, outputs frame tensors).

/// u^a_{;b} with derivative index b: grad(a,b) = duhat(a,b) + Gamma^a_{bc} u^c,
/// where duhat(a,b) = hatted partial of u^a along b.
Mat2 covariant_grad_vector_kernel(const Vec2& u, const Mat2& duhat, const MidPointGeom& g);

/// (div T)^a = d-hat_b T^{ba} + trGamma_d T^{da} + Gamma^a_{bd} T^{bd};
/// dThat[b] is the hatted partial of T along direction b.
Vec2 covariant_div_tensor_kernel(const Mat2& T, const Mat2 dThat[2], const MidPointGeom& g);

/// Symmetrized covariant Hessian; wh = hatted gradient of w,
/// wh2(a,b) = d-hat_a (d-hat_b w).
Mat2 covariant_hessian_kernel(const Vec2& wh, const Mat2& wh2, const MidPointGeom& g);

Mat2 lie_derivative_metric_kernel(const Vec2& u, const Mat2& duhat, const MidPointGeom& g);
Mat2 lie_derivative_curvature_kernel(const Vec2& u, const Mat2& duhat, const MidPointGeom& g);

// ---- Grid operations.

/// Hatted frame partial d-hat_dir f = (1/A_dir) df/d(alpha_dir).
ScalarField frame_partial(const ScalarField& f, int dir, const SurfacePatch& patch);

Tensor2Field covariant_grad_vector(const VectorField2& u, const SurfacePatch& patch);
VectorField2 covariant_div_tensor(const Tensor2Field& T, const SurfacePatch& patch);
VectorField2 covariant_div_vector_terms(const VectorField2& q, const SurfacePatch& patch); // helper
ScalarField covariant_div_vector(const VectorField2& q, const SurfacePatch& patch);
SymTensor2Field covariant_hessian_scalar(const ScalarField& w, const SurfacePatch& patch);
SymTensor2Field lie_derivative_metric(const VectorField2& u, const SurfacePatch& patch);
SymTensor2Field lie_derivative_curvature(const VectorField2& u, const SurfacePatch& patch);

// ---- Analytic (closure) field evaluation.

/// Tangential vector field given as two SurfaceFunctions in frame components.
struct AnalyticVectorField2 {
    SurfaceFunction u1, u2;
};

Mat2 covariant_grad_vector_at(const AnalyticVectorField2& u, const SurfacePatch& patch,
                              const SurfacePoint& p);
Mat2 lie_derivative_metric_at(const AnalyticVectorField2& u, const SurfacePatch& patch,
                              const SurfacePoint& p);
Mat2 lie_derivative_curvature_at(const AnalyticVectorField2& u, const SurfacePatch& patch,
                                 const SurfacePoint& p);

/// Brute-force Lie derivative of a covariant symmetric 2-tensor field
/// (frame components, as a closure) by flowing a distance eps along u and
/// central-differencing the pulled-back coordinate components. O(eps^2).
Mat2 flow_lie_oracle(const AnalyticVectorField2& u,
                     const std::function<Mat2(const SurfacePoint&)>& tensor,
                     const SurfacePatch& patch, const SurfacePoint& p, double eps);

} // namespace shellframe
