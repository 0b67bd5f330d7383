#pragma once

#include <array>
#include <functional>
#include <vector>

#include "shellframe/surface.hpp"
#include "shellframe/types.hpp"

namespace shellframe {

/// Scalar coefficient field over the 3D shell (alpha1, alpha2, z), with
/// optional analytic partials. Missing partials fall back to central
/// differences with a cbrt(eps)-scaled step.
class Field3 {
public:
    using Fn = std::function<double(const ShellPoint&)>;

    Field3() = default;
    explicit Field3(Fn f) : f_(std::move(f)) {}
    Field3(Fn f, Fn d1, Fn d2, Fn dz)
        : f_(std::move(f)), d_{std::move(d1), std::move(d2), std::move(dz)} {}

    static Field3 constant(double value);

    double operator()(const ShellPoint& p) const { return f_(p); }
    /// dir: 1 -> d/dalpha1, 2 -> d/dalpha2, 3 -> d/dz.
    double deriv(int dir, const ShellPoint& p) const;
    bool valid() const { return static_cast<bool>(f_); }

private:
    Fn f_;
    std::array<Fn, 3> d_{};
};

/// Differential form of degree 0..3 stored in orthonormal-frame components.
/// Multi-indices are strictly increasing; basis order is
/// deg1: {1},{2},{3}; deg2: {12},{13},{23}; deg3: {123}.
class FrameForm {
public:
    explicit FrameForm(int degree);
    FrameForm(int degree, std::vector<Field3> components);

    static FrameForm zero(int degree);
    /// Basis one-form theta^i (frame components are Kronecker deltas).
    static FrameForm basis_one_form(int i);

    int degree() const { return degree_; }
    int n_components() const { return static_cast<int>(comp_.size()); }
    const Field3& component(int k) const { return comp_[k]; }
    Field3& component(int k) { return comp_[k]; }

    /// Component by multi-index, e.g. {1,3} for a two-form.
    double eval(std::initializer_list<int> index, const ShellPoint& p) const;

    FrameForm operator+(const FrameForm& other) const;
    FrameForm operator-(const FrameForm& other) const;
    FrameForm scaled(double s) const;
    FrameForm scaled(Field3 s) const;

    double max_abs(const ShellPoint& p) const;

    static int component_count(int degree);
    static int index_of(std::initializer_list<int> index, int degree);

private:
    int degree_;
    std::vector<Field3> comp_;
};

/// Graded wedge product. Throws degree_error when deg f + deg g > 3.
FrameForm wedge(const FrameForm& f, const FrameForm& g);

/// Hodge dual of a one-form: theta^a -> oriented area element theta-hat_a,
/// with theta^a ^ dual(theta^b) = delta^ab dV.
FrameForm hodge_dual(const FrameForm& f);

/// Exterior derivative on the shell of `patch`: frame components are
/// converted to coordinate components via the scale factors, differentiated,
/// and converted back.
FrameForm exterior_derivative(const FrameForm& f, const SurfacePatch& patch);

/// Antisymmetric matrix of connection one-forms omega^i_j; only the strict
/// upper triangle is stored.
class ConnectionMatrix {
public:
    ConnectionMatrix(FrameForm w12, FrameForm w13, FrameForm w23);

    /// omega^i_j with sign; diagonal entries are zero forms.
    FrameForm omega(int i, int j) const;

private:
    FrameForm w12_, w13_, w23_;
};

/// Closed-form shell connection (simplified via Gauss-Codazzi):
/// omega^1_2 = [A1,2 th1/(1+z k1) - A2,1 th2/(1+z k2)] / (A1 A2),
/// omega^a_3 = k_a th^a / (1 + z k_a).
ConnectionMatrix shell_connection(const SurfacePatch& patch);

/// Mid-section pull-back: components of pi^1_2 = (A1,2 w1 - A2,1 w2)/(A1 A2)
/// along (w1, w2).
Vec2 midsurface_connection(const SurfacePatch& patch, const SurfacePoint& p);

/// d theta^i + omega^i_j ^ theta^j for i = 1..3; all vanish for a valid patch.
std::array<FrameForm, 3> torsion_residual(const SurfacePatch& patch);

/// Curvature two-forms Omega^i_j = d omega^i_j + omega^i_k ^ omega^k_j;
/// all vanish for any valid patch (flat ambient space). Entry (i,j) of the
/// returned matrix is Omega^{i+1}_{j+1}.
std::array<std::array<FrameForm, 3>, 3> curvature_residual(const SurfacePatch& patch);

/// Volume form dV = theta^1 ^ theta^2 ^ theta^3.
FrameForm volume_form();

} // namespace shellframe
