#pragma once

#include <vector>

#include "shellframe/errors.hpp"
#include "shellframe/types.hpp"

namespace shellframe {

/// Structured sample grid over a patch domain. Periodic coordinates cover
/// [min, max) without a duplicated seam sample; open coordinates include
/// both endpoints.
struct Grid {
    int n1 = 0, n2 = 0;
    double a1min = 0.0, a2min = 0.0;
    double d1 = 0.0, d2 = 0.0;
    bool p1 = false, p2 = false;

    Grid() = default;
    Grid(int n1_, int n2_, const Domain& dom, bool periodic1, bool periodic2);

    int size() const { return n1 * n2; }
    int idx(int i, int j) const { return i * n2 + j; }
    SurfacePoint point(int i, int j) const {
        return {a1min + i * d1, a2min + j * d2};
    }
    bool operator==(const Grid&) const = default;
};

struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), v(g.size(), 0.0) {}
    double& at(int i, int j) { return v[grid.idx(i, j)]; }
    double at(int i, int j) const { return v[grid.idx(i, j)]; }
};

struct VectorField2 {
    Grid grid;
    std::vector<double> v; // 2 components per point

    VectorField2() = default;
    explicit VectorField2(const Grid& g) : grid(g), v(2 * g.size(), 0.0) {}
    double& at(int i, int j, int c) { return v[2 * grid.idx(i, j) + c]; }
    double at(int i, int j, int c) const { return v[2 * grid.idx(i, j) + c]; }
    Vec2 vec(int i, int j) const { return {at(i, j, 0), at(i, j, 1)}; }
    void set(int i, int j, const Vec2& u) { at(i, j, 0) = u(0); at(i, j, 1) = u(1); }
};

/// General (possibly asymmetric) 2x2 tensor field; components row-major.
struct Tensor2Field {
    Grid grid;
    std::vector<double> v; // 4 per point

    Tensor2Field() = default;
    explicit Tensor2Field(const Grid& g) : grid(g), v(4 * g.size(), 0.0) {}
    double& at(int i, int j, int a, int b) { return v[4 * grid.idx(i, j) + 2 * a + b]; }
    double at(int i, int j, int a, int b) const { return v[4 * grid.idx(i, j) + 2 * a + b]; }
    Mat2 mat(int i, int j) const {
        Mat2 m;
        m << at(i, j, 0, 0), at(i, j, 0, 1), at(i, j, 1, 0), at(i, j, 1, 1);
        return m;
    }
    void set(int i, int j, const Mat2& m) {
        at(i, j, 0, 0) = m(0, 0); at(i, j, 0, 1) = m(0, 1);
        at(i, j, 1, 0) = m(1, 0); at(i, j, 1, 1) = m(1, 1);
    }
};

/// Symmetric 2x2 tensor field, stored as (t11, t12, t22).
struct SymTensor2Field {
    Grid grid;
    std::vector<double> v; // 3 per point

    SymTensor2Field() = default;
    explicit SymTensor2Field(const Grid& g) : grid(g), v(3 * g.size(), 0.0) {}
    double& at(int i, int j, int c) { return v[3 * grid.idx(i, j) + c]; }
    double at(int i, int j, int c) const { return v[3 * grid.idx(i, j) + c]; }
    Mat2 mat(int i, int j) const {
        Mat2 m;
        m << at(i, j, 0), at(i, j, 1), at(i, j, 1), at(i, j, 2);
        return m;
    }
    void set(int i, int j, const Mat2& m) {
        at(i, j, 0) = m(0, 0);
        at(i, j, 1) = 0.5 * (m(0, 1) + m(1, 0));
        at(i, j, 2) = m(1, 1);
    }
};

/// Raw coordinate partial d/d(alpha_dir) of a grid-sampled scalar field:
/// second-order central stencils, periodic wrap or one-sided at open edges.
ScalarField grid_partial(const ScalarField& f, int dir);

} // namespace shellframe
