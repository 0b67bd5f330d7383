#include "shellframe/forms.hpp"

#include <algorithm>
#include <cfloat>
#include <memory>
#include <cmath>

#include "shellframe/errors.hpp"

namespace shellframe {

namespace {

constexpr double kFdScale = 6.055454452393343e-06; // cbrt(DBL_EPSILON)

double coord(const ShellPoint& p, int dir) {
    return dir == 1 ? p.a1 : (dir == 2 ? p.a2 : p.z);
}

ShellPoint shifted(ShellPoint p, int dir, double h) {
    if (dir == 1) p.a1 += h;
    else if (dir == 2) p.a2 += h;
    else p.z += h;
    return p;
}

// Multi-index bitmask <-> storage slot. Bit i-1 set means index i present.
const std::array<std::array<int, 8>, 4> kMaskToSlot = [] {
    std::array<std::array<int, 8>, 4> t{};
    for (auto& row : t) row.fill(-1);
    t[0][0b000] = 0;
    t[1][0b001] = 0; t[1][0b010] = 1; t[1][0b100] = 2;
    t[2][0b011] = 0; t[2][0b101] = 1; t[2][0b110] = 2;
    t[3][0b111] = 0;
    return t;
}();

const std::array<std::array<int, 3>, 4> kSlotToMask = {{
    {0b000, -1, -1},
    {0b001, 0b010, 0b100},
    {0b011, 0b101, 0b110},
    {0b111, -1, -1},
}};

// Sign of merging two disjoint increasing index sets into one increasing set.
int merge_sign(int maskA, int maskB) {
    int inversions = 0;
    for (int a = 1; a <= 3; ++a) {
        if (!(maskA & (1 << (a - 1)))) continue;
        for (int b = 1; b <= 3; ++b)
            if ((maskB & (1 << (b - 1))) && b < a) ++inversions;
    }
    return inversions % 2 == 0 ? 1 : -1;
}

// Combinators capture operands through shared_ptr so that composing and
// copying composite fields shares structure instead of deep-copying the
// whole closure tree (which grows exponentially with expression depth).
Field3 field_add(const Field3& fa, const Field3& fb) {
    auto a = std::make_shared<const Field3>(fa);
    auto b = std::make_shared<const Field3>(fb);
    return Field3(
        [a, b](const ShellPoint& p) { return (*a)(p) + (*b)(p); },
        [a, b](const ShellPoint& p) { return a->deriv(1, p) + b->deriv(1, p); },
        [a, b](const ShellPoint& p) { return a->deriv(2, p) + b->deriv(2, p); },
        [a, b](const ShellPoint& p) { return a->deriv(3, p) + b->deriv(3, p); });
}

Field3 field_scale(const Field3& fa, double s) {
    auto a = std::make_shared<const Field3>(fa);
    return Field3(
        [a, s](const ShellPoint& p) { return s * (*a)(p); },
        [a, s](const ShellPoint& p) { return s * a->deriv(1, p); },
        [a, s](const ShellPoint& p) { return s * a->deriv(2, p); },
        [a, s](const ShellPoint& p) { return s * a->deriv(3, p); });
}

Field3 field_mul(const Field3& fa, const Field3& fb) {
    auto a = std::make_shared<const Field3>(fa);
    auto b = std::make_shared<const Field3>(fb);
    return Field3(
        [a, b](const ShellPoint& p) { return (*a)(p) * (*b)(p); },
        [a, b](const ShellPoint& p) {
            return a->deriv(1, p) * (*b)(p) + (*a)(p) * b->deriv(1, p);
        },
        [a, b](const ShellPoint& p) {
            return a->deriv(2, p) * (*b)(p) + (*a)(p) * b->deriv(2, p);
        },
        [a, b](const ShellPoint& p) {
            return a->deriv(3, p) * (*b)(p) + (*a)(p) * b->deriv(3, p);
        });
}

Field3 field_div(const Field3& fa, const Field3& fb) {
    auto a = std::make_shared<const Field3>(fa);
    auto b = std::make_shared<const Field3>(fb);
    auto d = [a, b](int dir, const ShellPoint& p) {
        double bv = (*b)(p);
        return (a->deriv(dir, p) * bv - (*a)(p) * b->deriv(dir, p)) / (bv * bv);
    };
    return Field3(
        [a, b](const ShellPoint& p) { return (*a)(p) / (*b)(p); },
        [d](const ShellPoint& p) { return d(1, p); },
        [d](const ShellPoint& p) { return d(2, p); },
        [d](const ShellPoint& p) { return d(3, p); });
}

// Lift a mid-section function to a z-independent shell field.
Field3 lift(const SurfaceFunction& fn) {
    return Field3(
        [fn](const ShellPoint& p) { return fn(p.a1, p.a2); },
        [fn](const ShellPoint& p) { return fn.deriv(1, p.a1, p.a2); },
        [fn](const ShellPoint& p) { return fn.deriv(2, p.a1, p.a2); },
        [](const ShellPoint&) { return 0.0; });
}

// Lift a first partial of a mid-section function (uses second partials).
Field3 lift_deriv(const SurfaceFunction& fn, int dir) {
    return Field3(
        [fn, dir](const ShellPoint& p) { return fn.deriv(dir, p.a1, p.a2); },
        [fn, dir](const ShellPoint& p) { return fn.deriv2(dir, 1, p.a1, p.a2); },
        [fn, dir](const ShellPoint& p) { return fn.deriv2(dir, 2, p.a1, p.a2); },
        [](const ShellPoint&) { return 0.0; });
}

// (1 + z*kappa), with a degeneracy guard.
Field3 one_plus_zk(const SurfaceFunction& k) {
    return Field3(
        [k](const ShellPoint& p) {
            double v = 1.0 + p.z * k(p.a1, p.a2);
            if (v <= 0.0)
                throw degenerate_frame_error("shell frame degenerates: |z*kappa| >= 1");
            return v;
        },
        [k](const ShellPoint& p) { return p.z * k.deriv(1, p.a1, p.a2); },
        [k](const ShellPoint& p) { return p.z * k.deriv(2, p.a1, p.a2); },
        [k](const ShellPoint& p) { return k(p.a1, p.a2); });
}

// Scale factor h_i of the shell frame; h_3 = 1.
Field3 scale_factor_field(const SurfacePatch& patch, int dir) {
    if (dir == 3) return Field3::constant(1.0);
    const SurfaceFunction& A = dir == 1 ? patch.A1() : patch.A2();
    const SurfaceFunction& k = dir == 1 ? patch.k1() : patch.k2();
    return field_mul(lift(A), one_plus_zk(k));
}

} // namespace

Field3 Field3::constant(double value) {
    auto zero = [](const ShellPoint&) { return 0.0; };
    return Field3([value](const ShellPoint&) { return value; }, zero, zero, zero);
}

double Field3::deriv(int dir, const ShellPoint& p) const {
    if (d_[dir - 1]) return d_[dir - 1](p);
    double h = kFdScale * std::max(1.0, std::abs(coord(p, dir)));
    return (f_(shifted(p, dir, h)) - f_(shifted(p, dir, -h))) / (2.0 * h);
}

int FrameForm::component_count(int degree) {
    switch (degree) {
        case 0: case 3: return 1;
        case 1: case 2: return 3;
        default: throw degree_error("form degree must be 0..3");
    }
}

FrameForm::FrameForm(int degree)
    : degree_(degree), comp_(component_count(degree), Field3::constant(0.0)) {}

FrameForm::FrameForm(int degree, std::vector<Field3> components)
    : degree_(degree), comp_(std::move(components)) {
    if (static_cast<int>(comp_.size()) != component_count(degree_))
        throw degree_error("component count does not match degree");
}

FrameForm FrameForm::zero(int degree) { return FrameForm(degree); }

FrameForm FrameForm::basis_one_form(int i) {
    FrameForm f(1);
    f.comp_[i - 1] = Field3::constant(1.0);
    return f;
}

int FrameForm::index_of(std::initializer_list<int> index, int degree) {
    int mask = 0, last = 0;
    for (int i : index) {
        if (i <= last || i > 3) throw degree_error("multi-index must be strictly increasing in 1..3");
        mask |= 1 << (i - 1);
        last = i;
    }
    int slot = kMaskToSlot[degree][mask];
    if (slot < 0 || static_cast<int>(index.size()) != degree)
        throw degree_error("multi-index size does not match degree");
    return slot;
}

double FrameForm::eval(std::initializer_list<int> index, const ShellPoint& p) const {
    return comp_[index_of(index, degree_)](p);
}

FrameForm FrameForm::operator+(const FrameForm& other) const {
    if (degree_ != other.degree_) throw degree_error("cannot add forms of different degree");
    FrameForm out(degree_);
    for (int k = 0; k < n_components(); ++k)
        out.comp_[k] = field_add(comp_[k], other.comp_[k]);
    return out;
}

FrameForm FrameForm::operator-(const FrameForm& other) const {
    return *this + other.scaled(-1.0);
}

FrameForm FrameForm::scaled(double s) const {
    FrameForm out(degree_);
    for (int k = 0; k < n_components(); ++k)
        out.comp_[k] = field_scale(comp_[k], s);
    return out;
}

FrameForm FrameForm::scaled(Field3 s) const {
    FrameForm out(degree_);
    for (int k = 0; k < n_components(); ++k)
        out.comp_[k] = field_mul(comp_[k], s);
    return out;
}

double FrameForm::max_abs(const ShellPoint& p) const {
    double m = 0.0;
    for (const auto& c : comp_) m = std::max(m, std::abs(c(p)));
    return m;
}

FrameForm wedge(const FrameForm& f, const FrameForm& g) {
    int deg = f.degree() + g.degree();
    if (deg > 3) throw degree_error("wedge: resulting degree exceeds 3");
    std::vector<std::vector<Field3>> terms(FrameForm::component_count(deg));
    for (int kf = 0; kf < f.n_components(); ++kf) {
        int mf = kSlotToMask[f.degree()][kf];
        for (int kg = 0; kg < g.n_components(); ++kg) {
            int mg = kSlotToMask[g.degree()][kg];
            if (mf & mg) continue;
            int sign = merge_sign(mf, mg);
            Field3 prod = field_mul(f.component(kf), g.component(kg));
            if (sign < 0) prod = field_scale(prod, -1.0);
            terms[kMaskToSlot[deg][mf | mg]].push_back(std::move(prod));
        }
    }
    FrameForm out(deg);
    for (int k = 0; k < out.n_components(); ++k) {
        Field3 acc = Field3::constant(0.0);
        for (const auto& t : terms[k]) acc = field_add(acc, t);
        out.component(k) = std::move(acc);
    }
    return out;
}

FrameForm hodge_dual(const FrameForm& f) {
    if (f.degree() != 1) throw degree_error("hodge_dual: expected a one-form");
    // theta1 -> theta2^theta3, theta2 -> theta3^theta1, theta3 -> theta1^theta2
    std::vector<Field3> comp(3);
    comp[0] = f.component(2);                    // (1,2) slot <- c3
    comp[1] = field_scale(f.component(1), -1.0); // (1,3) slot <- -c2
    comp[2] = f.component(0);                    // (2,3) slot <- c1
    return FrameForm(2, std::move(comp));
}

FrameForm exterior_derivative(const FrameForm& f, const SurfacePatch& patch) {
    if (f.degree() >= 3) throw degree_error("exterior_derivative: degree 3 input");
    const int deg = f.degree();
    std::array<Field3, 3> h = {scale_factor_field(patch, 1), scale_factor_field(patch, 2),
                               scale_factor_field(patch, 3)};
    std::vector<std::vector<Field3>> terms(FrameForm::component_count(deg + 1));
    for (int k = 0; k < f.n_components(); ++k) {
        int mask = kSlotToMask[deg][k];
        // Coordinate coefficient C = F * prod_{i in mask} h_i.
        Field3 C = f.component(k);
        for (int i = 1; i <= 3; ++i)
            if (mask & (1 << (i - 1))) C = field_mul(C, h[i - 1]);
        for (int j = 1; j <= 3; ++j) {
            if (mask & (1 << (j - 1))) continue;
            int jmask = 1 << (j - 1);
            int sign = merge_sign(jmask, mask); // d-alpha_j in front of dx^mask
            int outMask = mask | jmask;
            Field3 Hout = Field3::constant(1.0);
            for (int i = 1; i <= 3; ++i)
                if (outMask & (1 << (i - 1))) Hout = field_mul(Hout, h[i - 1]);
            auto Cc = std::make_shared<const Field3>(C);
            auto Hc = std::make_shared<const Field3>(Hout);
            Field3 term(
                [Cc, Hc, j, sign](const ShellPoint& p) {
                    return sign * Cc->deriv(j, p) / (*Hc)(p);
                });
            terms[kMaskToSlot[deg + 1][outMask]].push_back(std::move(term));
        }
    }
    FrameForm out(deg + 1);
    for (int k = 0; k < out.n_components(); ++k) {
        Field3 acc = Field3::constant(0.0);
        for (const auto& t : terms[k]) acc = field_add(acc, t);
        out.component(k) = std::move(acc);
    }
    return out;
}

ConnectionMatrix::ConnectionMatrix(FrameForm w12, FrameForm w13, FrameForm w23)
    : w12_(std::move(w12)), w13_(std::move(w13)), w23_(std::move(w23)) {}

FrameForm ConnectionMatrix::omega(int i, int j) const {
    if (i == j) return FrameForm::zero(1);
    bool flip = i > j;
    if (flip) std::swap(i, j);
    const FrameForm& w = (i == 1 && j == 2) ? w12_ : (i == 1 ? w13_ : w23_);
    return flip ? w.scaled(-1.0) : w;
}

ConnectionMatrix shell_connection(const SurfacePatch& patch) {
    Field3 A1 = lift(patch.A1()), A2 = lift(patch.A2());
    Field3 f1 = one_plus_zk(patch.k1()), f2 = one_plus_zk(patch.k2());
    Field3 A1A2 = field_mul(A1, A2);

    FrameForm w12(1);
    w12.component(0) = field_div(lift_deriv(patch.A1(), 2), field_mul(A1A2, f1));
    w12.component(1) = field_scale(field_div(lift_deriv(patch.A2(), 1), field_mul(A1A2, f2)), -1.0);

    FrameForm w13(1);
    w13.component(0) = field_div(lift(patch.k1()), f1);
    FrameForm w23(1);
    w23.component(1) = field_div(lift(patch.k2()), f2);

    return ConnectionMatrix(std::move(w12), std::move(w13), std::move(w23));
}

Vec2 midsurface_connection(const SurfacePatch& patch, const SurfacePoint& p) {
    patch.require_inside(p);
    double A1 = patch.A(1, p), A2 = patch.A(2, p);
    return Vec2(patch.A1().deriv(2, p.a1, p.a2) / (A1 * A2),
                -patch.A2().deriv(1, p.a1, p.a2) / (A1 * A2));
}

std::array<FrameForm, 3> torsion_residual(const SurfacePatch& patch) {
    ConnectionMatrix w = shell_connection(patch);
    std::array<FrameForm, 3> res{FrameForm::zero(2), FrameForm::zero(2), FrameForm::zero(2)};
    for (int i = 1; i <= 3; ++i) {
        FrameForm acc = exterior_derivative(FrameForm::basis_one_form(i), patch);
        for (int j = 1; j <= 3; ++j)
            if (j != i) acc = acc + wedge(w.omega(i, j), FrameForm::basis_one_form(j));
        res[i - 1] = std::move(acc);
    }
    return res;
}

std::array<std::array<FrameForm, 3>, 3> curvature_residual(const SurfacePatch& patch) {
    ConnectionMatrix w = shell_connection(patch);
    std::array<std::array<FrameForm, 3>, 3> out{{
        {FrameForm::zero(2), FrameForm::zero(2), FrameForm::zero(2)},
        {FrameForm::zero(2), FrameForm::zero(2), FrameForm::zero(2)},
        {FrameForm::zero(2), FrameForm::zero(2), FrameForm::zero(2)},
    }};
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;
            FrameForm acc = exterior_derivative(w.omega(i, j), patch);
            for (int k = 1; k <= 3; ++k)
                if (k != i && k != j) acc = acc + wedge(w.omega(i, k), w.omega(k, j));
            out[i - 1][j - 1] = std::move(acc);
        }
    }
    return out;
}

FrameForm volume_form() {
    FrameForm f(3);
    f.component(0) = Field3::constant(1.0);
    return f;
}

} // namespace shellframe
