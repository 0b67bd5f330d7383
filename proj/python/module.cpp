#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shellframe/constitutive.hpp"
#include "shellframe/dynamics.hpp"
#include "shellframe/kinematics.hpp"
#include "shellframe/surface.hpp"

namespace py = pybind11;
using namespace shellframe;

namespace {

// ---- numpy <-> field conversions (row index = alpha1, column = alpha2).

py::array_t<double> to_numpy(const ScalarField& f) {
    py::array_t<double> out({f.grid.n1, f.grid.n2});
    auto r = out.mutable_unchecked<2>();
    for (int i = 0; i < f.grid.n1; ++i)
        for (int j = 0; j < f.grid.n2; ++j) r(i, j) = f.at(i, j);
    return out;
}

py::array_t<double> to_numpy(const VectorField2& f) {
    py::array_t<double> out({f.grid.n1, f.grid.n2, 2});
    auto r = out.mutable_unchecked<3>();
    for (int i = 0; i < f.grid.n1; ++i)
        for (int j = 0; j < f.grid.n2; ++j)
            for (int c = 0; c < 2; ++c) r(i, j, c) = f.at(i, j, c);
    return out;
}

py::array_t<double> to_numpy(const SymTensor2Field& f) {
    py::array_t<double> out({f.grid.n1, f.grid.n2, 2, 2});
    auto r = out.mutable_unchecked<4>();
    for (int i = 0; i < f.grid.n1; ++i)
        for (int j = 0; j < f.grid.n2; ++j) {
            Mat2 m = f.mat(i, j);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) r(i, j, a, b) = m(a, b);
        }
    return out;
}

py::array_t<double> to_numpy(const Tensor2Field& f) {
    py::array_t<double> out({f.grid.n1, f.grid.n2, 2, 2});
    auto r = out.mutable_unchecked<4>();
    for (int i = 0; i < f.grid.n1; ++i)
        for (int j = 0; j < f.grid.n2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) r(i, j, a, b) = f.at(i, j, a, b);
    return out;
}

ScalarField scalar_from_numpy(const Grid& g, const py::array_t<double>& arr) {
    auto r = arr.unchecked<2>();
    if (r.shape(0) != g.n1 || r.shape(1) != g.n2)
        throw py::value_error("array shape does not match grid");
    ScalarField f(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) f.at(i, j) = r(i, j);
    return f;
}

VectorField2 vector_from_numpy(const Grid& g, const py::array_t<double>& arr) {
    auto r = arr.unchecked<3>();
    if (r.shape(0) != g.n1 || r.shape(1) != g.n2 || r.shape(2) != 2)
        throw py::value_error("array shape does not match grid (expected n1 x n2 x 2)");
    VectorField2 f(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j)
            for (int c = 0; c < 2; ++c) f.at(i, j, c) = r(i, j, c);
    return f;
}

DisplacementField displacement_from_numpy(const Grid& g, const py::array_t<double>& u,
                                          const py::array_t<double>& w) {
    DisplacementField d(g);
    d.u = vector_from_numpy(g, u);
    d.w = scalar_from_numpy(g, w);
    return d;
}

} // namespace

PYBIND11_MODULE(_shellframe, m) {
    m.doc() = "Kirchhoff-Love thin-shell kinematics and dynamics on "
              "lines-of-curvature surface patches";

    py::register_exception<validation_error>(m, "ValidationError");
    py::register_exception<divergence_error>(m, "DivergenceError");
    py::register_exception<io_error>(m, "IOError");
    py::register_exception<domain_error>(m, "DomainError");

    py::class_<Domain>(m, "Domain")
        .def(py::init<>())
        .def_readwrite("a1min", &Domain::a1min)
        .def_readwrite("a1max", &Domain::a1max)
        .def_readwrite("a2min", &Domain::a2min)
        .def_readwrite("a2max", &Domain::a2max);

    py::class_<SurfacePatch>(m, "SurfacePatch")
        .def_property_readonly("domain", &SurfacePatch::domain)
        .def_property_readonly("periodic",
                               [](const SurfacePatch& p) {
                                   return py::make_tuple(p.periodic()[0], p.periodic()[1]);
                               })
        .def("lame",
             [](const SurfacePatch& p, double a1, double a2) {
                 SurfacePoint q{a1, a2};
                 return py::make_tuple(p.A(1, q), p.A(2, q));
             },
             py::arg("a1"), py::arg("a2"), "Lame parameters (A1, A2) at a point")
        .def("curvatures",
             [](const SurfacePatch& p, double a1, double a2) {
                 SurfacePoint q{a1, a2};
                 return py::make_tuple(p.kappa(1, q), p.kappa(2, q));
             },
             py::arg("a1"), py::arg("a2"), "principal curvatures (kappa1, kappa2)")
        .def("codazzi_residual",
             [](const SurfacePatch& p, double a1, double a2) {
                 auto [c1, c2] = p.codazzi_residual({a1, a2});
                 return py::make_tuple(c1, c2);
             },
             py::arg("a1"), py::arg("a2"))
        .def("gauss_residual",
             [](const SurfacePatch& p, double a1, double a2) {
                 return p.gauss_residual({a1, a2});
             },
             py::arg("a1"), py::arg("a2"))
        .def("shell_scale_factors",
             [](const SurfacePatch& p, double a1, double a2, double z) {
                 Vec3 h = p.shell_scale_factors({a1, a2}, z);
                 return py::make_tuple(h(0), h(1), h(2));
             },
             py::arg("a1"), py::arg("a2"), py::arg("z"));

    m.def("make_plate", &make_plate, py::arg("length") = 2.0 * M_PI,
          py::arg("width") = 2.0 * M_PI);
    m.def("make_cylinder", &make_cylinder, py::arg("radius"),
          py::arg("length") = 2.0 * M_PI);
    m.def("make_sphere", &make_sphere, py::arg("radius"), py::arg("polar_margin") = 0.1);
    m.def("make_cone", &make_cone, py::arg("half_angle"), py::arg("slant_min"),
          py::arg("slant_max"));
    m.def("make_torus", &make_torus, py::arg("major_radius"), py::arg("minor_radius"));
    m.def("make_canonical",
          [](const std::string& kind) { return make_canonical(surface_kind_from_string(kind)); },
          py::arg("kind"), "canonical patch by name: plate/cylinder/sphere/cone/torus");

    py::class_<Grid>(m, "Grid")
        .def(py::init([](int n1, int n2, const SurfacePatch& patch) {
                 return Grid(n1, n2, patch.domain(), patch.periodic()[0], patch.periodic()[1]);
             }),
             py::arg("n1"), py::arg("n2"), py::arg("patch"))
        .def_readonly("n1", &Grid::n1)
        .def_readonly("n2", &Grid::n2)
        .def("points",
             [](const Grid& g) {
                 py::array_t<double> out({g.n1, g.n2, 2});
                 auto r = out.mutable_unchecked<3>();
                 for (int i = 0; i < g.n1; ++i)
                     for (int j = 0; j < g.n2; ++j) {
                         SurfacePoint p = g.point(i, j);
                         r(i, j, 0) = p.a1;
                         r(i, j, 1) = p.a2;
                     }
                 return out;
             },
             "sample coordinates, shape (n1, n2, 2)");

    py::class_<Material>(m, "Material")
        .def(py::init<double, double, double, double>(), py::arg("E"), py::arg("nu"),
             py::arg("rho"), py::arg("h"))
        .def_readonly("E", &Material::E)
        .def_readonly("nu", &Material::nu)
        .def_readonly("rho", &Material::rho)
        .def_readonly("h", &Material::h)
        .def_property_readonly("C", &Material::C)
        .def_property_readonly("B", &Material::B);

    m.def("strain",
          [](const Grid& g, const SurfacePatch& patch, const py::array_t<double>& u,
             const py::array_t<double>& w) {
              StrainState s = strain_state(displacement_from_numpy(g, u, w), patch);
              return py::make_tuple(to_numpy(s.eps0), to_numpy(s.eps1));
          },
          py::arg("grid"), py::arg("patch"), py::arg("u"), py::arg("w"),
          "membrane and bending strain (eps0, eps1), each shape (n1, n2, 2, 2)");

    m.def("resultants",
          [](const Grid& g, const SurfacePatch& patch, const Material& mat,
             const py::array_t<double>& u, const py::array_t<double>& w) {
              StrainState s = strain_state(displacement_from_numpy(g, u, w), patch);
              ResultantField r = resultants(s, patch, mat);
              return py::make_tuple(to_numpy(r.N), to_numpy(r.M));
          },
          py::arg("grid"), py::arg("patch"), py::arg("material"), py::arg("u"), py::arg("w"),
          "membrane force N and moment M per unit length, each shape (n1, n2, 2, 2)");

    m.def("reduced_acceleration",
          [](const Grid& g, const SurfacePatch& patch, const Material& mat,
             const py::array_t<double>& u, const py::array_t<double>& w) {
              LoadState loads(g);
              DisplacementField acc =
                  reduced_acceleration(displacement_from_numpy(g, u, w), mat, patch, loads);
              return py::make_tuple(to_numpy(acc.u), to_numpy(acc.w));
          },
          py::arg("grid"), py::arg("patch"), py::arg("material"), py::arg("u"), py::arg("w"),
          "(u_ddot, w_ddot) of the reduced system with zero loads");

    m.def("simulate",
          [](const Grid& g, const SurfacePatch& patch, const Material& mat,
             const py::array_t<double>& u, const py::array_t<double>& w, double dt,
             long steps) {
              DynamicState state(g);
              state.disp = displacement_from_numpy(g, u, w);
              LoadState loads(g);
              for (long s = 1; s <= steps; ++s) state = time_step(state, mat, patch, loads, dt, s);
              return py::make_tuple(to_numpy(state.disp.u), to_numpy(state.disp.w),
                                    discrete_energy(state, mat, patch));
          },
          py::arg("grid"), py::arg("patch"), py::arg("material"), py::arg("u"), py::arg("w"),
          py::arg("dt"), py::arg("steps"),
          "velocity-Verlet integration from rest velocity; returns (u, w, energy)");

    m.def("stable_dt",
          [](const Grid& g, const Material& mat, const SurfacePatch& patch) {
              return stable_dt(g, mat, patch);
          },
          py::arg("grid"), py::arg("material"), py::arg("patch"));

    m.def("discrete_energy",
          [](const Grid& g, const SurfacePatch& patch, const Material& mat,
             const py::array_t<double>& u, const py::array_t<double>& w) {
              DynamicState state(g);
              state.disp = displacement_from_numpy(g, u, w);
              return discrete_energy(state, mat, patch);
          },
          py::arg("grid"), py::arg("patch"), py::arg("material"), py::arg("u"), py::arg("w"));

    m.def("dispersion_analytic",
          [](const std::string& kind, const Material& mat, double radius, double k) {
              return dispersion_analytic(dispersion_kind_from_string(kind), mat, radius, k);
          },
          py::arg("kind"), py::arg("material"), py::arg("radius"), py::arg("k"),
          "closed-form mode frequency; kind: plate_bending/cylinder_breathing/"
          "sphere_breathing/cylinder_axisymmetric");

    m.def("numeric_dispersion",
          [](const Grid& g, const SurfacePatch& patch, const Material& mat,
             const py::array_t<double>& u, const py::array_t<double>& w) {
              return numeric_dispersion(patch, mat, displacement_from_numpy(g, u, w));
          },
          py::arg("grid"), py::arg("patch"), py::arg("material"), py::arg("u"), py::arg("w"),
          "Rayleigh-quotient frequency of a discrete mode shape");
}
