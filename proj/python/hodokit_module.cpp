#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hodokit/newtonian.hpp"
#include "hodokit/ode.hpp"
#include "hodokit/verify.hpp"

namespace py = pybind11;
using namespace hodokit;

PYBIND11_MODULE(hodokit, m) {
    m.doc() = "Exact velocity-space orbits (hodographs) for Newtonian and "
              "relativistic Coulomb systems";

    py::class_<FourVector>(m, "FourVector")
        .def(py::init<>())
        .def(py::init([](double t, double x, double y, double z) {
                 return FourVector{t, x, y, z};
             }),
             py::arg("t"), py::arg("x"), py::arg("y"), py::arg("z") = 0.0)
        .def_readwrite("t", &FourVector::t)
        .def_readwrite("x", &FourVector::x)
        .def_readwrite("y", &FourVector::y)
        .def_readwrite("z", &FourVector::z)
        .def("__repr__", [](const FourVector& v) {
            return "FourVector(" + std::to_string(v.t) + ", " + std::to_string(v.x) + ", " +
                   std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
        });

    m.def("minkowski_dot", &minkowski_dot, py::arg("a"), py::arg("b"));
    m.def("spatial_velocity", &spatial_velocity, py::arg("u"));

    py::enum_<Regime>(m, "Regime")
        .value("TimeLike", Regime::TimeLike)
        .value("LightLike", Regime::LightLike)
        .value("SpaceLike", Regime::SpaceLike);

    py::enum_<OrbitClass>(m, "OrbitClass")
        .value("CircularBound", OrbitClass::CircularBound)
        .value("PrecessingBound", OrbitClass::PrecessingBound)
        .value("ClosedBound", OrbitClass::ClosedBound)
        .value("UnboundScatter", OrbitClass::UnboundScatter)
        .value("SpiralCollapse", OrbitClass::SpiralCollapse)
        .value("SpiralBurst", OrbitClass::SpiralBurst)
        .value("BoundSpiralCollapse", OrbitClass::BoundSpiralCollapse);

    py::enum_<Branch>(m, "Branch")
        .value("Auto", Branch::Auto)
        .value("Positive", Branch::Positive)
        .value("Negative", Branch::Negative);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<double, double, double, double, double>(), py::arg("m"), py::arg("kappa"),
             py::arg("ell"), py::arg("E"), py::arg("theta0") = 0.0)
        .def_readonly("m", &SystemParams::m)
        .def_readonly("kappa", &SystemParams::kappa)
        .def_readonly("ell", &SystemParams::ell)
        .def_readonly("E", &SystemParams::E)
        .def_readonly("theta0", &SystemParams::theta0)
        .def_readonly("regime", &SystemParams::regime)
        .def_readonly("beta", &SystemParams::beta)
        .def_readonly("beta_bar", &SystemParams::beta_bar)
        .def_readonly("B_o", &SystemParams::B_o)
        .def_readonly("A_o", &SystemParams::A_o)
        .def_readonly("Lambda", &SystemParams::Lambda);

    m.def("classify", &classify, py::arg("params"));
    m.def("axis_vector", &axis_vector, py::arg("params"), py::arg("theta"));
    m.def("hodograph", &hodograph, py::arg("params"), py::arg("theta"));
    m.def("on_axis_component", &on_axis_component, py::arg("params"), py::arg("theta"));
    m.def("hamilton_vector", &hamilton_vector, py::arg("params"), py::arg("theta"));
    m.def("energy_gradient", &energy_gradient, py::arg("params"), py::arg("theta"));
    m.def("energy_residual", &energy_residual, py::arg("params"), py::arg("u"), py::arg("theta"));
    m.def("norm_residual",
          [](const FourVector& u) { return minkowski_dot(u, u) + 1.0; }, py::arg("u"));

    py::class_<Interval>(m, "Interval")
        .def(py::init([](double lo, double hi) { return Interval{lo, hi}; }), py::arg("lo"),
             py::arg("hi"))
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi);

    py::class_<ClosedOrbitFraction>(m, "ClosedOrbitFraction")
        .def_readonly("num", &ClosedOrbitFraction::num)
        .def_readonly("den", &ClosedOrbitFraction::den);

    py::class_<TurningRadii>(m, "TurningRadii")
        .def_readonly("r_min", &TurningRadii::r_min)
        .def_readonly("r_max", &TurningRadii::r_max);

    py::class_<HodographSample>(m, "HodographSample")
        .def_readonly("theta", &HodographSample::theta)
        .def_readonly("u", &HodographSample::u)
        .def_readonly("u_r", &HodographSample::u_r)
        .def_readonly("u_theta", &HodographSample::u_theta)
        .def_readonly("r", &HodographSample::r)
        .def_readonly("x", &HodographSample::x)
        .def_readonly("y", &HodographSample::y)
        .def_readonly("tau", &HodographSample::tau)
        .def_readonly("t", &HodographSample::t)
        .def_readonly("energy_residual", &HodographSample::energy_residual)
        .def_readonly("norm_residual", &HodographSample::norm_residual);

    m.def("transverse_velocity", &transverse_velocity, py::arg("params"), py::arg("theta"));
    m.def("radius", &radius, py::arg("params"), py::arg("theta"));
    m.def("theta_infinity", &theta_infinity, py::arg("params"));
    m.def("angular_range", &angular_range, py::arg("params"));
    m.def("turning_points", &turning_points, py::arg("params"));
    m.def("classify_orbit", &classify_orbit, py::arg("params"), py::arg("branch") = Branch::Auto);
    m.def("is_closed_orbit", &is_closed_orbit, py::arg("params"), py::arg("max_den") = 1000L);
    m.def("endpoint_velocities", &endpoint_velocities, py::arg("params"));
    m.def("sample_trajectory", &sample_trajectory, py::arg("params"), py::arg("interval"),
          py::arg("n"));
    m.def("default_window", &default_window, py::arg("params"), py::arg("branch") = Branch::Auto);

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
        .def_readwrite("abs_tol", &IntegratorConfig::abs_tol)
        .def_readwrite("max_step", &IntegratorConfig::max_step)
        .def_readwrite("max_steps", &IntegratorConfig::max_steps)
        .def_readwrite("fixed_step", &IntegratorConfig::fixed_step);

    py::class_<DenseSolution>(m, "DenseSolution")
        .def("__call__", &DenseSolution::operator(), py::arg("theta"))
        .def_property_readonly("span_lo", &DenseSolution::span_lo)
        .def_property_readonly("span_hi", &DenseSolution::span_hi)
        .def_property_readonly("step_count", &DenseSolution::step_count);

    m.def("integrate", &integrate, py::arg("params"), py::arg("w_start"), py::arg("span"),
          py::arg("config") = IntegratorConfig{});
    m.def("find_utheta_root", &find_utheta_root, py::arg("params"), py::arg("bracket"));

    py::class_<NewtonianParams>(m, "NewtonianParams")
        .def(py::init<double, double, double, double>(), py::arg("m"), py::arg("kappa"),
             py::arg("ell"), py::arg("E_prime"))
        .def_readonly("m", &NewtonianParams::m)
        .def_readonly("kappa", &NewtonianParams::kappa)
        .def_readonly("ell", &NewtonianParams::ell)
        .def_readonly("E_prime", &NewtonianParams::E_prime);

    m.def("hamilton_vector_magnitude", &hamilton_vector_magnitude, py::arg("params"));
    m.def(
        "newtonian_hodograph_point",
        [](const NewtonianParams& p, double theta, double B_dir) {
            const Vec2 v = newtonian_hodograph_point(p, theta, B_dir);
            return std::make_pair(v.x, v.y);
        },
        py::arg("params"), py::arg("theta"), py::arg("B_dir") = 0.0);
    m.def("newtonian_radius", &newtonian_radius, py::arg("params"), py::arg("theta"),
          py::arg("B_dir") = 0.0);
}
