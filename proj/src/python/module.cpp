#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vortexcrit/analyze.hpp"
#include "vortexcrit/field.hpp"
#include "vortexcrit/flow.hpp"
#include "vortexcrit/frenet.hpp"
#include "vortexcrit/report.hpp"

namespace py = pybind11;
namespace vc = vortexcrit;

namespace {

using Arr3 = std::array<double, 3>;
using Arr33 = std::array<std::array<double, 3>, 3>;

vc::Vec3 to_vec(const Arr3& a) { return {a[0], a[1], a[2]}; }
Arr3 from_vec(const vc::Vec3& v) { return {v.x, v.y, v.z}; }

Arr33 from_mat(const vc::Mat3& m) {
    Arr33 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = m[i][j];
    return out;
}

std::array<Arr33, 3> from_tens(const vc::Tens3& t) {
    std::array<Arr33, 3> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out[i][j][k] = t[i][j][k];
    return out;
}

py::dict jet_dict(const vc::FieldJet& jet) {
    py::dict d;
    d["u"] = from_vec(jet.u);
    d["grad_u"] = from_mat(jet.grad_u);
    d["hess_u"] = from_tens(jet.hess_u);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Streamline geometry and vortex-stretching diagnostics for steady 3D fields";
    m.attr("__version__") = "0.1.0";

    py::register_exception<vc::SyntaxError>(m, "FieldSyntaxError", PyExc_ValueError);
    py::register_exception<vc::DomainError>(m, "FieldDomainError", PyExc_ValueError);
    py::register_exception<vc::StagnationError>(m, "StagnationPointError", PyExc_ValueError);
    py::register_exception<vc::StepUnderflowError>(m, "StepUnderflowError", PyExc_RuntimeError);

    py::class_<vc::VelocityField>(m, "Field")
        .def_static(
            "parse", [](const std::string& src) { return vc::VelocityField::parse(src); },
            py::arg("source"),
            "Parse three comma- or semicolon-separated expressions in x, y, z.")
        .def_static(
            "catalog",
            [](const std::string& name, const std::vector<double>& params) {
                return vc::VelocityField::catalog(name, params);
            },
            py::arg("name"), py::arg("params") = std::vector<double>{},
            "Built-in field by name (planar_strain_paper, planar_strain_stated, "
            "axisym_strain, rigid_rotation, helical, abc).")
        .def_static("catalog_names", &vc::VelocityField::catalog_names)
        .def(
            "velocity",
            [](const vc::VelocityField& f, const Arr3& x) { return from_vec(f.velocity(to_vec(x))); },
            py::arg("x"))
        .def(
            "jet", [](const vc::VelocityField& f, const Arr3& x) { return jet_dict(f.jet(to_vec(x))); },
            py::arg("x"), "Exact (u, grad_u, hess_u) via forward-mode differentiation.")
        .def(
            "jet_fd",
            [](const vc::VelocityField& f, const Arr3& x, double h) {
                return h > 0.0 ? jet_dict(f.jet_fd(to_vec(x), h)) : jet_dict(f.jet_fd(to_vec(x)));
            },
            py::arg("x"), py::arg("h") = 0.0,
            "Central-difference jets (h = 0 selects the default step).")
        .def("divergence_free", &vc::VelocityField::divergence_free)
        .def("has_pressure", &vc::VelocityField::has_pressure)
        .def("scaled", &vc::VelocityField::scaled, py::arg("lam"))
        .def("description", &vc::VelocityField::description)
        .def("__repr__",
             [](const vc::VelocityField& f) { return "Field(" + f.description() + ")"; });

    py::class_<vc::TolerancePolicy>(m, "TolerancePolicy")
        .def(py::init<>())
        .def_readwrite("eps_stagnation", &vc::TolerancePolicy::eps_stagnation)
        .def_readwrite("eps_kappa", &vc::TolerancePolicy::eps_kappa)
        .def_readwrite("criterion_abs_tol", &vc::TolerancePolicy::criterion_abs_tol)
        .def_readwrite("criterion_rel_tol", &vc::TolerancePolicy::criterion_rel_tol);

    py::class_<vc::FrenetSample>(m, "FrenetSample")
        .def_property_readonly("x", [](const vc::FrenetSample& s) { return from_vec(s.x); })
        .def_readonly("speed", &vc::FrenetSample::speed)
        .def_property_readonly("tau", [](const vc::FrenetSample& s) { return from_vec(s.tau); })
        .def_property_readonly("accel",
                               [](const vc::FrenetSample& s) { return from_vec(s.accel); })
        .def_readonly("alpha", &vc::FrenetSample::alpha)
        .def_readonly("kappa", &vc::FrenetSample::kappa)
        .def_property_readonly("kappa_vec",
                               [](const vc::FrenetSample& s) { return from_vec(s.kappa_vec); })
        .def_readonly("F", &vc::FrenetSample::F)
        .def_readonly("S", &vc::FrenetSample::S)
        .def_readonly("dz_kappa", &vc::FrenetSample::dz_kappa)
        .def_readonly("has_frame", &vc::FrenetSample::has_frame)
        .def_property_readonly(
            "normal",
            [](const vc::FrenetSample& s) -> py::object {
                return s.has_frame ? py::cast(from_vec(s.normal)) : py::none();
            })
        .def_property_readonly(
            "binormal",
            [](const vc::FrenetSample& s) -> py::object {
                return s.has_frame ? py::cast(from_vec(s.binormal)) : py::none();
            })
        .def_property_readonly(
            "torsion",
            [](const vc::FrenetSample& s) -> py::object {
                return s.has_frame ? py::cast(s.torsion) : py::none();
            })
        .def_readonly("curvature_degenerate", &vc::FrenetSample::curvature_degenerate);

    py::class_<vc::CriterionValue>(m, "CriterionValue")
        .def_readonly("S", &vc::CriterionValue::S)
        .def_readonly("dz_kappa", &vc::CriterionValue::dz_kappa)
        .def_readonly("degenerate", &vc::CriterionValue::degenerate);

    py::class_<vc::PointClass>(m, "PointClass")
        .def_property_readonly("x", [](const vc::PointClass& p) { return from_vec(p.x); })
        .def_readonly("is_stretching", &vc::PointClass::is_stretching)
        .def_readonly("criterion_residual", &vc::PointClass::criterion_residual)
        .def_readonly("criterion_zero", &vc::PointClass::criterion_zero)
        .def_readonly("dz_kappa_sign_ok", &vc::PointClass::dz_kappa_sign_ok)
        .def_property_readonly(
            "verdict", [](const vc::PointClass& p) { return std::string(to_string(p.verdict)); })
        .def_readonly("alpha", &vc::PointClass::alpha)
        .def_readonly("kappa", &vc::PointClass::kappa)
        .def_readonly("dz_kappa", &vc::PointClass::dz_kappa)
        .def_readonly("speed", &vc::PointClass::speed);

    m.def(
        "frenet_sample",
        [](const vc::VelocityField& f, const Arr3& x, const vc::TolerancePolicy& tol) {
            return vc::frenet_sample(f, to_vec(x), tol);
        },
        py::arg("field"), py::arg("x"), py::arg("tol") = vc::TolerancePolicy{});
    m.def(
        "criterion",
        [](const vc::VelocityField& f, const Arr3& x, const vc::TolerancePolicy& tol) {
            return vc::criterion(f, to_vec(x), tol);
        },
        py::arg("field"), py::arg("x"), py::arg("tol") = vc::TolerancePolicy{},
        "S = d/dz(kappa |u|^2) and dz_kappa at a point.");
    m.def(
        "criterion_fd",
        [](const vc::VelocityField& f, const Arr3& x, double h) {
            return vc::criterion_fd(f, to_vec(x), h);
        },
        py::arg("field"), py::arg("x"), py::arg("h") = 1e-5);
    m.def(
        "classify_point",
        [](const vc::VelocityField& f, const Arr3& x, const vc::TolerancePolicy& tol) {
            return vc::classify_point(f, to_vec(x), tol);
        },
        py::arg("field"), py::arg("x"), py::arg("tol") = vc::TolerancePolicy{});

    py::class_<vc::IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &vc::IntegratorConfig::rel_tol)
        .def_readwrite("abs_tol", &vc::IntegratorConfig::abs_tol)
        .def_readwrite("max_step", &vc::IntegratorConfig::max_step)
        .def_readwrite("t_span", &vc::IntegratorConfig::t_span)
        .def_readwrite("sample_count", &vc::IntegratorConfig::sample_count)
        .def_readwrite("eps_stagnation", &vc::IntegratorConfig::eps_stagnation);

    py::class_<vc::ode::Stats>(m, "IntegratorStats")
        .def_readonly("steps", &vc::ode::Stats::steps)
        .def_readonly("rejected", &vc::ode::Stats::rejected)
        .def_readonly("max_error_estimate", &vc::ode::Stats::max_error_estimate);

    py::class_<vc::StreamSample>(m, "StreamSample")
        .def_readonly("t", &vc::StreamSample::t)
        .def_readonly("z", &vc::StreamSample::z)
        .def_property_readonly("x", [](const vc::StreamSample& s) { return from_vec(s.x); })
        .def_readonly("speed", &vc::StreamSample::speed);

    py::class_<vc::Streamline>(m, "Streamline")
        .def_property_readonly("seed", [](const vc::Streamline& s) { return from_vec(s.seed); })
        .def_readonly("samples", &vc::Streamline::samples)
        .def_readonly("stats", &vc::Streamline::stats)
        .def_readonly("stagnation_approach", &vc::Streamline::stagnation_approach)
        .def_readonly("t_end", &vc::Streamline::t_end);

    py::class_<vc::ArcLengthMap>(m, "ArcLengthMap")
        .def(py::init<const vc::Streamline&>())
        .def("z_of_t", &vc::ArcLengthMap::z_of_t, py::arg("t"))
        .def("t_of_z", &vc::ArcLengthMap::t_of_z, py::arg("z"))
        .def("t_max", &vc::ArcLengthMap::t_max)
        .def("z_max", &vc::ArcLengthMap::z_max);

    m.def(
        "integrate_streamline",
        [](const vc::VelocityField& f, const Arr3& seed, const vc::IntegratorConfig& cfg) {
            return vc::integrate_streamline(f, to_vec(seed), cfg);
        },
        py::arg("field"), py::arg("seed"), py::arg("cfg") = vc::IntegratorConfig{});
    m.def(
        "flow_map_jacobian",
        [](const vc::VelocityField& f, const Arr3& seed, double t,
           const vc::IntegratorConfig& cfg) {
            return from_mat(vc::flow_map_jacobian(f, to_vec(seed), t, cfg));
        },
        py::arg("field"), py::arg("seed"), py::arg("t"),
        py::arg("cfg") = vc::IntegratorConfig{});
    m.def(
        "cauchy_vorticity",
        [](const vc::VelocityField& f, const Arr3& seed, const Arr3& omega0, double t,
           const vc::IntegratorConfig& cfg) {
            return from_vec(vc::cauchy_vorticity(f, to_vec(seed), to_vec(omega0), t, cfg));
        },
        py::arg("field"), py::arg("seed"), py::arg("omega0"), py::arg("t"),
        py::arg("cfg") = vc::IntegratorConfig{});

    py::class_<vc::DiskSample>(m, "DiskSample")
        .def_readonly("t", &vc::DiskSample::t)
        .def_readonly("defect_n", &vc::DiskSample::defect_n)
        .def_readonly("defect_b", &vc::DiskSample::defect_b)
        .def_readonly("axis_stretch", &vc::DiskSample::axis_stretch);

    py::class_<vc::RingSample>(m, "RingSample")
        .def_readonly("t", &vc::RingSample::t)
        .def_readonly("max_abs_defect", &vc::RingSample::max_abs_defect)
        .def_readonly("max_dev_from_jacobian", &vc::RingSample::max_dev_from_jacobian);

    py::class_<vc::DiskProbeConfig>(m, "DiskProbeConfig")
        .def(py::init<>())
        .def_readwrite("integ", &vc::DiskProbeConfig::integ)
        .def_readwrite("marker_count", &vc::DiskProbeConfig::marker_count)
        .def_readwrite("marker_radius", &vc::DiskProbeConfig::marker_radius);

    py::class_<vc::DiskProbeResult>(m, "DiskProbeResult")
        .def_property_readonly("seed",
                               [](const vc::DiskProbeResult& r) { return from_vec(r.seed); })
        .def_property_readonly("n0", [](const vc::DiskProbeResult& r) { return from_vec(r.n0); })
        .def_property_readonly("b0", [](const vc::DiskProbeResult& r) { return from_vec(r.b0); })
        .def_readonly("series", &vc::DiskProbeResult::series)
        .def_readonly("ring", &vc::DiskProbeResult::ring);

    m.def(
        "disk_probe",
        [](const vc::VelocityField& f, const Arr3& seed, const vc::DiskProbeConfig& cfg) {
            return vc::disk_probe(f, to_vec(seed), cfg);
        },
        py::arg("field"), py::arg("seed"), py::arg("cfg") = vc::DiskProbeConfig{},
        "Material-disk perpendicularity probe (defects of the evolved disk basis).");

    py::class_<vc::ClassificationReport>(m, "ClassificationReport")
        .def_readonly("field", &vc::ClassificationReport::field)
        .def_readonly("points", &vc::ClassificationReport::points)
        .def_property_readonly("summary",
                               [](const vc::ClassificationReport& r) {
                                   py::dict d;
                                   d["candidate_stable"] = r.summary[0];
                                   d["violates_necessary_condition"] = r.summary[1];
                                   d["not_stretching"] = r.summary[2];
                                   d["degenerate"] = r.summary[3];
                                   return d;
                               })
        .def("to_json", [](const vc::ClassificationReport& r) {
            std::ostringstream ss;
            vc::write_report_json(ss, r);
            return ss.str();
        });

    m.def(
        "classify_grid",
        [](const vc::VelocityField& f, const Arr3& lo, const Arr3& hi,
           const std::array<int, 3>& resolution, const vc::TolerancePolicy& tol, int threads) {
            vc::GridSpec grid;
            grid.box = {to_vec(lo), to_vec(hi)};
            grid.resolution = resolution;
            return vc::classify_grid(f, grid, tol, threads);
        },
        py::arg("field"), py::arg("lo"), py::arg("hi"), py::arg("resolution"),
        py::arg("tol") = vc::TolerancePolicy{}, py::arg("threads") = 0);

    m.def("corollary_oracle", &vc::corollary_oracle, py::arg("x1"), py::arg("x2"));
    m.def(
        "section3_oracle",
        [](double r, double t) {
            vc::Section3Values v = vc::section3_oracle(r, t);
            py::dict d;
            d["kappa"] = v.kappa;
            d["dz_kappa"] = v.dz_kappa;
            d["speed_sq"] = v.speed_sq;
            d["alpha"] = v.alpha;
            return d;
        },
        py::arg("r"), py::arg("t"));
    m.def(
        "helix_oracle",
        [](double R, double c) {
            vc::HelixValues v = vc::helix_oracle(R, c);
            return py::make_tuple(v.kappa, v.torsion);
        },
        py::arg("R"), py::arg("c"));

    m.def(
        "pressure_identity_check",
        [](const vc::VelocityField& f, const Arr3& x, const vc::TolerancePolicy& tol) {
            vc::PressureResiduals r = vc::pressure_identity_check(f, to_vec(x), tol);
            py::dict d;
            d["r_tau"] = r.r_tau;
            d["r_n"] = r.r_n;
            d["r_b"] = r.r_b;
            d["r_dz"] = r.r_dz;
            d["curvature_degenerate"] = r.curvature_degenerate;
            return d;
        },
        py::arg("field"), py::arg("x"), py::arg("tol") = vc::TolerancePolicy{});

    m.def(
        "remark12_check",
        [](double r0, const std::function<double(double)>& profile, double t,
           const vc::IntegratorConfig& cfg) {
            vc::Remark12Result r = vc::remark12_check(r0, profile, t, cfg);
            py::dict d;
            d["claimed"] = r.claimed;
            d["oracle"] = r.oracle;
            d["numeric"] = r.numeric;
            d["pass"] = r.oracle_vs_numeric.pass;
            return d;
        },
        py::arg("r0"), py::arg("omega0_profile"), py::arg("t"),
        py::arg("cfg") = vc::IntegratorConfig{});

    py::class_<vc::PathComparison>(m, "PathComparison")
        .def_property_readonly("x", [](const vc::PathComparison& p) { return from_vec(p.x); })
        .def_readonly("analytic", &vc::PathComparison::analytic)
        .def_readonly("fd", &vc::PathComparison::fd)
        .def_readonly("trajectory", &vc::PathComparison::trajectory)
        .def_readonly("max_pairwise_dev", &vc::PathComparison::max_pairwise_dev);

    m.def(
        "compare_paths",
        [](const vc::VelocityField& f, const std::vector<Arr3>& points,
           const vc::TolerancePolicy& tol) {
            std::vector<vc::Vec3> pts;
            pts.reserve(points.size());
            for (const Arr3& p : points) pts.push_back(to_vec(p));
            return vc::compare_paths(f, pts, tol);
        },
        py::arg("field"), py::arg("points"), py::arg("tol") = vc::TolerancePolicy{});

    m.def(
        "verify",
        [](const std::string& name) {
            std::vector<vc::SuiteResult> suites;
            if (name == "all")
                suites = vc::verify_all();
            else if (name == "corollary")
                suites.push_back(vc::verify_corollary());
            else if (name == "section3")
                suites.push_back(vc::verify_section3());
            else if (name == "helix")
                suites.push_back(vc::verify_helix());
            else if (name == "pressure")
                suites.push_back(vc::verify_pressure());
            else if (name == "remark12")
                suites.push_back(vc::verify_remark12());
            else if (name == "flowmap")
                suites.push_back(vc::verify_flowmap());
            else
                throw std::invalid_argument("unknown suite '" + name + "'");
            py::list out;
            for (const vc::SuiteResult& s : suites) {
                py::dict d;
                d["name"] = s.name;
                d["pass"] = s.pass;
                d["max_rel_dev"] = s.max_rel_dev;
                d["checks"] = s.rows.size();
                out.append(d);
            }
            return out;
        },
        py::arg("name"), "Run a built-in verification suite; returns per-suite summaries.");
}
