#include "vortexcrit/report.hpp"

#include <cstdio>

namespace vortexcrit {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string vec_json(const Vec3& v) {
    return "[" + fmt17(v.x) + ", " + fmt17(v.y) + ", " + fmt17(v.z) + "]";
}

std::string opt_vec_json(bool defined, const Vec3& v) {
    return defined ? vec_json(v) : std::string("null");
}

std::string opt_json(bool defined, double v) {
    return defined ? fmt17(v) : std::string("null");
}

const char* bool_json(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_frenet_json(std::ostream& os, const FrenetSample& s) {
    os << "{\n"
       << "  \"x\": " << vec_json(s.x) << ",\n"
       << "  \"speed\": " << fmt17(s.speed) << ",\n"
       << "  \"tau\": " << vec_json(s.tau) << ",\n"
       << "  \"accel\": " << vec_json(s.accel) << ",\n"
       << "  \"alpha\": " << fmt17(s.alpha) << ",\n"
       << "  \"kappa\": " << fmt17(s.kappa) << ",\n"
       << "  \"kappa_vec\": " << vec_json(s.kappa_vec) << ",\n"
       << "  \"normal\": " << opt_vec_json(s.has_frame, s.normal) << ",\n"
       << "  \"binormal\": " << opt_vec_json(s.has_frame, s.binormal) << ",\n"
       << "  \"torsion\": " << opt_json(s.has_frame, s.torsion) << ",\n"
       << "  \"F\": " << fmt17(s.F) << ",\n"
       << "  \"S\": " << fmt17(s.S) << ",\n"
       << "  \"dz_kappa\": " << fmt17(s.dz_kappa) << ",\n"
       << "  \"curvature_degenerate\": " << bool_json(s.curvature_degenerate) << "\n"
       << "}\n";
}

void write_frenet_csv(std::ostream& os, const FrenetSample& s) {
    os << "x0,x1,x2,speed,tau0,tau1,tau2,alpha,kappa,torsion,F,S,dz_kappa,"
          "curvature_degenerate\n";
    os << fmt17(s.x.x) << ',' << fmt17(s.x.y) << ',' << fmt17(s.x.z) << ',' << fmt17(s.speed)
       << ',' << fmt17(s.tau.x) << ',' << fmt17(s.tau.y) << ',' << fmt17(s.tau.z) << ','
       << fmt17(s.alpha) << ',' << fmt17(s.kappa) << ','
       << (s.has_frame ? fmt17(s.torsion) : std::string("nan")) << ',' << fmt17(s.F) << ','
       << fmt17(s.S) << ',' << fmt17(s.dz_kappa) << ',' << (s.curvature_degenerate ? 1 : 0)
       << '\n';
}

namespace {

struct SampleGeometry {
    double kappa = 0.0, alpha = 0.0, f = 0.0, s = 0.0;
};

SampleGeometry sample_geometry(const VelocityField& field, const Vec3& x,
                               const TolerancePolicy& tol) {
    SampleGeometry g;
    try {
        FrenetSample fr = frenet_sample(field, x, tol);
        g.kappa = fr.kappa;
        g.alpha = fr.alpha;
        g.f = fr.F;
        g.s = fr.S;
    } catch (const StagnationError&) {
        // leave zeros; the trajectory terminates before true stagnation
    }
    return g;
}

}  // namespace

void write_streamline_csv(std::ostream& os, const VelocityField& field, const Streamline& s,
                          const TolerancePolicy& tol) {
    os << "t,z,x,y,z_pos,speed,kappa,alpha,F,S\n";
    for (const StreamSample& p : s.samples) {
        SampleGeometry g = sample_geometry(field, p.x, tol);
        os << fmt17(p.t) << ',' << fmt17(p.z) << ',' << fmt17(p.x.x) << ',' << fmt17(p.x.y)
           << ',' << fmt17(p.x.z) << ',' << fmt17(p.speed) << ',' << fmt17(g.kappa) << ','
           << fmt17(g.alpha) << ',' << fmt17(g.f) << ',' << fmt17(g.s) << '\n';
    }
}

void write_streamline_json(std::ostream& os, const VelocityField& field, const Streamline& s,
                           const TolerancePolicy& tol) {
    os << "{\n  \"seed\": " << vec_json(s.seed) << ",\n  \"t_end\": " << fmt17(s.t_end)
       << ",\n  \"stagnation_approach\": " << bool_json(s.stagnation_approach)
       << ",\n  \"samples\": [\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        const StreamSample& p = s.samples[i];
        SampleGeometry g = sample_geometry(field, p.x, tol);
        os << "    {\"t\": " << fmt17(p.t) << ", \"z\": " << fmt17(p.z)
           << ", \"x\": " << vec_json(p.x) << ", \"speed\": " << fmt17(p.speed)
           << ", \"kappa\": " << fmt17(g.kappa) << ", \"alpha\": " << fmt17(g.alpha)
           << ", \"F\": " << fmt17(g.f) << ", \"S\": " << fmt17(g.s) << "}"
           << (i + 1 < s.samples.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

void write_disk_csv(std::ostream& os, const DiskProbeResult& r) {
    os << "t,defect_n,defect_b,axis_stretch\n";
    for (const DiskSample& p : r.series)
        os << fmt17(p.t) << ',' << fmt17(p.defect_n) << ',' << fmt17(p.defect_b) << ','
           << fmt17(p.axis_stretch) << '\n';
}

void write_disk_json(std::ostream& os, const DiskProbeResult& r) {
    os << "{\n  \"seed\": " << vec_json(r.seed) << ",\n  \"n0\": " << vec_json(r.n0)
       << ",\n  \"b0\": " << vec_json(r.b0) << ",\n  \"series\": [\n";
    for (std::size_t i = 0; i < r.series.size(); ++i) {
        const DiskSample& p = r.series[i];
        os << "    {\"t\": " << fmt17(p.t) << ", \"defect_n\": " << fmt17(p.defect_n)
           << ", \"defect_b\": " << fmt17(p.defect_b)
           << ", \"axis_stretch\": " << fmt17(p.axis_stretch) << "}"
           << (i + 1 < r.series.size() ? "," : "") << "\n";
    }
    os << "  ]";
    if (!r.ring.empty()) {
        os << ",\n  \"ring\": [\n";
        for (std::size_t i = 0; i < r.ring.size(); ++i) {
            const RingSample& p = r.ring[i];
            os << "    {\"t\": " << fmt17(p.t)
               << ", \"max_abs_defect\": " << fmt17(p.max_abs_defect)
               << ", \"max_dev_from_jacobian\": " << fmt17(p.max_dev_from_jacobian) << "}"
               << (i + 1 < r.ring.size() ? "," : "") << "\n";
        }
        os << "  ]";
    }
    os << "\n}\n";
}

void write_cauchy_csv(std::ostream& os, double t, const Vec3& omega) {
    os << "t,omega_x,omega_y,omega_z,magnitude\n";
    os << fmt17(t) << ',' << fmt17(omega.x) << ',' << fmt17(omega.y) << ',' << fmt17(omega.z)
       << ',' << fmt17(norm(omega)) << '\n';
}

void write_cauchy_json(std::ostream& os, double t, const Vec3& omega) {
    os << "{\"t\": " << fmt17(t) << ", \"omega\": " << vec_json(omega)
       << ", \"magnitude\": " << fmt17(norm(omega)) << "}\n";
}

void write_report_json(std::ostream& os, const ClassificationReport& rep) {
    os << "{\n  \"field\": \"" << rep.field << "\",\n";
    os << "  \"box\": [[" << fmt17(rep.box.lo.x) << ", " << fmt17(rep.box.hi.x) << "], ["
       << fmt17(rep.box.lo.y) << ", " << fmt17(rep.box.hi.y) << "], [" << fmt17(rep.box.lo.z)
       << ", " << fmt17(rep.box.hi.z) << "]],\n";
    os << "  \"resolution\": [" << rep.resolution[0] << ", " << rep.resolution[1] << ", "
       << rep.resolution[2] << "],\n";
    os << "  \"tolerances\": {\"eps_stagnation\": " << fmt17(rep.tolerances.eps_stagnation)
       << ", \"eps_kappa\": " << fmt17(rep.tolerances.eps_kappa)
       << ", \"abs_tol\": " << fmt17(rep.tolerances.criterion_abs_tol)
       << ", \"rel_tol\": " << fmt17(rep.tolerances.criterion_rel_tol) << "},\n";
    os << "  \"points\": [\n";
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const PointClass& p = rep.points[i];
        os << "    {\"x\": " << vec_json(p.x) << ", \"alpha\": " << fmt17(p.alpha)
           << ", \"S\": " << fmt17(p.criterion_residual)
           << ", \"dz_kappa\": " << fmt17(p.dz_kappa) << ", \"kappa\": " << fmt17(p.kappa)
           << ", \"verdict\": \"" << to_string(p.verdict) << "\"}"
           << (i + 1 < rep.points.size() ? "," : "") << "\n";
    }
    os << "  ],\n  \"summary\": {";
    const Verdict order[] = {Verdict::CandidateStable, Verdict::ViolatesNecessaryCondition,
                             Verdict::NotStretching, Verdict::Degenerate};
    for (std::size_t i = 0; i < 4; ++i) {
        os << "\"" << to_string(order[i]) << "\": " << rep.summary[static_cast<int>(order[i])]
           << (i + 1 < 4 ? ", " : "");
    }
    os << "}\n}\n";
}

void write_report_csv(std::ostream& os, const ClassificationReport& rep) {
    os << "x0,x1,x2,alpha,S,dz_kappa,kappa,verdict\n";
    for (const PointClass& p : rep.points)
        os << fmt17(p.x.x) << ',' << fmt17(p.x.y) << ',' << fmt17(p.x.z) << ','
           << fmt17(p.alpha) << ',' << fmt17(p.criterion_residual) << ','
           << fmt17(p.dz_kappa) << ',' << fmt17(p.kappa) << ',' << to_string(p.verdict)
           << '\n';
}

void write_compare_csv(std::ostream& os, const std::vector<PathComparison>& rows) {
    os << "x0,x1,x2,S_analytic,S_fd,S_trajectory,max_dev\n";
    for (const PathComparison& r : rows)
        os << fmt17(r.x.x) << ',' << fmt17(r.x.y) << ',' << fmt17(r.x.z) << ','
           << fmt17(r.analytic) << ',' << fmt17(r.fd) << ',' << fmt17(r.trajectory) << ','
           << fmt17(r.max_pairwise_dev) << '\n';
}

void write_compare_json(std::ostream& os, const std::vector<PathComparison>& rows) {
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const PathComparison& r = rows[i];
        os << "  {\"x\": " << vec_json(r.x) << ", \"S_analytic\": " << fmt17(r.analytic)
           << ", \"S_fd\": " << fmt17(r.fd) << ", \"S_trajectory\": " << fmt17(r.trajectory)
           << ", \"max_dev\": " << fmt17(r.max_pairwise_dev) << "}"
           << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "]\n";
}

void write_suite_text(std::ostream& os, const SuiteResult& suite) {
    const std::size_t shown = 40;
    const std::size_t n = suite.rows.size();
    std::size_t stride = n > shown ? (n + shown - 1) / shown : 1;

    std::size_t worst = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (suite.rows[i].rel_dev > suite.rows[worst].rel_dev) worst = i;

    os << "suite " << suite.name << " (" << n << " checks)\n";
    for (std::size_t i = 0; i < n; i += stride) {
        const OracleComparison& r = suite.rows[i];
        os << "  " << (r.pass ? "ok  " : "FAIL") << "  " << r.label
           << "  computed=" << fmt17(r.computed) << "  oracle=" << fmt17(r.oracle)
           << "  rel_dev=" << fmt17(r.rel_dev) << "\n";
    }
    if (n > 0 && worst % stride != 0) {
        const OracleComparison& r = suite.rows[worst];
        os << "  " << (r.pass ? "ok  " : "FAIL") << "  [worst] " << r.label
           << "  computed=" << fmt17(r.computed) << "  oracle=" << fmt17(r.oracle)
           << "  rel_dev=" << fmt17(r.rel_dev) << "\n";
    }
    os << "suite " << suite.name << ": " << (suite.pass ? "PASS" : "FAIL")
       << " (max rel dev " << fmt17(suite.max_rel_dev) << ")\n";
}

}  // namespace vortexcrit
