// vortexcrit command-line front end. Reproducible, scriptable output: fixed
// 17-significant-digit formatting, no timestamps, header line suppressible
// with --no-header. Exit codes: 0 success, 1 usage error, 2 domain or numeric
// error, 3 verification-suite failure.

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vortexcrit/analyze.hpp"
#include "vortexcrit/field.hpp"
#include "vortexcrit/flow.hpp"
#include "vortexcrit/frenet.hpp"
#include "vortexcrit/report.hpp"

namespace vc = vortexcrit;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_reals(const std::string& text, std::size_t expected,
                                const char* what) {
    std::vector<double> out;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        double v = 0.0;
        const char* first = text.data() + i;
        const char* last = text.data() + j;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || first == last)
            throw UsageError(std::string("could not parse ") + what + " '" + text + "'");
        if (!std::isfinite(v))
            throw UsageError(std::string(what) + " must be finite: '" + text + "'");
        out.push_back(v);
        if (j == text.size()) break;
        i = j + 1;
    }
    if (expected != 0 && out.size() != expected)
        throw UsageError(std::string(what) + " needs " + std::to_string(expected) +
                         " comma-separated values, got " + std::to_string(out.size()));
    return out;
}

vc::Vec3 parse_point(const std::string& text, const char* what = "point") {
    auto v = parse_reals(text, 3, what);
    return {v[0], v[1], v[2]};
}

struct FieldOpts {
    std::string catalog_name;
    std::string params_text;
    std::string expr;
    std::string field_file;
    bool backward = false;
};

void add_field_options(CLI::App* cmd, FieldOpts& fo) {
    cmd->add_option("--catalog", fo.catalog_name, "catalog field name");
    cmd->add_option("--params", fo.params_text, "catalog parameters, comma separated");
    cmd->add_option("--expr", fo.expr, "three comma- or semicolon-separated expressions in x,y,z");
    cmd->add_option("--field-file", fo.field_file, "path to a file holding the field expression");
    cmd->add_flag("--backward", fo.backward, "reverse time (integrates u -> -u)");
}

vc::VelocityField resolve_field(const FieldOpts& fo) {
    int sources = !fo.catalog_name.empty() + !fo.expr.empty() + !fo.field_file.empty();
    if (sources != 1)
        throw UsageError("exactly one of --catalog, --expr, --field-file is required");

    vc::VelocityField field = [&] {
        if (!fo.catalog_name.empty()) {
            std::vector<double> params;
            if (!fo.params_text.empty()) params = parse_reals(fo.params_text, 0, "--params");
            try {
                return vc::VelocityField::catalog(fo.catalog_name, params);
            } catch (const vc::Error& e) {
                throw UsageError(e.what());  // bad name or parameter count
            }
        }
        if (!fo.expr.empty()) return vc::VelocityField::parse(fo.expr);
        std::ifstream in(fo.field_file);
        if (!in) throw UsageError("cannot open field file '" + fo.field_file + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return vc::VelocityField::parse(ss.str());
    }();
    return fo.backward ? field.scaled(-1.0) : field;
}

struct OutputOpts {
    std::string format;  // per-command default
    std::string out_path;
    bool no_header = false;
};

void add_output_options(CLI::App* cmd, OutputOpts& oo, const std::string& default_format) {
    oo.format = default_format;
    if (default_format != "text")
        cmd->add_option("--format", oo.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", oo.out_path, "write output to a file instead of standard output");
    cmd->add_flag("--no-header", oo.no_header, "suppress the run-metadata header line");
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    Output(const OutputOpts& oo, const std::string& header) {
        if (!oo.out_path.empty()) {
            file.open(oo.out_path);
            if (!file) throw vc::Error("cannot open output file '" + oo.out_path + "'");
            os = &file;
        }
        if (!oo.no_header) *os << "# " << header << "\n";
    }
};

struct ToleranceOpts {
    vc::TolerancePolicy tol;
};

void add_tolerance_options(CLI::App* cmd, ToleranceOpts& to) {
    cmd->add_option("--abs-tol", to.tol.criterion_abs_tol, "criterion-zero absolute tolerance");
    cmd->add_option("--rel-tol", to.tol.criterion_rel_tol, "criterion-zero relative tolerance");
    cmd->add_option("--eps-kappa", to.tol.eps_kappa, "curvature degeneracy cutoff");
    cmd->add_option("--eps-stagnation", to.tol.eps_stagnation, "stagnation cutoff on |u|");
}

struct IntegOpts {
    vc::IntegratorConfig cfg;
};

void add_integrator_options(CLI::App* cmd, IntegOpts& io) {
    cmd->add_option("--t-span", io.cfg.t_span, "integration horizon");
    cmd->add_option("--samples", io.cfg.sample_count, "dense-output sample count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rtol", io.cfg.rel_tol, "integrator relative tolerance");
    cmd->add_option("--atol", io.cfg.abs_tol, "integrator absolute tolerance");
    cmd->add_option("--max-step", io.cfg.max_step, "maximum step size (0 = unlimited)");
}

int run_verify(const std::string& suite_name, const OutputOpts& oo) {
    std::vector<vc::SuiteResult> suites;
    if (suite_name == "all") {
        suites = vc::verify_all();
    } else if (suite_name == "corollary") {
        suites.push_back(vc::verify_corollary());
    } else if (suite_name == "section3") {
        suites.push_back(vc::verify_section3());
    } else if (suite_name == "helix") {
        suites.push_back(vc::verify_helix());
    } else if (suite_name == "pressure") {
        suites.push_back(vc::verify_pressure());
    } else if (suite_name == "remark12") {
        suites.push_back(vc::verify_remark12());
    } else if (suite_name == "flowmap") {
        suites.push_back(vc::verify_flowmap());
    } else {
        throw UsageError("unknown verify suite '" + suite_name +
                         "' (corollary|section3|helix|pressure|remark12|flowmap|all)");
    }

    Output out(oo, "vortexcrit verify " + suite_name);
    bool all_pass = true;
    for (const vc::SuiteResult& s : suites) {
        vc::write_suite_text(*out.os, s);
        all_pass = all_pass && s.pass;
    }
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streamline geometry and vortex-stretching diagnostics for steady 3D fields"};
    app.require_subcommand(1);

    // --- eval ---------------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "Frenet data and criterion at a point");
    FieldOpts eval_field;
    OutputOpts eval_out;
    ToleranceOpts eval_tol;
    std::string eval_point;
    add_field_options(eval_cmd, eval_field);
    add_output_options(eval_cmd, eval_out, "json");
    add_tolerance_options(eval_cmd, eval_tol);
    eval_cmd->add_option("--point", eval_point, "evaluation point x,y,z")->required();

    // --- streamline ----------------------------------------------------------
    auto* stream_cmd = app.add_subcommand("streamline", "arc-length-parameterized trajectory");
    FieldOpts stream_field;
    OutputOpts stream_out;
    IntegOpts stream_integ;
    std::string stream_seed;
    add_field_options(stream_cmd, stream_field);
    add_output_options(stream_cmd, stream_out, "csv");
    add_integrator_options(stream_cmd, stream_integ);
    stream_cmd->add_option("--seed", stream_seed, "seed point x,y,z")->required();

    // --- classify -------------------------------------------------------------
    auto* classify_cmd = app.add_subcommand("classify", "grid report on the necessary condition");
    FieldOpts classify_field;
    OutputOpts classify_out;
    ToleranceOpts classify_tol;
    std::string classify_box, classify_res;
    int classify_threads = 0;
    add_field_options(classify_cmd, classify_field);
    add_output_options(classify_cmd, classify_out, "json");
    add_tolerance_options(classify_cmd, classify_tol);
    classify_cmd->add_option("--box", classify_box, "grid box x0,x1,y0,y1,z0,z1")->required();
    classify_cmd->add_option("--resolution", classify_res, "grid resolution nx,ny,nz")
        ->required();
    classify_cmd->add_option("--threads", classify_threads,
                             "worker count (default: VORTEX_CRITERION_THREADS or hardware)");

    // --- probe disk / probe cauchy --------------------------------------------
    auto* probe_cmd = app.add_subcommand("probe", "Lagrangian probes");
    probe_cmd->require_subcommand(1);

    auto* disk_cmd = probe_cmd->add_subcommand("disk", "material-disk perpendicularity defects");
    FieldOpts disk_field;
    OutputOpts disk_out;
    IntegOpts disk_integ;
    std::string disk_seed;
    int disk_markers = 0;
    double disk_radius = 1e-3;
    add_field_options(disk_cmd, disk_field);
    add_output_options(disk_cmd, disk_out, "csv");
    add_integrator_options(disk_cmd, disk_integ);
    disk_cmd->add_option("--seed", disk_seed, "seed point x,y,z")->required();
    disk_cmd->add_option("--ring-markers", disk_markers,
                         "finite-radius marker count (0 = Jacobian probe only)");
    disk_cmd->add_option("--ring-radius", disk_radius, "marker ring radius");

    auto* cauchy_cmd = probe_cmd->add_subcommand("cauchy", "vorticity transport omega = J omega0");
    FieldOpts cauchy_field;
    OutputOpts cauchy_out;
    IntegOpts cauchy_integ;
    std::string cauchy_seed, cauchy_omega;
    double cauchy_t = 1.0;
    add_field_options(cauchy_cmd, cauchy_field);
    add_output_options(cauchy_cmd, cauchy_out, "json");
    add_integrator_options(cauchy_cmd, cauchy_integ);
    cauchy_cmd->add_option("--seed", cauchy_seed, "seed point x,y,z")->required();
    cauchy_cmd->add_option("--omega", cauchy_omega, "initial vorticity wx,wy,wz")->required();
    cauchy_cmd->add_option("--t", cauchy_t, "transport time");

    // --- compare ----------------------------------------------------------------
    auto* compare_cmd = app.add_subcommand("compare", "criterion S by three computation paths");
    FieldOpts compare_field;
    OutputOpts compare_out;
    ToleranceOpts compare_tol;
    std::vector<std::string> compare_points;
    add_field_options(compare_cmd, compare_field);
    add_output_options(compare_cmd, compare_out, "csv");
    add_tolerance_options(compare_cmd, compare_tol);
    compare_cmd->add_option("--point", compare_points, "evaluation point x,y,z (repeatable)")
        ->required();

    // --- verify -----------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "built-in verification suites");
    OutputOpts verify_out;
    std::string verify_suite;
    add_output_options(verify_cmd, verify_out, "text");
    verify_cmd
        ->add_option("suite", verify_suite,
                     "corollary|section3|helix|pressure|remark12|flowmap|all")
        ->required();

    // --- field check ---------------------------------------------------------------
    auto* field_cmd = app.add_subcommand("field", "field utilities");
    field_cmd->require_subcommand(1);
    auto* check_cmd = field_cmd->add_subcommand("check", "parse a field and audit AD against FD");
    FieldOpts check_field;
    OutputOpts check_out;
    int check_samples = 100;
    double check_fd_step = 0.0;
    add_field_options(check_cmd, check_field);
    add_output_options(check_cmd, check_out, "text");
    check_cmd->add_option("--samples", check_samples, "number of audit points")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--fd-step", check_fd_step, "finite-difference step (0 = automatic)");

    try {
        app.parse(argc, argv);

        if (*eval_cmd) {
            vc::VelocityField field = resolve_field(eval_field);
            vc::Vec3 x = parse_point(eval_point);
            vc::FrenetSample s = vc::frenet_sample(field, x, eval_tol.tol);
            Output out(eval_out, "vortexcrit eval field=" + field.description() +
                                     " point=" + eval_point + " format=" + eval_out.format);
            if (eval_out.format == "json")
                vc::write_frenet_json(*out.os, s);
            else
                vc::write_frenet_csv(*out.os, s);
            return 0;
        }

        if (*stream_cmd) {
            vc::VelocityField field = resolve_field(stream_field);
            vc::Vec3 seed = parse_point(stream_seed, "seed");
            vc::Streamline s = vc::integrate_streamline(field, seed, stream_integ.cfg);
            Output out(stream_out, "vortexcrit streamline field=" + field.description() +
                                       " seed=" + stream_seed +
                                       " t_span=" + vc::fmt17(stream_integ.cfg.t_span));
            if (stream_out.format == "json")
                vc::write_streamline_json(*out.os, field, s);
            else
                vc::write_streamline_csv(*out.os, field, s);
            return 0;
        }

        if (*classify_cmd) {
            vc::VelocityField field = resolve_field(classify_field);
            auto b = parse_reals(classify_box, 6, "--box");
            auto r = parse_reals(classify_res, 3, "--resolution");
            vc::GridSpec grid;
            grid.box = {{b[0], b[2], b[4]}, {b[1], b[3], b[5]}};
            for (int a = 0; a < 3; ++a) {
                if (r[a] < 1 || r[a] != static_cast<int>(r[a]))
                    throw UsageError("--resolution entries must be positive integers");
                grid.resolution[a] = static_cast<int>(r[a]);
            }
            vc::ClassificationReport rep =
                vc::classify_grid(field, grid, classify_tol.tol, classify_threads);
            Output out(classify_out, "vortexcrit classify field=" + field.description() +
                                         " box=" + classify_box +
                                         " resolution=" + classify_res);
            if (classify_out.format == "json")
                vc::write_report_json(*out.os, rep);
            else
                vc::write_report_csv(*out.os, rep);
            return 0;
        }

        if (*disk_cmd) {
            vc::VelocityField field = resolve_field(disk_field);
            vc::Vec3 seed = parse_point(disk_seed, "seed");
            vc::DiskProbeConfig cfg;
            cfg.integ = disk_integ.cfg;
            cfg.marker_count = disk_markers;
            cfg.marker_radius = disk_radius;
            vc::DiskProbeResult r = vc::disk_probe(field, seed, cfg);
            Output out(disk_out, "vortexcrit probe disk field=" + field.description() +
                                     " seed=" + disk_seed +
                                     " t_span=" + vc::fmt17(disk_integ.cfg.t_span));
            if (disk_out.format == "json")
                vc::write_disk_json(*out.os, r);
            else
                vc::write_disk_csv(*out.os, r);
            return 0;
        }

        if (*cauchy_cmd) {
            vc::VelocityField field = resolve_field(cauchy_field);
            vc::Vec3 seed = parse_point(cauchy_seed, "seed");
            vc::Vec3 omega0 = parse_point(cauchy_omega, "omega");
            if (cauchy_t < 0.0) throw UsageError("--t must be non-negative");
            vc::Vec3 w = vc::cauchy_vorticity(field, seed, omega0, cauchy_t, cauchy_integ.cfg);
            Output out(cauchy_out, "vortexcrit probe cauchy field=" + field.description() +
                                       " seed=" + cauchy_seed + " omega=" + cauchy_omega +
                                       " t=" + vc::fmt17(cauchy_t));
            if (cauchy_out.format == "json")
                vc::write_cauchy_json(*out.os, cauchy_t, w);
            else
                vc::write_cauchy_csv(*out.os, cauchy_t, w);
            return 0;
        }

        if (*compare_cmd) {
            vc::VelocityField field = resolve_field(compare_field);
            std::vector<vc::Vec3> pts;
            pts.reserve(compare_points.size());
            for (const std::string& p : compare_points) pts.push_back(parse_point(p));
            auto rows = vc::compare_paths(field, pts, compare_tol.tol);
            Output out(compare_out, "vortexcrit compare field=" + field.description() +
                                        " points=" + std::to_string(pts.size()));
            if (compare_out.format == "json")
                vc::write_compare_json(*out.os, rows);
            else
                vc::write_compare_csv(*out.os, rows);
            return 0;
        }

        if (*verify_cmd) return run_verify(verify_suite, verify_out);

        if (*check_cmd) {
            vc::VelocityField field = resolve_field(check_field);
            vc::Rng rng(424242);
            double max_grad = 0.0, max_hess = 0.0;
            int used = 0, skipped = 0;
            for (int k = 0; k < check_samples; ++k) {
                vc::Vec3 x = rng.point({{-2, -2, -2}, {2, 2, 2}});
                vc::FieldJet ad, fd;
                try {
                    ad = field.jet(x);
                    fd = check_fd_step > 0.0 ? field.jet_fd(x, check_fd_step) : field.jet_fd(x);
                } catch (const vc::DomainError&) {
                    ++skipped;
                    continue;
                }
                ++used;
                double gref = std::max(1.0, vc::frobenius_norm(ad.grad_u));
                double gdev = 0.0, hdev = 0.0, href = 1.0;
                for (int i = 0; i < 3; ++i)
                    for (int a = 0; a < 3; ++a) {
                        gdev = std::max(gdev, std::fabs(ad.grad_u[i][a] - fd.grad_u[i][a]));
                        for (int b2 = 0; b2 < 3; ++b2) {
                            hdev = std::max(hdev,
                                            std::fabs(ad.hess_u[i][a][b2] - fd.hess_u[i][a][b2]));
                            href = std::max(href, std::fabs(ad.hess_u[i][a][b2]));
                        }
                    }
                max_grad = std::max(max_grad, gdev / gref);
                max_hess = std::max(max_hess, hdev / href);
            }
            if (used == 0) throw vc::Error("no audit point lies in the field domain");

            Output out(check_out, "vortexcrit field check field=" + field.description() +
                                      " samples=" + std::to_string(check_samples));
            *out.os << "parsed: " << field.description() << "\n"
                    << "audit points used: " << used << " (skipped " << skipped << ")\n"
                    << "max relative gradient deviation: " << vc::fmt17(max_grad) << "\n"
                    << "max relative Hessian deviation:  " << vc::fmt17(max_hess) << "\n";
            bool ok = max_grad <= 1e-6 && max_hess <= 1e-4;
            *out.os << "audit: " << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 2;
        }

        return 0;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vc::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
