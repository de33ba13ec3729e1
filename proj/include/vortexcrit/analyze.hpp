#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vortexcrit/flow.hpp"
#include "vortexcrit/frenet.hpp"

namespace vortexcrit {

struct OracleComparison {
    std::string label;
    double computed = 0.0;
    double oracle = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;   // abs_dev / |oracle|, or abs_dev when the oracle is 0
    double tolerance = 0.0; // on rel_dev unless noted
    bool pass = false;
};

OracleComparison compare_values(std::string label, double computed, double oracle,
                                double rel_tol, double abs_floor = 0.0);

/// -tanh(2t)/cosh(2t) with t = log(x1/x2)/2; requires x1, x2 > 0.
/// Equals -2 x1 x2 (x1^2 - x2^2) / (x1^2 + x2^2)^2.
double corollary_oracle(double x1, double x2);

/// Closed forms along the hyperbolic trajectory (r e^t, r e^{-t}, 0) of the
/// field (x, -y, 0). alpha is returned in the signed form
/// sqrt(2) r sinh(2t)/sqrt(cosh(2t)), valid for all t.
struct Section3Values {
    double kappa;
    double dz_kappa;
    double speed_sq;
    double alpha;
};
Section3Values section3_oracle(double r, double t);

/// kappa = R/(R^2+c^2), torsion = c/(R^2+c^2) for the helix of radius R and pitch c.
struct HelixValues {
    double kappa;
    double torsion;
};
HelixValues helix_oracle(double R, double c);

/// Residuals of the steady-Euler pressure identities at x:
///   -grad p . tau = alpha, -grad p . n = kappa |u|^2, -grad p . b = 0,
///   -d/dz(grad p . n) = dz_kappa |u|^2 + 2 kappa alpha.
/// Frame residuals are 0 with the degenerate flag where the frame is undefined.
struct PressureResiduals {
    double r_tau = 0.0;
    double r_n = 0.0;
    double r_b = 0.0;
    double r_dz = 0.0;
    bool curvature_degenerate = false;
};
PressureResiduals pressure_identity_check(const VelocityField& field, const Vec3& x,
                                          const TolerancePolicy& tol = {});

/// Azimuthal vorticity transport under the axisymmetric strain (-x, -y, 2z),
/// reported three ways at the advected radius e^{-t} r0:
///   claimed   e^{ t} * omega0(e^{-t} r0)   (reported, never asserted)
///   oracle    e^{-t} * omega0(r0)          (method of characteristics)
///   numeric   |J(t) omega0(r0) e_theta|    (Cauchy transport)
struct Remark12Result {
    double claimed = 0.0;
    double oracle = 0.0;
    double numeric = 0.0;
    OracleComparison oracle_vs_numeric;   // asserted at 1e-7
    OracleComparison claimed_vs_oracle;   // informational only
};
Remark12Result remark12_check(double r0, const std::function<double(double)>& omega0_profile,
                              double t, const IntegratorConfig& cfg = {});

/// S by three routes: exact directional derivative, central difference, and
/// finite differencing of F(z) sampled along an integrated streamline.
struct PathComparison {
    Vec3 x;
    double analytic = 0.0;
    double fd = 0.0;
    double trajectory = 0.0;
    double max_pairwise_dev = 0.0;
};
std::vector<PathComparison> compare_paths(const VelocityField& field, std::span<const Vec3> points,
                                          const TolerancePolicy& tol = {});

struct Box {
    Vec3 lo, hi;
};

struct GridSpec {
    Box box;
    std::array<int, 3> resolution{2, 2, 2};  // an axis may be a single plane (n = 1)
};

struct ClassificationReport {
    std::string field;
    Box box;
    std::array<int, 3> resolution{};
    TolerancePolicy tolerances;
    std::vector<PointClass> points;          // ordered by grid index, x slowest
    std::array<std::size_t, 4> summary{};    // counts indexed by Verdict
};

/// classify_point at every grid node. Stagnation and domain violations map to
/// the degenerate verdict. Deterministic for fixed inputs regardless of the
/// worker count (threads = 0: VORTEX_CRITERION_THREADS, else hardware).
ClassificationReport classify_grid(const VelocityField& field, const GridSpec& grid,
                                   const TolerancePolicy& tol = {}, int threads = 0);

/// Matrix exponential by scaling and squaring (reference path for the flow map).
Mat3 expm(const Mat3& a);

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_rel_dev = 0.0;
    std::vector<OracleComparison> rows;
};

// Built-in verification suites (also wired to `vortexcrit verify <name>`).
SuiteResult verify_corollary();
SuiteResult verify_section3();
SuiteResult verify_helix();
SuiteResult verify_pressure();
SuiteResult verify_remark12();
SuiteResult verify_flowmap();
std::vector<SuiteResult> verify_all();

/// Deterministic, portable uniform sampler (identical across platforms).
struct Rng {
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        // xorshift64*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545f4914f6cdd1dull;
    }

    double uniform(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    Vec3 point(const Box& b) {
        return {uniform(b.lo.x, b.hi.x), uniform(b.lo.y, b.hi.y), uniform(b.lo.z, b.hi.z)};
    }

    std::uint64_t state;
};

}  // namespace vortexcrit
