#pragma once

#include <vector>

#include "vortexcrit/field.hpp"
#include "vortexcrit/frenet.hpp"
#include "vortexcrit/ode.hpp"
#include "vortexcrit/vec.hpp"

namespace vortexcrit {

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;       // <= 0: unlimited
    double t_span = 1.0;
    int sample_count = 201;      // dense-output samples over [0, t_end]
    double eps_stagnation = 1e-10;
};

struct StreamSample {
    double t;
    double z;  // arc length from the seed
    Vec3 x;
    double speed;
};

/// Arc-length-parameterized trajectory of the steady field through `seed`.
struct Streamline {
    Vec3 seed;
    std::vector<StreamSample> samples;       // dense, uniformly spaced in t
    std::vector<ode::Node<4>> nodes;         // accepted integrator steps (x, z)
    ode::Stats stats;
    bool stagnation_approach = false;        // stopped early near a zero of u
    double t_end = 0.0;
};

/// Adaptive RK5(4) on the augmented state (x, z) with dz/dt = |u|.
/// Throws StagnationError at the seed; ends early with stagnation_approach
/// set when the speed falls below the stagnation cutoff.
Streamline integrate_streamline(const VelocityField& field, const Vec3& seed,
                                const IntegratorConfig& cfg = {});

/// Strictly monotone piecewise-cubic map between time and arc length.
class ArcLengthMap {
public:
    explicit ArcLengthMap(const Streamline& s);

    double z_of_t(double t) const;
    double t_of_z(double z) const;

    double t_max() const { return t_.back(); }
    double z_max() const { return z_.back(); }

private:
    std::vector<double> t_, z_, speed_;
};

inline ArcLengthMap arc_length_map(const Streamline& s) { return ArcLengthMap(s); }

/// Joint trajectory of position and flow-map Jacobian (variational equation
/// dJ/dt = grad_u(x(t)) J). State layout: x (3), z (1), J row-major (9).
struct FlowMapTrajectory {
    Vec3 seed;
    std::vector<ode::Node<13>> nodes;
    ode::Stats stats;
    bool stagnation_approach = false;
    double t_end = 0.0;
};

FlowMapTrajectory integrate_flow_map(const VelocityField& field, const Vec3& seed, double t_span,
                                     const IntegratorConfig& cfg = {});

/// Position and Jacobian at time t by dense interpolation.
void flow_map_state(const FlowMapTrajectory& traj, double t, Vec3& x, Mat3& J);

/// J(t) with J(0) = identity. Throws if the trajectory stalls before t.
Mat3 flow_map_jacobian(const VelocityField& field, const Vec3& seed, double t,
                       const IntegratorConfig& cfg = {});

/// Cauchy transport of a vorticity vector: omega(t) = J(t) omega0.
Vec3 cauchy_vorticity(const VelocityField& field, const Vec3& seed, const Vec3& omega0, double t,
                      const IntegratorConfig& cfg = {});

struct DiskSample {
    double t;
    double defect_n;      // unit(J n0) . tau(eta(t)) — 0 means perpendicular
    double defect_b;      // unit(J b0) . tau(eta(t))
    double axis_stretch;  // |u(eta(t))| / |u(seed)|
};

/// Finite-radius marker-ring cross-check of the Jacobian probe.
struct RingSample {
    double t;
    double max_abs_defect;         // max_j |unit(marker_j - eta) . tau|
    double max_dev_from_jacobian;  // max_j |marker defect - Jacobian defect|, O(radius)
};

struct DiskProbeConfig {
    IntegratorConfig integ;
    int marker_count = 0;        // > 0 enables the finite-radius ring
    double marker_radius = 1e-3;
};

/// Perpendicularity probe of the material disk seeded orthogonal to the flow
/// at `seed`. The initial basis is the Frenet (n, b) pair when the curvature
/// is non-degenerate, otherwise a deterministic orthonormal completion of tau
/// (Gram-Schmidt applied to the coordinate axis of smallest |tau| component).
struct DiskProbeResult {
    Vec3 seed;
    Vec3 n0, b0;
    std::vector<DiskSample> series;
    std::vector<RingSample> ring;  // empty unless marker_count > 0
};

DiskProbeResult disk_probe(const VelocityField& field, const Vec3& seed,
                           const DiskProbeConfig& cfg = {});

}  // namespace vortexcrit
