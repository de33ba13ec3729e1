#pragma once

#include <string_view>

#include "vortexcrit/field.hpp"
#include "vortexcrit/vec.hpp"

namespace vortexcrit {

struct TolerancePolicy {
    /// Stagnation cutoff on |u|, scaled by the local velocity scale
    /// (1 + |grad u| * (1 + |x|)).
    double eps_stagnation = 1e-10;
    /// Curvature degeneracy cutoff: the frame is undefined when
    /// |a_perp| <= eps_kappa * speed^2.
    double eps_kappa = 1e-12;
    /// Stretching test floor: alpha counts as positive only above
    /// eps_alpha * |a| (alpha = a . tau is an exact cancellation for
    /// non-stretching flows and lands at roundoff scale).
    double eps_alpha = 1e-12;
    /// Criterion-zero test, cancellation aware: |S| is compared against
    /// abs_tol + rel_tol * (|dz_kappa| * speed^2 + 2 * kappa * |alpha|),
    /// the magnitudes of the two terms that must cancel for S = 0.
    double criterion_abs_tol = 1e-9;
    double criterion_rel_tol = 1e-7;
};

/// All pointwise streamline geometry at x, computed from the field jet alone
/// (no trajectory integration). The streamline through x is the integral
/// curve of u; its Frenet data is expressed through u, grad u, hess u.
struct FrenetSample {
    Vec3 x;
    double speed = 0.0;  // |u(x)|, the Lagrangian speed of the trajectory
    Vec3 tau;            // unit tangent
    Vec3 accel;          // a = (u.grad)u, the Lagrangian acceleration
    double alpha = 0.0;  // stretch rate d/dt |u| along the trajectory = a.tau
    Vec3 kappa_vec;      // kappa * n = a_perp / speed^2
    double kappa = 0.0;  // curvature (>= 0)
    double F = 0.0;      // kappa * speed^2 = |a_perp|
    double S = 0.0;      // d/dz (kappa * speed^2), the stretching criterion
    double dz_kappa = 0.0;  // d kappa / dz
    bool has_frame = false;  // normal/binormal/torsion defined
    Vec3 normal;             // valid iff has_frame
    Vec3 binormal;           // b = tau x n, valid iff has_frame
    double torsion = 0.0;    // signed, valid iff has_frame
    bool curvature_degenerate = false;
};

struct CriterionValue {
    double S = 0.0;
    double dz_kappa = 0.0;
    bool degenerate = false;  // a_perp ~ 0; S reported as the limit 0
};

enum class Verdict { CandidateStable, ViolatesNecessaryCondition, NotStretching, Degenerate };

std::string_view to_string(Verdict v);

struct PointClass {
    Vec3 x;
    bool is_stretching = false;       // alpha > 0
    double criterion_residual = 0.0;  // S
    bool criterion_zero = false;
    bool dz_kappa_sign_ok = false;    // dz_kappa <= tolerance
    Verdict verdict = Verdict::Degenerate;
    // numeric context for reports
    double alpha = 0.0;
    double kappa = 0.0;
    double dz_kappa = 0.0;
    double speed = 0.0;
};

/// Throws StagnationError when |u(x)| is below the stagnation cutoff.
FrenetSample frenet_sample(const VelocityField& field, const Vec3& x,
                           const TolerancePolicy& tol = {});

/// The criterion S = (u . grad F)/|u| with F = kappa |u|^2 = |a_perp|, computed
/// exactly by differentiating the composite through (u, grad u, hess u);
/// dz_kappa = (S - 2 kappa alpha)/speed^2.
CriterionValue criterion(const VelocityField& field, const Vec3& x,
                         const TolerancePolicy& tol = {});

/// Central difference [F(x + h tau) - F(x - h tau)] / (2h).
double criterion_fd(const VelocityField& field, const Vec3& x, double h);

/// Never throws: stagnation and domain violations map to the degenerate verdict.
PointClass classify_point(const VelocityField& field, const Vec3& x,
                          const TolerancePolicy& tol = {});

/// Stagnation cutoff at x given the local jet.
double stagnation_threshold(const FieldJet& jet, const Vec3& x, const TolerancePolicy& tol);

}  // namespace vortexcrit
