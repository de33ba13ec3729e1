#include "vortexcrit/frenet.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexcrit/jets.hpp"

namespace vortexcrit {

double stagnation_threshold(const FieldJet& jet, const Vec3& x, const TolerancePolicy& tol) {
    return tol.eps_stagnation * (1.0 + frobenius_norm(jet.grad_u) * (1.0 + norm(x)));
}

namespace {

// Pointwise geometry shared by every operation in this module.
struct Core {
    FieldJet jet;
    double speed;
    Vec3 tau;
    Vec3 accel;      // a = (u.grad)u
    double alpha;    // a . tau
    Vec3 a_perp;
    double F;        // |a_perp|
    double kappa;    // F / speed^2
    bool degenerate; // F <= eps_kappa * speed^2
};

Core make_core(const VelocityField& field, const Vec3& x, const TolerancePolicy& tol) {
    Core c;
    c.jet = field.jet(x);
    c.speed = norm(c.jet.u);
    if (c.speed <= stagnation_threshold(c.jet, x, tol)) throw StagnationError();
    c.tau = c.jet.u / c.speed;
    c.accel = c.jet.grad_u * c.jet.u;
    c.alpha = dot(c.accel, c.tau);
    c.a_perp = c.accel - c.alpha * c.tau;
    c.F = norm(c.a_perp);
    double sp2 = c.speed * c.speed;
    c.kappa = c.F / sp2;
    c.degenerate = c.F <= tol.eps_kappa * sp2;
    return c;
}

// S = d/ds F(x + s tau) at s = 0, evaluated in dual arithmetic with the field
// jet supplying the directional derivatives of u and grad u. F depends on u
// and grad u only, so hess u is all that is needed.
CriterionValue make_criterion(const Core& c, const TolerancePolicy& tol) {
    Dual1 u[3], m[3][3];
    for (int i = 0; i < 3; ++i) {
        double du = 0.0;
        for (int j = 0; j < 3; ++j) du += c.jet.grad_u[i][j] * c.tau[j];
        u[i] = Dual1{c.jet.u[i], du};
        for (int j = 0; j < 3; ++j) {
            double dm = 0.0;
            for (int k = 0; k < 3; ++k) dm += c.jet.hess_u[i][j][k] * c.tau[k];
            m[i][j] = Dual1{c.jet.grad_u[i][j], dm};
        }
    }

    Dual1 a[3];
    for (int i = 0; i < 3; ++i) a[i] = m[i][0] * u[0] + m[i][1] * u[1] + m[i][2] * u[2];

    Dual1 uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    Dual1 au = a[0] * u[0] + a[1] * u[1] + a[2] * u[2];
    Dual1 aa = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    Dual1 G = aa - au * au / uu;  // F^2

    CriterionValue out;
    double sp2 = c.speed * c.speed;
    double floor = tol.eps_kappa * sp2;
    if (G.v <= floor * floor) {
        // F vanishes along the direction of motion; S is the limit 0.
        out.S = 0.0;
        out.degenerate = true;
    } else {
        out.S = G.d / (2.0 * std::sqrt(G.v));
        out.degenerate = false;
    }
    out.dz_kappa = (out.S - 2.0 * c.kappa * c.alpha) / sp2;
    return out;
}

// |a_perp| without degeneracy bookkeeping, for finite-difference stencils.
double perp_accel_magnitude(const VelocityField& field, const Vec3& x) {
    FieldJet jet = field.jet(x);
    double sp2 = norm2(jet.u);
    if (sp2 <= 0.0) throw StagnationError();
    Vec3 a = jet.grad_u * jet.u;
    double g = norm2(a) - dot(a, jet.u) * dot(a, jet.u) / sp2;
    return std::sqrt(std::max(g, 0.0));
}

}  // namespace

FrenetSample frenet_sample(const VelocityField& field, const Vec3& x,
                           const TolerancePolicy& tol) {
    Core c = make_core(field, x, tol);

    FrenetSample s;
    s.x = x;
    s.speed = c.speed;
    s.tau = c.tau;
    s.accel = c.accel;
    s.alpha = c.alpha;
    s.kappa_vec = c.a_perp / (c.speed * c.speed);
    s.kappa = c.kappa;
    s.F = c.F;
    s.curvature_degenerate = c.degenerate;

    if (!c.degenerate) {
        s.has_frame = true;
        s.normal = c.a_perp / c.F;
        s.binormal = cross(c.tau, s.normal);
        // Third curve derivative j = (u.grad)a = grad_u * a + hess_u : (u, u),
        // then the standard torsion formula T = ((u x a) . j) / |u x a|^2.
        Vec3 j3 = c.jet.grad_u * c.accel + contract(c.jet.hess_u, c.jet.u, c.jet.u);
        Vec3 uxa = cross(c.jet.u, c.accel);
        s.torsion = dot(uxa, j3) / norm2(uxa);
    }

    CriterionValue cv = make_criterion(c, tol);
    s.S = cv.S;
    s.dz_kappa = cv.dz_kappa;
    return s;
}

CriterionValue criterion(const VelocityField& field, const Vec3& x, const TolerancePolicy& tol) {
    return make_criterion(make_core(field, x, tol), tol);
}

double criterion_fd(const VelocityField& field, const Vec3& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    Core c = make_core(field, x, TolerancePolicy{});
    const Vec3 xp = x + h * c.tau;
    const Vec3 xm = x - h * c.tau;
    return (perp_accel_magnitude(field, xp) - perp_accel_magnitude(field, xm)) / (2.0 * h);
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::CandidateStable: return "candidate_stable";
        case Verdict::ViolatesNecessaryCondition: return "violates_necessary_condition";
        case Verdict::NotStretching: return "not_stretching";
        case Verdict::Degenerate: return "degenerate";
    }
    return "?";
}

PointClass classify_point(const VelocityField& field, const Vec3& x,
                          const TolerancePolicy& tol) {
    PointClass pc;
    pc.x = x;
    Core c;
    try {
        c = make_core(field, x, tol);
    } catch (const StagnationError&) {
        pc.verdict = Verdict::Degenerate;
        return pc;
    } catch (const DomainError&) {
        pc.verdict = Verdict::Degenerate;
        return pc;
    }

    CriterionValue cv = make_criterion(c, tol);
    double sp2 = c.speed * c.speed;
    double cancel_scale = std::fabs(cv.dz_kappa) * sp2 + 2.0 * c.kappa * std::fabs(c.alpha);

    pc.is_stretching = c.alpha > tol.eps_alpha * norm(c.accel);
    pc.criterion_residual = cv.S;
    pc.criterion_zero =
        std::fabs(cv.S) <= tol.criterion_abs_tol + tol.criterion_rel_tol * cancel_scale;
    pc.dz_kappa_sign_ok =
        cv.dz_kappa <= (tol.criterion_abs_tol + tol.criterion_rel_tol *
                                                    (std::fabs(cv.S) +
                                                     2.0 * c.kappa * std::fabs(c.alpha))) /
                           sp2;
    pc.alpha = c.alpha;
    pc.kappa = c.kappa;
    pc.dz_kappa = cv.dz_kappa;
    pc.speed = c.speed;

    if (!pc.is_stretching)
        pc.verdict = Verdict::NotStretching;
    else if (pc.criterion_zero)
        pc.verdict = Verdict::CandidateStable;
    else
        pc.verdict = Verdict::ViolatesNecessaryCondition;
    return pc;
}

}  // namespace vortexcrit
