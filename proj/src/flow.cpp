#include "vortexcrit/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vortexcrit {

namespace {

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw std::invalid_argument("integrator tolerances must be positive");
    if (!(cfg.t_span > 0.0) || !std::isfinite(cfg.t_span))
        throw std::invalid_argument("t_span must be positive and finite");
    if (cfg.sample_count < 2) throw std::invalid_argument("sample_count must be at least 2");
}

ode::Options ode_options(const IntegratorConfig& cfg) {
    ode::Options opt;
    opt.rel_tol = cfg.rel_tol;
    opt.abs_tol = cfg.abs_tol;
    opt.max_step = cfg.max_step;
    return opt;
}

// Stagnation cutoff for trajectory termination, scaled by the seed speed.
double stop_speed(const IntegratorConfig& cfg, double seed_speed) {
    return cfg.eps_stagnation * (1.0 + seed_speed);
}

void check_seed(const VelocityField& field, const Vec3& seed, const IntegratorConfig& cfg) {
    FieldJet jet = field.jet(seed);
    TolerancePolicy tol;
    tol.eps_stagnation = cfg.eps_stagnation;
    if (norm(jet.u) <= stagnation_threshold(jet, seed, tol)) throw StagnationError();
}

}  // namespace

Streamline integrate_streamline(const VelocityField& field, const Vec3& seed,
                                const IntegratorConfig& cfg) {
    validate(cfg);
    check_seed(field, seed, cfg);
    const double vmin = stop_speed(cfg, norm(field.velocity(seed)));

    auto rhs = [&](double, const ode::State<4>& y, ode::State<4>& f) {
        Vec3 u = field.velocity({y[0], y[1], y[2]});
        f = {u.x, u.y, u.z, norm(u)};
    };

    auto res = ode::integrate<4>(
        rhs, {seed.x, seed.y, seed.z, 0.0}, 0.0, cfg.t_span, ode_options(cfg),
        [&](const ode::State<4>& y) {
            return norm(field.velocity({y[0], y[1], y[2]})) < vmin;
        });

    Streamline s;
    s.seed = seed;
    s.nodes = std::move(res.nodes);
    s.stats = res.stats;
    s.stagnation_approach = res.reason == ode::StopReason::Predicate;
    s.t_end = res.t_end;

    int count = cfg.sample_count;
    s.samples.reserve(count);
    for (int k = 0; k < count; ++k) {
        double t = s.t_end * static_cast<double>(k) / (count - 1);
        ode::State<4> y = ode::sample(s.nodes, t);
        Vec3 x{y[0], y[1], y[2]};
        if (k == 0) {
            s.samples.push_back({0.0, 0.0, seed, norm(field.velocity(seed))});
        } else {
            s.samples.push_back({t, y[3], x, norm(field.velocity(x))});
        }
    }
    return s;
}

ArcLengthMap::ArcLengthMap(const Streamline& s) {
    if (s.nodes.size() < 2)
        throw std::invalid_argument("arc-length map needs at least 2 samples");
    t_.reserve(s.nodes.size());
    z_.reserve(s.nodes.size());
    speed_.reserve(s.nodes.size());
    for (const auto& n : s.nodes) {
        t_.push_back(n.t);
        z_.push_back(n.y[3]);
        speed_.push_back(n.f[3]);
    }
    for (std::size_t i = 1; i < z_.size(); ++i)
        if (!(z_[i] > z_[i - 1]))
            throw Error("arc length is not strictly increasing (integrator defect)");
}

namespace {

double hermite(double t0, double t1, double y0, double y1, double f0, double f1, double t) {
    double h = t1 - t0;
    double s = (t - t0) / h;
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + h * (s3 - 2 * s2 + s) * f0 + (-2 * s3 + 3 * s2) * y1 +
           h * (s3 - s2) * f1;
}

double hermite_deriv(double t0, double t1, double y0, double y1, double f0, double f1, double t) {
    double h = t1 - t0;
    double s = (t - t0) / h;
    return (6 * s * s - 6 * s) * (y0 - y1) / h + (3 * s * s - 4 * s + 1) * f0 +
           (3 * s * s - 2 * s) * f1;
}

}  // namespace

double ArcLengthMap::z_of_t(double t) const {
    if (t <= t_.front()) return z_.front();
    if (t >= t_.back()) return z_.back();
    std::size_t hi = std::upper_bound(t_.begin(), t_.end(), t) - t_.begin();
    std::size_t lo = hi - 1;
    return hermite(t_[lo], t_[hi], z_[lo], z_[hi], speed_[lo], speed_[hi], t);
}

double ArcLengthMap::t_of_z(double z) const {
    if (z <= z_.front()) return t_.front();
    if (z >= z_.back()) return t_.back();
    std::size_t hi = std::upper_bound(z_.begin(), z_.end(), z) - z_.begin();
    std::size_t lo = hi - 1;

    // Safeguarded Newton on the monotone cubic segment.
    double ta = t_[lo], tb = t_[hi];
    double t = ta + (tb - ta) * (z - z_[lo]) / (z_[hi] - z_[lo]);
    for (int it = 0; it < 60; ++it) {
        double g = hermite(t_[lo], t_[hi], z_[lo], z_[hi], speed_[lo], speed_[hi], t) - z;
        if (g > 0.0)
            tb = t;
        else
            ta = t;
        double dg = hermite_deriv(t_[lo], t_[hi], z_[lo], z_[hi], speed_[lo], speed_[hi], t);
        double tn = dg > 0.0 ? t - g / dg : 0.5 * (ta + tb);
        if (!(tn > ta) || !(tn < tb)) tn = 0.5 * (ta + tb);  // bisection fallback
        if (std::fabs(tn - t) <= 1e-15 * std::max(1.0, std::fabs(t))) return tn;
        t = tn;
    }
    return t;
}

FlowMapTrajectory integrate_flow_map(const VelocityField& field, const Vec3& seed, double t_span,
                                     const IntegratorConfig& cfg) {
    IntegratorConfig c = cfg;
    c.t_span = t_span;
    validate(c);
    check_seed(field, seed, c);
    const double vmin = stop_speed(c, norm(field.velocity(seed)));

    auto rhs = [&](double, const ode::State<13>& y, ode::State<13>& f) {
        FieldJet jet = field.jet({y[0], y[1], y[2]});
        f[0] = jet.u.x;
        f[1] = jet.u.y;
        f[2] = jet.u.z;
        f[3] = norm(jet.u);
        // dJ/dt = grad_u * J, J stored row-major in y[4..12]
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += jet.grad_u[i][k] * y[4 + 3 * k + j];
                f[4 + 3 * i + j] = s;
            }
    };

    ode::State<13> y0{seed.x, seed.y, seed.z, 0.0, 1, 0, 0, 0, 1, 0, 0, 0, 1};
    auto res = ode::integrate<13>(rhs, y0, 0.0, t_span, ode_options(c),
                                  [&](const ode::State<13>& y) {
                                      return norm(field.velocity({y[0], y[1], y[2]})) < vmin;
                                  });

    FlowMapTrajectory traj;
    traj.seed = seed;
    traj.nodes = std::move(res.nodes);
    traj.stats = res.stats;
    traj.stagnation_approach = res.reason == ode::StopReason::Predicate;
    traj.t_end = res.t_end;
    return traj;
}

void flow_map_state(const FlowMapTrajectory& traj, double t, Vec3& x, Mat3& J) {
    ode::State<13> y = ode::sample(traj.nodes, t);
    x = {y[0], y[1], y[2]};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) J[i][j] = y[4 + 3 * i + j];
}

Mat3 flow_map_jacobian(const VelocityField& field, const Vec3& seed, double t,
                       const IntegratorConfig& cfg) {
    if (t < 0.0) throw std::invalid_argument("flow-map time must be non-negative");
    if (t == 0.0) {
        check_seed(field, seed, cfg);
        return Mat3::identity();
    }
    FlowMapTrajectory traj = integrate_flow_map(field, seed, t, cfg);
    if (traj.stagnation_approach && traj.t_end < t)
        throw Error("trajectory approached stagnation at t = " + std::to_string(traj.t_end) +
                    " before the requested time");
    Vec3 x;
    Mat3 J;
    flow_map_state(traj, t, x, J);
    return J;
}

Vec3 cauchy_vorticity(const VelocityField& field, const Vec3& seed, const Vec3& omega0, double t,
                      const IntegratorConfig& cfg) {
    return flow_map_jacobian(field, seed, t, cfg) * omega0;
}

DiskProbeResult disk_probe(const VelocityField& field, const Vec3& seed,
                           const DiskProbeConfig& cfg) {
    FlowMapTrajectory traj = integrate_flow_map(field, seed, cfg.integ.t_span, cfg.integ);

    DiskProbeResult out;
    out.seed = seed;

    // Initial disk basis: Frenet (n, b) at the seed when defined, otherwise a
    // deterministic completion of tau.
    const Vec3 u0 = field.velocity(seed);
    const double speed0 = norm(u0);
    const Vec3 tau0 = u0 / speed0;
    TolerancePolicy tol;
    tol.eps_stagnation = cfg.integ.eps_stagnation;
    FrenetSample fr = frenet_sample(field, seed, tol);
    if (fr.has_frame) {
        out.n0 = fr.normal;
        out.b0 = fr.binormal;
    } else {
        int axis = 0;
        double best = std::fabs(tau0[0]);
        for (int k = 1; k < 3; ++k)
            if (std::fabs(tau0[k]) < best) {
                best = std::fabs(tau0[k]);
                axis = k;
            }
        Vec3 e;
        e[axis] = 1.0;
        out.n0 = normalized(e - dot(e, tau0) * tau0);
        out.b0 = cross(tau0, out.n0);
    }

    const int count = std::max(cfg.integ.sample_count, 2);
    std::vector<double> times(count);
    for (int k = 0; k < count; ++k)
        times[k] = traj.t_end * static_cast<double>(k) / (count - 1);

    out.series.reserve(count);
    std::vector<Mat3> jacobians(count);
    std::vector<Vec3> taus(count);
    for (int k = 0; k < count; ++k) {
        Vec3 x;
        Mat3 J;
        flow_map_state(traj, times[k], x, J);
        Vec3 u = field.velocity(x);
        Vec3 tau = u / norm(u);
        jacobians[k] = J;
        taus[k] = tau;
        if (k == 0) {
            // Perpendicular by construction at t = 0.
            out.series.push_back({0.0, 0.0, 0.0, 1.0});
        } else {
            auto cosine = [](const Vec3& a, const Vec3& b) {
                return std::clamp(dot(a, b), -1.0, 1.0);
            };
            out.series.push_back({times[k], cosine(normalized(J * out.n0), tau),
                                  cosine(normalized(J * out.b0), tau), norm(u) / speed0});
        }
    }

    if (cfg.marker_count > 0) {
        if (!(cfg.marker_radius > 0.0))
            throw std::invalid_argument("marker radius must be positive");
        const int m = cfg.marker_count;
        std::vector<std::vector<ode::Node<4>>> marker_nodes(m);
        std::vector<Vec3> dirs(m);
        for (int j = 0; j < m; ++j) {
            double th = 2.0 * M_PI * j / m;
            dirs[j] = std::cos(th) * out.n0 + std::sin(th) * out.b0;
            Vec3 mseed = seed + cfg.marker_radius * dirs[j];
            IntegratorConfig mc = cfg.integ;
            mc.t_span = traj.t_end;
            Streamline ms = integrate_streamline(field, mseed, mc);
            if (ms.stagnation_approach && ms.t_end < traj.t_end)
                throw Error("marker trajectory approached stagnation before the probe horizon");
            marker_nodes[j] = std::move(ms.nodes);
        }
        out.ring.reserve(count);
        for (int k = 0; k < count; ++k) {
            Vec3 x;
            Mat3 J;
            flow_map_state(traj, times[k], x, J);
            double max_defect = 0.0, max_dev = 0.0;
            for (int j = 0; j < m; ++j) {
                ode::State<4> ym = ode::sample(marker_nodes[j], times[k]);
                Vec3 disp = Vec3{ym[0], ym[1], ym[2]} - x;
                double defect = k == 0 ? 0.0 : dot(normalized(disp), taus[k]);
                double jac_defect = k == 0 ? 0.0 : dot(normalized(J * dirs[j]), taus[k]);
                max_defect = std::max(max_defect, std::fabs(defect));
                max_dev = std::max(max_dev, std::fabs(defect - jac_defect));
            }
            out.ring.push_back({times[k], max_defect, max_dev});
        }
    }
    return out;
}

}  // namespace vortexcrit
