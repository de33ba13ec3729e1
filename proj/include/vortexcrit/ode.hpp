#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vortexcrit/errors.hpp"

namespace vortexcrit::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct Node {
    double t;
    State<N> y;
    State<N> f;  // derivative at (t, y), kept for Hermite interpolation
};

struct Stats {
    long steps = 0;
    long rejected = 0;
    double max_error_estimate = 0.0;  // largest accepted scaled error
};

enum class StopReason { ReachedEnd, Predicate };

template <std::size_t N>
struct Result {
    std::vector<Node<N>> nodes;  // accepted steps, including t0
    Stats stats;
    StopReason reason = StopReason::ReachedEnd;
    double t_end = 0.0;
};

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;           // <= 0: no cap beyond the span
    double underflow_factor = 1e-14; // h below this fraction of the span is an error
};

namespace detail {

template <std::size_t N>
bool finite(const State<N>& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace detail

/// Embedded Dormand-Prince 5(4) pair with PI step-size control and FSAL.
/// `rhs(t, y, f)` fills f; DomainError from a trial stage rejects the step.
/// `stop(y)` is checked after each accepted step; true ends the integration
/// with StopReason::Predicate.
template <std::size_t N, class Rhs, class Stop>
Result<N> integrate(Rhs&& rhs, const State<N>& y0, double t0, double t1, const Options& opt,
                    Stop&& stop) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double span = t1 - t0;
    if (!(span > 0.0) || !std::isfinite(span))
        throw std::invalid_argument("integration span must be positive and finite");

    Result<N> res;
    State<N> y = y0, f0;
    rhs(t0, y, f0);  // a failure at the seed propagates
    if (!detail::finite(f0)) throw DomainError("non-finite derivative at the initial state");
    res.nodes.push_back({t0, y, f0});

    double h = span / 100.0;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    double t = t0;
    double err_prev = 1e-4;

    State<N> k1 = f0, k2, k3, k4, k5, k6, k7, ytmp, y5;

    auto stage = [&](double tc, const State<N>& ys, State<N>& out) -> bool {
        try {
            rhs(tc, ys, out);
        } catch (const DomainError&) {
            return false;
        }
        return detail::finite(out);
    };

    while (t < t1) {
        if (h < opt.underflow_factor * span)
            throw StepUnderflowError("adaptive step collapsed below " +
                                     std::to_string(opt.underflow_factor) + " of the span");
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
        if (t + h >= t1) h = t1 - t;

        bool ok = true;
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        ok = ok && stage(t + c2 * h, ytmp, k2);
        if (ok) {
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            ok = stage(t + c3 * h, ytmp, k3);
        }
        if (ok) {
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            ok = stage(t + c4 * h, ytmp, k4);
        }
        if (ok) {
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            ok = stage(t + c5 * h, ytmp, k5);
        }
        if (ok) {
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                      a65 * k5[i]);
            ok = stage(t + h, ytmp, k6);
        }
        if (ok) {
            for (std::size_t i = 0; i < N; ++i)
                y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                    b6 * k6[i]);
            ok = stage(t + h, y5, k7);  // FSAL stage
        }

        if (!ok) {
            ++res.stats.rejected;
            h *= 0.25;
            continue;
        }

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
            double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            t = (t + h >= t1) ? t1 : t + h;
            y = y5;
            k1 = k7;
            res.nodes.push_back({t, y, k1});
            ++res.stats.steps;
            res.stats.max_error_estimate = std::max(res.stats.max_error_estimate, err);
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.17) * std::pow(err_prev, 0.04);
            h *= std::clamp(fac, 0.2, 10.0);
            err_prev = std::max(err, 1e-4);
            if (stop(y)) {
                res.reason = StopReason::Predicate;
                break;
            }
        } else {
            ++res.stats.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }

    res.t_end = res.nodes.back().t;
    return res;
}

/// Cubic Hermite interpolation on the accepted nodes. t is clamped to the
/// integration range.
template <std::size_t N>
State<N> sample(const std::vector<Node<N>>& nodes, double t) {
    if (nodes.size() == 1 || t <= nodes.front().t) return nodes.front().y;
    if (t >= nodes.back().t) return nodes.back().y;

    std::size_t lo = 0, hi = nodes.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (nodes[mid].t <= t ? lo : hi) = mid;
    }

    const Node<N>&n0 = nodes[lo], &n1 = nodes[lo + 1];
    double h = n1.t - n0.t;
    double s = (t - n0.t) / h;
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2,
           h11 = s3 - s2;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = h00 * n0.y[i] + h * h10 * n0.f[i] + h01 * n1.y[i] + h * h11 * n1.f[i];
    return out;
}

}  // namespace vortexcrit::ode
