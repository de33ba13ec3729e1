#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortexcrit/analyze.hpp"
#include "vortexcrit/field.hpp"
#include "vortexcrit/flow.hpp"

using namespace vortexcrit;

TEST_CASE("streamline: closed-form endpoints of linear fields") {
    VelocityField paper = VelocityField::catalog("planar_strain_paper");
    Streamline s = integrate_streamline(paper, {2, 1, 0});
    const StreamSample& last = s.samples.back();
    CHECK(last.t == doctest::Approx(1.0));
    CHECK(last.x.x == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-8));
    CHECK(last.x.y == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    CHECK(std::fabs(last.x.z) < 1e-12);

    VelocityField axi = VelocityField::catalog("axisym_strain");
    Streamline a = integrate_streamline(axi, {0, 0, 1});
    CHECK(a.samples.back().x.z == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
    CHECK(a.samples.back().z == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-7));
}

TEST_CASE("streamline: rigid rotation returns after one period") {
    VelocityField rot = VelocityField::catalog("rigid_rotation");
    IntegratorConfig cfg;
    cfg.t_span = 2.0 * M_PI;
    Streamline s = integrate_streamline(rot, {1, 0, 0}, cfg);
    const StreamSample& last = s.samples.back();
    CHECK(norm(last.x - Vec3{1, 0, 0}) < 1e-7);
    CHECK(last.z == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("streamline: samples are monotone and unit-speed in z") {
    VelocityField rot = VelocityField::catalog("rigid_rotation");
    IntegratorConfig cfg;
    cfg.t_span = M_PI / 2.0;
    cfg.sample_count = 501;
    Streamline s = integrate_streamline(rot, {1, 0, 0}, cfg);
    for (std::size_t i = 1; i < s.samples.size(); ++i) {
        CHECK(s.samples[i].t > s.samples[i - 1].t);
        CHECK(s.samples[i].z > s.samples[i - 1].z);
        double chord = norm(s.samples[i].x - s.samples[i - 1].x);
        double dz = s.samples[i].z - s.samples[i - 1].z;
        CHECK(std::fabs(chord / dz - 1.0) < 1e-6);
    }
}

TEST_CASE("streamline: seed at a stagnation point raises") {
    VelocityField paper = VelocityField::catalog("planar_strain_paper");
    CHECK_THROWS_AS(integrate_streamline(paper, {0, 0, 0}), StagnationError);
}

TEST_CASE("streamline: decaying trajectory stops with stagnation status") {
    VelocityField paper = VelocityField::catalog("planar_strain_paper");
    IntegratorConfig cfg;
    cfg.t_span = 40.0;
    Streamline s = integrate_streamline(paper, {0, 1, 0}, cfg);  // speed e^{-t}
    CHECK(s.stagnation_approach);
    CHECK(s.t_end < cfg.t_span);
}

TEST_CASE("streamline: singular user field fails loudly") {
    VelocityField f = parse_field("-1/x, 0, 0");  // reaches x = 0 in finite time
    IntegratorConfig cfg;
    cfg.t_span = 1.0;
    CHECK_THROWS_AS(integrate_streamline(f, {1, 0, 0}, cfg), Error);
}

TEST_CASE("arc length map: analytic forms and round trips") {
    VelocityField rot = VelocityField::catalog("rigid_rotation");
    IntegratorConfig cfg;
    cfg.t_span = 3.0;
    Streamline s = integrate_streamline(rot, {1, 0, 0}, cfg);
    ArcLengthMap map = arc_length_map(s);
    CHECK(map.z_of_t(1.7) == doctest::Approx(1.7).epsilon(1e-10));  // unit speed

    // interior points carry the cubic-Hermite interpolation error, O(h^4)
    VelocityField axi = VelocityField::catalog("axisym_strain");
    Streamline a = integrate_streamline(axi, {0, 0, 1});
    ArcLengthMap amap = arc_length_map(a);
    CHECK(amap.z_of_t(0.5) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-6));

    for (int k = 1; k < 20; ++k) {
        double t = a.t_end * k / 20.0;
        CHECK(std::fabs(amap.t_of_z(amap.z_of_t(t)) - t) <= 1e-9 * a.t_end);
    }
}

TEST_CASE("arc length equals the quadrature of speed") {
    // Richardson-extrapolated composite Simpson on the dense speed samples.
    VelocityField abc = VelocityField::catalog("abc");
    IntegratorConfig cfg;
    cfg.t_span = 2.0;
    cfg.sample_count = 401;
    Streamline s = integrate_streamline(abc, {0.1, 0.2, 0.3}, cfg);

    auto simpson = [&](int stride) {
        double h = (s.samples[stride].t - s.samples[0].t);
        double acc = 0.0;
        for (std::size_t i = 0; i + 2 * stride < s.samples.size(); i += 2 * stride)
            acc += h / 3.0 *
                   (s.samples[i].speed + 4.0 * s.samples[i + stride].speed +
                    s.samples[i + 2 * stride].speed);
        return acc;
    };
    double fine = simpson(1), coarse = simpson(2);
    double quad = (16.0 * fine - coarse) / 15.0;
    CHECK(s.samples.back().z == doctest::Approx(quad).epsilon(1e-7));
}

TEST_CASE("flow map Jacobian: diagonal strain and rotation") {
    VelocityField axi = VelocityField::catalog("axisym_strain");
    Mat3 j = flow_map_jacobian(axi, {0.3, 0.4, 0.5}, 1.0);
    CHECK(j[0][0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    CHECK(j[1][1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    CHECK(j[2][2] == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
    CHECK(std::fabs(j[0][1]) < 1e-9);

    VelocityField rot = VelocityField::catalog("rigid_rotation");
    Mat3 r = flow_map_jacobian(rot, {1, 0, 0}, M_PI / 2.0);
    CHECK(std::fabs(r[0][0]) < 1e-8);
    CHECK(r[0][1] == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(r[1][0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r[2][2] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(flow_map_jacobian(axi, {0.3, 0.4, 0.5}, -1.0), std::invalid_argument);
}

TEST_CASE("flow map Jacobian matches the matrix exponential on linear fields") {
    struct Entry {
        const char* name;
        double diag[3];
    };
    const Entry entries[] = {{"planar_strain_paper", {1, -1, 0}},
                             {"planar_strain_stated", {-1, 1, 0}},
                             {"axisym_strain", {-1, -1, 2}}};
    for (const Entry& e : entries) {
        VelocityField f = VelocityField::catalog(e.name);
        for (double t : {0.5, 1.0, 2.0}) {
            Mat3 a;
            for (int i = 0; i < 3; ++i) a[i][i] = t * e.diag[i];
            Mat3 ref = expm(a);
            Mat3 j = flow_map_jacobian(f, {0.9, 1.1, 0.7}, t);
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) CHECK(std::fabs(j[i][k] - ref[i][k]) <= 1e-7);
        }
    }
}

TEST_CASE("flow map: volume is conserved for divergence-free fields") {
    VelocityField abc = VelocityField::catalog("abc");
    for (double t : {0.5, 1.0, 2.0}) {
        Mat3 j = flow_map_jacobian(abc, {0.1, 0.2, 0.3}, t);
        CHECK(std::fabs(det(j) - 1.0) <= 1e-6);
    }
}

TEST_CASE("flow map: det J follows the exponential of the integrated divergence") {
    // constant divergence 1 - 2 + 3 = 2, so det J(t) = e^{2t}
    VelocityField f = parse_field("x, -2*y, 3*z");
    for (double t : {0.3, 0.8}) {
        Mat3 j = flow_map_jacobian(f, {0.5, 0.5, 0.5}, t);
        CHECK(det(j) == doctest::Approx(std::exp(2.0 * t)).epsilon(1e-7));
    }
}

TEST_CASE("arc length map: non-monotone samples surface as an internal error") {
    VelocityField rot = VelocityField::catalog("rigid_rotation");
    Streamline s = integrate_streamline(rot, {1, 0, 0});
    REQUIRE(s.nodes.size() >= 2);
    s.nodes[1].y[3] = s.nodes[0].y[3] - 1.0;  // corrupt the arc-length channel
    CHECK_THROWS_AS(arc_length_map(s), Error);

    Streamline stub;
    stub.nodes.resize(1);
    CHECK_THROWS_AS(arc_length_map(stub), std::invalid_argument);
}

TEST_CASE("cauchy transport: strain amplification") {
    VelocityField axi = VelocityField::catalog("axisym_strain");
    Vec3 w1 = cauchy_vorticity(axi, {1, 0, 0}, {0, 1, 0}, 1.0);
    CHECK(w1.y == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    CHECK(std::fabs(w1.x) < 1e-9);

    Vec3 w2 = cauchy_vorticity(axi, {0, 0, 1}, {0, 0, 1}, 1.0);
    CHECK(w2.z == doctest::Approx(std::exp(2.0)).epsilon(1e-8));

    Vec3 w0 = cauchy_vorticity(axi, {1, 0, 0}, {0.3, -0.2, 0.7}, 0.0);
    CHECK(w0.x == 0.3);
    CHECK(w0.y == -0.2);
    CHECK(w0.z == 0.7);
}

TEST_CASE("disk probe: perpendicularity holds on the straight axis") {
    VelocityField axi = VelocityField::catalog("axisym_strain");
    DiskProbeConfig cfg;
    cfg.integ.t_span = 1.0;
    DiskProbeResult r = disk_probe(axi, {0, 0, 1}, cfg);

    // degenerate curvature: deterministic completion must be the x-y plane
    CHECK(std::fabs(std::fabs(r.n0.x) - 1.0) < 1e-14);
    CHECK(std::fabs(r.n0.z) < 1e-14);

    CHECK(r.series.front().defect_n == 0.0);
    CHECK(r.series.front().defect_b == 0.0);
    CHECK(r.series.front().axis_stretch == 1.0);
    double prev = 0.0;
    for (const DiskSample& p : r.series) {
        CHECK(std::fabs(p.defect_n) <= 1e-7);
        CHECK(std::fabs(p.defect_b) <= 1e-7);
        CHECK(p.axis_stretch > prev);  // alpha > 0 all along the axis
        prev = p.axis_stretch;
    }
}

TEST_CASE("disk probe: planar strain tilts the disk (closed-form check)") {
    VelocityField stated = VelocityField::catalog("planar_strain_stated");
    DiskProbeConfig cfg;
    cfg.integ.t_span = 1.0;
    DiskProbeResult r = disk_probe(stated, {1, 2, 0}, cfg);

    // Frenet basis at the seed: n0 = (2,1,0)/sqrt(5), b0 = (0,0,-1)
    CHECK(r.n0.x == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(r.n0.y == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(r.b0.z == doctest::Approx(-1.0).epsilon(1e-12));

    // Closed-form linear-flow oracle: J = diag(e^{-t}, e^{t}, 1),
    // eta(t) = (e^{-t}, 2 e^{t}, 0), tau = unit(-e^{-t}, 2 e^{t}, 0).
    double t = 1.0;
    Vec3 jn{std::exp(-t) * r.n0.x, std::exp(t) * r.n0.y, 0.0};
    Vec3 tau = normalized({-std::exp(-t), 2.0 * std::exp(t), 0.0});
    double expected = dot(normalized(jn), tau);

    const DiskSample& last = r.series.back();
    CHECK(last.t == doctest::Approx(1.0));
    CHECK(std::fabs(last.defect_n - expected) <= 1e-7);
    CHECK(std::fabs(last.defect_n) > 1e-2);  // decisively tilted
}

TEST_CASE("disk probe: rigid rotation keeps the disk perpendicular") {
    VelocityField rot = VelocityField::catalog("rigid_rotation");
    DiskProbeConfig cfg;
    cfg.integ.t_span = 2.0;
    DiskProbeResult r = disk_probe(rot, {1, 0, 0}, cfg);
    for (const DiskSample& p : r.series) {
        CHECK(std::fabs(p.defect_n) <= 1e-9);
        CHECK(std::fabs(p.defect_b) <= 1e-9);
        CHECK(p.axis_stretch == doctest::Approx(1.0).epsilon(5e-7));
    }
}

TEST_CASE("disk probe: finite-radius markers agree with the Jacobian to O(r)") {
    auto ring_dev = [](const VelocityField& f, const Vec3& seed, double radius) {
        DiskProbeConfig cfg;
        cfg.integ.t_span = 1.0;
        cfg.integ.sample_count = 21;
        cfg.integ.rel_tol = 1e-11;
        cfg.integ.abs_tol = 1e-13;
        cfg.marker_count = 8;
        cfg.marker_radius = radius;
        DiskProbeResult r = disk_probe(f, seed, cfg);
        REQUIRE(!r.ring.empty());
        double worst = 0.0;
        for (const RingSample& p : r.ring) worst = std::max(worst, p.max_dev_from_jacobian);
        return worst;
    };

    // Linear field: the flow map is exactly linear, so the marker and
    // Jacobian routes agree to integration accuracy at any radius.
    VelocityField stated = VelocityField::catalog("planar_strain_stated");
    CHECK(ring_dev(stated, {1, 2, 0}, 1e-3) <= 1e-5);
    CHECK(ring_dev(stated, {1, 2, 0}, 1e-1) <= 1e-5);

    // Nonlinear field: the deviation carries a genuine O(r) truncation term.
    VelocityField abc = VelocityField::catalog("abc");
    double d_small = ring_dev(abc, {0.3, 0.7, 0.1}, 1e-2);
    double d_large = ring_dev(abc, {0.3, 0.7, 0.1}, 1e-1);
    CHECK(d_small <= 1.0 * 1e-2);
    CHECK(d_large <= 1.0 * 1e-1);
    CHECK(d_small <= 0.25 * d_large + 1e-6);
}

namespace {

// Derivative at z_c of the Lagrange polynomial through five (z_j, f_j) pairs.
double lagrange5_deriv(const double* z, const double* f, double zc) {
    double acc = 0.0;
    for (int j = 0; j < 5; ++j) {
        double num = 0.0;
        for (int m = 0; m < 5; ++m) {
            if (m == j) continue;
            double prod = 1.0;
            for (int k = 0; k < 5; ++k) {
                if (k == j || k == m) continue;
                prod *= zc - z[k];
            }
            num += prod;
        }
        double den = 1.0;
        for (int k = 0; k < 5; ++k)
            if (k != j) den *= z[j] - z[k];
        acc += f[j] * num / den;
    }
    return acc;
}

double f_magnitude(const VelocityField& field, const Vec3& x) {
    FieldJet jet = field.jet(x);
    Vec3 a = jet.grad_u * jet.u;
    double g = norm2(a) - dot(a, jet.u) * dot(a, jet.u) / norm2(jet.u);
    return std::sqrt(std::max(g, 0.0));
}

}  // namespace

TEST_CASE("sampled F(z) differentiated along the streamline matches pointwise S") {
    struct Probe {
        const char* name;
        Vec3 seed;
        double t_span;
    };
    const Probe probes[] = {{"planar_strain_paper", {2, 1, 0}, 0.6},
                            {"helical", {1, 0.4, 0}, 2.0},
                            {"abc", {0.3, 0.7, 0.1}, 1.5}};
    for (const Probe& p : probes) {
        VelocityField f = VelocityField::catalog(p.name);
        IntegratorConfig cfg;
        cfg.t_span = p.t_span;
        cfg.sample_count = 101;
        Streamline s = integrate_streamline(f, p.seed, cfg);

        std::vector<double> zs, fs;
        for (const StreamSample& smp : s.samples) {
            zs.push_back(smp.z);
            fs.push_back(f_magnitude(f, smp.x));
        }
        for (std::size_t i = 2; i + 2 < zs.size(); i += 5) {
            double dfdz = lagrange5_deriv(&zs[i - 2], &fs[i - 2], zs[i]);
            double s_point = criterion(f, s.samples[i].x).S;
            CHECK(std::fabs(dfdz - s_point) <= 1e-5 * (1.0 + std::fabs(s_point)));
        }
    }
}
