#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vortexcrit/analyze.hpp"
#include "vortexcrit/field.hpp"
#include "vortexcrit/frenet.hpp"

using namespace vortexcrit;

namespace {

// Symbolic oracle for the planar strain (x, -y, 0), derived by differentiating
// F = 2xy/sqrt(x^2+y^2) along u: S = -2xy(x^2-y^2)/(x^2+y^2)^2.
double planar_s_oracle(double x, double y) {
    double r2 = x * x + y * y;
    return -2.0 * x * y * (x * x - y * y) / (r2 * r2);
}

// Sampling boxes clear of stagnation for each catalog entry.
Box sample_box(const std::string& name) {
    if (name == "abc") return {{-2, -2, -2}, {2, 2, 2}};
    if (name == "axisym_strain") return {{0.2, 0.2, 0.2}, {2, 2, 2}};
    return {{0.2, 0.2, -1}, {2, 2, 1}};
}

}  // namespace

TEST_CASE("frenet: curvature of the hyperbolic streamline") {
    VelocityField f = VelocityField::catalog("planar_strain_paper");
    FrenetSample s = frenet_sample(f, {2, 1, 0});
    CHECK(s.speed == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    // kappa = 2xy/(x^2+y^2)^{3/2}
    CHECK(s.kappa == doctest::Approx(4.0 / std::pow(5.0, 1.5)).epsilon(1e-14));
    CHECK(s.has_frame);
    CHECK(std::fabs(norm(s.tau) - 1.0) < 1e-15);
    CHECK(std::fabs(norm(s.normal) - 1.0) < 1e-12);
    CHECK(std::fabs(norm(s.binormal) - 1.0) < 1e-12);
    CHECK(std::fabs(dot(s.tau, s.normal)) < 1e-12);
    CHECK(std::fabs(dot(s.tau, s.binormal)) < 1e-12);
    CHECK(std::fabs(dot(s.normal, s.binormal)) < 1e-12);
}

TEST_CASE("frenet: helix curvature and torsion") {
    double c[1] = {1.0};
    VelocityField f = VelocityField::catalog("helical", c);
    FrenetSample s = frenet_sample(f, {1, 0, 0});
    CHECK(s.speed == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.kappa == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.torsion == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("frenet: rigid rotation") {
    VelocityField f = VelocityField::catalog("rigid_rotation");
    FrenetSample s = frenet_sample(f, {1, 0, 0});
    CHECK(s.kappa == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.alpha == 0.0);
    CHECK(s.torsion == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.S == 0.0);
}

TEST_CASE("frenet: straight streamline on the strain axis is degenerate") {
    VelocityField f = VelocityField::catalog("axisym_strain");
    FrenetSample s = frenet_sample(f, {0, 0, 1});
    CHECK(s.kappa == doctest::Approx(0.0));
    CHECK(s.curvature_degenerate);
    CHECK(!s.has_frame);
    CHECK(s.alpha == doctest::Approx(4.0).epsilon(1e-14));  // d/dt |u| = 4 x3 at x3 = 1
    CHECK(s.S == 0.0);
}

TEST_CASE("frenet: stagnation point raises") {
    VelocityField f = VelocityField::catalog("planar_strain_paper");
    CHECK_THROWS_AS(frenet_sample(f, {0, 0, 0}), StagnationError);
    CHECK_THROWS_AS(criterion(f, {0, 0, 0}), StagnationError);
}

TEST_CASE("criterion: closed forms on the planar strains") {
    VelocityField paper = VelocityField::catalog("planar_strain_paper");

    CriterionValue cv = criterion(paper, {2, 1, 0});
    CHECK(cv.S == doctest::Approx(-0.48).epsilon(1e-13));
    CHECK(cv.S == doctest::Approx(planar_s_oracle(2, 1)).epsilon(1e-13));
    // the closed form -tanh(2t)/cosh(2t), t = log(x1/x2)/2 agrees
    double t = 0.5 * std::log(2.0);
    CHECK(cv.S == doctest::Approx(-std::tanh(2 * t) / std::cosh(2 * t)).epsilon(1e-13));

    // symmetry axis of the hyperbola
    CHECK(criterion(paper, {1, 1, 0}).S == 0.0);

    // degenerate straight streamline
    CriterionValue ax = criterion(VelocityField::catalog("axisym_strain"), {0, 0, 1});
    CHECK(ax.S == 0.0);
    CHECK(ax.degenerate);
}

TEST_CASE("criterion_fd agrees with the analytic path") {
    VelocityField paper = VelocityField::catalog("planar_strain_paper");
    CHECK(std::fabs(criterion_fd(paper, {2, 1, 0}, 1e-5) - (-0.48)) < 1e-8);

    VelocityField rot = VelocityField::catalog("rigid_rotation");
    CHECK(std::fabs(criterion_fd(rot, {1, 0, 0}, 1e-5)) < 1e-10);

    CHECK_THROWS_AS(criterion_fd(paper, {2, 1, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("classify_point: spec verdicts") {
    VelocityField stated = VelocityField::catalog("planar_strain_stated");
    PointClass pc = classify_point(stated, {1, 2, 0});
    CHECK(pc.is_stretching);
    CHECK(pc.alpha == doctest::Approx(3.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(pc.criterion_residual == doctest::Approx(-12.0 / 25.0).epsilon(1e-13));
    CHECK(pc.verdict == Verdict::ViolatesNecessaryCondition);

    PointClass ax = classify_point(VelocityField::catalog("axisym_strain"), {0, 0, 1});
    CHECK(ax.is_stretching);
    CHECK(ax.alpha == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(ax.verdict == Verdict::CandidateStable);

    PointClass rot = classify_point(VelocityField::catalog("rigid_rotation"), {1, 0, 0});
    CHECK(!rot.is_stretching);
    CHECK(rot.verdict == Verdict::NotStretching);

    // stagnation maps to the degenerate verdict, not an error
    PointClass st = classify_point(stated, {0, 0, 0});
    CHECK(st.verdict == Verdict::Degenerate);
}

TEST_CASE("acceleration decomposition a = alpha tau + F n at random points") {
    Rng rng(1001);
    for (const std::string& name : VelocityField::catalog_names()) {
        VelocityField f = VelocityField::catalog(name);
        Box box = sample_box(name);
        int used = 0, attempts = 0;
        while (used < 1000 && attempts < 20000) {
            ++attempts;
            Vec3 x = rng.point(box);
            FrenetSample s;
            try {
                s = frenet_sample(f, x);
            } catch (const StagnationError&) {
                continue;
            }
            if (!s.has_frame) continue;
            ++used;
            Vec3 recon = s.alpha * s.tau + s.F * s.normal;
            CHECK(norm(s.accel - recon) <= 1e-10 * std::max(norm(s.accel), 1.0));
            CHECK(std::fabs(s.F - s.kappa * s.speed * s.speed) <=
                  1e-12 * std::max(s.F, 1e-300));
        }
    }
}

TEST_CASE("analytic criterion matches the FD route at random points") {
    Rng rng(1002);
    for (const std::string& name : VelocityField::catalog_names()) {
        VelocityField f = VelocityField::catalog(name);
        Box box = sample_box(name);
        int used = 0, attempts = 0;
        while (used < 100 && attempts < 2000) {
            ++attempts;
            Vec3 x = rng.point(box);
            FrenetSample s;
            try {
                s = frenet_sample(f, x);
            } catch (const StagnationError&) {
                continue;
            }
            if (!s.has_frame) continue;
            ++used;
            double fd = criterion_fd(f, x, 1e-5 * (1.0 + norm(x)));
            CHECK(std::fabs(s.S - fd) <= 1e-5 * (1.0 + std::fabs(s.S)));
        }
    }
}

TEST_CASE("product rule S = dz_kappa speed^2 + 2 kappa alpha") {
    Rng rng(1003);
    VelocityField f = VelocityField::catalog("abc");
    for (int k = 0; k < 200; ++k) {
        Vec3 x = rng.point({{-2, -2, -2}, {2, 2, 2}});
        FrenetSample s;
        try {
            s = frenet_sample(f, x);
        } catch (const StagnationError&) {
            continue;
        }
        double rhs = s.dz_kappa * s.speed * s.speed + 2.0 * s.kappa * s.alpha;
        CHECK(std::fabs(s.S - rhs) <= 1e-9 * std::max(std::fabs(s.S), 1.0));
    }
}

TEST_CASE("parity: u -> -u flips tau, alpha, S and keeps kappa, F") {
    Rng rng(1004);
    for (const std::string& name : VelocityField::catalog_names()) {
        VelocityField f = VelocityField::catalog(name);
        VelocityField g = f.scaled(-1.0);
        Box box = sample_box(name);
        int used = 0, attempts = 0;
        while (used < 50 && attempts < 2000) {
            ++attempts;
            Vec3 x = rng.point(box);
            FrenetSample a, b;
            try {
                a = frenet_sample(f, x);
                b = frenet_sample(g, x);
            } catch (const StagnationError&) {
                continue;
            }
            if (!a.has_frame) continue;
            ++used;
            CHECK(norm(a.tau + b.tau) < 1e-12);
            CHECK(b.kappa == doctest::Approx(a.kappa).epsilon(1e-12));
            CHECK(b.F == doctest::Approx(a.F).epsilon(1e-12));
            CHECK(std::fabs(b.alpha + a.alpha) <= 1e-12 * std::max(1.0, std::fabs(a.alpha)));
            CHECK(std::fabs(b.S + a.S) <= 1e-10 * std::max(1.0, std::fabs(a.S)));
        }
        CHECK(used == 50);
    }
}

TEST_CASE("scaling: u -> lambda u rescales F, alpha, S by lambda^2") {
    Rng rng(1005);
    VelocityField f = VelocityField::catalog("abc");
    for (double lambda : {0.5, 3.0}) {
        VelocityField g = f.scaled(lambda);
        int used = 0, attempts = 0;
        while (used < 50 && attempts < 2000) {
            ++attempts;
            Vec3 x = rng.point({{-2, -2, -2}, {2, 2, 2}});
            FrenetSample a, b;
            try {
                a = frenet_sample(f, x);
                b = frenet_sample(g, x);
            } catch (const StagnationError&) {
                continue;
            }
            if (!a.has_frame || std::fabs(a.S) < 1e-3) continue;
            ++used;
            double l2 = lambda * lambda;
            CHECK(norm(b.tau - a.tau) < 1e-12);
            CHECK(b.kappa == doctest::Approx(a.kappa).epsilon(1e-11));
            CHECK(b.torsion == doctest::Approx(a.torsion).epsilon(1e-11));
            CHECK(b.F == doctest::Approx(l2 * a.F).epsilon(1e-11));
            CHECK(b.alpha == doctest::Approx(l2 * a.alpha).epsilon(1e-11));
            CHECK(b.S == doctest::Approx(l2 * a.S).epsilon(1e-10));

            // classification is invariant under positive rescaling
            CHECK(classify_point(f, x).verdict == classify_point(g, x).verdict);
        }
    }
}
