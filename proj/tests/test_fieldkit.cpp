#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expr_corpus.hpp"
#include "vortexcrit/analyze.hpp"
#include "vortexcrit/field.hpp"

using namespace vortexcrit;

TEST_CASE("parse: direct substitution") {
    VelocityField f = parse_field("-x, y, 0");
    Vec3 u = f.velocity({1, 2, 3});
    CHECK(u.x == -1.0);
    CHECK(u.y == 2.0);
    CHECK(u.z == 0.0);

    VelocityField g = parse_field("-x, -y, 2*z");
    Vec3 v = g.velocity({0, 0, 1});
    CHECK(v.x == 0.0);
    CHECK(v.y == 0.0);
    CHECK(v.z == 2.0);
}

TEST_CASE("parse: malformed input reports the offset") {
    CHECK_THROWS_AS(parse_field("x + "), SyntaxError);
    try {
        parse_field("x + ");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 3);
        CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
    }

    try {
        parse_field("q, 0, 0");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 0);
        CHECK(std::string(e.what()).find("unknown identifier 'q'") != std::string::npos);
    }

    // only two components
    CHECK_THROWS_AS(parse_field("x, y"), SyntaxError);
    // trailing garbage
    CHECK_THROWS_AS(parse_field("x, y, z, 1"), SyntaxError);
}

TEST_CASE("parse: '^' exponent must be constant") {
    try {
        parse_field("x^y, 0, 0");
        CHECK(false);
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 2);
        CHECK(std::string(e.what()).find("constant") != std::string::npos);
    }
    // constant-foldable exponents are fine, including parenthesized negatives
    VelocityField f = parse_field("x^(-2), x^(1/2), x^2");
    Vec3 u = f.velocity({4, 0, 0});
    CHECK(u.x == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(u.y == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(u.z == 16.0);
}

TEST_CASE("eval_jet: linear fields are exact") {
    VelocityField f = parse_field("-x, y, 0");
    FieldJet j = eval_jet(f, {1, 2, 0});
    CHECK(j.u.x == -1.0);
    CHECK(j.u.y == 2.0);
    CHECK(j.grad_u[0][0] == -1.0);
    CHECK(j.grad_u[1][1] == 1.0);
    CHECK(j.grad_u[2][2] == 0.0);
    CHECK(j.grad_u[0][1] == 0.0);
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(j.hess_u[i][a][b] == 0.0);
}

TEST_CASE("eval_jet: sine Taylor data at the origin") {
    VelocityField f = parse_field("sin(x), 0, 0");
    FieldJet j = eval_jet(f, {0, 0, 0});
    CHECK(j.u.x == 0.0);
    CHECK(j.grad_u[0][0] == 1.0);
    CHECK(j.hess_u[0][0][0] == 0.0);
}

TEST_CASE("eval_jet: helical field rows") {
    VelocityField f = parse_field("-y, x, 1");
    FieldJet j = eval_jet(f, {1, 0, 0});
    CHECK(j.u.x == 0.0);
    CHECK(j.u.y == 1.0);
    CHECK(j.u.z == 1.0);
    CHECK(j.grad_u[0][0] == 0.0);
    CHECK(j.grad_u[0][1] == -1.0);
    CHECK(j.grad_u[1][0] == 1.0);
    CHECK(j.grad_u[1][1] == 0.0);
    CHECK(j.grad_u[2][2] == 0.0);
}

TEST_CASE("eval_jet: domain violation names the subexpression") {
    VelocityField f = parse_field("log(x), 0, 0");
    CHECK_THROWS_AS(f.velocity({-1, 0, 0}), DomainError);
    try {
        f.jet({-1, 0, 0});
        CHECK(false);
    } catch (const DomainError& e) {
        std::string msg = e.what();
        CHECK(msg.find("log(x)") != std::string::npos);
        CHECK(msg.find("offset 0") != std::string::npos);
    }
    // sqrt is value-finite but derivative-singular at 0
    VelocityField g = parse_field("sqrt(x), 0, 0");
    CHECK_THROWS_AS(g.jet({0, 0, 0}), DomainError);
}

TEST_CASE("eval_jet_fd: agreement and preconditions") {
    // linear field: FD is exact up to the subtraction roundoff floor eps|x|/h
    VelocityField lin = parse_field("-x, y, 0");
    FieldJet fd = lin.jet_fd({1, 2, 0}, 1e-5);
    CHECK(fd.grad_u[0][0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(fd.grad_u[1][1] == doctest::Approx(1.0).epsilon(1e-10));

    VelocityField e = parse_field("exp(x), 0, 0");
    FieldJet j = e.jet_fd({0, 0, 0}, 1e-5);
    CHECK(std::fabs(j.grad_u[0][0] - 1.0) < 1e-9);

    CHECK_THROWS_AS(lin.jet_fd({0, 0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lin.jet_fd({0, 0, 0}, -1e-3), std::invalid_argument);
}

TEST_CASE("catalog: entries, pressure, errors") {
    VelocityField axi = VelocityField::catalog("axisym_strain");
    Vec3 u = axi.velocity({0, 0, 1});
    CHECK(u.z == 2.0);
    CHECK(axi.divergence_free());
    CHECK(axi.has_pressure());

    FieldJet j = VelocityField::catalog("planar_strain_stated").jet({0.3, 0.7, 0.1});
    CHECK(std::fabs(trace(j.grad_u)) <= 1e-12);

    double abc_params[3] = {1, 1, 1};
    VelocityField abc = VelocityField::catalog("abc", abc_params);
    Vec3 u0 = abc.velocity({0, 0, 0});
    CHECK(u0.x == 1.0);
    CHECK(u0.y == 1.0);
    CHECK(u0.z == 1.0);

    CHECK_THROWS_AS(VelocityField::catalog("nonesuch"), Error);
    double two[2] = {1, 2};
    CHECK_THROWS_AS(VelocityField::catalog("abc", two), Error);
    CHECK_THROWS_AS(VelocityField::catalog("helical", two), Error);
}

TEST_CASE("catalog: divergence-free flag holds at sampled points") {
    Rng rng(17);
    for (const std::string& name : VelocityField::catalog_names()) {
        VelocityField f = VelocityField::catalog(name);
        REQUIRE(f.divergence_free());
        for (int k = 0; k < 50; ++k) {
            Vec3 x = rng.point({{-2, -2, -2}, {2, 2, 2}});
            FieldJet j = f.jet(x);
            CHECK(std::fabs(trace(j.grad_u)) <= 1e-12);
        }
    }
}

TEST_CASE("analytic Hessians are symmetric bitwise") {
    Rng rng(23);
    for (const char* src : expression_corpus()) {
        VelocityField f = parse_field(src);
        for (int k = 0; k < 20; ++k) {
            Vec3 x = rng.point({{-2, -2, -2}, {2, 2, 2}});
            FieldJet j;
            try {
                j = f.jet(x);
            } catch (const DomainError&) {
                continue;
            }
            for (int i = 0; i < 3; ++i)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) CHECK(j.hess_u[i][a][b] == j.hess_u[i][b][a]);
        }
    }
}

TEST_CASE("AD vs FD over the corpus and catalog") {
    std::vector<VelocityField> fields;
    for (const char* src : expression_corpus()) fields.push_back(parse_field(src));
    for (const std::string& name : VelocityField::catalog_names())
        fields.push_back(VelocityField::catalog(name));

    Rng rng(31);
    for (const VelocityField& f : fields) {
        int used = 0;
        int attempts = 0;
        while (used < 100 && attempts < 1000) {
            ++attempts;
            Vec3 x = rng.point({{-2, -2, -2}, {2, 2, 2}});
            FieldJet ad, fd;
            try {
                ad = f.jet(x);
                fd = f.jet_fd(x);
            } catch (const DomainError&) {
                continue;  // outside the field's domain
            }
            ++used;
            double gref = std::max(1.0, frobenius_norm(ad.grad_u));
            double href = 1.0;
            double gdev = 0.0, hdev = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int a = 0; a < 3; ++a) {
                    gdev = std::max(gdev, std::fabs(ad.grad_u[i][a] - fd.grad_u[i][a]));
                    for (int b = 0; b < 3; ++b) {
                        hdev = std::max(hdev, std::fabs(ad.hess_u[i][a][b] - fd.hess_u[i][a][b]));
                        href = std::max(href, std::fabs(ad.hess_u[i][a][b]));
                    }
                }
            CHECK(gdev / gref <= 1e-6);
            CHECK(hdev / href <= 1e-4);
        }
        CHECK(used == 100);
    }
}

TEST_CASE("parser round-trip: printed form re-evaluates bitwise") {
    Rng rng(47);
    for (const char* src : expression_corpus()) {
        VelocityField f = parse_field(src);
        std::string printed = to_string(f.component(0)) + "," + to_string(f.component(1)) + "," +
                              to_string(f.component(2));
        VelocityField g = parse_field(printed);
        for (int k = 0; k < 50; ++k) {
            Vec3 x = rng.point({{-2, -2, -2}, {2, 2, 2}});
            for (int c = 0; c < 3; ++c) {
                double a = 0.0, b = 0.0;
                bool a_ok = true, b_ok = true;
                try {
                    a = eval(*f.component(c), x);
                } catch (const DomainError&) {
                    a_ok = false;
                }
                try {
                    b = eval(*g.component(c), x);
                } catch (const DomainError&) {
                    b_ok = false;
                }
                CHECK(a_ok == b_ok);
                if (a_ok && b_ok && std::isfinite(a) && std::isfinite(b)) CHECK(a == b);
            }
        }
    }
}

TEST_CASE("scaled fields evaluate as lambda * u") {
    VelocityField f = VelocityField::catalog("abc");
    VelocityField g = f.scaled(-2.5);
    Vec3 x{0.3, -0.4, 1.1};
    Vec3 a = f.velocity(x), b = g.velocity(x);
    CHECK(b.x == doctest::Approx(-2.5 * a.x).epsilon(1e-15));
    CHECK(b.y == doctest::Approx(-2.5 * a.y).epsilon(1e-15));
    CHECK(b.z == doctest::Approx(-2.5 * a.z).epsilon(1e-15));
    CHECK(g.divergence_free());
    CHECK(g.has_pressure());
}
