#include "vortexcrit/field.hpp"

#include <cctype>
#include <cfloat>
#include <cmath>
#include <cstdio>

namespace vortexcrit {

namespace {

ExprPtr C(double v) { return expr_const(v); }
ExprPtr X() { return expr_var(0); }
ExprPtr Y() { return expr_var(1); }
ExprPtr Z() { return expr_var(2); }
ExprPtr neg(ExprPtr e) { return expr_unary(UnaryFn::Neg, std::move(e)); }
ExprPtr add(ExprPtr a, ExprPtr b) { return expr_bin(BinOp::Add, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return expr_bin(BinOp::Mul, std::move(a), std::move(b)); }
ExprPtr sq(ExprPtr e) { return expr_pow(std::move(e), 2.0); }

std::string fmt_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void throw_nonfinite(const ExprNode& offender, const char* what) {
    throw DomainError(std::string("domain violation: non-finite ") + what +
                      " in subexpression '" + to_string(offender) + "' at offset " +
                      std::to_string(offender.pos));
}

}  // namespace

VelocityField VelocityField::parse(std::string_view source) {
    VelocityField f;
    f.components_ = parse_components(source);
    // normalized single-line description (field files may carry newlines)
    std::string desc;
    desc.reserve(source.size());
    for (char c : source) desc += std::isspace(static_cast<unsigned char>(c)) ? ' ' : c;
    std::size_t b = desc.find_first_not_of(' ');
    std::size_t e = desc.find_last_not_of(' ');
    f.description_ = "expr:" + (b == std::string::npos ? "" : desc.substr(b, e - b + 1));
    return f;
}

VelocityField parse_field(std::string_view source) { return VelocityField::parse(source); }

std::vector<std::string> VelocityField::catalog_names() {
    return {"planar_strain_paper", "planar_strain_stated", "axisym_strain",
            "rigid_rotation",      "helical",              "abc"};
}

VelocityField VelocityField::catalog(std::string_view name, std::span<const double> params) {
    auto expect_params = [&](std::size_t n) {
        if (!params.empty() && params.size() != n)
            throw Error("catalog field '" + std::string(name) + "' takes " + std::to_string(n) +
                        " parameter(s), got " + std::to_string(params.size()));
    };

    VelocityField f;
    f.divergence_free_ = true;
    f.description_ = "catalog:" + std::string(name);

    // p = -(x^2 + y^2)/2, the steady pressure of both planar strains.
    auto planar_pressure = [] { return mul(C(-0.5), add(sq(X()), sq(Y()))); };
    // p = +(x^2 + y^2)/2 balances the centripetal acceleration of (-y, x, c).
    auto rotation_pressure = [] { return mul(C(0.5), add(sq(X()), sq(Y()))); };

    if (name == "planar_strain_paper") {
        expect_params(0);
        f.components_ = {X(), neg(Y()), C(0.0)};
        f.pressure_ = planar_pressure();
    } else if (name == "planar_strain_stated") {
        expect_params(0);
        f.components_ = {neg(X()), Y(), C(0.0)};
        f.pressure_ = planar_pressure();
    } else if (name == "axisym_strain") {
        expect_params(0);
        f.components_ = {neg(X()), neg(Y()), mul(C(2.0), Z())};
        f.pressure_ = mul(C(-0.5), add(add(sq(X()), sq(Y())), mul(C(4.0), sq(Z()))));
    } else if (name == "rigid_rotation") {
        expect_params(0);
        f.components_ = {neg(Y()), X(), C(0.0)};
        f.pressure_ = rotation_pressure();
    } else if (name == "helical") {
        expect_params(1);
        double c = params.empty() ? 1.0 : params[0];
        f.components_ = {neg(Y()), X(), C(c)};
        f.pressure_ = rotation_pressure();
        f.description_ += "(" + fmt_param(c) + ")";
    } else if (name == "abc") {
        expect_params(3);
        double A = params.empty() ? 1.0 : params[0];
        double B = params.empty() ? 1.0 : params[1];
        double Cc = params.empty() ? 1.0 : params[2];
        ExprPtr u1 = add(mul(C(A), expr_unary(UnaryFn::Sin, Z())),
                         mul(C(Cc), expr_unary(UnaryFn::Cos, Y())));
        ExprPtr u2 = add(mul(C(B), expr_unary(UnaryFn::Sin, X())),
                         mul(C(A), expr_unary(UnaryFn::Cos, Z())));
        ExprPtr u3 = add(mul(C(Cc), expr_unary(UnaryFn::Sin, Y())),
                         mul(C(B), expr_unary(UnaryFn::Cos, X())));
        // Beltrami field (curl u = u), so the steady pressure is -|u|^2/2.
        f.pressure_ = mul(C(-0.5), add(add(sq(u1), sq(u2)), sq(u3)));
        f.components_ = {std::move(u1), std::move(u2), std::move(u3)};
        f.description_ +=
            "(" + fmt_param(A) + "," + fmt_param(B) + "," + fmt_param(Cc) + ")";
    } else {
        throw Error("unknown catalog field '" + std::string(name) + "'");
    }
    return f;
}

Vec3 VelocityField::velocity(const Vec3& x) const {
    Vec3 u{eval(*components_[0], x), eval(*components_[1], x), eval(*components_[2], x)};
    if (!is_finite(u)) {
        for (const auto& c : components_)
            if (const ExprNode* hit = find_nonfinite(*c, x, false)) throw_nonfinite(*hit, "value");
        throw DomainError("domain violation: non-finite velocity");
    }
    return u;
}

FieldJet VelocityField::jet(const Vec3& x) const {
    FieldJet out;
    for (int i = 0; i < 3; ++i) {
        Jet2 j = eval_jet2(*components_[i], x);
        if (!is_finite(j)) {
            if (const ExprNode* hit = find_nonfinite(*components_[i], x, true))
                throw_nonfinite(*hit, "jet");
            throw DomainError("domain violation: non-finite jet");
        }
        out.u[i] = j.v;
        for (int a = 0; a < 3; ++a) {
            out.grad_u[i][a] = j.g[a];
            for (int b = 0; b < 3; ++b) out.hess_u[i][a][b] = j.h[a][b];
        }
    }
    return out;
}

FieldJet VelocityField::jet_fd(const Vec3& x) const {
    return jet_fd(x, std::cbrt(DBL_EPSILON) * (1.0 + norm(x)));
}

FieldJet VelocityField::jet_fd(const Vec3& x, double h) const {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");

    FieldJet out;
    out.u = velocity(x);

    Vec3 plus[3], minus[3];
    for (int a = 0; a < 3; ++a) {
        Vec3 xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        plus[a] = velocity(xp);
        minus[a] = velocity(xm);
        for (int i = 0; i < 3; ++i) {
            out.grad_u[i][a] = (plus[a][i] - minus[a][i]) / (2.0 * h);
            out.hess_u[i][a][a] = (plus[a][i] - 2.0 * out.u[i] + minus[a][i]) / (h * h);
        }
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            Vec3 xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[a] += h; xpp[b] += h;
            xpm[a] += h; xpm[b] -= h;
            xmp[a] -= h; xmp[b] += h;
            xmm[a] -= h; xmm[b] -= h;
            Vec3 upp = velocity(xpp), upm = velocity(xpm), ump = velocity(xmp),
                 umm = velocity(xmm);
            for (int i = 0; i < 3; ++i) {
                double v = (upp[i] - upm[i] - ump[i] + umm[i]) / (4.0 * h * h);
                out.hess_u[i][a][b] = v;
                out.hess_u[i][b][a] = v;
            }
        }
    }
    return out;
}

ScalarJet VelocityField::pressure_jet(const Vec3& x) const {
    if (!pressure_) throw Error("field '" + description_ + "' has no pressure attached");
    Jet2 j = eval_jet2(*pressure_, x);
    if (!is_finite(j)) {
        if (const ExprNode* hit = find_nonfinite(*pressure_, x, true))
            throw_nonfinite(*hit, "pressure jet");
        throw DomainError("domain violation: non-finite pressure");
    }
    ScalarJet out;
    out.value = j.v;
    for (int a = 0; a < 3; ++a) {
        out.grad[a] = j.g[a];
        for (int b = 0; b < 3; ++b) out.hess[a][b] = j.h[a][b];
    }
    return out;
}

VelocityField VelocityField::scaled(double lambda) const {
    VelocityField f;
    for (int i = 0; i < 3; ++i) f.components_[i] = mul(C(lambda), components_[i]);
    if (pressure_) f.pressure_ = mul(C(lambda * lambda), pressure_);
    f.divergence_free_ = divergence_free_;
    f.description_ = "scale(" + fmt_param(lambda) + "):" + description_;
    return f;
}

VelocityField catalog(std::string_view name, std::span<const double> params) {
    return VelocityField::catalog(name, params);
}

FieldJet eval_jet(const VelocityField& f, const Vec3& x) { return f.jet(x); }
FieldJet eval_jet_fd(const VelocityField& f, const Vec3& x, double h) { return f.jet_fd(x, h); }

}  // namespace vortexcrit
