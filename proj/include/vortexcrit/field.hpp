#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vortexcrit/expr.hpp"
#include "vortexcrit/vec.hpp"

namespace vortexcrit {

/// Velocity value with exact first and second spatial derivatives.
/// grad_u[i][j] = d_j u_i, hess_u[i][j][k] = d_j d_k u_i.
struct FieldJet {
    Vec3 u;
    Mat3 grad_u;
    Tens3 hess_u;
};

/// Scalar value with gradient and Hessian (used for known pressure fields).
struct ScalarJet {
    double value = 0.0;
    Vec3 grad;
    Mat3 hess;
};

/// A steady velocity field: either a catalog entry or three parsed DSL
/// expressions in x, y, z. Immutable after construction; all evaluations are
/// pure functions of (field, point) and safe to call concurrently.
class VelocityField {
public:
    /// Parse "expr, expr, expr" (',' or ';' separators). Throws SyntaxError.
    static VelocityField parse(std::string_view source);

    /// Built-in fields:
    ///   planar_strain_paper   (x, -y, 0)
    ///   planar_strain_stated  (-x, y, 0)
    ///   axisym_strain         (-x, -y, 2z)
    ///   rigid_rotation        (-y, x, 0)
    ///   helical               (-y, x, c)        params: [c], default 1
    ///   abc                   Arnold-Beltrami-Childress, params: [A,B,C], default 1,1,1
    /// All carry a steady pressure with (u.grad)u = -grad p and are divergence-free.
    static VelocityField catalog(std::string_view name, std::span<const double> params = {});

    static std::vector<std::string> catalog_names();

    /// Velocity value only. Throws DomainError on non-finite evaluation.
    Vec3 velocity(const Vec3& x) const;

    /// Exact jets via second-order forward differentiation through the tree.
    FieldJet jet(const Vec3& x) const;

    /// Central-difference jets, the independent cross-check path.
    /// Default step h = cbrt(eps) * (1 + |x|).
    FieldJet jet_fd(const Vec3& x) const;
    FieldJet jet_fd(const Vec3& x, double h) const;

    bool divergence_free() const { return divergence_free_; }
    bool has_pressure() const { return static_cast<bool>(pressure_); }
    ScalarJet pressure_jet(const Vec3& x) const;

    /// The field lambda*u (pressure rescales by lambda^2). lambda = -1 reverses time.
    VelocityField scaled(double lambda) const;

    const std::string& description() const { return description_; }
    const ExprPtr& component(int i) const { return components_[i]; }

private:
    VelocityField() = default;

    std::array<ExprPtr, 3> components_;
    ExprPtr pressure_;
    bool divergence_free_ = false;
    std::string description_;
};

// Operation-style spellings.
VelocityField parse_field(std::string_view source);
VelocityField catalog(std::string_view name, std::span<const double> params = {});
FieldJet eval_jet(const VelocityField& f, const Vec3& x);
FieldJet eval_jet_fd(const VelocityField& f, const Vec3& x, double h);

}  // namespace vortexcrit
