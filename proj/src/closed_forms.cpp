#include "reapers/closed_forms.hpp"

#include <cmath>

namespace reapers::closed_forms {

namespace {
const double kSqrt5 = std::sqrt(5.0);
const double kAtan2Const = std::atan(2.0);
} // namespace

ProfileState parabolic_v_line(double s) {
    return {std::exp(s / kSqrt5), -2.0 * s / kSqrt5, -kAtan2Const};
}

double parabolic_v_theta(double s) {
    return 2.0 * std::atan(0.5 * (1.0 + kSqrt5 * std::tanh(kSqrt5 * s / 2.0)));
}

ProfileState parabolic_v_bigraph(double s) {
    double sh = std::sinh(kSqrt5 * s), ch = std::cosh(kSqrt5 * s);
    double at = std::atan(0.5 * (1.0 + kSqrt5 * std::tanh(kSqrt5 * s / 2.0)));
    double y = std::pow(10.0 / (kSqrt5 * sh + 5.0 * ch), 0.2) * std::exp(0.8 * at);
    double z = 0.4 * (at + std::log((5.0 * ch + kSqrt5 * sh) / 10.0));
    return {y, z, parabolic_v_theta(s)};
}

double parabolic_h_theta(double s) {
    // 2 arccot(e^s) = 2 arctan(e^{-s})
    return 2.0 * std::atan(std::exp(-s));
}

ProfileState parabolic_h_curve(double c1, double c2, double s) {
    return {2.0 * c1 * std::cosh(s), 2.0 * (c2 + std::atan(std::exp(s))), parabolic_h_theta(s)};
}

ProfileState vertical_minimal(double c1, double c2, double s) {
    // sin(theta) = -tanh s, cos(theta) = sech s
    double theta = -std::atan(std::sinh(s));
    return {c1 * std::tanh(s) + c2, c1 / std::cosh(s), theta};
}

ProfileState parabolic_minimal(double c1, double c2, double s) {
    // theta(s) = 2 arctan e^s solves theta' = sin theta
    double theta = 2.0 * std::atan(std::exp(s));
    return {c1 / std::cosh(s), c2 + 2.0 * std::atan(std::exp(s)), theta};
}

ProfileState hyperbolic_slice(double z0, double s) {
    return {2.0 * std::atan(std::exp(s)), z0, 0.0};
}

ProfileState constant_angle_curve(SurfaceKind kind, double angle0, double y0, double s) {
    switch (kind) {
        case SurfaceKind::Vertical: {
            // y = y0 e^{s sin a}, x' = y cos a
            double sa = std::sin(angle0), ca = std::cos(angle0);
            double y = y0 * std::exp(s * sa);
            double x = sa != 0.0 ? (ca / sa) * (y - y0) : y0 * ca * s;
            return {x, y, angle0};
        }
        case SurfaceKind::Parabolic: {
            double sa = std::sin(angle0), ca = std::cos(angle0);
            return {y0 * std::exp(s * ca), sa * s, angle0};
        }
        case SurfaceKind::Hyperbolic: {
            // r' = sin r cos a integrates to r = 2 arctan e^u, u = u0 + s cos a.
            // Here y0 carries the start angle r(0) in (0, pi).
            double ca = std::cos(angle0), sa = std::sin(angle0);
            double u = std::log(std::tan(y0 / 2.0)) + s * ca;
            return {2.0 * std::atan(std::exp(u)), sa * s, angle0};
        }
        default:
            throw DomainError("constant-angle curves defined for the three ruled kinds");
    }
}

ProfileState ClosedFormBranch::eval(double s) const {
    if (name == "line") return parabolic_v_line(s);
    if (name == "bigraph") return parabolic_v_bigraph(s);
    if (name == "slab") return parabolic_h_curve(c1, c2, s);
    if (name == "geodesic") return vertical_minimal(c1, c2, s);
    if (name == "catenoidal") return parabolic_minimal(c1, c2, s);
    if (name == "slice") {
        if (family.kind() == SurfaceKind::Parabolic) return {std::exp(s), c2, 0.0};
        return hyperbolic_slice(c2, s);
    }
    if (name == "plane") return {M_PI / 2.0, s, M_PI / 2.0};
    throw DomainError("unknown closed-form branch " + name);
}

std::vector<ClosedFormBranch> closed_form_branches(const FamilySpec& fam, double c1, double c2) {
    std::vector<ClosedFormBranch> out;
    if (fam.tilt) return out;
    if (fam.translation == Translation::Parabolic && fam.field == Field::V) {
        out.push_back({"line", fam, c1, c2});
        out.push_back({"bigraph", fam, c1, c2});
    } else if (fam.translation == Translation::Parabolic && fam.field == Field::H) {
        out.push_back({"slice", fam, c1, c2});
        out.push_back({"slab", fam, c1, c2});
    } else if (fam.translation == Translation::Vertical && fam.field == Field::V) {
        out.push_back({"geodesic", fam, c1, c2});
    } else if (fam.translation == Translation::Parabolic && fam.field == Field::P) {
        out.push_back({"slice", fam, c1, c2});
        out.push_back({"catenoidal", fam, c1, c2});
    } else if (fam.translation == Translation::Hyperbolic && fam.field == Field::H) {
        out.push_back({"slice", fam, c1, c2});
        out.push_back({"plane", fam, c1, c2});
    }
    return out;
}

} // namespace reapers::closed_forms
