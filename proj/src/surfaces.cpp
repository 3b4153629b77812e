#include "reapers/surfaces.hpp"

#include <cmath>

namespace reapers {

SurfaceKind surface_kind(Translation t) {
    switch (t) {
        case Translation::Vertical: return SurfaceKind::Vertical;
        case Translation::Parabolic: return SurfaceKind::Parabolic;
        case Translation::Hyperbolic: return SurfaceKind::Hyperbolic;
    }
    throw DomainError("unknown translation");
}

Translation ruling_translation(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::Vertical: return Translation::Vertical;
        case SurfaceKind::Parabolic: return Translation::Parabolic;
        case SurfaceKind::TiltedRuled: return Translation::Parabolic;
        case SurfaceKind::Hyperbolic: return Translation::Hyperbolic;
        case SurfaceKind::Rotational: break;
    }
    throw DomainError("rotational surfaces are not ruled by a translation group");
}

void check_profile(SurfaceKind kind, const ProfileState& q) {
    switch (kind) {
        case SurfaceKind::Vertical:
            if (!(q[1] > kIdealBoundaryGuard)) throw DomainError("vertical profile: y <= 0");
            return;
        case SurfaceKind::Parabolic:
        case SurfaceKind::TiltedRuled:
            if (!(q[0] > kIdealBoundaryGuard)) throw DomainError("parabolic profile: y <= 0");
            return;
        case SurfaceKind::Hyperbolic:
            if (!(q[0] > 0.0 && q[0] < M_PI)) throw DomainError("hyperbolic profile: r outside (0, pi)");
            return;
        case SurfaceKind::Rotational:
            if (!(q[0] > 0.0 && q[0] < 1.0)) throw DomainError("rotational profile: y outside (0, 1)");
            return;
    }
    throw DomainError("unknown surface kind");
}

double profile_height(SurfaceKind kind, const ProfileState& q) {
    switch (kind) {
        case SurfaceKind::Vertical: return q[1];
        case SurfaceKind::Parabolic:
        case SurfaceKind::TiltedRuled: return q[0];
        case SurfaceKind::Hyperbolic: return std::sin(q[0]);
        case SurfaceKind::Rotational: return q[0];
    }
    throw DomainError("unknown surface kind");
}

double profile_angle(SurfaceKind kind, const ProfileState& q) {
    if (kind == SurfaceKind::Rotational) throw DomainError("rotational profile carries no angle");
    return q[2];
}

Point immersion(SurfaceKind kind, const ProfileState& q, double t, double tilt) {
    check_profile(kind, q);
    switch (kind) {
        case SurfaceKind::Vertical: return make_point(q[0], q[1], t);
        case SurfaceKind::Parabolic: return make_point(t, q[0], q[1]);
        case SurfaceKind::TiltedRuled: return make_point(t, q[0], q[1] + tilt * t);
        case SurfaceKind::Hyperbolic: {
            double e = std::exp(t);
            return make_point(e * std::cos(q[0]), e * std::sin(q[0]), q[1]);
        }
        case SurfaceKind::Rotational: {
            // Orbit of (0, y, z) under the rotation about the vertical geodesic
            // through (0, 1, 0); t is the rotation angle.
            double y = q[0];
            double m = y * y - 1.0;
            double den = y * y + 1.0 - m * std::cos(t);
            return make_point(-m * std::sin(t) / den, 2.0 * y / den, q[1]);
        }
    }
    throw DomainError("unknown surface kind");
}

FrameVec profile_tangent(SurfaceKind kind, const ProfileState& q) {
    check_profile(kind, q);
    switch (kind) {
        case SurfaceKind::Vertical:
            return {std::cos(q[2]), std::sin(q[2]), 0.0};
        case SurfaceKind::Parabolic:
        case SurfaceKind::TiltedRuled:
            return {0.0, std::cos(q[2]), std::sin(q[2])};
        case SurfaceKind::Hyperbolic:
            return {-std::sin(q[0]) * std::cos(q[2]), std::cos(q[0]) * std::cos(q[2]), std::sin(q[2])};
        case SurfaceKind::Rotational: break;
    }
    throw DomainError("no arc-length tangent for this kind");
}

FrameVec unit_normal(SurfaceKind kind, const ProfileState& q) {
    check_profile(kind, q);
    switch (kind) {
        case SurfaceKind::Vertical:
            return {std::sin(q[2]), -std::cos(q[2]), 0.0};
        case SurfaceKind::Parabolic:
            return {0.0, std::sin(q[2]), -std::cos(q[2])};
        case SurfaceKind::Hyperbolic:
            return {-std::sin(q[0]) * std::sin(q[2]), std::cos(q[0]) * std::sin(q[2]), -std::cos(q[2])};
        default:
            throw DomainError("closed-form normal exists only for vertical/parabolic/hyperbolic kinds");
    }
}

double mean_curvature(SurfaceKind kind, const ProfileState& q, double angle_rate) {
    check_profile(kind, q);
    switch (kind) {
        case SurfaceKind::Vertical:
            return -0.5 * (angle_rate + std::cos(q[2]));
        case SurfaceKind::Parabolic:
            return -0.5 * (angle_rate - std::sin(q[2]));
        case SurfaceKind::Hyperbolic:
            return -0.5 * (angle_rate - std::cos(q[0]) * std::sin(q[2]));
        default:
            throw DomainError("closed-form mean curvature exists only for vertical/parabolic/hyperbolic kinds");
    }
}

double field_pairing(SurfaceKind kind, Field f, const ProfileState& q, double t) {
    FrameVec n = unit_normal(kind, q);
    Point p = immersion(kind, q, t);
    return n.dot(field_in_frame(f, p));
}

bool pairing_depends_on_t(SurfaceKind kind, Field f) {
    // The field must be invariant under the ruling translations for <N,X> to be
    // constant along rulings. dz survives everything; dx and +-dy survive
    // vertical and parabolic rulings but not dilations; x dx + y dy survives all
    // three (it commutes with z- and x-translations and is dilation-invariant).
    if (kind != SurfaceKind::Hyperbolic) return false;
    return f == Field::P || f == Field::CPlus || f == Field::CMinus;
}

ResidualValue closed_form_residual(SurfaceKind kind, Field f, const ProfileState& q,
                                   double angle_rate, int sign) {
    ResidualValue out;
    out.t_dependent = pairing_depends_on_t(kind, f);
    double H = mean_curvature(kind, q, angle_rate);
    out.value = H - sign * field_pairing(kind, f, q, 0.0);
    return out;
}

} // namespace reapers
