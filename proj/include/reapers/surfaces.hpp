#pragma once

#include "reapers/geometry.hpp"

#include <array>

// Parametrizations of translation-invariant surfaces, their closed-form unit
// normals and mean curvatures, and the translator-equation residual.

namespace reapers {

enum class SurfaceKind { Vertical, Parabolic, Hyperbolic, TiltedRuled, Rotational };

// Generating-curve state. Component meaning depends on the kind:
//   Vertical:             (x, y, theta)
//   Parabolic / tilted:   (y, z, theta)
//   Hyperbolic:           (r, z, rho)       r in (0, pi)
//   Rotational:           (y, z, -)         y in (0, 1)
using ProfileState = std::array<double, 3>;

SurfaceKind surface_kind(Translation t);
Translation ruling_translation(SurfaceKind k);

void check_profile(SurfaceKind kind, const ProfileState& q);

/// Ambient y-coordinate of the profile point (ruling parameter t = 0).
double profile_height(SurfaceKind kind, const ProfileState& q);
/// The angle variable theta (vertical/parabolic/tilted) or rho (hyperbolic).
double profile_angle(SurfaceKind kind, const ProfileState& q);

/// Ruled immersion Psi(s,t) evaluated at profile state q and ruling parameter t.
/// `tilt` is the slope v3, used only by TiltedRuled.
Point immersion(SurfaceKind kind, const ProfileState& q, double t, double tilt = 0.0);

/// Unit tangent of the arc-length generating curve, in the frame.
FrameVec profile_tangent(SurfaceKind kind, const ProfileState& q);

/// Closed-form unit normal; defined for Vertical, Parabolic, Hyperbolic only
/// (tilted and rotational normals come from the numeric oracle).
FrameVec unit_normal(SurfaceKind kind, const ProfileState& q);

/// Mean curvature from the angle rate (theta' or rho').
double mean_curvature(SurfaceKind kind, const ProfileState& q, double angle_rate);

/// Closed-form pairing <N, X> at ruling parameter t.
double field_pairing(SurfaceKind kind, Field f, const ProfileState& q, double t);

/// True when <N, X> genuinely varies along the rulings (the rigid combinations).
bool pairing_depends_on_t(SurfaceKind kind, Field f);

struct ResidualValue {
    double value = 0.0;     // H - sign * <N, X>, evaluated at t = 0
    bool t_dependent = false;
};

ResidualValue closed_form_residual(SurfaceKind kind, Field f, const ProfileState& q,
                                   double angle_rate, int sign);

} // namespace reapers
