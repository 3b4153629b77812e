#pragma once

#include "reapers/families.hpp"

#include <string>
#include <vector>

// Explicit generating curves of the families that integrate in closed form.
// Each evaluator returns the full profile state (positions and angle) at s.

namespace reapers::closed_forms {

/// Parabolic v family, constant-angle branch: (y, z) = (e^{s/sqrt5}, -2s/sqrt5),
/// theta = -arctan 2.
ProfileState parabolic_v_line(double s);

/// Parabolic v family, bi-graph branch.
ProfileState parabolic_v_bigraph(double s);
/// Its angle: theta(s) = 2 arctan((1 + sqrt5 tanh(sqrt5 s / 2)) / 2).
double parabolic_v_theta(double s);

/// Parabolic h family: (y, z) = 2(c1 cosh s, c2 + arctan e^s), theta = 2 arccot e^s.
ProfileState parabolic_h_curve(double c1, double c2, double s);
double parabolic_h_theta(double s);

/// Vertical minimal geodesic: (x, y) = (c1 tanh s + c2, c1 / cosh s).
ProfileState vertical_minimal(double c1, double c2, double s);

/// Parabolic minimal: (y, z) = (c1 / cosh s, c2 + 2 arctan e^s).
ProfileState parabolic_minimal(double c1, double c2, double s);

/// Hyperbolic slice generating geodesic: r = 2 arctan e^s, rho = 0, z = z0.
ProfileState hyperbolic_slice(double z0, double s);

/// Constant-angle arc-length curves of each ruled kind; exact test profiles
/// with closed positions (theta resp. rho frozen at angle0, start height y0).
ProfileState constant_angle_curve(SurfaceKind kind, double angle0, double y0, double s);

struct ClosedFormBranch {
    std::string name;                          // "line", "bigraph", ...
    FamilySpec family;
    double c1 = 1.0, c2 = 0.0;
    ProfileState eval(double s) const;
};

/// Closed-form branches of a family (empty if none).
std::vector<ClosedFormBranch> closed_form_branches(const FamilySpec& fam, double c1 = 1.0,
                                                   double c2 = 0.0);

} // namespace reapers::closed_forms
