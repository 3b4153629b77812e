#pragma once

#include "reapers/ode.hpp"
#include "reapers/surfaces.hpp"

#include <optional>
#include <string>
#include <vector>

// The grim-reaper catalog: one family per (translation group, driving field),
// plus the tilted ruled family. Families are classed as explicit / ODE-only /
// minimal / rigid; non-rigid families expose an arc-length ODE right-hand side.

namespace reapers {

enum class FamilyClass { Explicit, OdeOnly, Minimal, RigidSlices, RigidPlaneAndSlices };

FamilyClass family_class(Translation t, Field f);
std::string family_class_name(FamilyClass c);

struct FamilySpec {
    Translation translation = Translation::Parabolic;
    Field field = Field::V;
    std::optional<double> tilt; // v3; only with (Parabolic, V)

    FamilyClass cls() const;
    SurfaceKind kind() const; // surface kind of the generating construction
    bool rigid() const;
    bool minimal() const;
    /// These families carry sign conventions inconsistent with the translator
    /// identity; they are kept in their stated form and flagged by the audit.
    bool printed_ode_flagged() const;
    std::string name() const; // "parabolic-v", "tilted-v", ...
    std::string describe() const;
};

/// The fifteen (translation, field) families in catalog order.
std::vector<FamilySpec> all_families();

/// Parse "vertical-p", "parabolic-c+", "tilted-v", ... ; tilted requires v3.
FamilySpec parse_family(const std::string& name, std::optional<double> v3 = std::nullopt);

/// Operative arc-length system d/ds (state) for a non-rigid family.
/// State layout follows ProfileState for the family's surface kind.
StateN<3> family_rhs(const FamilySpec& fam, const StateN<3>& q);

/// The ODE in its conventional stated form (differs from the operative one
/// only for the tilted family).
StateN<3> printed_rhs(const FamilySpec& fam, const StateN<3>& q);

/// For families whose printed ODE fails the translator identity, the variant
/// that satisfies it; empty otherwise.
std::optional<StateN<3>> consistent_variant_rhs(const FamilySpec& fam, const StateN<3>& q);
std::string printed_ode_text(const FamilySpec& fam);
std::string consistent_variant_text(const FamilySpec& fam);

/// Orientation sign for which H = sign * <N, X> holds along the family.
int family_orientation(const FamilySpec& fam);

/// Exponent k in the conserved quantity cos(theta) e^{-2/y} / y^k of the
/// vertical c+ family, selected by the drift oracle.
int vertical_cplus_integral_exponent();

/// Conserved quantity, where one exists: sin r / sin rho for the hyperbolic
/// minimal family, cos(theta) e^{-2/y} / y^k for vertical c+.
std::optional<double> first_integral(const FamilySpec& fam, const StateN<3>& q);

/// Graph form y'' = (y - 2 x y')(1 + y'^2) / y^2 of the vertical h family,
/// state (y, y'); valid while the curve is a graph over the x-axis.
StateN<2> vertical_h_graph_rhs(double x, const StateN<2>& q);

struct RigidSolution {
    std::string description;
    // Samples the solution surface as profile states of the family's kind
    // (slices: rho = 0 leaves; plane x = 0: r = pi/2).
    ProfileState sample(double s) const;
    SurfaceKind kind = SurfaceKind::Hyperbolic;
    bool is_plane = false; // x = 0 plane rather than a slice
    double z0 = 0.0;
};

/// The explicit solution set of a rigid family.
std::vector<RigidSolution> rigid_solutions(const FamilySpec& fam);

} // namespace reapers
