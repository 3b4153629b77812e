#include "reapers/families.hpp"

#include <cmath>
#include <sstream>

namespace reapers {

FamilyClass family_class(Translation t, Field f) {
    switch (f) {
        case Field::V:
            if (t == Translation::Vertical) return FamilyClass::Minimal;
            if (t == Translation::Parabolic) return FamilyClass::Explicit;
            return FamilyClass::OdeOnly;
        case Field::P:
            if (t == Translation::Vertical) return FamilyClass::OdeOnly;
            if (t == Translation::Parabolic) return FamilyClass::Minimal;
            return FamilyClass::RigidSlices;
        case Field::H:
            if (t == Translation::Vertical) return FamilyClass::OdeOnly;
            if (t == Translation::Parabolic) return FamilyClass::Explicit;
            return FamilyClass::Minimal;
        case Field::CPlus:
        case Field::CMinus:
            if (t == Translation::Hyperbolic) return FamilyClass::RigidPlaneAndSlices;
            return FamilyClass::OdeOnly;
    }
    throw DomainError("unknown field");
}

std::string family_class_name(FamilyClass c) {
    switch (c) {
        case FamilyClass::Explicit: return "explicit";
        case FamilyClass::OdeOnly: return "ode";
        case FamilyClass::Minimal: return "minimal";
        case FamilyClass::RigidSlices: return "rigid (slices)";
        case FamilyClass::RigidPlaneAndSlices: return "rigid (plane x=0 and slices)";
    }
    return "?";
}

FamilyClass FamilySpec::cls() const {
    if (tilt) return FamilyClass::OdeOnly; // no closed form is known for tilted curves
    return family_class(translation, field);
}

SurfaceKind FamilySpec::kind() const {
    if (tilt) return SurfaceKind::TiltedRuled;
    return surface_kind(translation);
}

bool FamilySpec::rigid() const {
    FamilyClass c = cls();
    return c == FamilyClass::RigidSlices || c == FamilyClass::RigidPlaneAndSlices;
}

bool FamilySpec::minimal() const { return cls() == FamilyClass::Minimal; }

bool FamilySpec::printed_ode_flagged() const {
    if (tilt) return false; // tilted uses the re-derived rhs, not the printed one
    if (translation == Translation::Vertical && field == Field::CMinus) return true;
    if (translation == Translation::Parabolic && (field == Field::CPlus || field == Field::CMinus)) return true;
    return false;
}

std::string FamilySpec::name() const {
    if (tilt) return "tilted-v";
    return translation_name(translation) + "-" + field_name(field);
}

std::string FamilySpec::describe() const {
    std::ostringstream os;
    os << name();
    if (tilt) os << " (v3 = " << *tilt << ")";
    os << " [" << family_class_name(cls()) << "]";
    return os.str();
}

std::vector<FamilySpec> all_families() {
    std::vector<FamilySpec> out;
    for (Field f : {Field::V, Field::P, Field::H, Field::CPlus, Field::CMinus}) {
        for (Translation t : {Translation::Parabolic, Translation::Hyperbolic, Translation::Vertical}) {
            out.push_back({t, f, std::nullopt});
        }
    }
    return out;
}

FamilySpec parse_family(const std::string& name, std::optional<double> v3) {
    if (name == "tilted-v" || name == "tilted") {
        if (!v3) throw ConfigError("tilted-v requires a v3 value");
        if (*v3 == 0.0) throw ConfigError("tilted-v with v3 = 0 degenerates to parabolic-v");
        return {Translation::Parabolic, Field::V, v3};
    }
    auto dash = name.find('-');
    if (dash == std::string::npos) throw ConfigError("bad family name: " + name);
    std::string tpart = name.substr(0, dash), fpart = name.substr(dash + 1);
    Translation t;
    if (tpart == "vertical") t = Translation::Vertical;
    else if (tpart == "parabolic") t = Translation::Parabolic;
    else if (tpart == "hyperbolic") t = Translation::Hyperbolic;
    else throw ConfigError("bad translation kind: " + tpart);
    Field f;
    if (fpart == "v") f = Field::V;
    else if (fpart == "p") f = Field::P;
    else if (fpart == "h") f = Field::H;
    else if (fpart == "c+") f = Field::CPlus;
    else if (fpart == "c-") f = Field::CMinus;
    else throw ConfigError("bad field: " + fpart);
    if (v3) throw ConfigError("v3 applies only to tilted-v");
    return {t, f, std::nullopt};
}

namespace {

// Position equations of the arc-length systems (sv)/(sp)/(sh).
StateN<3> position_rates(SurfaceKind kind, const StateN<3>& q) {
    switch (kind) {
        case SurfaceKind::Vertical: // (x, y, theta)
            return {q[1] * std::cos(q[2]), q[1] * std::sin(q[2]), 0.0};
        case SurfaceKind::Parabolic:
        case SurfaceKind::TiltedRuled: // (y, z, theta)
            return {q[0] * std::cos(q[2]), std::sin(q[2]), 0.0};
        case SurfaceKind::Hyperbolic: // (r, z, rho)
            return {std::sin(q[0]) * std::cos(q[2]), std::sin(q[2]), 0.0};
        default:
            throw DomainError("no arc-length system for this kind");
    }
}

double angle_rate_for(const FamilySpec& fam, const StateN<3>& q, bool printed) {
    double c = std::cos(q[2]), si = std::sin(q[2]);
    if (fam.tilt) {
        double y = q[0], v3 = *fam.tilt;
        double yy = v3 * v3 * y * y;
        if (printed) return 2.0 * c + si * (1.0 + 2.0 * yy * c * c) / (1.0 + yy);
        return (2.0 * c * (1.0 + yy * c * c) + si * (1.0 + 2.0 * yy * c * c)) / (1.0 + yy);
    }
    switch (fam.field) {
        case Field::V:
            switch (fam.translation) {
                case Translation::Vertical: return -c;                       // minimal
                case Translation::Parabolic: return 2.0 * c + si;            // explicit
                case Translation::Hyperbolic: return 2.0 * c + si * std::cos(q[0]);
            }
            break;
        case Field::P:
            switch (fam.translation) {
                case Translation::Vertical: return -c - 2.0 * si / q[1];
                case Translation::Parabolic: return si;                      // minimal
                default: break;                                              // rigid
            }
            break;
        case Field::H:
            switch (fam.translation) {
                case Translation::Vertical: return c - 2.0 * q[0] * si / q[1];
                case Translation::Parabolic: return -si;                     // explicit
                case Translation::Hyperbolic: return std::cos(q[0]) * si;    // minimal
            }
            break;
        case Field::CPlus:
            switch (fam.translation) {
                case Translation::Vertical: return c * (2.0 - q[1]) / q[1];
                case Translation::Parabolic: {
                    double y = q[0];
                    if (printed) return -si * (y + 2.0) / y;
                    return si * (y - 2.0) / y;
                }
                default: break;
            }
            break;
        case Field::CMinus:
            switch (fam.translation) {
                case Translation::Vertical: {
                    double y = q[1];
                    if (printed) return c * (y - 2.0) / y;
                    return -c * (y + 2.0) / y;
                }
                case Translation::Parabolic: {
                    double y = q[0];
                    if (printed) return -si * (y - 2.0) / y;
                    return si * (y + 2.0) / y;
                }
                default: break;
            }
            break;
    }
    throw DomainError("family " + fam.name() + " is rigid and has no ODE");
}

StateN<3> rhs_impl(const FamilySpec& fam, const StateN<3>& q, bool printed) {
    SurfaceKind k = fam.kind();
    check_profile(k, q);
    StateN<3> d = position_rates(k, q);
    d[2] = angle_rate_for(fam, q, printed);
    return d;
}

} // namespace

StateN<3> family_rhs(const FamilySpec& fam, const StateN<3>& q) {
    // The tilted family integrates the re-derived rhs; everywhere else the
    // operative system is the printed one (flagged or not).
    return rhs_impl(fam, q, !fam.tilt);
}

StateN<3> printed_rhs(const FamilySpec& fam, const StateN<3>& q) {
    return rhs_impl(fam, q, true);
}

std::optional<StateN<3>> consistent_variant_rhs(const FamilySpec& fam, const StateN<3>& q) {
    if (!fam.printed_ode_flagged()) return std::nullopt;
    return rhs_impl(fam, q, false);
}

std::string printed_ode_text(const FamilySpec& fam) {
    if (fam.tilt) return "theta' = 2cos(theta) + sin(theta)(1+2v3^2 y^2 cos^2(theta))/(1+v3^2 y^2)";
    if (fam.translation == Translation::Vertical && fam.field == Field::CMinus)
        return "theta' = cos(theta)(y-2)/y";
    if (fam.translation == Translation::Parabolic && fam.field == Field::CPlus)
        return "theta' = -sin(theta)(y+2)/y";
    if (fam.translation == Translation::Parabolic && fam.field == Field::CMinus)
        return "theta' = -sin(theta)(y-2)/y";
    return "";
}

std::string consistent_variant_text(const FamilySpec& fam) {
    if (fam.tilt)
        return "theta' = (2cos(theta)(1+v3^2 y^2 cos^2(theta)) + sin(theta)(1+2v3^2 y^2 cos^2(theta)))/(1+v3^2 y^2)";
    if (fam.translation == Translation::Vertical && fam.field == Field::CMinus)
        return "theta' = -cos(theta)(y+2)/y";
    if (fam.translation == Translation::Parabolic && fam.field == Field::CPlus)
        return "theta' = sin(theta)(y-2)/y";
    if (fam.translation == Translation::Parabolic && fam.field == Field::CMinus)
        return "theta' = sin(theta)(y+2)/y";
    return "";
}

int family_orientation(const FamilySpec&) {
    // With the normals (normal-v/p/h) and, for tilted, the re-derived rhs, the
    // identity holds with sign +1 for every family that passes the audit.
    return +1;
}

int vertical_cplus_integral_exponent() { return 1; }

std::optional<double> first_integral(const FamilySpec& fam, const StateN<3>& q) {
    if (!fam.tilt && fam.translation == Translation::Hyperbolic && fam.field == Field::H) {
        double srho = std::sin(q[2]);
        if (srho == 0.0) throw DomainError("first integral singular on the sin(rho) = 0 leaf");
        return std::sin(q[0]) / srho;
    }
    if (!fam.tilt && fam.translation == Translation::Vertical && fam.field == Field::CPlus) {
        double y = q[1];
        int k = vertical_cplus_integral_exponent();
        return std::cos(q[2]) * std::exp(-2.0 / y) / std::pow(y, k);
    }
    return std::nullopt;
}

StateN<2> vertical_h_graph_rhs(double x, const StateN<2>& q) {
    double y = q[0], yp = q[1];
    if (!(y > kIdealBoundaryGuard)) throw DomainError("graph ODE: y <= 0");
    return {yp, (y - 2.0 * x * yp) * (1.0 + yp * yp) / (y * y)};
}

ProfileState RigidSolution::sample(double s) const {
    // Plane x = 0: generating curve is the vertical line r = pi/2 traversed in
    // z, so rho = pi/2. Slice z = z0: the half-circle geodesic at rho = 0.
    if (is_plane) return {M_PI / 2.0, s, M_PI / 2.0};
    return {2.0 * std::atan(std::exp(s)), z0, 0.0};
}

std::vector<RigidSolution> rigid_solutions(const FamilySpec& fam) {
    if (!fam.rigid()) throw DomainError("family " + fam.name() + " is not rigid");
    std::vector<RigidSolution> out;
    if (fam.cls() == FamilyClass::RigidPlaneAndSlices) {
        out.push_back({"vertical plane x = 0", SurfaceKind::Hyperbolic, true, 0.0});
    }
    out.push_back({"slices z = z0", SurfaceKind::Hyperbolic, false, 0.0});
    return out;
}

} // namespace reapers
