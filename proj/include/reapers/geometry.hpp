#pragma once

#include <array>
#include <stdexcept>
#include <string>

// Geometry kernel for H^2 x R in the upper half-space model:
// {(x,y,z) : y > 0} with metric (dx^2 + dy^2)/y^2 + dz^2.

namespace reapers {

// Points with y below this are treated as having reached the ideal boundary.
inline constexpr double kIdealBoundaryGuard = 1e-12;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coordinate components of a tangent vector (dx, dy, dz).
using Vec3 = std::array<double, 3>;

struct Point {
    double x = 0.0;
    double y = 1.0;
    double z = 0.0;
};

/// Throws DomainError if the point has left the upper half-space.
Point make_point(double x, double y, double z);
void check_point(const Point& p);

// Tangent vector in the global orthonormal frame E1 = y dx, E2 = y dy, E3 = dz.
struct FrameVec {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;

    double dot(const FrameVec& o) const { return a1 * o.a1 + a2 * o.a2 + a3 * o.a3; }
    double norm() const;
    FrameVec cross(const FrameVec& o) const;
    FrameVec normalized() const;
    FrameVec operator-() const { return {-a1, -a2, -a3}; }
};

FrameVec operator+(const FrameVec& a, const FrameVec& b);
FrameVec operator-(const FrameVec& a, const FrameVec& b);
FrameVec operator*(double c, const FrameVec& a);

// Driving vector fields of the translator equation H = <N,X>.
// V, P, H are Killing (generate the translation groups); CPlus/CMinus are
// the conformal fields +dy / -dy and generate no isometries.
enum class Field { V, P, H, CPlus, CMinus };

enum class Translation { Vertical, Parabolic, Hyperbolic };

bool is_killing(Field f);
std::string field_name(Field f);             // "v", "p", "h", "c+", "c-"
std::string translation_name(Translation t); // "vertical", ...

/// Product metric at p applied to coordinate vectors.
double metric_inner(const Point& p, const Vec3& u, const Vec3& v);

FrameVec frame_from_coord(const Point& p, const Vec3& v);
Vec3 coord_from_frame(const Point& p, const FrameVec& v);

/// Frame components of the driving field at p.
FrameVec field_in_frame(Field f, const Point& p);
Vec3 field_coord(Field f, const Point& p);

/// Levi-Civita connection on the frame: nabla_{E_i} E_j.
/// Nonzero entries: (1,1) -> E2 and (1,2) -> -E1.
FrameVec connection_frame(int i, int j);

/// The three translation groups: V_t, P_t, H_t acting on points.
Point translate(Translation kind, double t, const Point& p);

/// Coordinate Christoffel contraction Gamma^k_{ij} u^i v^j at p.
/// Nonzero symbols: G^x_{xy} = G^x_{yx} = -1/y, G^y_{xx} = 1/y, G^y_{yy} = -1/y.
Vec3 christoffel(const Point& p, const Vec3& u, const Vec3& v);

} // namespace reapers
