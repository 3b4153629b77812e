#include "reapers/geometry.hpp"

#include <cmath>

namespace reapers {

Point make_point(double x, double y, double z) {
    Point p{x, y, z};
    check_point(p);
    return p;
}

void check_point(const Point& p) {
    if (!(p.y > kIdealBoundaryGuard)) {
        throw DomainError("point reached the ideal boundary: y = " + std::to_string(p.y));
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw DomainError("non-finite point coordinates");
    }
}

double FrameVec::norm() const { return std::sqrt(dot(*this)); }

FrameVec FrameVec::cross(const FrameVec& o) const {
    return {a2 * o.a3 - a3 * o.a2, a3 * o.a1 - a1 * o.a3, a1 * o.a2 - a2 * o.a1};
}

FrameVec FrameVec::normalized() const {
    double n = norm();
    if (n == 0.0) throw NumericalError("cannot normalize zero frame vector");
    return {a1 / n, a2 / n, a3 / n};
}

FrameVec operator+(const FrameVec& a, const FrameVec& b) { return {a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3}; }
FrameVec operator-(const FrameVec& a, const FrameVec& b) { return {a.a1 - b.a1, a.a2 - b.a2, a.a3 - b.a3}; }
FrameVec operator*(double c, const FrameVec& a) { return {c * a.a1, c * a.a2, c * a.a3}; }

bool is_killing(Field f) {
    return f == Field::V || f == Field::P || f == Field::H;
}

std::string field_name(Field f) {
    switch (f) {
        case Field::V: return "v";
        case Field::P: return "p";
        case Field::H: return "h";
        case Field::CPlus: return "c+";
        case Field::CMinus: return "c-";
    }
    return "?";
}

std::string translation_name(Translation t) {
    switch (t) {
        case Translation::Vertical: return "vertical";
        case Translation::Parabolic: return "parabolic";
        case Translation::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

double metric_inner(const Point& p, const Vec3& u, const Vec3& v) {
    check_point(p);
    return (u[0] * v[0] + u[1] * v[1]) / (p.y * p.y) + u[2] * v[2];
}

FrameVec frame_from_coord(const Point& p, const Vec3& v) {
    check_point(p);
    return {v[0] / p.y, v[1] / p.y, v[2]};
}

Vec3 coord_from_frame(const Point& p, const FrameVec& v) {
    check_point(p);
    return {v.a1 * p.y, v.a2 * p.y, v.a3};
}

FrameVec field_in_frame(Field f, const Point& p) {
    check_point(p);
    switch (f) {
        case Field::V: return {0.0, 0.0, 1.0};
        case Field::P: return {1.0 / p.y, 0.0, 0.0};
        case Field::H: return {p.x / p.y, 1.0, 0.0};
        case Field::CPlus: return {0.0, 1.0 / p.y, 0.0};
        case Field::CMinus: return {0.0, -1.0 / p.y, 0.0};
    }
    throw DomainError("unknown field");
}

Vec3 field_coord(Field f, const Point& p) {
    check_point(p);
    switch (f) {
        case Field::V: return {0.0, 0.0, 1.0};
        case Field::P: return {1.0, 0.0, 0.0};
        case Field::H: return {p.x, p.y, 0.0};
        case Field::CPlus: return {0.0, 1.0, 0.0};
        case Field::CMinus: return {0.0, -1.0, 0.0};
    }
    throw DomainError("unknown field");
}

FrameVec connection_frame(int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > 3) {
        throw DomainError("frame index out of range");
    }
    if (i == 1 && j == 1) return {0.0, 1.0, 0.0};
    if (i == 1 && j == 2) return {-1.0, 0.0, 0.0};
    return {0.0, 0.0, 0.0};
}

Point translate(Translation kind, double t, const Point& p) {
    check_point(p);
    switch (kind) {
        case Translation::Vertical: return {p.x, p.y, p.z + t};
        case Translation::Parabolic: return {p.x + t, p.y, p.z};
        case Translation::Hyperbolic: {
            double e = std::exp(t);
            return make_point(e * p.x, e * p.y, p.z);
        }
    }
    throw DomainError("unknown translation");
}

Vec3 christoffel(const Point& p, const Vec3& u, const Vec3& v) {
    check_point(p);
    double iy = 1.0 / p.y;
    return {
        -iy * (u[0] * v[1] + u[1] * v[0]),
        iy * (u[0] * v[0] - u[1] * v[1]),
        0.0,
    };
}

} // namespace reapers
