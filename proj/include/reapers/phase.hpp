#pragma once

#include "reapers/families.hpp"

#include <optional>
#include <string>
#include <vector>

// Qualitative dynamics of the planar reductions: nullclines, equilibria,
// orbit symmetries, separatrix shooting and orbit classification for the
// hyperbolic v system, and batch phase portraits.

namespace reapers {

struct PhasePoint {
    double u = 0.0; // r or y
    double w = 0.0; // rho or theta
};

enum class OrbitTag { SymmetricGraph, Graph, Separatrix, NonGraph };
std::string orbit_tag_name(OrbitTag t);

struct OrbitClass {
    OrbitTag tag = OrbitTag::Graph;
    PhasePoint forward_limit;
    PhasePoint backward_limit;
    double forward_limit_error = 0.0; // distance to the attached corner at stop
    double backward_limit_error = 0.0;
};

/// Nullcline of the rho-equation: Lambda(r) = -arctan(2 / cos r), r != pi/2.
double nullcline_lambda(double r);

/// True for families that reduce to an autonomous planar system.
bool is_planar(const FamilySpec& fam);

/// Reduced planar right-hand side, state (u, w).
StateN<2> planar_rhs(const FamilySpec& fam, const StateN<2>& p);

/// Equilibria of the reduced system inside the window, grid scan + Newton.
std::vector<PhasePoint> equilibria(const FamilySpec& fam, PhasePoint lo, PhasePoint hi,
                                   int grid = 120);
std::vector<PhasePoint> equilibria(const FamilySpec& fam); // family default window

enum class SymmetryMap { RhoShift, AntiDiagonal };

/// Image of a sampled (hyperbolic v) orbit under one of the two symmetries:
/// (r,rho)(s) -> (r(-s), rho(-s) +- pi)  or  (r,rho)(s) -> (pi - r(-s), -rho(-s)).
std::vector<std::pair<double, StateN<2>>> orbit_symmetry(
    const std::vector<std::pair<double, StateN<2>>>& orbit, SymmetryMap which);

PhasePoint symmetry_image(SymmetryMap which, PhasePoint p);

struct SeparatrixResult {
    double r_star = 0.0;
    double lo = 0.0, hi = 0.0; // final bracket
    int shots = 0;
};

/// Bisection shooting for the separatrix launch angle r* of the hyperbolic v
/// system; bracket width <= tol on return.
SeparatrixResult find_separatrix(double tol, const StepControl& ctrl);

OrbitClass classify_orbit(double r0, double r_star, const StepControl& ctrl);

/// Forward orbit from (r0, 0); minimum distance to `target` along the way.
double orbit_min_distance(double r0, PhasePoint target, const StepControl& ctrl,
                          double max_arc = 1000.0);

/// Abscissa r of the first forward crossing of the nullcline in r > pi/2.
double lambda_crossing_abscissa(double r0, const StepControl& ctrl);

struct PortraitOrbit {
    PhasePoint ic;
    std::string classification;
    std::vector<std::pair<double, StateN<2>>> samples;
    std::optional<double> period;
};

struct Portrait {
    FamilySpec family;
    std::vector<PortraitOrbit> orbits;
};

Portrait planar_portrait(const FamilySpec& fam, const std::vector<PhasePoint>& grid,
                         const StepControl& ctrl);

struct PeriodResult {
    double period = 0.0;
    double closure_distance = 0.0; // phase-space distance after one period
};

/// Period of the closed (vertical c+) orbit through (y0, 0).
PeriodResult closed_orbit_period(const FamilySpec& fam, double y0, const StepControl& ctrl);

} // namespace reapers
