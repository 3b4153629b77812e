#pragma once

#include "reapers/closed_forms.hpp"
#include "reapers/trajectory.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

// Independent coordinate-level verification: finite-difference fundamental
// forms with the coordinate Christoffel symbols, numeric mean curvature and
// normals, translator-residual scans, the rotational rigidity witness, and
// the whole-catalog consistency audit. The oracle never consumes the
// closed-form normals or curvature formulas of the surface under test.

namespace reapers {

struct SurfacePatch {
    std::function<Point(double s, double t)> eval;
};

struct FundamentalForms {
    double g11 = 0, g12 = 0, g22 = 0;
    double b11 = 0, b12 = 0, b22 = 0;
    FrameVec normal; // metric-unit, cross-product orientation of (Psi_s, Psi_t)
    double H = 0;
};

/// Raw second-order central differences at step h.
FundamentalForms numeric_fundamental_forms(const SurfacePatch& patch, double s, double t, double h);

struct OracleSample {
    FundamentalForms raw_h;      // at step h
    FundamentalForms raw_half;   // at step h/2
    double H = 0;                // Richardson-extrapolated
    double pairing = 0;          // extrapolated <N, X>, if a field was given
    Point at;
};

/// One Richardson level on top of the raw central differences.
OracleSample oracle_eval(const SurfacePatch& patch, double s, double t,
                         std::optional<Field> field = std::nullopt);

double numeric_mean_curvature(const SurfacePatch& patch, double s, double t);

/// Default oracle step: h = 1e-5 * max(1, y) at the base point.
double oracle_step(const SurfacePatch& patch, double s, double t);

/// Immersion built from an ODE trajectory: the curve is evaluated at stencil
/// abscissas by a smooth fixed-step flow from the nearest stored sample.
SurfacePatch trajectory_patch(const FamilySpec& fam, const Trajectory& traj, double s_base);

/// Immersion of a closed-form branch swept by its ruling translation.
SurfacePatch closed_form_patch(const closed_forms::ClosedFormBranch& branch);

struct OracleReport {
    std::string family;
    std::string note;
    int sample_count = 0;
    int skipped = 0;
    double max_residual_plus = 0.0;
    double max_residual_minus = 0.0;
    int chosen_sign = +1;
    std::optional<double> first_integral_drift;
    bool flagged = false;           // both orientations exceed tolerance
    std::string printed_ode;        // set when flagged (or tilted)
    std::string consistent_variant; // the empirically consistent rhs, if any
    double variant_max_residual = 0.0;            // residual of the consistent variant
    std::optional<double> printed_form_residual;  // failure level of a rejected printed form
    double runtime_seconds = 0.0;

    double min_residual() const;
};

/// Scan |H - sign <N,X>| over trajectory samples and ruling parameters,
/// entirely from finite-difference quantities.
OracleReport residual_scan(const FamilySpec& fam, const Trajectory& traj,
                           std::span<const double> t_samples, int scan_points = 25);

/// Fill in numeric H / pairing / residual for trajectories without closed
/// forms (the tilted family).
void annotate_with_oracle(Trajectory& traj);

struct RotationalReport {
    // cylinder profile: pairing vs the sin(t)/y law in the Euclidean-angle chart
    double cylinder_law_deviation = 0.0;
    double cylinder_t_variation = 0.0;   // amplitude of <N, dx> over t
    double slice_residual = 0.0;         // graph profile with z' = 0
    double graph_t_variation = 0.0;      // amplitude for a z' != 0 profile
};

enum class RotationalProfile { Cylinder, Graph };

/// Witnesses for the rotational rigidity of p- and h-translators.
RotationalReport rotational_rigidity_check(double y0, Field field, double graph_slope = 0.3);

struct AuditRow {
    OracleReport report;
    FamilySpec family;
    std::string cls;
    std::string status; // "ok", "flagged", "rigid", "minimal"
};

struct AuditReport {
    std::vector<AuditRow> rows;
    int first_integral_exponent = 0;
    double integral_drift_selected = 0.0;
    double integral_drift_rejected = 0.0;
    RotationalReport rotational;
    bool any_flagged = false;
    std::string notes;
};

/// One report per family (plus tilted samples); mirrors the catalog table.
AuditReport consistency_audit(const StepControl& ctrl, double tolerance = 1e-4);

/// Default initial conditions used by the audit and the acceptance suite.
std::vector<ProfileState> default_initial_conditions(const FamilySpec& fam);

} // namespace reapers
