#pragma once

#include "reapers/oracle.hpp"
#include "reapers/phase.hpp"
#include "reapers/trajectory.hpp"

#include <string>
#include <vector>

// Data emission: curve CSV, surface meshes (text OBJ subset), phase-portrait
// datasets and audit reports. All writers are deterministic: identical inputs
// produce byte-identical files. Numbers use 17 significant digits.

namespace reapers {

std::string format_g17(double v);

/// Write via a temp file + rename so consumers never see partial output.
void write_atomic(const std::string& path, const std::string& content);

struct SurfaceMesh {
    std::vector<Point> vertices;
    int n_s = 0, n_t = 0; // grid dimensions; quads follow grid order
    std::vector<std::array<int, 4>> quads;
};

SurfaceMesh sweep_mesh(const FamilySpec& fam, const std::vector<TrajectorySample>& samples,
                       double t0, double t1, int rulings);

std::string curve_csv(const Trajectory& traj);
std::string mesh_obj(const SurfaceMesh& mesh);
std::string portrait_csv(const Portrait& port);
std::string audit_text(const AuditReport& audit);
std::string audit_json(const AuditReport& audit);
std::string families_table();

struct CsvRow {
    double s, x, y, z, angle, H, pairing, residual;
    std::optional<double> invariant;
};

/// Parse a curve CSV back (header + rows; '#' trailer lines are skipped).
std::vector<CsvRow> read_curve_csv(const std::string& content);

/// Rebuild the profile state of a family from an emitted row.
ProfileState state_from_row(const FamilySpec& fam, const CsvRow& row);

} // namespace reapers
