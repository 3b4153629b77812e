#include "reapers/exporters.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace reapers {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp + " for writing");
        out << content;
        if (!out.good()) throw NumericalError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw NumericalError("atomic rename failed for " + path);
    }
}

namespace {

Point curve_point(const FamilySpec& fam, const ProfileState& q) {
    return immersion(fam.kind(), q, 0.0, fam.tilt.value_or(0.0));
}

} // namespace

std::string curve_csv(const Trajectory& traj) {
    std::ostringstream os;
    bool with_invariant = false;
    for (const auto& smp : traj.samples) {
        if (smp.invariant) with_invariant = true;
    }
    os << "s,x,y,z,theta_or_rho,H,pairing,residual";
    if (with_invariant) os << ",first_integral";
    os << "\n";
    for (const auto& smp : traj.samples) {
        Point p = curve_point(traj.family, smp.state);
        os << format_g17(smp.s) << ',' << format_g17(p.x) << ',' << format_g17(p.y) << ','
           << format_g17(p.z) << ',' << format_g17(smp.state[2]) << ','
           << format_g17(smp.mean_curv) << ',' << format_g17(smp.pairing) << ','
           << format_g17(smp.residual);
        if (with_invariant) {
            os << ',';
            if (smp.invariant) os << format_g17(*smp.invariant);
        }
        os << "\n";
    }
    os << "# family " << traj.family.describe() << "\n";
    os << "# orientation " << (traj.orientation_sign > 0 ? "+1" : "-1") << "\n";
    for (const auto& e : traj.events) {
        os << "# event " << e.kind << " s=" << format_g17(e.s) << "\n";
    }
    if (!traj.complete) os << "# terminated " << traj.termination << "\n";
    return os.str();
}

std::vector<CsvRow> read_curve_csv(const std::string& content) {
    std::vector<CsvRow> rows;
    std::istringstream is(content);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        CsvRow row{};
        std::istringstream ls(line);
        std::string cell;
        double* slots[8] = {&row.s, &row.x, &row.y, &row.z, &row.angle, &row.H, &row.pairing, &row.residual};
        int i = 0;
        while (std::getline(ls, cell, ',')) {
            if (i < 8) {
                *slots[i] = std::stod(cell);
            } else if (!cell.empty()) {
                row.invariant = std::stod(cell);
            }
            ++i;
        }
        if (i < 8) throw ConfigError("short CSV row: " + line);
        rows.push_back(row);
    }
    return rows;
}

ProfileState state_from_row(const FamilySpec& fam, const CsvRow& row) {
    switch (fam.kind()) {
        case SurfaceKind::Vertical: return {row.x, row.y, row.angle};
        case SurfaceKind::Parabolic:
        case SurfaceKind::TiltedRuled: return {row.y, row.z, row.angle};
        case SurfaceKind::Hyperbolic: return {std::atan2(row.y, row.x), row.z, row.angle};
        default: throw ConfigError("cannot rebuild state for this kind");
    }
}

SurfaceMesh sweep_mesh(const FamilySpec& fam, const std::vector<TrajectorySample>& samples,
                       double t0, double t1, int rulings) {
    if (rulings < 2) throw ConfigError("need at least 2 rulings");
    if (samples.size() < 2) throw ConfigError("need at least 2 curve samples");
    SurfaceMesh mesh;
    mesh.n_s = static_cast<int>(samples.size());
    mesh.n_t = rulings;
    double tilt = fam.tilt.value_or(0.0);
    SurfaceKind kind = fam.kind();
    for (int i = 0; i < mesh.n_s; ++i) {
        for (int j = 0; j < mesh.n_t; ++j) {
            double t = t0 + (t1 - t0) * j / (rulings - 1.0);
            mesh.vertices.push_back(immersion(kind, samples[i].state, t, tilt));
        }
    }
    for (int i = 0; i + 1 < mesh.n_s; ++i) {
        for (int j = 0; j + 1 < mesh.n_t; ++j) {
            int a = i * mesh.n_t + j + 1; // OBJ indices are 1-based
            mesh.quads.push_back({a, a + mesh.n_t, a + mesh.n_t + 1, a + 1});
        }
    }
    return mesh;
}

std::string mesh_obj(const SurfaceMesh& mesh) {
    std::ostringstream os;
    for (const Point& v : mesh.vertices) {
        os << "v " << format_g17(v.x) << ' ' << format_g17(v.y) << ' ' << format_g17(v.z) << "\n";
    }
    for (const auto& q : mesh.quads) {
        os << "f " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << "\n";
    }
    return os.str();
}

std::string portrait_csv(const Portrait& port) {
    std::ostringstream os;
    os << "orbit,s,u,w\n";
    for (size_t k = 0; k < port.orbits.size(); ++k) {
        for (const auto& [s, p] : port.orbits[k].samples) {
            os << k << ',' << format_g17(s) << ',' << format_g17(p[0]) << ',' << format_g17(p[1])
               << "\n";
        }
    }
    for (size_t k = 0; k < port.orbits.size(); ++k) {
        const auto& orb = port.orbits[k];
        os << "# orbit " << k << " ic=(" << format_g17(orb.ic.u) << ',' << format_g17(orb.ic.w)
           << ") class=" << orb.classification;
        if (orb.period) os << " period=" << format_g17(*orb.period);
        os << "\n";
    }
    return os.str();
}

std::string families_table() {
    std::ostringstream os;
    os << "family            class                            notes\n";
    for (const FamilySpec& fam : all_families()) {
        std::string name = fam.name();
        name.resize(18, ' ');
        std::string cls = family_class_name(fam.cls());
        cls.resize(33, ' ');
        os << name << cls;
        if (fam.rigid()) {
            bool first = true;
            for (const auto& sol : rigid_solutions(fam)) {
                os << (first ? "" : "; ") << sol.description;
                first = false;
            }
        } else if (fam.minimal()) {
            os << "minimal: <N,X> = 0 identically";
        } else if (fam.cls() == FamilyClass::Explicit) {
            os << "closed-form generating curve";
        } else if (fam.printed_ode_flagged()) {
            os << "printed ODE flagged by the audit";
        }
        os << "\n";
    }
    os << "tilted-v          ode (requires v3 != 0)           ruled by (1,0,v3); reduces to parabolic-v at v3=0\n";
    return os.str();
}

std::string audit_text(const AuditReport& audit) {
    std::ostringstream os;
    auto pad = [](std::string s, size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        else s += ' ';
        return s;
    };
    os << "family                    class                            status   max|H-<N,X>|   max|H+<N,X>|   sign  notes\n";
    for (const AuditRow& row : audit.rows) {
        std::string label = row.family.describe();
        if (auto p = label.find(" ["); p != std::string::npos) label.erase(p);
        std::string name = pad(label, 26);
        std::string cls = pad(row.cls, 33);
        std::string status = pad(row.status, 9);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-15.3e%-15.3e%+d     ", row.report.max_residual_plus,
                      row.report.max_residual_minus, row.report.chosen_sign);
        os << name << cls << status << buf;
        if (!row.report.printed_ode.empty()) {
            os << "printed: " << row.report.printed_ode << " | consistent: "
               << row.report.consistent_variant;
            if (row.report.printed_form_residual) {
                os << " | printed-form residual " << format_g17(*row.report.printed_form_residual);
            } else {
                os << " | variant residual " << format_g17(row.report.variant_max_residual);
            }
        }
        if (row.report.first_integral_drift) {
            os << "first-integral drift " << format_g17(*row.report.first_integral_drift);
        }
        if (!row.report.note.empty()) os << row.report.note;
        os << "\n";
    }
    os << "first-integral exponent k = " << audit.first_integral_exponent
       << " (selected drift " << format_g17(audit.integral_drift_selected) << ", rejected "
       << format_g17(audit.integral_drift_rejected) << ")\n";
    os << "rotational cylinder: law deviation " << format_g17(audit.rotational.cylinder_law_deviation)
       << ", t-variation " << format_g17(audit.rotational.cylinder_t_variation)
       << "; graph z'!=0 t-variation " << format_g17(audit.rotational.graph_t_variation)
       << "; slice residual " << format_g17(audit.rotational.slice_residual) << "\n";
    os << audit.notes << "\n";
    return os.str();
}

std::string audit_json(const AuditReport& audit) {
    nlohmann::json j;
    j["first_integral_exponent"] = audit.first_integral_exponent;
    j["integral_drift_selected"] = audit.integral_drift_selected;
    j["integral_drift_rejected"] = audit.integral_drift_rejected;
    j["any_flagged"] = audit.any_flagged;
    j["notes"] = audit.notes;
    j["rotational"] = {
        {"cylinder_law_deviation", audit.rotational.cylinder_law_deviation},
        {"cylinder_t_variation", audit.rotational.cylinder_t_variation},
        {"slice_residual", audit.rotational.slice_residual},
        {"graph_t_variation", audit.rotational.graph_t_variation},
    };
    j["families"] = nlohmann::json::array();
    for (const AuditRow& row : audit.rows) {
        nlohmann::json r;
        r["family"] = row.family.describe();
        r["class"] = row.cls;
        r["status"] = row.status;
        r["samples"] = row.report.sample_count;
        r["skipped"] = row.report.skipped;
        r["max_residual_plus"] = row.report.max_residual_plus;
        r["max_residual_minus"] = row.report.max_residual_minus;
        r["chosen_sign"] = row.report.chosen_sign;
        if (row.report.first_integral_drift) {
            r["first_integral_drift"] = *row.report.first_integral_drift;
        }
        if (!row.report.printed_ode.empty()) {
            r["printed_ode"] = row.report.printed_ode;
            r["consistent_variant"] = row.report.consistent_variant;
            r["variant_residual"] = row.report.variant_max_residual;
            if (row.report.printed_form_residual) {
                r["printed_form_residual"] = *row.report.printed_form_residual;
            }
        }
        j["families"].push_back(r);
    }
    return j.dump(2) + "\n";
}

} // namespace reapers
