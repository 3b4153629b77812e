// Command-line front end: construct, integrate, classify and verify the
// grim-reaper families of H^2 x R, emitting curves (CSV), swept surfaces
// (OBJ), phase portraits and the consistency audit.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure,
// 4 audit finished with flagged families.

#include "reapers/closed_forms.hpp"
#include "reapers/config.hpp"
#include "reapers/exporters.hpp"
#include "reapers/oracle.hpp"
#include "reapers/phase.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

namespace {

using namespace reapers;

struct CliOptions {
    RunConfig run;
    std::vector<double> ic_values;
    std::vector<double> span_values;
    std::vector<double> trange_values;
    std::vector<double> grid_values;
};

void bind_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--family", opt.run.family_name, "family selector, e.g. parabolic-v, tilted-v");
    cmd->add_option("--v3", opt.run.v3, "tilt slope v3 (tilted-v only)");
    cmd->add_option("--ic", opt.ic_values, "initial profile state at s = 0 (3 numbers)")->expected(3);
    cmd->add_option("--span", opt.span_values, "arc-length span s0 s1 (s0 <= 0 <= s1)")->expected(2);
    cmd->add_option("--rtol", opt.run.rtol, "relative tolerance");
    cmd->add_option("--atol", opt.run.atol, "absolute tolerance");
    cmd->add_option("--spacing", opt.run.sample_spacing, "output sample spacing");
    cmd->add_option("--t-range", opt.trange_values, "ruling parameter range t0 t1")->expected(2);
    cmd->add_option("--rulings", opt.run.rulings, "number of rulings in meshes");
    cmd->add_option("--branch", opt.run.branch, "closed-form branch instead of integration");
    cmd->add_option("--c1", opt.run.c1, "closed-form constant c1");
    cmd->add_option("--c2", opt.run.c2, "closed-form constant c2");
    cmd->add_option("--tol", opt.run.separatrix_tol, "separatrix bracket tolerance");
    cmd->add_option("--out", opt.run.out, "output file path");
}

void finish_options(CliOptions& opt) {
    if (opt.ic_values.size() == 3) {
        opt.run.ic = ProfileState{opt.ic_values[0], opt.ic_values[1], opt.ic_values[2]};
    }
    if (opt.span_values.size() == 2) {
        opt.run.s0 = opt.span_values[0];
        opt.run.s1 = opt.span_values[1];
    }
    if (opt.trange_values.size() == 2) {
        opt.run.t0 = opt.trange_values[0];
        opt.run.t1 = opt.trange_values[1];
    }
}

ProfileState pick_initial(const RunConfig& cfg, const FamilySpec& fam) {
    if (cfg.ic) return *cfg.ic;
    return default_initial_conditions(fam).front();
}

std::string out_path(const RunConfig& cfg, const std::string& fallback) {
    if (!cfg.out.empty()) return cfg.out;
    return default_output_dir() + "/" + fallback;
}

Trajectory closed_form_trajectory(const FamilySpec& fam, const RunConfig& cfg) {
    auto branches = closed_forms::closed_form_branches(fam, cfg.c1, cfg.c2);
    const closed_forms::ClosedFormBranch* chosen = nullptr;
    for (const auto& b : branches) {
        if (b.name == cfg.branch) chosen = &b;
    }
    if (!chosen) throw ConfigError("no closed-form branch '" + cfg.branch + "'");
    Trajectory traj;
    traj.family = fam;
    int n = static_cast<int>(std::ceil((cfg.s1 - cfg.s0) / cfg.sample_spacing));
    for (int i = 0; i <= n; ++i) {
        double s = cfg.s0 + (cfg.s1 - cfg.s0) * i / n;
        TrajectorySample smp;
        smp.s = s;
        smp.state = chosen->eval(s);
        // Diagnostics from the arc-length system at the closed-form state.
        StateN<3> d = family_rhs(fam, smp.state);
        smp.angle_rate = d[2];
        smp.mean_curv = mean_curvature(fam.kind(), smp.state, smp.angle_rate);
        smp.pairing = field_pairing(fam.kind(), fam.field, smp.state, 0.0);
        smp.residual = smp.mean_curv - smp.pairing;
        try {
            if (auto q = first_integral(fam, smp.state)) smp.invariant = q;
        } catch (const DomainError&) {
        }
        traj.samples.push_back(smp);
    }
    return traj;
}

Trajectory run_trajectory(const RunConfig& cfg) {
    FamilySpec fam = cfg.family();
    if (fam.rigid()) {
        std::string sols;
        for (const auto& sol : rigid_solutions(fam)) sols += sol.description + "; ";
        throw ConfigError("family " + fam.name() + " is rigid; its solutions are: " + sols);
    }
    if (!cfg.branch.empty()) return closed_form_trajectory(fam, cfg);
    Trajectory traj = integrate_family(fam, pick_initial(cfg, fam), cfg.s0, cfg.s1, cfg.step_control());
    if (fam.kind() == SurfaceKind::TiltedRuled) annotate_with_oracle(traj);
    return traj;
}

int cmd_curve(const RunConfig& cfg) {
    Trajectory traj = run_trajectory(cfg);
    write_atomic(out_path(cfg, cfg.family_name + "-curve.csv"), curve_csv(traj));
    if (!traj.complete) {
        std::cerr << "integration stopped early: " << traj.termination << "\n";
        return 3;
    }
    return 0;
}

int cmd_surface(const RunConfig& cfg) {
    Trajectory traj = run_trajectory(cfg);
    SurfaceMesh mesh = sweep_mesh(traj.family, traj.samples, cfg.t0, cfg.t1, cfg.rulings);
    write_atomic(out_path(cfg, cfg.family_name + "-surface.obj"), mesh_obj(mesh));
    return traj.complete ? 0 : 3;
}

int cmd_phase(const RunConfig& cfg, const std::vector<double>& grid_values) {
    FamilySpec fam = cfg.family();
    std::vector<PhasePoint> grid;
    for (size_t i = 0; i + 1 < grid_values.size(); i += 2) {
        grid.push_back({grid_values[i], grid_values[i + 1]});
    }
    if (grid.empty()) {
        if (fam.translation == Translation::Hyperbolic) {
            for (double r0 : {0.3, 0.6, 0.9295147973, 1.2, M_PI / 2.0}) grid.push_back({r0, 0.0});
        } else {
            for (double y0 : {0.5, 1.0, 1.5, 2.5, 3.5}) grid.push_back({y0, 0.0});
        }
    }
    Portrait port = planar_portrait(fam, grid, cfg.step_control());
    write_atomic(out_path(cfg, cfg.family_name + "-phase.csv"), portrait_csv(port));
    return 0;
}

int cmd_separatrix(const RunConfig& cfg) {
    SeparatrixResult res = find_separatrix(cfg.separatrix_tol, cfg.step_control());
    std::ostringstream os;
    os << "r_star = " << format_g17(res.r_star) << "\n"
       << "bracket = [" << format_g17(res.lo) << ", " << format_g17(res.hi) << "]\n"
       << "shots = " << res.shots << "\n";
    std::cout << os.str();
    if (!cfg.out.empty()) write_atomic(cfg.out, os.str());
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    AuditReport audit = consistency_audit(cfg.step_control());
    std::cout << audit_text(audit);
    if (!cfg.out.empty()) write_atomic(cfg.out, audit_json(audit));
    return audit.any_flagged ? 4 : 0;
}

int cmd_export_all(const RunConfig& base) {
    std::string dir = base.out.empty() ? default_output_dir() : base.out;
    for (const FamilySpec& fam : all_families()) {
        if (fam.rigid()) continue;
        RunConfig cfg = base;
        cfg.family_name = fam.name();
        cfg.out = dir + "/" + fam.name() + "-curve.csv";
        Trajectory traj = run_trajectory(cfg);
        write_atomic(cfg.out, curve_csv(traj));
        SurfaceMesh mesh = sweep_mesh(fam, traj.samples, cfg.t0, cfg.t1, cfg.rulings);
        write_atomic(dir + "/" + fam.name() + "-surface.obj", mesh_obj(mesh));
        if (is_planar(fam)) {
            RunConfig pcfg = cfg;
            pcfg.out = dir + "/" + fam.name() + "-phase.csv";
            cmd_phase(pcfg, {});
        }
    }
    {
        RunConfig tilted = base;
        tilted.family_name = "tilted-v";
        tilted.v3 = base.v3.value_or(1.0);
        tilted.out = dir + "/tilted-v-curve.csv";
        Trajectory traj = run_trajectory(tilted);
        write_atomic(tilted.out, curve_csv(traj));
    }
    RunConfig sep = base;
    sep.out = dir + "/separatrix.txt";
    cmd_separatrix(sep);
    RunConfig ver = base;
    ver.out = dir + "/audit.json";
    int rc = cmd_verify(ver);
    write_atomic(dir + "/families.txt", families_table());
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grim reapers of H^2 x R: curves, surfaces, phase portraits, verification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key/value run configuration (sections per subcommand)");

    CliOptions opt;
    auto* list = app.add_subcommand("list-families", "print the family catalog");
    auto* curve = app.add_subcommand("curve", "integrate or evaluate a generating curve to CSV");
    auto* surface = app.add_subcommand("surface", "sweep a generating curve into an OBJ mesh");
    auto* phase = app.add_subcommand("phase", "batch phase portrait of a planar family");
    auto* separatrix = app.add_subcommand("separatrix", "locate the hyperbolic-v separatrix r*");
    auto* verify = app.add_subcommand("verify", "run the whole-catalog consistency audit");
    auto* exportall = app.add_subcommand("export-all", "emit curves, meshes, portraits and the audit");

    for (CLI::App* cmd : {curve, surface, phase, separatrix, verify, exportall}) {
        bind_common(cmd, opt);
    }
    phase->add_option("--grid", opt.grid_values, "initial conditions u w [u w ...]");

    try {
        app.parse(argc, argv);
        finish_options(opt);
        if (list->parsed()) {
            std::cout << reapers::families_table();
            return 0;
        }
        if (separatrix->parsed() || verify->parsed() || exportall->parsed()) {
            if (opt.run.family_name.empty()) opt.run.family_name = "hyperbolic-v";
        }
        opt.run.validate();
        if (curve->parsed()) return cmd_curve(opt.run);
        if (surface->parsed()) return cmd_surface(opt.run);
        if (phase->parsed()) return cmd_phase(opt.run, opt.grid_values);
        if (separatrix->parsed()) return cmd_separatrix(opt.run);
        if (verify->parsed()) return cmd_verify(opt.run);
        if (exportall->parsed()) return cmd_export_all(opt.run);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const reapers::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const reapers::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const reapers::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
