#include "reapers/oracle.hpp"

#include "reapers/phase.hpp"

#include <chrono>
#include <cmath>

namespace reapers {

namespace {

Vec3 point_minus(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

Vec3 scale(const Vec3& v, double c) { return {v[0] * c, v[1] * c, v[2] * c}; }

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

} // namespace

FundamentalForms numeric_fundamental_forms(const SurfacePatch& patch, double s, double t, double h) {
    const Point p = patch.eval(s, t);
    const Point ps1 = patch.eval(s + h, t), ps0 = patch.eval(s - h, t);
    const Point pt1 = patch.eval(s, t + h), pt0 = patch.eval(s, t - h);
    const Point ppp = patch.eval(s + h, t + h), ppm = patch.eval(s + h, t - h);
    const Point pmp = patch.eval(s - h, t + h), pmm = patch.eval(s - h, t - h);

    Vec3 Fs = scale(point_minus(ps1, ps0), 1.0 / (2.0 * h));
    Vec3 Ft = scale(point_minus(pt1, pt0), 1.0 / (2.0 * h));
    Vec3 Fss = scale(add(point_minus(ps1, p), point_minus(ps0, p)), 1.0 / (h * h));
    Vec3 Ftt = scale(add(point_minus(pt1, p), point_minus(pt0, p)), 1.0 / (h * h));
    Vec3 Fst = scale(add(point_minus(ppp, ppm), point_minus(pmm, pmp)), 1.0 / (4.0 * h * h));

    Vec3 Dss = add(Fss, christoffel(p, Fs, Fs));
    Vec3 Dst = add(Fst, christoffel(p, Fs, Ft));
    Vec3 Dtt = add(Ftt, christoffel(p, Ft, Ft));

    FrameVec fs = frame_from_coord(p, Fs);
    FrameVec ft = frame_from_coord(p, Ft);
    FrameVec n = fs.cross(ft);
    double nn = n.norm();
    if (nn < 1e-14) throw NumericalError("degenerate tangent plane in the oracle");
    n = n.normalized();

    FundamentalForms f;
    f.g11 = metric_inner(p, Fs, Fs);
    f.g12 = metric_inner(p, Fs, Ft);
    f.g22 = metric_inner(p, Ft, Ft);
    double det = f.g11 * f.g22 - f.g12 * f.g12;
    if (det < 1e-14) throw NumericalError("degenerate first fundamental form");

    Vec3 ncoord = coord_from_frame(p, n);
    f.b11 = metric_inner(p, ncoord, Dss);
    f.b12 = metric_inner(p, ncoord, Dst);
    f.b22 = metric_inner(p, ncoord, Dtt);
    f.normal = n;
    f.H = (f.b11 * f.g22 - 2.0 * f.b12 * f.g12 + f.b22 * f.g11) / (2.0 * det);
    return f;
}

double oracle_step(const SurfacePatch& patch, double s, double t) {
    // Second differences carry a rounding floor of eps/h^2, so h must stay
    // well above 1e-5 for the Richardson pair (h, h/2) to reach ~1e-8.
    Point p = patch.eval(s, t);
    return 1e-4 * std::max(1.0, p.y);
}

OracleSample oracle_eval(const SurfacePatch& patch, double s, double t, std::optional<Field> field) {
    double h = oracle_step(patch, s, t);
    OracleSample out;
    out.raw_h = numeric_fundamental_forms(patch, s, t, h);
    out.raw_half = numeric_fundamental_forms(patch, s, t, 0.5 * h);
    out.H = (4.0 * out.raw_half.H - out.raw_h.H) / 3.0;
    out.at = patch.eval(s, t);
    if (field) {
        double ph = out.raw_h.normal.dot(field_in_frame(*field, out.at));
        double p2 = out.raw_half.normal.dot(field_in_frame(*field, out.at));
        out.pairing = (4.0 * p2 - ph) / 3.0;
    }
    return out;
}

double numeric_mean_curvature(const SurfacePatch& patch, double s, double t) {
    return oracle_eval(patch, s, t).H;
}

SurfacePatch trajectory_patch(const FamilySpec& fam, const Trajectory& traj, double s_base) {
    const TrajectorySample& base = traj.at_s(s_base);
    double s0 = base.s;
    ProfileState q0 = base.state;
    SurfaceKind kind = fam.kind();
    double tilt = fam.tilt.value_or(0.0);
    auto rhs = [fam](double, const StateN<3>& q) { return family_rhs(fam, q); };
    SurfacePatch patch;
    patch.eval = [kind, tilt, rhs, s0, q0](double s, double t) {
        ProfileState q = s == s0 ? q0 : rk4_flow<3>(rhs, q0, s0, s, 8);
        return immersion(kind, q, t, tilt);
    };
    return patch;
}

SurfacePatch closed_form_patch(const closed_forms::ClosedFormBranch& branch) {
    SurfaceKind kind = branch.family.kind();
    SurfacePatch patch;
    auto br = branch;
    patch.eval = [br, kind](double s, double t) { return immersion(kind, br.eval(s), t); };
    return patch;
}

double OracleReport::min_residual() const { return std::min(max_residual_plus, max_residual_minus); }

namespace {

OracleReport scan_with_rhs(const FamilySpec& fam, const Trajectory& traj,
                           std::span<const double> t_samples, int scan_points,
                           const std::function<StateN<3>(double, const StateN<3>&)>& rhs) {
    auto t_start = std::chrono::steady_clock::now();
    OracleReport rep;
    rep.family = fam.describe();
    if (traj.samples.empty()) throw NumericalError("residual scan on an empty trajectory");
    SurfaceKind kind = fam.kind();
    double tilt = fam.tilt.value_or(0.0);

    double s_lo = traj.samples.front().s, s_hi = traj.samples.back().s;
    for (int i = 0; i < scan_points; ++i) {
        double s = scan_points == 1 ? s_lo : s_lo + (s_hi - s_lo) * i / (scan_points - 1.0);
        const TrajectorySample& base = traj.at_s(s);
        SurfacePatch patch;
        double s0 = base.s;
        ProfileState q0 = base.state;
        patch.eval = [kind, tilt, rhs, s0, q0](double ss, double t) {
            ProfileState q = ss == s0 ? q0 : rk4_flow<3>(rhs, q0, s0, ss, 8);
            return immersion(kind, q, t, tilt);
        };
        for (double t : t_samples) {
            try {
                OracleSample smp = oracle_eval(patch, base.s, t, fam.field);
                rep.max_residual_plus = std::max(rep.max_residual_plus, std::abs(smp.H - smp.pairing));
                rep.max_residual_minus = std::max(rep.max_residual_minus, std::abs(smp.H + smp.pairing));
                ++rep.sample_count;
            } catch (const DomainError&) {
                ++rep.skipped;
            } catch (const NumericalError&) {
                ++rep.skipped;
            }
        }
    }
    rep.chosen_sign = rep.max_residual_plus <= rep.max_residual_minus ? +1 : -1;

    // first-integral drift from the trajectory's stored invariant
    double qmin = 1e300, qmax = -1e300;
    bool any = false;
    for (const auto& smp : traj.samples) {
        if (smp.invariant) {
            any = true;
            qmin = std::min(qmin, *smp.invariant);
            qmax = std::max(qmax, *smp.invariant);
        }
    }
    if (any) rep.first_integral_drift = qmax - qmin;

    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

} // namespace

OracleReport residual_scan(const FamilySpec& fam, const Trajectory& traj,
                           std::span<const double> t_samples, int scan_points) {
    auto rhs = [fam](double, const StateN<3>& q) { return family_rhs(fam, q); };
    return scan_with_rhs(fam, traj, t_samples, scan_points, rhs);
}

void annotate_with_oracle(Trajectory& traj) {
    const FamilySpec& fam = traj.family;
    double worst_plus = 0.0, worst_minus = 0.0;
    std::vector<std::pair<double, double>> hp(traj.samples.size());
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        SurfacePatch patch = trajectory_patch(fam, traj, traj.samples[i].s);
        OracleSample smp = oracle_eval(patch, traj.samples[i].s, 0.0, fam.field);
        hp[i] = {smp.H, smp.pairing};
        worst_plus = std::max(worst_plus, std::abs(smp.H - smp.pairing));
        worst_minus = std::max(worst_minus, std::abs(smp.H + smp.pairing));
    }
    traj.orientation_sign = worst_plus <= worst_minus ? +1 : -1;
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        traj.samples[i].mean_curv = hp[i].first;
        traj.samples[i].pairing = hp[i].second;
        traj.samples[i].residual = hp[i].first - traj.orientation_sign * hp[i].second;
        traj.samples[i].diagnostics_valid = true;
    }
}

RotationalReport rotational_rigidity_check(double y0, Field field, double graph_slope) {
    if (!(y0 > 0.0 && y0 < 1.0)) throw DomainError("rotational profile requires y0 in (0, 1)");
    if (field != Field::P && field != Field::H)
        throw DomainError("rotational rigidity concerns the p and h fields");
    RotationalReport rep;
    const double ts[] = {0.0, M_PI / 6.0, M_PI / 2.0, 2.0};

    // Cylinder in the Euclidean-angle chart: the orbit circle of (0, y0) about
    // the axis point (0, 1) has Euclidean center cosh(d) and radius sinh(d).
    double d = std::abs(std::log(y0));
    double c = std::cosh(d), a = std::sinh(d);
    SurfacePatch euclid;
    euclid.eval = [c, a](double s, double t) {
        return make_point(a * std::sin(t), c + a * std::cos(t), s);
    };
    double pair_min = 1e300, pair_max = -1e300;
    for (double t : ts) {
        OracleSample smp = oracle_eval(euclid, 0.1, t, field);
        if (field == Field::P) {
            double law = std::sin(t) / smp.at.y;
            rep.cylinder_law_deviation =
                std::max(rep.cylinder_law_deviation, std::abs(std::abs(smp.pairing) - std::abs(law)));
        }
        pair_min = std::min(pair_min, smp.pairing);
        pair_max = std::max(pair_max, smp.pairing);
    }
    rep.cylinder_t_variation = pair_max - pair_min;

    // Graph profiles in the rotation chart: z' = 0 is the slice; z' != 0 shows
    // the t-variation that forces rigidity.
    auto graph_patch = [&](double slope) {
        SurfacePatch p;
        p.eval = [slope](double s, double t) {
            ProfileState q{s, slope * s, 0.0};
            return immersion(SurfaceKind::Rotational, q, t);
        };
        return p;
    };
    SurfacePatch slice = graph_patch(0.0);
    double worst = 0.0;
    for (double t : ts) {
        OracleSample smp = oracle_eval(slice, 0.5, t, field);
        worst = std::max(worst, std::max(std::abs(smp.H - smp.pairing), std::abs(smp.H)));
    }
    rep.slice_residual = worst;

    SurfacePatch tilted_graph = graph_patch(graph_slope);
    pair_min = 1e300;
    pair_max = -1e300;
    for (double t : ts) {
        OracleSample smp = oracle_eval(tilted_graph, 0.5, t, field);
        pair_min = std::min(pair_min, smp.pairing);
        pair_max = std::max(pair_max, smp.pairing);
    }
    rep.graph_t_variation = pair_max - pair_min;
    return rep;
}

std::vector<ProfileState> default_initial_conditions(const FamilySpec& fam) {
    SurfaceKind kind = fam.kind();
    std::vector<ProfileState> ics;
    switch (kind) {
        case SurfaceKind::Vertical:
            if (fam.field == Field::CPlus || fam.field == Field::CMinus) {
                for (double y0 : {0.5, 1.0, 1.5, 2.5, 3.0}) ics.push_back({0.0, y0, 0.2});
            } else if (fam.field == Field::H) {
                ics.push_back({0.0, 1.0, 0.0});
                ics.push_back({0.2, 1.0, 0.1});
                ics.push_back({0.0, 2.0, 0.0});
                ics.push_back({-0.3, 1.5, -0.2});
                ics.push_back({0.5, 0.8, 0.3});
            } else {
                for (double y0 : {0.5, 1.0, 1.5, 2.0, 3.0}) ics.push_back({0.0, y0, 0.0});
            }
            break;
        case SurfaceKind::Parabolic:
        case SurfaceKind::TiltedRuled: {
            double th0 = fam.field == Field::V ? 2.0 * std::atan(0.5) : 1.2;
            int i = 0;
            for (double y0 : {0.6, 0.8, 1.0, 1.4, 1.9}) {
                ics.push_back({y0, 0.0, th0 + 0.15 * (i++ - 2)});
            }
            break;
        }
        case SurfaceKind::Hyperbolic: {
            if (fam.field == Field::H) {
                // stay off the singular leaf sin(rho) = 0 for the first integral
                int i = 0;
                for (double r0 : {0.7, 1.1, M_PI / 2.0, 1.9, 2.3}) {
                    ics.push_back({r0, 0.0, 0.4 + 0.3 * (i++)});
                }
            } else {
                int i = 0;
                for (double r0 : {0.6, 1.0, M_PI / 2.0, 1.9, 2.4}) {
                    ics.push_back({r0, 0.0, 0.1 * (i++ - 2)});
                }
            }
            break;
        }
        default:
            throw DomainError("no default initial conditions for this kind");
    }
    return ics;
}

AuditReport consistency_audit(const StepControl& ctrl, double tolerance) {
    AuditReport audit;
    audit.first_integral_exponent = vertical_cplus_integral_exponent();

    const double t_killing[] = {0.0, 1.0, 2.0};
    std::vector<FamilySpec> fams = all_families();
    for (double v3 : {0.5, 1.0, 2.0}) {
        fams.push_back({Translation::Parabolic, Field::V, v3});
    }

    for (const FamilySpec& fam : fams) {
        AuditRow row;
        row.family = fam;
        row.cls = family_class_name(fam.cls());
        if (fam.rigid()) {
            // rigid families: sample the explicit solution set
            OracleReport rep;
            rep.family = fam.describe();
            double worst = 0.0;
            for (const RigidSolution& sol : rigid_solutions(fam)) {
                for (int i = 0; i <= 20; ++i) {
                    double s = -2.0 + 0.2 * i;
                    ProfileState q = sol.sample(s);
                    ResidualValue rv = closed_form_residual(SurfaceKind::Hyperbolic, fam.field, q, 0.0, +1);
                    worst = std::max(worst, std::abs(rv.value));
                }
                rep.note += sol.description + "; ";
            }
            rep.max_residual_plus = rep.max_residual_minus = worst;
            rep.sample_count = 42;
            row.report = rep;
            row.status = "rigid";
            audit.rows.push_back(row);
            continue;
        }

        StepControl c = ctrl;
        c.sample_spacing = 0.05;
        OracleReport agg;
        agg.family = fam.describe();
        for (const ProfileState& ic : default_initial_conditions(fam)) {
            Trajectory traj = integrate_family(fam, ic, -4.0, 4.0, c);
            OracleReport rep = residual_scan(fam, traj, t_killing, 15);
            agg.sample_count += rep.sample_count;
            agg.skipped += rep.skipped;
            agg.max_residual_plus = std::max(agg.max_residual_plus, rep.max_residual_plus);
            agg.max_residual_minus = std::max(agg.max_residual_minus, rep.max_residual_minus);
            agg.runtime_seconds += rep.runtime_seconds;
            if (rep.first_integral_drift) {
                double d = std::max(agg.first_integral_drift.value_or(0.0), *rep.first_integral_drift);
                agg.first_integral_drift = d;
            }
        }
        agg.chosen_sign = agg.max_residual_plus <= agg.max_residual_minus ? +1 : -1;
        agg.flagged = agg.min_residual() > tolerance;
        if (fam.printed_ode_flagged() || fam.tilt) {
            agg.printed_ode = printed_ode_text(fam);
            agg.consistent_variant = consistent_variant_text(fam);
        }

        // For flagged printed systems, also scan the consistent variant.
        if (fam.printed_ode_flagged()) {
            auto vrhs = [fam](double, const StateN<3>& q) {
                return *consistent_variant_rhs(fam, q);
            };
            ProfileState ic = default_initial_conditions(fam).front();
            Dopri5<3> solver(vrhs, c);
            auto sol = solver.run(0.0, ic, 2.0);
            Trajectory vtraj;
            vtraj.family = fam;
            for (size_t i = 0; i < sol.s.size(); ++i) {
                TrajectorySample smp;
                smp.s = sol.s[i];
                smp.state = sol.y[i];
                vtraj.samples.push_back(smp);
            }
            OracleReport vrep = scan_with_rhs(fam, vtraj, t_killing, 15, vrhs);
            agg.variant_max_residual = vrep.min_residual();
        }
        if (fam.tilt) {
            // Show that the printed tilted ODE fails where the operative one passes.
            auto prhs = [fam](double, const StateN<3>& q) { return printed_rhs(fam, q); };
            ProfileState ic = default_initial_conditions(fam).front();
            Dopri5<3> solver(prhs, c);
            auto sol = solver.run(0.0, ic, 1.5);
            Trajectory ptraj;
            ptraj.family = fam;
            for (size_t i = 0; i < sol.s.size(); ++i) {
                TrajectorySample smp;
                smp.s = sol.s[i];
                smp.state = sol.y[i];
                ptraj.samples.push_back(smp);
            }
            OracleReport prep = scan_with_rhs(fam, ptraj, t_killing, 15, prhs);
            agg.printed_form_residual = prep.min_residual();
        }

        row.report = agg;
        row.status = agg.flagged ? "flagged" : (fam.minimal() ? "minimal" : "ok");
        audit.rows.push_back(row);
        audit.any_flagged = audit.any_flagged || agg.flagged;
    }

    // first-integral exponent arbitration over one period of a vertical c+ orbit
    {
        FamilySpec cplus{Translation::Vertical, Field::CPlus, std::nullopt};
        PeriodResult period = closed_orbit_period(cplus, 1.2, ctrl);
        auto rhs2 = [&cplus](double, const StateN<2>& p) {
            StateN<3> q{0.0, p[0], p[1]};
            StateN<3> dv = family_rhs(cplus, q);
            return StateN<2>{dv[1], dv[2]};
        };
        StepControl c = ctrl;
        c.sample_spacing = 0.01;
        Dopri5<2> solver(rhs2, c);
        auto sol = solver.run(0.0, {1.2, 0.0}, period.period);
        double d1min = 1e300, d1max = -1e300, d2min = 1e300, d2max = -1e300;
        for (const auto& p : sol.y) {
            double q1 = std::cos(p[1]) * std::exp(-2.0 / p[0]) / p[0];
            double q2 = q1 / p[0];
            d1min = std::min(d1min, q1);
            d1max = std::max(d1max, q1);
            d2min = std::min(d2min, q2);
            d2max = std::max(d2max, q2);
        }
        audit.integral_drift_selected = d1max - d1min;
        audit.integral_drift_rejected = d2max - d2min;
    }

    audit.rotational = rotational_rigidity_check(0.5, Field::P);
    audit.notes =
        "first integral of vertical-c+: cos(theta) e^{-2/y} / y^k with k = " +
        std::to_string(audit.first_integral_exponent) +
        " (the k = 2 variant drifts and is rejected); rotational cylinder pairing follows "
        "sin(t)/y in the Euclidean-angle chart.";
    return audit;
}

} // namespace reapers
