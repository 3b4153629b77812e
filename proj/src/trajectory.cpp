#include "reapers/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace reapers {

double Trajectory::max_abs_residual() const {
    double m = 0.0;
    for (const auto& smp : samples) m = std::max(m, std::abs(smp.residual));
    return m;
}

const TrajectorySample& Trajectory::at_s(double s) const {
    if (samples.empty()) throw NumericalError("empty trajectory");
    auto it = std::lower_bound(samples.begin(), samples.end(), s,
                               [](const TrajectorySample& a, double v) { return a.s < v; });
    if (it == samples.end()) return samples.back();
    if (it != samples.begin() && s - std::prev(it)->s < it->s - s) --it;
    return *it;
}

std::vector<EventSpec<3>> family_events(const FamilySpec& fam) {
    SurfaceKind kind = fam.kind();
    std::vector<EventSpec<3>> evs;
    const double pi_half = M_PI / 2.0;

    auto angle = [kind](const StateN<3>& q) { return q[2]; };

    evs.push_back({"angle=+pi/2", [angle, pi_half](double, const StateN<3>& q) { return angle(q) - pi_half; },
                   0, false});
    evs.push_back({"angle=-pi/2", [angle, pi_half](double, const StateN<3>& q) { return angle(q) + pi_half; },
                   0, false});

    if (kind == SurfaceKind::Hyperbolic) {
        evs.push_back({"r->0", [](double, const StateN<3>& q) { return q[0] - 1e-6; }, -1, true});
        evs.push_back({"r->pi", [](double, const StateN<3>& q) { return (M_PI - 1e-6) - q[0]; }, -1, true});
    } else {
        int yi = kind == SurfaceKind::Vertical ? 1 : 0;
        evs.push_back({"y->0", [yi](double, const StateN<3>& q) { return q[yi] - 1e-9; }, -1, true});
    }

    // Phase-plane speed stagnation near an equilibrium; informational.
    evs.push_back({"near-equilibrium",
                   [fam](double, const StateN<3>& q) {
                       try {
                           StateN<3> d = family_rhs(fam, q);
                           double hspeed = fam.kind() == SurfaceKind::Vertical
                                               ? std::hypot(d[1], d[2])
                                               : std::hypot(d[0], d[2]);
                           return hspeed - 1e-10;
                       } catch (const DomainError&) {
                           return 1.0; // outside the domain; the guards handle it
                       }
                   },
                   -1, false});
    return evs;
}

namespace {

void fill_diagnostics(const FamilySpec& fam, TrajectorySample& smp) {
    SurfaceKind kind = fam.kind();
    StateN<3> d = family_rhs(fam, smp.state);
    smp.angle_rate = d[2];
    if (kind == SurfaceKind::TiltedRuled) {
        // Closed-form normal/curvature are not available; the oracle fills these.
        smp.diagnostics_valid = false;
        return;
    }
    smp.mean_curv = mean_curvature(kind, smp.state, smp.angle_rate);
    smp.pairing = field_pairing(kind, fam.field, smp.state, 0.0);
    try {
        if (auto q = first_integral(fam, smp.state)) smp.invariant = q;
    } catch (const DomainError&) {
        // singular leaf of the conserved quantity; leave it empty
    }
}

} // namespace

Trajectory integrate_family(const FamilySpec& fam, const ProfileState& initial, double s0,
                            double s1, const StepControl& ctrl) {
    if (fam.rigid()) throw DomainError("family " + fam.name() + " is rigid; see rigid_solutions");
    if (!(s0 <= 0.0 && 0.0 <= s1)) throw DomainError("span must contain s = 0");
    check_profile(fam.kind(), initial);

    auto rhs = [&fam](double, const StateN<3>& q) { return family_rhs(fam, q); };
    Dopri5<3> solver(rhs, ctrl);
    auto events = family_events(fam);

    Trajectory traj;
    traj.family = fam;

    auto absorb = [&](const OdeSolution<3>& sol, bool backward) {
        size_t n = sol.s.size();
        for (size_t i = 0; i < n; ++i) {
            size_t idx = backward ? n - 1 - i : i;
            if (backward && sol.s[idx] == 0.0) continue; // s = 0 kept from forward half
            TrajectorySample smp;
            smp.s = sol.s[idx];
            smp.state = sol.y[idx];
            traj.samples.push_back(smp);
        }
        for (const auto& e : sol.events) traj.events.push_back(e);
        if (sol.event_terminated) {
            traj.complete = false;
            traj.termination = sol.terminal_event;
        }
    };

    if (s0 < 0.0) absorb(solver.run(0.0, initial, s0, events), true);
    absorb(solver.run(0.0, initial, s1, events), false);

    std::sort(traj.samples.begin(), traj.samples.end(),
              [](const TrajectorySample& a, const TrajectorySample& b) { return a.s < b.s; });
    std::sort(traj.events.begin(), traj.events.end(),
              [](const EventRecord<3>& a, const EventRecord<3>& b) { return a.s < b.s; });

    for (auto& smp : traj.samples) fill_diagnostics(fam, smp);

    // Orientation: pick the sign with the smaller max |H - sign * <N,X>|.
    if (fam.kind() != SurfaceKind::TiltedRuled) {
        double worst_plus = 0.0, worst_minus = 0.0;
        for (const auto& smp : traj.samples) {
            worst_plus = std::max(worst_plus, std::abs(smp.mean_curv - smp.pairing));
            worst_minus = std::max(worst_minus, std::abs(smp.mean_curv + smp.pairing));
        }
        traj.orientation_sign = worst_plus <= worst_minus ? +1 : -1;
        for (auto& smp : traj.samples) {
            smp.residual = smp.mean_curv - traj.orientation_sign * smp.pairing;
        }
    }
    return traj;
}

} // namespace reapers
