#include "reapers/phase.hpp"

#include <algorithm>
#include <cmath>

namespace reapers {

namespace {
const double kPi = M_PI;
const double kPiHalf = M_PI / 2.0;
const double kAtan2Const = std::atan(2.0);
} // namespace

std::string orbit_tag_name(OrbitTag t) {
    switch (t) {
        case OrbitTag::SymmetricGraph: return "symmetric-graph";
        case OrbitTag::Graph: return "graph";
        case OrbitTag::Separatrix: return "separatrix";
        case OrbitTag::NonGraph: return "non-graph";
    }
    return "?";
}

double nullcline_lambda(double r) {
    double c = std::cos(r);
    if (std::abs(c) < 1e-15) throw DomainError("Lambda has a pole at r = pi/2");
    return -std::atan(2.0 / c);
}

bool is_planar(const FamilySpec& fam) {
    if (fam.tilt) return false;
    if (fam.translation == Translation::Hyperbolic && fam.field == Field::V) return true;
    if (fam.translation == Translation::Vertical &&
        (fam.field == Field::P || fam.field == Field::CPlus || fam.field == Field::CMinus))
        return true;
    if (fam.translation == Translation::Parabolic &&
        (fam.field == Field::CPlus || fam.field == Field::CMinus))
        return true;
    return false;
}

StateN<2> planar_rhs(const FamilySpec& fam, const StateN<2>& p) {
    if (!is_planar(fam)) throw DomainError("family " + fam.name() + " has no planar reduction");
    if (fam.translation == Translation::Hyperbolic) {
        // (r, rho)
        double r = p[0], rho = p[1];
        return {std::sin(r) * std::cos(rho), 2.0 * std::cos(rho) + std::sin(rho) * std::cos(r)};
    }
    // (y, theta): embed into the 3-state rhs of the family
    StateN<3> q3;
    if (fam.translation == Translation::Vertical) {
        q3 = {0.0, p[0], p[1]}; // x enters no vertical planar rhs
        StateN<3> d = family_rhs(fam, q3);
        return {d[1], d[2]};
    }
    q3 = {p[0], 0.0, p[1]};
    StateN<3> d = family_rhs(fam, q3);
    return {d[0], d[2]};
}

std::vector<PhasePoint> equilibria(const FamilySpec& fam, PhasePoint lo, PhasePoint hi, int grid) {
    std::vector<PhasePoint> found;
    auto f = [&](double u, double w) { return planar_rhs(fam, {u, w}); };
    double du = (hi.u - lo.u) / grid, dw = (hi.w - lo.w) / grid;

    auto polish = [&](double u, double w) -> std::optional<PhasePoint> {
        for (int it = 0; it < 60; ++it) {
            StateN<2> v = f(u, w);
            double eps = 1e-7;
            StateN<2> fu = f(u + eps, w), fub = f(u - eps, w);
            StateN<2> fw = f(u, w + eps), fwb = f(u, w - eps);
            double j11 = (fu[0] - fub[0]) / (2 * eps), j12 = (fw[0] - fwb[0]) / (2 * eps);
            double j21 = (fu[1] - fub[1]) / (2 * eps), j22 = (fw[1] - fwb[1]) / (2 * eps);
            double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-14) return std::nullopt;
            double su = (j22 * v[0] - j12 * v[1]) / det;
            double sw = (-j21 * v[0] + j11 * v[1]) / det;
            u -= su;
            w -= sw;
            if (!(u > lo.u - du && u < hi.u + du && w > lo.w - dw && w < hi.w + dw)) return std::nullopt;
            if (std::hypot(su, sw) < 1e-13) {
                StateN<2> chk = f(u, w);
                if (std::hypot(chk[0], chk[1]) < 1e-10) return PhasePoint{u, w};
                return std::nullopt;
            }
        }
        return std::nullopt;
    };

    for (int i = 1; i < grid; ++i) {
        for (int j = 1; j < grid; ++j) {
            double u = lo.u + i * du, w = lo.w + j * dw;
            StateN<2> v;
            try {
                v = f(u, w);
            } catch (const DomainError&) {
                continue;
            }
            if (std::hypot(v[0], v[1]) > 0.5 * std::min(du, dw) * 10.0) continue;
            if (auto p = polish(u, w)) {
                bool dup = false;
                for (const auto& q : found) {
                    if (std::hypot(q.u - p->u, q.w - p->w) < 1e-6) dup = true;
                }
                if (!dup && p->u > lo.u && p->u < hi.u && p->w > lo.w && p->w < hi.w)
                    found.push_back(*p);
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const PhasePoint& a, const PhasePoint& b) {
        return a.u != b.u ? a.u < b.u : a.w < b.w;
    });
    return found;
}

std::vector<PhasePoint> equilibria(const FamilySpec& fam) {
    if (fam.translation == Translation::Hyperbolic && fam.field == Field::V) {
        return equilibria(fam, {1e-3, -kPi + 1e-3}, {kPi - 1e-3, kPi - 1e-3});
    }
    if (fam.translation == Translation::Vertical) {
        return equilibria(fam, {0.05, -kPiHalf + 1e-3}, {6.0, kPiHalf - 1e-3});
    }
    return equilibria(fam, {0.05, -kPi + 1e-3}, {6.0, kPi - 1e-3});
}

PhasePoint symmetry_image(SymmetryMap which, PhasePoint p) {
    if (which == SymmetryMap::RhoShift) {
        double shifted = p.w > 0.0 ? p.w - kPi : p.w + kPi;
        return {p.u, shifted};
    }
    return {kPi - p.u, -p.w};
}

std::vector<std::pair<double, StateN<2>>> orbit_symmetry(
    const std::vector<std::pair<double, StateN<2>>>& orbit, SymmetryMap which) {
    std::vector<std::pair<double, StateN<2>>> out;
    out.reserve(orbit.size());
    for (auto it = orbit.rbegin(); it != orbit.rend(); ++it) {
        PhasePoint img = symmetry_image(which, {it->second[0], it->second[1]});
        out.push_back({-it->first, {img.u, img.w}});
    }
    return out;
}

namespace {

FamilySpec hyperbolic_v() { return {Translation::Hyperbolic, Field::V, std::nullopt}; }

// Shooting outcome for the separatrix dichotomy.
//   +1: crossed r = pi/2 with rho < pi/2 (graph side, r0 > r*)
//   -1: crossed rho = pi/2 with r < pi/2 (non-graph side, r0 < r*)
int shoot_side(double r0, const StepControl& ctrl, double max_arc) {
    auto rhs = [](double, const StateN<2>& p) {
        return planar_rhs(hyperbolic_v(), p);
    };
    Dopri5<2> solver(rhs, ctrl);
    std::vector<EventSpec<2>> evs;
    evs.push_back({"r-cross", [](double, const StateN<2>& p) { return p[0] - kPiHalf; }, +1, true});
    evs.push_back({"rho-cross", [](double, const StateN<2>& p) { return p[1] - kPiHalf; }, +1, true});
    auto sol = solver.run(0.0, {r0, 0.0}, max_arc, evs);
    if (!sol.event_terminated) return 0;
    return sol.terminal_event == "r-cross" ? +1 : -1;
}

} // namespace

SeparatrixResult find_separatrix(double tol, const StepControl& ctrl) {
    if (tol < 1e-12) throw DomainError("separatrix tolerance below 1e-12");
    const double max_arc = 1000.0;
    double lo = 1e-3, hi = kPiHalf - 1e-3;
    int lo_side = shoot_side(lo, ctrl, max_arc);
    int hi_side = shoot_side(hi, ctrl, max_arc);
    if (lo_side != -1 || hi_side != +1) {
        throw NumericalError("separatrix dichotomy ambiguous at the seed bracket");
    }
    SeparatrixResult res;
    res.shots = 2;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        int side = shoot_side(mid, ctrl, max_arc);
        ++res.shots;
        if (side == 0) throw NumericalError("separatrix dichotomy ambiguous at r0 = " + std::to_string(mid));
        (side > 0 ? hi : lo) = mid;
    }
    res.lo = lo;
    res.hi = hi;
    res.r_star = 0.5 * (lo + hi);
    return res;
}

double orbit_min_distance(double r0, PhasePoint target, const StepControl& ctrl, double max_arc) {
    auto rhs = [](double, const StateN<2>& p) { return planar_rhs(hyperbolic_v(), p); };
    StepControl fine = ctrl;
    fine.sample_spacing = 1e-3;
    Dopri5<2> solver(rhs, fine);
    std::vector<EventSpec<2>> evs;
    // Stop once clearly past the saddle region.
    evs.push_back({"r-high", [](double, const StateN<2>& p) { return p[0] - (kPiHalf + 0.3); }, +1, true});
    evs.push_back({"rho-high", [](double, const StateN<2>& p) { return p[1] - (kPiHalf + 0.3); }, +1, true});
    auto sol = solver.run(0.0, {r0, 0.0}, max_arc, evs);
    double best = 1e300;
    for (size_t i = 0; i < sol.s.size(); ++i) {
        best = std::min(best, std::hypot(sol.y[i][0] - target.u, sol.y[i][1] - target.w));
    }
    return best;
}

double lambda_crossing_abscissa(double r0, const StepControl& ctrl) {
    auto rhs = [](double, const StateN<2>& p) { return planar_rhs(hyperbolic_v(), p); };
    Dopri5<2> solver(rhs, ctrl);
    std::vector<EventSpec<2>> evs;
    // On the nullcline rho' vanishes; for launches from (r0, 0) with
    // r0 > r*, rho' falls through zero exactly at the Lambda crossing.
    evs.push_back({"lambda",
                   [](double, const StateN<2>& p) {
                       return 2.0 * std::cos(p[1]) + std::sin(p[1]) * std::cos(p[0]);
                   },
                   -1, true});
    auto sol = solver.run(0.0, {r0, 0.0}, 1000.0, evs);
    if (!sol.event_terminated) throw NumericalError("orbit did not cross the nullcline");
    return sol.y.back()[0];
}

namespace {

// Integrate toward a boundary corner, reporting the closest approach within
// the configured box.
struct CornerApproach {
    PhasePoint corner;
    double distance = 1e300;
};

CornerApproach approach_corner(double r0, double dir_sign, const StepControl& ctrl) {
    auto rhs = [dir_sign](double, const StateN<2>& p) {
        StateN<2> d = planar_rhs(hyperbolic_v(), p);
        return StateN<2>{dir_sign * d[0], dir_sign * d[1]};
    };
    StepControl fine = ctrl;
    fine.sample_spacing = 0.0;
    Dopri5<2> solver(rhs, fine);
    std::vector<EventSpec<2>> evs;
    evs.push_back({"r-edge",
                   [](double, const StateN<2>& p) {
                       return std::min(p[0] - 1e-6, (kPi - 1e-6) - p[0]);
                   },
                   -1, true});
    auto sol = solver.run(0.0, {r0, 0.0}, 200.0, evs);
    const PhasePoint corners[4] = {{kPi, kAtan2Const},
                                   {0.0, -kAtan2Const},
                                   {0.0, kPi - kAtan2Const},
                                   {kPiHalf, kPiHalf}};
    CornerApproach out;
    const StateN<2>& last = sol.y.back();
    for (const auto& c : corners) {
        double d = std::hypot(last[0] - c.u, last[1] - c.w);
        if (d < out.distance) {
            out.distance = d;
            out.corner = c;
        }
    }
    return out;
}

} // namespace

OrbitClass classify_orbit(double r0, double r_star, const StepControl& ctrl) {
    if (!(r0 > 0.0 && r0 <= kPiHalf)) throw DomainError("classify_orbit requires r0 in (0, pi/2]");
    OrbitClass out;

    CornerApproach back = approach_corner(r0, -1.0, ctrl);
    out.backward_limit = back.corner;
    out.backward_limit_error = back.distance;

    if (r0 == kPiHalf) {
        out.tag = OrbitTag::SymmetricGraph;
    } else if (r0 > r_star) {
        out.tag = OrbitTag::Graph;
    } else if (r0 < r_star) {
        out.tag = OrbitTag::NonGraph;
    } else {
        out.tag = OrbitTag::Separatrix;
    }

    if (out.tag == OrbitTag::Separatrix) {
        out.forward_limit = {kPiHalf, kPiHalf};
        out.forward_limit_error = orbit_min_distance(r0, {kPiHalf, kPiHalf}, ctrl);
    } else {
        CornerApproach fwd = approach_corner(r0, +1.0, ctrl);
        out.forward_limit = fwd.corner;
        out.forward_limit_error = fwd.distance;
    }
    return out;
}

PeriodResult closed_orbit_period(const FamilySpec& fam, double y0, const StepControl& ctrl) {
    if (!is_planar(fam)) throw DomainError("periodic orbits are sought in planar systems only");
    auto rhs = [&fam](double, const StateN<2>& p) { return planar_rhs(fam, p); };
    Dopri5<2> solver(rhs, ctrl);
    std::vector<EventSpec<2>> evs;
    // Second return to the section w = 0 closes the loop.
    evs.push_back({"section", [](double, const StateN<2>& p) { return p[1]; }, 0, false});
    auto sol = solver.run(0.0, {y0, 0.0}, 500.0, evs);
    int count = 0;
    for (const auto& e : sol.events) {
        ++count;
        if (count == 2) {
            PeriodResult res;
            res.period = e.s;
            res.closure_distance = std::hypot(e.state[0] - y0, e.state[1]);
            return res;
        }
    }
    throw NumericalError("orbit through (" + std::to_string(y0) + ", 0) did not close");
}

Portrait planar_portrait(const FamilySpec& fam, const std::vector<PhasePoint>& grid,
                         const StepControl& ctrl) {
    if (!is_planar(fam)) throw DomainError("family " + fam.name() + " has no planar reduction");
    Portrait port;
    port.family = fam;
    bool hyperbolic = fam.translation == Translation::Hyperbolic;

    for (const PhasePoint& ic : grid) {
        PortraitOrbit orb;
        orb.ic = ic;

        auto rhs = [&fam](double, const StateN<2>& p) { return planar_rhs(fam, p); };
        StepControl sampled = ctrl;
        if (sampled.sample_spacing <= 0.0) sampled.sample_spacing = 0.01;
        Dopri5<2> solver(rhs, sampled);

        std::vector<EventSpec<2>> evs;
        if (hyperbolic) {
            evs.push_back({"r-edge",
                           [](double, const StateN<2>& p) {
                               return std::min(p[0] - 1e-4, (kPi - 1e-4) - p[0]);
                           },
                           -1, true});
        } else {
            evs.push_back({"y-low", [](double, const StateN<2>& p) { return p[0] - 1e-4; }, -1, true});
            evs.push_back({"y-high", [](double, const StateN<2>& p) { return 50.0 - p[0]; }, -1, true});
        }

        auto fwd = solver.run(0.0, {ic.u, ic.w}, 60.0, evs);
        auto bwd = solver.run(0.0, {ic.u, ic.w}, -60.0, evs);

        for (size_t i = bwd.s.size(); i-- > 1;) orb.samples.push_back({bwd.s[i], bwd.y[i]});
        for (size_t i = 0; i < fwd.s.size(); ++i) orb.samples.push_back({fwd.s[i], fwd.y[i]});

        auto endpoint_tag = [&](const OdeSolution<2>& sol) -> std::string {
            if (sol.event_terminated) {
                if (sol.terminal_event == "y-low") return "y->0";
                if (sol.terminal_event == "y-high") return "y->inf";
                return "strip-edge";
            }
            // algebraically creeping ends (the vertical p corners) never reach
            // the hard thresholds; classify by proximity instead
            if (!sol.y.empty() && sol.y.back()[0] < 0.3) return "y->0";
            return "interior";
        };

        if (hyperbolic) {
            orb.classification = "swept";
        } else if (fam.field == Field::CPlus && fam.translation == Translation::Vertical &&
                   std::abs(ic.w) < 1e-12) {
            // closed-orbit detection around (2, 0)
            try {
                PeriodResult pr = closed_orbit_period(fam, ic.u, ctrl);
                if (pr.closure_distance < 1e-6) {
                    orb.classification = "closed";
                    orb.period = pr.period;
                } else {
                    orb.classification = "open";
                }
            } catch (const NumericalError&) {
                orb.classification = "open";
            }
        } else {
            std::string f = endpoint_tag(fwd), b = endpoint_tag(bwd);
            if (f == "y->0" && b == "y->0") orb.classification = "both->0";
            else if (f == "y->inf" && b == "y->inf") orb.classification = "both->inf";
            else if ((f == "y->0" && b == "y->inf") || (f == "y->inf" && b == "y->0"))
                orb.classification = "mixed";
            else orb.classification = f + "/" + b;
        }
        port.orbits.push_back(std::move(orb));
    }
    return port;
}

} // namespace reapers
