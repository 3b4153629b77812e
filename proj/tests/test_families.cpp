#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reapers/closed_forms.hpp"
#include "reapers/trajectory.hpp"

#include <cmath>
#include <functional>

using namespace reapers;
using namespace reapers::closed_forms;

namespace {

// five-point derivative, h tuned for ~1e-11 accuracy on smooth curves
double deriv(const std::function<double(double)>& f, double s, double h = 1e-3) {
    return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h);
}

// worst pointwise failure of the arc-length system + angle ODE along a curve
double closed_form_ode_residual(const FamilySpec& fam, const std::function<ProfileState(double)>& curve,
                                double lo, double hi, int n = 400) {
    SurfaceKind kind = fam.kind();
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
        double s = lo + (hi - lo) * i / n;
        ProfileState q = curve(s);
        StateN<3> want = family_rhs(fam, q);
        for (int c = 0; c < 3; ++c) {
            double got = deriv([&](double u) { return curve(u)[c]; }, s);
            worst = std::max(worst, std::abs(got - want[c]));
        }
        (void)kind;
    }
    return worst;
}

} // namespace

TEST_CASE("class map") {
    CHECK(family_class(Translation::Vertical, Field::V) == FamilyClass::Minimal);
    CHECK(family_class(Translation::Parabolic, Field::V) == FamilyClass::Explicit);
    CHECK(family_class(Translation::Hyperbolic, Field::V) == FamilyClass::OdeOnly);
    CHECK(family_class(Translation::Vertical, Field::P) == FamilyClass::OdeOnly);
    CHECK(family_class(Translation::Parabolic, Field::P) == FamilyClass::Minimal);
    CHECK(family_class(Translation::Hyperbolic, Field::P) == FamilyClass::RigidSlices);
    CHECK(family_class(Translation::Vertical, Field::H) == FamilyClass::OdeOnly);
    CHECK(family_class(Translation::Parabolic, Field::H) == FamilyClass::Explicit);
    CHECK(family_class(Translation::Hyperbolic, Field::H) == FamilyClass::Minimal);
    for (Field f : {Field::CPlus, Field::CMinus}) {
        CHECK(family_class(Translation::Vertical, f) == FamilyClass::OdeOnly);
        CHECK(family_class(Translation::Parabolic, f) == FamilyClass::OdeOnly);
        CHECK(family_class(Translation::Hyperbolic, f) == FamilyClass::RigidPlaneAndSlices);
    }
    CHECK(all_families().size() == 15);
}

TEST_CASE("rhs examples") {
    // constant-angle solution of the parabolic v equation
    FamilySpec pv{Translation::Parabolic, Field::V, std::nullopt};
    StateN<3> d = family_rhs(pv, {1.0, 0.0, -std::atan(2.0)});
    CHECK(d[2] == doctest::Approx(0.0).epsilon(1e-15));

    // equilibrium of the hyperbolic v system: r' = 0, rho' = 0, z' = 1
    FamilySpec hv{Translation::Hyperbolic, Field::V, std::nullopt};
    StateN<3> e = family_rhs(hv, {M_PI / 2, 0.0, M_PI / 2});
    CHECK(e[0] == doctest::Approx(0.0).epsilon(1e-15)); // r'
    CHECK(e[2] == doctest::Approx(0.0).epsilon(1e-15)); // rho'
    CHECK(e[1] == doctest::Approx(1.0));                // z'

    // vertical c+ equilibrium (y, theta) = (2, 0)
    FamilySpec vc{Translation::Vertical, Field::CPlus, std::nullopt};
    StateN<3> f = family_rhs(vc, {0.0, 2.0, 0.0});
    CHECK(f[1] == doctest::Approx(0.0)); // y'
    CHECK(f[2] == doctest::Approx(0.0)); // theta'

    // parabolic h: theta = 0 is a rest angle (slices)
    FamilySpec ph{Translation::Parabolic, Field::H, std::nullopt};
    StateN<3> g = family_rhs(ph, {1.0, 0.0, 0.0});
    CHECK(g[2] == 0.0);

    // rigid families refuse
    FamilySpec hp{Translation::Hyperbolic, Field::P, std::nullopt};
    CHECK_THROWS_AS(family_rhs(hp, {1.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(integrate_family(hp, {1.0, 0.0, 0.0}, -1, 1, StepControl{}), DomainError);
}

TEST_CASE("closed forms satisfy their systems pointwise") {
    FamilySpec pv{Translation::Parabolic, Field::V, std::nullopt};
    CHECK(closed_form_ode_residual(pv, parabolic_v_line, -4, 4) <= 1e-9);
    CHECK(closed_form_ode_residual(pv, parabolic_v_bigraph, -4, 4) <= 1e-9);

    FamilySpec ph{Translation::Parabolic, Field::H, std::nullopt};
    CHECK(closed_form_ode_residual(
              ph, [](double s) { return parabolic_h_curve(0.7, 0.1, s); }, -4, 4) <= 1e-9);

    FamilySpec vmin{Translation::Vertical, Field::V, std::nullopt};
    CHECK(closed_form_ode_residual(
              vmin, [](double s) { return vertical_minimal(1.3, -0.2, s); }, -4, 4) <= 1e-9);

    FamilySpec pmin{Translation::Parabolic, Field::P, std::nullopt};
    CHECK(closed_form_ode_residual(
              pmin, [](double s) { return parabolic_minimal(0.8, 0.4, s); }, -4, 4) <= 1e-9);
}

TEST_CASE("closed-form spot values") {
    // (y, z) at s = sqrt(5) for the constant-angle curve
    ProfileState line = parabolic_v_line(std::sqrt(5.0));
    CHECK(line[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(line[1] == doctest::Approx(-2.0).epsilon(1e-14));

    // theta(0) = 2 arctan(1/2)
    CHECK(parabolic_v_theta(0.0) == doctest::Approx(2.0 * std::atan(0.5)).epsilon(1e-15));

    // slab limits: z -> 2 c2 and 2 c2 + pi
    double c2 = 0.3;
    CHECK(parabolic_h_curve(1.0, c2, -30.0)[1] == doctest::Approx(2 * c2).epsilon(1e-12));
    CHECK(parabolic_h_curve(1.0, c2, 30.0)[1] == doctest::Approx(2 * c2 + M_PI).epsilon(1e-12));

    // the vertical minimal curve is the half-circle (x-c2)^2 + y^2 = c1^2
    for (double s : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
        ProfileState q = vertical_minimal(1.7, 0.4, s);
        CHECK(std::hypot(q[0] - 0.4, q[1]) == doctest::Approx(1.7).epsilon(1e-13));
    }
}

TEST_CASE("integrator reproduces the explicit curves") {
    StepControl ctrl;
    ctrl.sample_spacing = 0.01;

    FamilySpec pv{Translation::Parabolic, Field::V, std::nullopt};
    Trajectory traj = integrate_family(pv, parabolic_v_bigraph(0.0), -3.0, 3.0, ctrl);
    double worst = 0.0;
    for (const auto& smp : traj.samples) {
        ProfileState want = parabolic_v_bigraph(smp.s);
        worst = std::max(worst, std::abs(smp.state[0] - want[0]));
        worst = std::max(worst, std::abs(smp.state[1] - want[1]));
    }
    CHECK(worst <= 1e-7);
}

TEST_CASE("equilibrium orbit of the hyperbolic v system stays put, z runs") {
    FamilySpec hv{Translation::Hyperbolic, Field::V, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 0.05;
    Trajectory traj = integrate_family(hv, {M_PI / 2, 0.0, M_PI / 2}, 0.0, 2.0, ctrl);
    for (const auto& smp : traj.samples) {
        CHECK(std::abs(smp.state[0] - M_PI / 2) <= 1e-10);
        CHECK(std::abs(smp.state[2] - M_PI / 2) <= 1e-10);
        CHECK(smp.state[1] == doctest::Approx(smp.s).epsilon(1e-10));
    }
}

TEST_CASE("hyperbolic minimal first integral is conserved") {
    FamilySpec hm{Translation::Hyperbolic, Field::H, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 0.02;
    Trajectory traj = integrate_family(hm, {1.0, 0.0, 0.7}, -4.0, 4.0, ctrl);
    double qmin = 1e300, qmax = -1e300;
    for (const auto& smp : traj.samples) {
        REQUIRE(smp.invariant.has_value());
        qmin = std::min(qmin, *smp.invariant);
        qmax = std::max(qmax, *smp.invariant);
    }
    CHECK(qmax - qmin <= 1e-8);
    CHECK_THROWS_AS(first_integral(hm, {1.0, 0.0, 0.0}), DomainError); // singular leaf
}

TEST_CASE("vertical c+ first integral: selected exponent is conserved, the printed one drifts") {
    CHECK(vertical_cplus_integral_exponent() == 1);
    FamilySpec vc{Translation::Vertical, Field::CPlus, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 0.02;
    Trajectory traj = integrate_family(vc, {0.0, 0.7, 0.0}, 0.0, 12.0, ctrl);
    double q1min = 1e300, q1max = -1e300, q2min = 1e300, q2max = -1e300;
    for (const auto& smp : traj.samples) {
        double y = smp.state[1], th = smp.state[2];
        double q1 = std::cos(th) * std::exp(-2.0 / y) / y;
        double q2 = q1 / y;
        q1min = std::min(q1min, q1);
        q1max = std::max(q1max, q1);
        q2min = std::min(q2min, q2);
        q2max = std::max(q2max, q2);
    }
    CHECK(q1max - q1min <= 1e-8);  // selected k = 1
    CHECK(q2max - q2min >= 1e-3);  // rejected k = 2
    // equilibrium value at (2, 0) with k = 1
    CHECK(*first_integral(vc, {0.0, 2.0, 0.0}) == doctest::Approx(std::exp(-1.0) / 2.0));
}

TEST_CASE("tilted family reduces to the parabolic v equation at v3 = 0") {
    // the reduction must be exact, so compare the formulas term by term
    FamilySpec tilted{Translation::Parabolic, Field::V, 0.0};
    FamilySpec pv{Translation::Parabolic, Field::V, std::nullopt};
    for (double y : {0.3, 1.0, 2.7}) {
        for (double th : {-1.2, -0.3, 0.0, 0.9, 2.0}) {
            StateN<3> a = family_rhs(tilted, {y, 0.0, th});
            StateN<3> b = family_rhs(pv, {y, 0.0, th});
            CHECK(a[0] == b[0]);
            CHECK(a[1] == b[1]);
            CHECK(a[2] == b[2]);
        }
    }
}

TEST_CASE("parabolic v trajectories are vertical bi-graphs") {
    FamilySpec pv{Translation::Parabolic, Field::V, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 0.01;
    for (double y0 : {0.5, 1.0, 1.8}) {
        Trajectory traj = integrate_family(pv, {y0, 0.0, 2.0 * std::atan(0.5)}, -4.0, 4.0, ctrl);
        int ymax_count = 0, zmin_count = 0;
        const double lo = -std::atan(2.0) - 1e-6, hi = M_PI - std::atan(2.0) + 1e-6;
        for (size_t i = 1; i + 1 < traj.samples.size(); ++i) {
            const auto &a = traj.samples[i - 1], &b = traj.samples[i], &c = traj.samples[i + 1];
            // theta runs monotonically between the two rest angles
            CHECK(b.state[2] > lo);
            CHECK(b.state[2] < hi);
            if (b.state[0] > a.state[0] && b.state[0] > c.state[0]) ++ymax_count;
            if (b.state[1] < a.state[1] && b.state[1] < c.state[1]) ++zmin_count;
        }
        // one fold: theta crosses +pi/2 exactly once (the y-maximum) and
        // never reaches -pi/2, so the curve is a bi-graph, not a tri-graph
        int up = 0, down = 0;
        for (const auto& e : traj.events) {
            if (e.kind == "angle=+pi/2") ++up;
            if (e.kind == "angle=-pi/2") ++down;
        }
        CHECK(up == 1);
        CHECK(down == 0);
        CHECK(ymax_count == 1);
        CHECK(zmin_count == 1);
    }
}

TEST_CASE("parabolic h trajectories stay inside the bounding slab") {
    FamilySpec ph{Translation::Parabolic, Field::H, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 0.01;
    // launch on the slab curve with c1 = 1/2, c2 = 0: z in (0, pi)
    Trajectory traj = integrate_family(ph, parabolic_h_curve(0.5, 0.0, 0.0), -6.0, 6.0, ctrl);
    for (const auto& smp : traj.samples) {
        CHECK(smp.state[1] > 0.0);
        CHECK(smp.state[1] < M_PI);
    }
}

TEST_CASE("vertical p orbits rise to a single crest and decay") {
    FamilySpec vp{Translation::Vertical, Field::P, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 0.02;
    Trajectory traj = integrate_family(vp, {0.0, 1.0, 0.0}, -30.0, 30.0, ctrl);
    // y attains its global maximum at s = 0 (the launch height)
    double ymax = 0.0, s_at = 0.0;
    for (const auto& smp : traj.samples) {
        if (smp.state[1] > ymax) {
            ymax = smp.state[1];
            s_at = smp.s;
        }
    }
    CHECK(std::abs(s_at) <= 0.05);
    CHECK(ymax == doctest::Approx(1.0).epsilon(1e-6));
    // monotone decay on both sides of the crest; x grows toward both ends
    const auto& last = traj.samples.back();
    const auto& first = traj.samples.front();
    CHECK(last.state[1] < 0.2);
    CHECK(first.state[1] < 0.2);
    CHECK(last.state[0] > 1.0);
    CHECK(first.state[0] > 1.0);
    for (size_t i = 1; i < traj.samples.size(); ++i) {
        if (traj.samples[i].s > 0.1) CHECK(traj.samples[i].state[1] <= traj.samples[i - 1].state[1] + 1e-12);
    }
}

TEST_CASE("vertical h: arc-length system matches the graph ODE") {
    FamilySpec vh{Translation::Vertical, Field::H, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 0.01;
    double y0 = 1.0;
    Trajectory traj = integrate_family(vh, {0.0, y0, 0.0}, 0.0, 2.0, ctrl);

    // integrate the graph form y(x) from the same start
    auto grhs = [](double x, const StateN<2>& q) { return vertical_h_graph_rhs(x, q); };
    Dopri5<2> graph(grhs, ctrl);
    auto gsol = graph.run(0.0, {y0, 0.0}, 3.0);

    double worst = 0.0;
    int compared = 0;
    for (const auto& smp : traj.samples) {
        if (std::abs(smp.state[2]) > 1.2) break; // stay where the graph form is valid
        double x = smp.state[0];
        // locate x in the graph solution by linear search + interpolation
        for (size_t i = 0; i + 1 < gsol.s.size(); ++i) {
            if (gsol.s[i] <= x && x <= gsol.s[i + 1]) {
                double w = (x - gsol.s[i]) / (gsol.s[i + 1] - gsol.s[i]);
                double yg = (1 - w) * gsol.y[i][0] + w * gsol.y[i + 1][0];
                worst = std::max(worst, std::abs(yg - smp.state[1]));
                ++compared;
                break;
            }
        }
    }
    CHECK(compared > 50);
    CHECK(worst <= 1e-4); // linear interpolation dominates the comparison error
}

TEST_CASE("rigid solution sets") {
    FamilySpec hp{Translation::Hyperbolic, Field::P, std::nullopt};
    auto sols = rigid_solutions(hp);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].description == "slices z = z0");

    FamilySpec hc{Translation::Hyperbolic, Field::CPlus, std::nullopt};
    auto sols2 = rigid_solutions(hc);
    REQUIRE(sols2.size() == 2);
    CHECK(sols2[0].description == "vertical plane x = 0");

    // slice residual vanishes identically at 100 sample points
    for (const auto& fam : {hp, hc}) {
        for (const auto& sol : rigid_solutions(fam)) {
            for (int i = 0; i < 100; ++i) {
                double s = -2.0 + 4.0 * i / 99.0;
                ProfileState q = sol.sample(s);
                ResidualValue rv =
                    closed_form_residual(SurfaceKind::Hyperbolic, fam.field, q, 0.0, +1);
                CHECK(std::abs(rv.value) <= 1e-12);
            }
        }
    }

    FamilySpec pv{Translation::Parabolic, Field::V, std::nullopt};
    CHECK_THROWS_AS(rigid_solutions(pv), DomainError);
}

TEST_CASE("trajectory samples stay on the arc-length parametrization") {
    // reconstruct the tangent from closely spaced samples; its frame norm is 1
    FamilySpec hv{Translation::Hyperbolic, Field::V, std::nullopt};
    StepControl ctrl;
    ctrl.sample_spacing = 5e-4;
    Trajectory traj = integrate_family(hv, {1.0, 0.0, 0.0}, 0.0, 2.0, ctrl);
    for (size_t i = 1; i + 1 < traj.samples.size(); i += 25) {
        const auto &a = traj.samples[i - 1], &c = traj.samples[i + 1];
        double ds = c.s - a.s;
        Point pa = immersion(SurfaceKind::Hyperbolic, a.state, 0.0);
        Point pc = immersion(SurfaceKind::Hyperbolic, c.state, 0.0);
        Point mid = immersion(SurfaceKind::Hyperbolic, traj.samples[i].state, 0.0);
        Vec3 v{(pc.x - pa.x) / ds, (pc.y - pa.y) / ds, (pc.z - pa.z) / ds};
        double n = std::sqrt(metric_inner(mid, v, v));
        CHECK(std::abs(n - 1.0) <= 1e-6);
    }
}

TEST_CASE("closed-form branches satisfy the translator identity in closed form") {
    for (const FamilySpec& fam : all_families()) {
        for (const auto& branch : closed_form_branches(fam, 0.8, 0.1)) {
            double worst = 0.0;
            for (int i = 0; i <= 200; ++i) {
                double s = -3.0 + 6.0 * i / 200.0;
                ProfileState q = branch.eval(s);
                double rate = fam.rigid() ? 0.0 : family_rhs(fam, q)[2];
                double rp = closed_form_residual(fam.kind(), fam.field, q, rate, +1).value;
                double rm = closed_form_residual(fam.kind(), fam.field, q, rate, -1).value;
                worst = std::max(worst, std::min(std::abs(rp), std::abs(rm)));
            }
            CHECK(worst <= 1e-9);
        }
    }
}

TEST_CASE("along integrated trajectories the closed-form residual is an identity") {
    // the angle equations were solved out of H = <N,X>, so the residual along
    // any trajectory of a consistent family is pure rounding
    StepControl ctrl;
    ctrl.sample_spacing = 0.05;
    for (const FamilySpec& fam : all_families()) {
        if (fam.rigid() || fam.printed_ode_flagged()) continue;
        ProfileState ic = fam.kind() == SurfaceKind::Vertical ? ProfileState{0.0, 1.0, 0.1}
                          : fam.kind() == SurfaceKind::Parabolic ? ProfileState{1.0, 0.0, 0.9}
                                                                 : ProfileState{1.0, 0.0, 0.4};
        Trajectory traj = integrate_family(fam, ic, -2.0, 2.0, ctrl);
        CHECK(traj.orientation_sign == +1);
        CHECK(traj.max_abs_residual() <= 1e-12);
        for (size_t i = 1; i < traj.samples.size(); ++i) {
            CHECK(traj.samples[i].s > traj.samples[i - 1].s); // strictly increasing
        }
    }
}

TEST_CASE("family parsing") {
    CHECK(parse_family("parabolic-v").cls() == FamilyClass::Explicit);
    CHECK(parse_family("hyperbolic-c+").cls() == FamilyClass::RigidPlaneAndSlices);
    CHECK(parse_family("vertical-c-").printed_ode_flagged());
    CHECK(parse_family("tilted-v", 1.0).kind() == SurfaceKind::TiltedRuled);
    CHECK_THROWS_AS(parse_family("tilted-v"), ConfigError);
    CHECK_THROWS_AS(parse_family("diagonal-v"), ConfigError);
    CHECK_THROWS_AS(parse_family("vertical-q"), ConfigError);
    CHECK_THROWS_AS(parse_family("vertical-v", 2.0), ConfigError);
}
