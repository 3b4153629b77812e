#pragma once

#include "reapers/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

// Adaptive embedded Runge-Kutta 5(4) pair (Dormand-Prince) with the standard
// quartic dense-output interpolant. Events are located on the dense output by
// bisection to 1e-12 in s. Works forward and backward in s.

namespace reapers {

template <int N>
using StateN = std::array<double, N>;

template <int N>
struct EventSpec {
    std::string kind;
    std::function<double(double, const StateN<N>&)> value;
    int direction = 0;     // +1: rising zero only, -1: falling only, 0: both
    bool terminal = false;
};

template <int N>
struct EventRecord {
    std::string kind;
    double s = 0.0;
    StateN<N> state{};
};

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 1e-4;
    double max_step = 0.5;
    long max_steps = 4000000;
    // When > 0, solutions are resampled from the dense output at this spacing;
    // otherwise the accepted steps are returned.
    double sample_spacing = 0.0;
};

template <int N>
struct OdeSolution {
    std::vector<double> s;
    std::vector<StateN<N>> y;
    std::vector<EventRecord<N>> events;
    bool event_terminated = false;
    std::string terminal_event;
};

namespace detail {

inline constexpr double kEventTolS = 1e-12;

// Dormand-Prince coefficients.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights equal dp_a[6]; embedded 4th-order weights:
inline constexpr double dp_b4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
// Dense-output auxiliary weights.
inline constexpr double dp_d[7] = {
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
};

} // namespace detail

// One accepted step together with its dense-output polynomial.
template <int N>
struct DenseStep {
    double s0 = 0.0, h = 0.0;
    StateN<N> r1{}, r2{}, r3{}, r4{}, r5{};

    StateN<N> eval(double s) const {
        double th = (s - s0) / h;
        double th1 = 1.0 - th;
        StateN<N> out;
        for (int i = 0; i < N; ++i) {
            out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        }
        return out;
    }
};

template <int N>
class Dopri5 {
  public:
    using Rhs = std::function<StateN<N>(double, const StateN<N>&)>;

    Dopri5(Rhs rhs, StepControl ctrl) : rhs_(std::move(rhs)), ctrl_(ctrl) {}

    /// Integrate from (s0, y0) to s1 (either direction). Terminal events stop
    /// the integration at the localized crossing.
    OdeSolution<N> run(double s0, const StateN<N>& y0, double s1,
                       const std::vector<EventSpec<N>>& events = {}) const {
        OdeSolution<N> sol;
        double dir = (s1 >= s0) ? 1.0 : -1.0;
        double span = std::abs(s1 - s0);
        if (span == 0.0) {
            sol.s.push_back(s0);
            sol.y.push_back(y0);
            return sol;
        }

        double s = s0;
        StateN<N> y = y0;
        StateN<N> k1 = rhs_(s, y);
        double h = dir * std::min({ctrl_.initial_step, ctrl_.max_step, span});

        sol.s.push_back(s);
        sol.y.push_back(y);
        double next_sample = ctrl_.sample_spacing > 0.0 ? s + dir * ctrl_.sample_spacing : 0.0;

        std::vector<double> gprev(events.size());
        for (size_t e = 0; e < events.size(); ++e) gprev[e] = events[e].value(s, y);

        for (long step = 0; step < ctrl_.max_steps; ++step) {
            if (dir * (s - s1) >= 0.0) return sol;
            if (std::abs(h) > std::abs(s1 - s)) h = s1 - s;
            if (std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s))) {
                throw NumericalError("step size underflow at s = " + std::to_string(s));
            }

            StateN<N> k[7];
            k[0] = k1;
            StateN<N> ytmp;
            try {
                for (int stage = 1; stage < 7; ++stage) {
                    for (int i = 0; i < N; ++i) {
                        double acc = 0.0;
                        for (int j = 0; j < stage; ++j) acc += detail::dp_a[stage][j] * k[j][i];
                        ytmp[i] = y[i] + h * acc;
                    }
                    k[stage] = rhs_(s + detail::dp_c[stage] * h, ytmp);
                }
            } catch (const DomainError&) {
                // A trial stage left the domain; retry with a smaller step so
                // the guard events can localize the exit first.
                h *= 0.5;
                continue;
            }
            // 5th-order solution is stage 7's argument (FSAL).
            StateN<N> ynew = ytmp;

            double err = error_norm(k, y, ynew, h);
            if (err > 1.0) {
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
                continue;
            }

            DenseStep<N> dense = make_dense(s, h, y, ynew, k);

            // Event scan on [s, s+h]: localize all crossings, keep only those
            // up to the earliest terminal one.
            struct Hit {
                double s;
                StateN<N> y;
                size_t e;
            };
            std::vector<Hit> hits;
            for (size_t e = 0; e < events.size(); ++e) {
                double g0 = gprev[e];
                double g1 = events[e].value(s + h, ynew);
                bool crossing = (g0 < 0.0 && g1 >= 0.0 && events[e].direction >= 0) ||
                                (g0 > 0.0 && g1 <= 0.0 && events[e].direction <= 0);
                if (!crossing) continue;
                double se = locate(events[e], dense, s, s + h);
                hits.push_back({se, dense.eval(se), e});
            }
            std::sort(hits.begin(), hits.end(),
                      [dir](const Hit& a, const Hit& b) { return dir * a.s < dir * b.s; });

            bool stop = false;
            double s_end = s + h;
            StateN<N> y_end = ynew;
            for (const Hit& hit : hits) {
                sol.events.push_back({events[hit.e].kind, hit.s, hit.y});
                if (events[hit.e].terminal) {
                    stop = true;
                    s_end = hit.s;
                    y_end = hit.y;
                    sol.terminal_event = events[hit.e].kind;
                    break;
                }
            }

            emit_samples(sol, dense, s, s_end, dir, next_sample);
            if (stop) {
                push_sample(sol, s_end, y_end);
                sol.event_terminated = true;
                return sol;
            }

            s = s + h;
            y = ynew;
            k1 = k[6]; // FSAL
            for (size_t e = 0; e < events.size(); ++e) gprev[e] = events[e].value(s, y);
            if (ctrl_.sample_spacing <= 0.0) push_sample(sol, s, y);

            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::min(5.0, std::max(0.2, fac));
            if (std::abs(h) > ctrl_.max_step) h = dir * ctrl_.max_step;
        }
        throw NumericalError("maximum step count exceeded");
    }

  private:
    double error_norm(const StateN<N> (&k)[7], const StateN<N>& y, const StateN<N>& ynew, double h) const {
        // e_i = b5_i - b4_i with b5 = dp_a[6] extended by b5_7 = 0.
        static constexpr double b5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                         -2187.0 / 6784, 11.0 / 84, 0.0};
        double sum = 0.0;
        for (int i = 0; i < N; ++i) {
            double ei = 0.0;
            for (int j = 0; j < 7; ++j) ei += (b5[j] - detail::dp_b4[j]) * k[j][i];
            ei *= h;
            double sc = ctrl_.atol + ctrl_.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            sum += (ei / sc) * (ei / sc);
        }
        return std::sqrt(sum / N);
    }

    DenseStep<N> make_dense(double s, double h, const StateN<N>& y, const StateN<N>& ynew,
                            const StateN<N> (&k)[7]) const {
        DenseStep<N> d;
        d.s0 = s;
        d.h = h;
        for (int i = 0; i < N; ++i) {
            double dy = ynew[i] - y[i];
            double bspl = h * k[0][i] - dy;
            d.r1[i] = y[i];
            d.r2[i] = dy;
            d.r3[i] = bspl;
            d.r4[i] = dy - h * k[6][i] - bspl;
            double acc = 0.0;
            for (int j = 0; j < 7; ++j) acc += detail::dp_d[j] * k[j][i];
            d.r5[i] = h * acc;
        }
        return d;
    }

    double locate(const EventSpec<N>& ev, const DenseStep<N>& dense, double sa, double sb) const {
        double ga = ev.value(sa, dense.eval(sa));
        for (int it = 0; it < 200 && std::abs(sb - sa) > detail::kEventTolS; ++it) {
            double sm = 0.5 * (sa + sb);
            double gm = ev.value(sm, dense.eval(sm));
            if ((ga <= 0.0) == (gm <= 0.0)) {
                sa = sm;
                ga = gm;
            } else {
                sb = sm;
            }
        }
        return 0.5 * (sa + sb);
    }

    void emit_samples(OdeSolution<N>& sol, const DenseStep<N>& dense, double s_begin, double s_end,
                      double dir, double& next_sample) const {
        if (ctrl_.sample_spacing <= 0.0) return;
        while (dir * (next_sample - s_begin) >= 0.0 && dir * (s_end - next_sample) >= 0.0) {
            push_sample(sol, next_sample, dense.eval(next_sample));
            next_sample += dir * ctrl_.sample_spacing;
        }
    }

    static void push_sample(OdeSolution<N>& sol, double s, const StateN<N>& y) {
        if (!sol.s.empty() && sol.s.back() == s) return;
        sol.s.push_back(s);
        sol.y.push_back(y);
    }

    Rhs rhs_;
    StepControl ctrl_;
};

/// Fixed-step classical RK4 flow map; smooth in the target abscissa, used by
/// the oracle to evaluate ODE curves at finite-difference stencil points.
template <int N, class Rhs>
StateN<N> rk4_flow(const Rhs& rhs, StateN<N> y, double s0, double s1, int nsteps) {
    double h = (s1 - s0) / nsteps;
    double s = s0;
    for (int n = 0; n < nsteps; ++n) {
        StateN<N> k1 = rhs(s, y);
        StateN<N> u;
        for (int i = 0; i < N; ++i) u[i] = y[i] + 0.5 * h * k1[i];
        StateN<N> k2 = rhs(s + 0.5 * h, u);
        for (int i = 0; i < N; ++i) u[i] = y[i] + 0.5 * h * k2[i];
        StateN<N> k3 = rhs(s + 0.5 * h, u);
        for (int i = 0; i < N; ++i) u[i] = y[i] + h * k3[i];
        StateN<N> k4 = rhs(s + h, u);
        for (int i = 0; i < N; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        s += h;
    }
    return y;
}

} // namespace reapers
