#pragma once

#include "reapers/families.hpp"

#include <optional>
#include <vector>

namespace reapers {

struct TrajectorySample {
    double s = 0.0;
    ProfileState state{};
    double angle_rate = 0.0;
    double mean_curv = 0.0;             // closed-form H (oracle-filled for tilted)
    double pairing = 0.0;               // <N, X> at t = 0
    double residual = 0.0;              // H - sign * pairing
    std::optional<double> invariant;    // first integral, where one exists
    bool diagnostics_valid = true;      // false until the oracle annotates (tilted)
};

struct Trajectory {
    FamilySpec family;
    int orientation_sign = +1;
    std::vector<TrajectorySample> samples;
    std::vector<EventRecord<3>> events;
    bool complete = true;               // false if a guard/underflow cut the span
    std::string termination;

    double max_abs_residual() const;
    const TrajectorySample& at_s(double s) const; // nearest sample
};

/// Integrate a non-rigid family from `initial` (given at s = 0) over
/// [s0, s1] with s0 <= 0 <= s1. Samples are merged in increasing s.
Trajectory integrate_family(const FamilySpec& fam, const ProfileState& initial, double s0,
                            double s1, const StepControl& ctrl);

/// Standard event set for a family: angle strip crossings, domain guards,
/// near-equilibrium detection (all non-terminal except the guards).
std::vector<EventSpec<3>> family_events(const FamilySpec& fam);

} // namespace reapers
