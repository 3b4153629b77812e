#pragma once

#include "reapers/families.hpp"

#include <optional>
#include <string>

namespace reapers {

// One run description shared by the curve / surface / phase subcommands.
struct RunConfig {
    std::string family_name;
    std::optional<double> v3;
    std::optional<ProfileState> ic; // at s = 0; defaults per family when absent
    double s0 = -4.0, s1 = 4.0;
    double rtol = 1e-10, atol = 1e-12;
    double sample_spacing = 0.01;
    double t0 = -2.0, t1 = 2.0;
    int rulings = 33;
    double c1 = 1.0, c2 = 0.0;   // closed-form constants
    std::string branch;          // closed-form branch name; empty = integrate
    double separatrix_tol = 1e-8;
    std::string out;

    FamilySpec family() const { return parse_family(family_name, v3); }
    StepControl step_control() const;
    void validate() const; // throws ConfigError
};

/// Default output directory: "." unless REAPERS_OUTPUT_DIR is set.
std::string default_output_dir();

} // namespace reapers
