#include "reapers/config.hpp"

#include "reapers/closed_forms.hpp"

#include <cmath>
#include <cstdlib>

namespace reapers {

StepControl RunConfig::step_control() const {
    StepControl ctrl;
    ctrl.rtol = rtol;
    ctrl.atol = atol;
    ctrl.sample_spacing = sample_spacing;
    return ctrl;
}

void RunConfig::validate() const {
    if (family_name.empty()) throw ConfigError("no family selected");
    FamilySpec fam = family();
    if (!(s0 <= 0.0 && 0.0 <= s1)) throw ConfigError("span must contain s = 0");
    if (!(s1 - s0 > 0.0) || !std::isfinite(s0) || !std::isfinite(s1))
        throw ConfigError("bad span");
    if (!(rtol > 0.0 && rtol < 1e-2) || !(atol > 0.0 && atol < 1e-2))
        throw ConfigError("tolerances must lie in (0, 1e-2)");
    if (!(sample_spacing > 0.0)) throw ConfigError("sample spacing must be positive");
    if (rulings < 2) throw ConfigError("need at least 2 rulings");
    if (!(t1 > t0)) throw ConfigError("bad ruling range");
    if (separatrix_tol < 1e-12) throw ConfigError("separatrix tolerance below 1e-12");
    if (c1 <= 0.0) throw ConfigError("c1 must be positive");
    if (ic) check_profile(fam.kind(), *ic);
    if (!branch.empty()) {
        bool known = false;
        for (const auto& b : closed_forms::closed_form_branches(fam, c1, c2)) known = known || b.name == branch;
        if (!known) throw ConfigError("family " + fam.name() + " has no closed-form branch '" + branch + "'");
    }
}

std::string default_output_dir() {
    const char* env = std::getenv("REAPERS_OUTPUT_DIR");
    return env && *env ? env : ".";
}

} // namespace reapers
