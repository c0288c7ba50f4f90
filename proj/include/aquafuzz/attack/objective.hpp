#ifndef AQUAFUZZ_ATTACK_OBJECTIVE_HPP
#define AQUAFUZZ_ATTACK_OBJECTIVE_HPP

#include "aquafuzz/core/types.hpp"

namespace aquafuzz::attack {

/// Saturation value replacing the objective's division by zero at the
/// thresholds; preserves argmax semantics without infinities.
inline constexpr double kObjectiveMax = 1e9;

/// Distance-to-threshold objective: grows as the value approaches either
/// safety threshold, saturating at kObjectiveMax outside [low, high]. For
/// flow sensors the low threshold (0) is excluded: only the high side counts
/// and values below it score by distance to the high threshold alone.
struct Objective {
    SensorId sensor{};
    double low = 0.0;
    double high = 0.0;
    bool flow_low_excluded = false;

    static Objective for_sensor(const SafetyRange& range) {
        return Objective{range.id, range.low, range.high,
                         kind_of(range.id) == SensorKind::Flow};
    }

    /// High-side-only variant over the operational band, used to generate
    /// specifically-overflow manipulations for the early-warning suite.
    static Objective overflow_only(const SafetyRange& range) {
        return Objective{range.id, range.low, range.high, true};
    }

    /// Whether a true reading counts as a breach for this objective.
    bool breached(double v) const {
        if (v >= high) return true;
        return !flow_low_excluded && v <= low;
    }
};

double objective_eval(double v, const Objective& obj);

} // namespace aquafuzz::attack

#endif
