#include "aquafuzz/attack/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace aquafuzz::attack {

double objective_eval(double v, const Objective& obj) {
    if (!(obj.low < obj.high)) throw std::invalid_argument("objective needs low < high");
    double span = obj.high - obj.low;

    if (obj.flow_low_excluded) {
        if (v >= obj.high) return kObjectiveMax;
        return span / (obj.high - v);
    }

    if (v < obj.low || v > obj.high) return kObjectiveMax;
    double d = std::min(v - obj.low, obj.high - v);
    if (d == 0) return kObjectiveMax;
    return span / d;
}

} // namespace aquafuzz::attack
