#include "aquafuzz/attack/executor.hpp"

#include <algorithm>

#include "aquafuzz/activefuzz/pretrain.hpp"

namespace aquafuzz::attack {

AttackOutcome execute(netbus::PlantLink& link, const netbus::FeatureVector& attack, SensorId sensor,
                      int horizon, const Objective& obj) {
    if (horizon < 1) throw std::invalid_argument("execute: horizon must be positive");
    AttackOutcome out;
    out.sensor = sensor;
    out.vector = attack;
    out.trajectory.reserve(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t) {
        link.spoof(attack);
        link.advance(1);
        double v = link.true_sensor_value(sensor);
        out.trajectory.push_back(v);
        if (obj.breached(v)) {
            out.success = true;
            out.ticks_to_breach = t + 1;
            break;
        }
    }
    return out;
}

SuccessRateResult success_rate(const LinkFactory& make_link, const regress::Predictor* model,
                               SensorId sensor, int n_flips, const Objective& obj,
                               const DiscoverLimits& limits, int trials, int horizon, Rng& rng) {
    if (trials < 1) throw std::invalid_argument("success_rate: trials must be positive");
    SuccessRateResult out;
    out.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        std::unique_ptr<netbus::PlantLink> link = make_link(trial);
        netbus::FeatureVector attack;
        if (model != nullptr) {
            DiscoverResult found = discover_live(*link, *model, sensor, n_flips, obj, limits);
            attack = found.vector;
        } else {
            attack = netbus::assemble(link->sniff_window(1));
            std::vector<std::size_t> picked;
            while (picked.size() < static_cast<std::size_t>(n_flips)) {
                std::size_t bit = rng.below(netbus::FeatureVector::kBits);
                if (std::find(picked.begin(), picked.end(), bit) != picked.end()) continue;
                picked.push_back(bit);
                attack.flip(bit);
            }
        }
        if (execute(*link, attack, sensor, horizon, obj).success) ++out.successes;
    }
    out.percent = 100.0 * out.successes / trials;
    return out;
}

} // namespace aquafuzz::attack
