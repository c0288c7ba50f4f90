#ifndef AQUAFUZZ_ATTACK_EXECUTOR_HPP
#define AQUAFUZZ_ATTACK_EXECUTOR_HPP

#include <functional>
#include <memory>

#include "aquafuzz/attack/discover.hpp"
#include "aquafuzz/core/rng.hpp"

namespace aquafuzz::attack {

/// Horizon over which an executed manipulation is sustained: levels move
/// slowly, flow and pressure settle almost immediately.
constexpr int default_attack_horizon(SensorKind kind) {
    return kind == SensorKind::Level ? 120 : 10;
}

struct AttackOutcome {
    SensorId sensor{};
    netbus::FeatureVector vector;
    std::vector<std::size_t> flipped;
    double predicted_f = 0.0;
    std::vector<double> trajectory;  // true readings, one per executed tick
    bool success = false;
    int ticks_to_breach = -1;
};

/// Spoof the vector every tick over the horizon and watch the true reading;
/// success is the first counted threshold crossing.
AttackOutcome execute(netbus::PlantLink& link, const netbus::FeatureVector& attack, SensorId sensor,
                      int horizon, const Objective& obj);

using LinkFactory = std::function<std::unique_ptr<netbus::PlantLink>(int trial)>;

struct SuccessRateResult {
    int successes = 0;
    int trials = 0;
    double percent = 0.0;
};

/// Fraction of trials whose discovered n-bit manipulation breaches when
/// executed. Each trial runs against a fresh plant and re-sniffs its own
/// base vector. A null model is the random baseline: n uniform-random
/// distinct bit flips instead of a guided search.
SuccessRateResult success_rate(const LinkFactory& make_link, const regress::Predictor* model,
                               SensorId sensor, int n_flips, const Objective& obj,
                               const DiscoverLimits& limits, int trials, int horizon, Rng& rng);

} // namespace aquafuzz::attack

#endif
