#ifndef AQUAFUZZ_ATTACK_DISCOVER_HPP
#define AQUAFUZZ_ATTACK_DISCOVER_HPP

#include <functional>
#include <limits>

#include "aquafuzz/attack/objective.hpp"
#include "aquafuzz/netbus/bus.hpp"
#include "aquafuzz/regress/predictor.hpp"

namespace aquafuzz::attack {

struct NoCandidateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DiscoverLimits {
    long max_candidates = 20000;
    double timeout_seconds = std::numeric_limits<double>::infinity();
};

struct DiscoverResult {
    netbus::FeatureVector vector;       // p_max
    std::vector<std::size_t> flipped;   // bits changed from the sniffed base
    double f_max = 0.0;
    long evaluated = 0;
    int k_final = 0;
};

/// Importance-ranked combinational search for an n-bit manipulation: ranks
/// bit positions by descending feature importance (ties to the lower index),
/// then widens a window over the ranking, evaluating every size-n flip set
/// inside it against the objective until the window covers all positions,
/// the candidate budget runs out, or the timeout hits. For delta models the
/// objective input is the current reading plus the predicted change.
///
/// Pure given the base vector; `on_eval` is a test hook receiving every
/// evaluated flip set.
DiscoverResult discover(const netbus::FeatureVector& p_o, double current_reading,
                        const regress::Predictor& model, bool delta_model, int n,
                        const Objective& obj, const DiscoverLimits& limits,
                        const std::function<void(const std::vector<std::size_t>&)>& on_eval = {});

/// Live wrapper: sniffs the base vector and current reading from the bus.
DiscoverResult discover_live(netbus::PlantLink& link, const regress::Predictor& model,
                             SensorId sensor, int n, const Objective& obj,
                             const DiscoverLimits& limits);

} // namespace aquafuzz::attack

#endif
