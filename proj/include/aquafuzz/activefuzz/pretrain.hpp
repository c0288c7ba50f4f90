#ifndef AQUAFUZZ_ACTIVEFUZZ_PRETRAIN_HPP
#define AQUAFUZZ_ACTIVEFUZZ_PRETRAIN_HPP

#include <array>
#include <vector>

#include "aquafuzz/netbus/bus.hpp"
#include "aquafuzz/regress/dataset.hpp"
#include "aquafuzz/regress/predictor.hpp"

namespace aquafuzz::activefuzz {

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Prediction horizon in ticks: flows and pressure stabilise quickly, tank
/// levels move slowly.
constexpr int prediction_horizon(SensorKind kind) {
    return kind == SensorKind::Level ? 30 : 5;
}

/// Levels are modelled as deltas over the horizon, everything else as the
/// absolute future value.
constexpr bool is_delta_target(SensorId id) {
    return kind_of(id) == SensorKind::Level;
}

/// One assembled feature vector and the full sensor row per observed tick.
struct Trace {
    std::vector<netbus::FeatureVector> vectors;
    std::array<std::vector<double>, kSensorCount> readings;

    std::size_t size() const { return vectors.size(); }
    const std::vector<double>& of(SensorId id) const {
        return readings[static_cast<std::size_t>(id)];
    }
};

/// Observe `ticks` ticks of live traffic without interfering.
Trace collect_trace(netbus::PlantLink& link, int ticks);

/// Pair each tick's vector with the sensor value observed t_s ticks later
/// (its delta for level sensors). Yields size() - t_s examples.
regress::TrainingSet dataset_from_trace(const Trace& trace, SensorId sensor, int t_s);

/// Passive pre-training data: sniff for `duration` ticks and align targets.
/// Throws InsufficientDataError when duration < t_s + 2.
regress::TrainingSet pretrain(netbus::PlantLink& link, SensorId sensor, int duration, int t_s);

/// r2 of the model on an independently collected trace.
double heldout_r2(const regress::Predictor& model, const Trace& trace, SensorId sensor, int t_s);

} // namespace aquafuzz::activefuzz

#endif
