#include "aquafuzz/activefuzz/pretrain.hpp"

#include "aquafuzz/regress/metrics.hpp"

namespace aquafuzz::activefuzz {

Trace collect_trace(netbus::PlantLink& link, int ticks) {
    Trace trace;
    trace.vectors.reserve(static_cast<std::size_t>(ticks));
    for (int t = 0; t < ticks; ++t) {
        auto window = link.sniff_window(1);
        trace.vectors.push_back(netbus::assemble(window));
        for (SensorId id : kAllSensors)
            trace.readings[static_cast<std::size_t>(id)].push_back(link.read_sensor(id).value);
    }
    return trace;
}

regress::TrainingSet dataset_from_trace(const Trace& trace, SensorId sensor, int t_s) {
    if (t_s < 1) throw std::invalid_argument("prediction horizon must be positive");
    const auto& values = trace.of(sensor);
    regress::TrainingSet data;
    if (trace.size() < static_cast<std::size_t>(t_s)) return data;
    for (std::size_t t = 0; t + static_cast<std::size_t>(t_s) < trace.size(); ++t) {
        double target = values[t + static_cast<std::size_t>(t_s)];
        if (is_delta_target(sensor)) target -= values[t];
        data.append(trace.vectors[t], target, 1.0);
    }
    return data;
}

regress::TrainingSet pretrain(netbus::PlantLink& link, SensorId sensor, int duration, int t_s) {
    if (duration < t_s + 2)
        throw InsufficientDataError("pre-training needs at least t_s + 2 ticks of traffic");
    Trace trace = collect_trace(link, duration);
    return dataset_from_trace(trace, sensor, t_s);
}

double heldout_r2(const regress::Predictor& model, const Trace& trace, SensorId sensor, int t_s) {
    regress::TrainingSet eval = dataset_from_trace(trace, sensor, t_s);
    if (eval.empty()) throw InsufficientDataError("held-out trace shorter than the horizon");
    std::vector<double> predicted(eval.size());
    for (std::size_t i = 0; i < eval.size(); ++i) predicted[i] = model.predict(eval.X()[i]);
    return regress::r2_score(predicted, eval.y());
}

} // namespace aquafuzz::activefuzz
