#include "aquafuzz/defend/anomaly.hpp"

#include <cmath>

namespace aquafuzz::defend {

bool anomaly_check(double v_p, double v_a, const DetectorConfig& cfg, SensorId sensor) {
    double residual = std::fabs(v_p - v_a);
    if (kind_of(sensor) == SensorKind::Level) return residual > cfg.abs_threshold;
    double v_m = cfg.max_of(sensor);
    if (!(v_m > 0)) throw std::invalid_argument("detector config needs a positive v_max");
    return residual / v_m > cfg.rel_threshold;
}

DetectorEval eval_anomaly_detector(const regress::Predictor& model,
                                   const activefuzz::Trace& capture, SensorId sensor, int n_spoofs,
                                   const DetectorConfig& cfg, const SpoofRule& rule, Rng& rng) {
    const int t_s = activefuzz::prediction_horizon(kind_of(sensor));
    if (capture.size() <= static_cast<std::size_t>(t_s))
        throw InsufficientCaptureError("capture shorter than the prediction horizon");
    if (n_spoofs < 1) throw std::invalid_argument("need at least one spoof");

    const auto& actual = capture.of(sensor);
    const bool delta = activefuzz::is_delta_target(sensor);

    // Prediction aligned to each tick from the vector t_s ticks earlier.
    std::vector<double> predicted(capture.size(), 0.0);
    for (std::size_t t = static_cast<std::size_t>(t_s); t < capture.size(); ++t) {
        std::size_t from = t - static_cast<std::size_t>(t_s);
        double p = model.predict(capture.vectors[from]);
        predicted[t] = delta ? actual[from] + p : p;
    }

    DetectorEval out;
    for (std::size_t t = static_cast<std::size_t>(t_s); t < capture.size(); ++t) {
        ++out.clean_points;
        if (anomaly_check(predicted[t], actual[t], cfg, sensor)) out.false_positive_rate += 1;
    }
    out.false_positive_rate /= out.clean_points;

    int detected = 0;
    for (int s = 0; s < n_spoofs; ++s) {
        std::size_t t = static_cast<std::size_t>(t_s) +
                        rng.below(capture.size() - static_cast<std::size_t>(t_s));
        double magnitude;
        if (kind_of(sensor) == SensorKind::Level)
            magnitude = rule.lit_lo + rng.uniform() * (rule.lit_hi - rule.lit_lo);
        else
            magnitude = (rule.rel_lo + rng.uniform() * (rule.rel_hi - rule.rel_lo)) *
                        cfg.max_of(sensor);
        double spoofed = actual[t] + (rng.uniform() < 0.5 ? -magnitude : magnitude);
        if (anomaly_check(predicted[t], spoofed, cfg, sensor)) ++detected;
    }
    out.spoofs = n_spoofs;
    out.detection_rate = static_cast<double>(detected) / n_spoofs;
    out.usable = out.false_positive_rate <= 0.05;
    return out;
}

} // namespace aquafuzz::defend
