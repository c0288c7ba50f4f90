#ifndef AQUAFUZZ_DEFEND_ANOMALY_HPP
#define AQUAFUZZ_DEFEND_ANOMALY_HPP

#include <array>

#include "aquafuzz/activefuzz/pretrain.hpp"
#include "aquafuzz/core/rng.hpp"
#include "aquafuzz/regress/predictor.hpp"

namespace aquafuzz::defend {

struct InsufficientCaptureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Residual-test thresholds: relative against the sensor's maximum
/// observable value for flow/pressure, absolute (in mm) for tank levels.
struct DetectorConfig {
    double rel_threshold = 0.05;
    double abs_threshold = 5.0;
    std::array<double, kSensorCount> v_max{};  // per-sensor maximum observable value

    double max_of(SensorId id) const { return v_max[static_cast<std::size_t>(id)]; }
};

/// True iff the predicted and actual values disagree enough to report an
/// anomaly. Level comparisons must be fed reconstructed absolute values
/// (current reading plus predicted delta).
bool anomaly_check(double v_p, double v_a, const DetectorConfig& cfg, SensorId sensor);

/// Magnitude rule for randomly generated spoofed readings: an added or
/// subtracted offset in [lit_lo, lit_hi] mm for tanks, or in
/// [rel_lo, rel_hi] * v_max for the others.
struct SpoofRule {
    double lit_lo = 5.0;
    double lit_hi = 10.0;
    double rel_lo = 0.05;
    double rel_hi = 0.10;
};

struct DetectorEval {
    double detection_rate = 0.0;       // fraction of injected spoofs flagged
    double false_positive_rate = 0.0;  // flags on unperturbed points
    bool usable = false;               // FPR at or below 5%
    int spoofs = 0;
    int clean_points = 0;
};

/// Inject n_spoofs random perturbed readings into a held-out normal trace
/// and measure how many the detector flags; the false positive rate comes
/// from the unperturbed points.
DetectorEval eval_anomaly_detector(const regress::Predictor& model,
                                   const activefuzz::Trace& capture, SensorId sensor, int n_spoofs,
                                   const DetectorConfig& cfg, const SpoofRule& rule, Rng& rng);

} // namespace aquafuzz::defend

#endif
