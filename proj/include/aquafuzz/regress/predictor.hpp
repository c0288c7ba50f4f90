#ifndef AQUAFUZZ_REGRESS_PREDICTOR_HPP
#define AQUAFUZZ_REGRESS_PREDICTOR_HPP

#include <memory>
#include <vector>

#include "aquafuzz/netbus/feature_vector.hpp"

namespace aquafuzz::regress {

/// Read-only regression model over feature vectors. Models are immutable
/// after fitting and safe to share across threads.
class Predictor {
public:
    virtual ~Predictor() = default;
    virtual double predict(const netbus::FeatureVector& x) const = 0;

    /// Per-bit influence scores, non-negative, one per feature position.
    virtual std::vector<double> feature_importance() const = 0;
};

enum class ModelKind { Linear, Gbdt };

inline const char* to_string(ModelKind k) { return k == ModelKind::Linear ? "linear" : "gbdt"; }

} // namespace aquafuzz::regress

#endif
