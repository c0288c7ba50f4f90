#ifndef AQUAFUZZ_REGRESS_DATASET_HPP
#define AQUAFUZZ_REGRESS_DATASET_HPP

#include <string>
#include <vector>

#include "aquafuzz/netbus/feature_vector.hpp"

namespace aquafuzz::regress {

/// Weighted regression examples over payload bit vectors. Targets are the
/// future absolute value for flow/pressure sensors and the future delta for
/// tank levels; weights implement repeated examples without duplication.
class TrainingSet {
public:
    void append(netbus::FeatureVector x, double y, double w = 1.0) {
        if (!(w > 0)) throw std::invalid_argument("training weight must be positive");
        X_.push_back(std::move(x));
        y_.push_back(y);
        w_.push_back(w);
    }

    std::size_t size() const { return X_.size(); }
    bool empty() const { return X_.empty(); }

    const std::vector<netbus::FeatureVector>& X() const { return X_; }
    const std::vector<double>& y() const { return y_; }
    const std::vector<double>& w() const { return w_; }

    double total_weight() const {
        double t = 0;
        for (double w : w_) t += w;
        return t;
    }

    /// Canonical form: identical (x, y) examples merged with summed weights,
    /// first-occurrence order preserved. Fitting on the merged set makes
    /// integer weights and row duplication bit-identical.
    TrainingSet merged() const;

    void save(const std::string& path) const;
    static TrainingSet load(const std::string& path);

private:
    std::vector<netbus::FeatureVector> X_;
    std::vector<double> y_;
    std::vector<double> w_;
};

} // namespace aquafuzz::regress

#endif
