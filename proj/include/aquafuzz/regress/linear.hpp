#ifndef AQUAFUZZ_REGRESS_LINEAR_HPP
#define AQUAFUZZ_REGRESS_LINEAR_HPP

#include "aquafuzz/regress/dataset.hpp"
#include "aquafuzz/regress/predictor.hpp"

namespace aquafuzz::regress {

struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ridge regression over the 2752 payload bits. Fitting minimises the
/// weighted squared error plus lambda * ||weights||^2 with an unpenalised
/// intercept. The system is solved in its dual (Gram) form: with far fewer
/// rows than features the kernel matrix is the small one, and bit rows make
/// its entries popcounts.
class LinearModel final : public Predictor {
public:
    static constexpr std::size_t kFeatures = netbus::FeatureVector::kBits;

    LinearModel() : weights_(kFeatures, 0.0) {}
    LinearModel(std::vector<double> weights, double bias, double lambda);

    static LinearModel fit(const TrainingSet& data, double lambda);

    double predict(const netbus::FeatureVector& x) const override;

    /// importance(i) = |weights[i]|.
    std::vector<double> feature_importance() const override;

    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }
    double lambda() const { return lambda_; }

private:
    std::vector<double> weights_;
    double bias_ = 0.0;
    double lambda_ = 0.0;
};

} // namespace aquafuzz::regress

#endif
