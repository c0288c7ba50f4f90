#ifndef AQUAFUZZ_REGRESS_GBDT_HPP
#define AQUAFUZZ_REGRESS_GBDT_HPP

#include "aquafuzz/regress/dataset.hpp"
#include "aquafuzz/regress/predictor.hpp"

namespace aquafuzz::regress {

struct GbdtParams {
    int n_trees = 100;
    int max_depth = 3;
    double learning_rate = 0.1;
    double min_leaf = 5.0;  // minimum total example weight per leaf

    bool operator==(const GbdtParams&) const = default;
};

/// One regression tree over bit features. Nodes are stored in a flat array;
/// a split sends bit==0 left and bit==1 right. Leaves have feature < 0.
struct Tree {
    struct Node {
        int feature = -1;
        double value = 0.0;  // leaf output
        int left = -1;
        int right = -1;
    };
    std::vector<Node> nodes;

    /// Weighted variance reduction per split, keyed by feature, for
    /// importance accounting.
    std::vector<std::pair<int, double>> split_gains;

    double output(const netbus::FeatureVector& x) const {
        int i = 0;
        while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
            const Node& n = nodes[static_cast<std::size_t>(i)];
            i = x.test(static_cast<std::size_t>(n.feature)) ? n.right : n.left;
        }
        return nodes[static_cast<std::size_t>(i)].value;
    }
};

/// Gradient-boosted regression trees, least-squares boosting: each tree fits
/// the weighted residuals of the ensemble so far; splits maximise weighted
/// variance reduction with ties broken toward the lowest feature index.
class GbdtModel final : public Predictor {
public:
    GbdtModel() = default;
    GbdtModel(double base_value, GbdtParams params, std::vector<Tree> trees)
        : base_(base_value), params_(params), trees_(std::move(trees)) {}

    static GbdtModel fit(const TrainingSet& data, const GbdtParams& params);

    /// base_value + sum of shrunken tree outputs, in tree order.
    double predict(const netbus::FeatureVector& x) const override;

    /// Mean over trees of each tree's total weighted variance reduction
    /// attributed to the feature. All entries >= 0; zero trees give zeros.
    std::vector<double> feature_importance() const override;

    /// Per-tree shrunken outputs; predict(x) == base_value() + their sum.
    std::vector<double> super_features(const netbus::FeatureVector& x) const;

    double base_value() const { return base_; }
    const GbdtParams& params() const { return params_; }
    const std::vector<Tree>& trees() const { return trees_; }

private:
    double base_ = 0.0;
    GbdtParams params_;
    std::vector<Tree> trees_;
};

} // namespace aquafuzz::regress

#endif
