#include "aquafuzz/regress/gbdt.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "aquafuzz/regress/linear.hpp"  // DegenerateDataError

namespace aquafuzz::regress {

namespace {

constexpr std::size_t kWords = netbus::FeatureVector::kWords;
constexpr std::size_t kFeatures = netbus::FeatureVector::kBits;

struct SplitScan {
    // Per-feature accumulators, reused across nodes.
    std::vector<double> weight_on;
    std::vector<double> sum_on;

    SplitScan() : weight_on(kFeatures), sum_on(kFeatures) {}

    void clear() {
        std::fill(weight_on.begin(), weight_on.end(), 0.0);
        std::fill(sum_on.begin(), sum_on.end(), 0.0);
    }
};

struct Builder {
    const std::vector<std::uint64_t>& rows;  // packed bit rows
    const std::vector<double>& w;
    const std::vector<double>& residual;
    const GbdtParams& params;
    Tree& tree;
    SplitScan& scan;

    int build(std::vector<std::uint32_t>& idx, int depth) {
        double wsum = 0, ysum = 0;
        for (std::uint32_t i : idx) {
            wsum += w[i];
            ysum += w[i] * residual[i];
        }
        double mean = ysum / wsum;

        int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(Tree::Node{-1, mean, -1, -1});
        if (depth >= params.max_depth || wsum < 2 * params.min_leaf) return node_id;

        // Best split by weighted variance reduction; the strict comparison
        // leaves the lowest feature index as the winner on ties.
        scan.clear();
        for (std::uint32_t i : idx) {
            const std::uint64_t* r = &rows[static_cast<std::size_t>(i) * kWords];
            double wi = w[i];
            double wy = wi * residual[i];
            for (std::size_t wd = 0; wd < kWords; ++wd) {
                std::uint64_t bits = r[wd];
                while (bits) {
                    std::size_t f = wd * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    bits &= bits - 1;
                    scan.weight_on[f] += wi;
                    scan.sum_on[f] += wy;
                }
            }
        }

        double parent_score = ysum * ysum / wsum;
        double best_gain = 0.0;
        int best_feature = -1;
        for (std::size_t f = 0; f < kFeatures; ++f) {
            double w1 = scan.weight_on[f];
            double w0 = wsum - w1;
            if (w1 < params.min_leaf || w0 < params.min_leaf) continue;
            double s1 = scan.sum_on[f];
            double s0 = ysum - s1;
            double gain = s1 * s1 / w1 + s0 * s0 / w0 - parent_score;
            if (gain > best_gain) {
                best_gain = gain;
                best_feature = static_cast<int>(f);
            }
        }
        if (best_feature < 0 || best_gain <= 1e-12) return node_id;

        std::vector<std::uint32_t> left, right;
        left.reserve(idx.size());
        right.reserve(idx.size());
        for (std::uint32_t i : idx) {
            const std::uint64_t* r = &rows[static_cast<std::size_t>(i) * kWords];
            bool on = (r[static_cast<std::size_t>(best_feature) >> 6] >>
                       (static_cast<std::size_t>(best_feature) & 63)) & 1;
            (on ? right : left).push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();

        tree.split_gains.emplace_back(best_feature, best_gain);
        int l = build(left, depth + 1);
        int r = build(right, depth + 1);
        tree.nodes[static_cast<std::size_t>(node_id)].feature = best_feature;
        tree.nodes[static_cast<std::size_t>(node_id)].left = l;
        tree.nodes[static_cast<std::size_t>(node_id)].right = r;
        return node_id;
    }
};

} // namespace

GbdtModel GbdtModel::fit(const TrainingSet& raw, const GbdtParams& params) {
    if (params.n_trees < 0 || params.max_depth < 1 || params.min_leaf <= 0 ||
        params.learning_rate <= 0)
        throw std::invalid_argument("bad gbdt hyperparameters");
    if (static_cast<double>(raw.size()) < 2 * params.min_leaf)
        throw std::invalid_argument("gbdt fit needs at least 2*min_leaf examples");

    const TrainingSet data = raw.merged();
    const std::size_t n = data.size();
    const auto& y = data.y();
    const auto& w = data.w();

    bool constant = true;
    for (std::size_t i = 1; i < n; ++i)
        if (y[i] != y[0]) constant = false;

    double wsum = 0, ysum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        wsum += w[i];
        ysum += w[i] * y[i];
    }
    double base = ysum / wsum;

    GbdtModel model;
    model.base_ = base;
    model.params_ = params;
    if (constant || params.n_trees == 0) return model;

    std::vector<std::uint64_t> rows(n * kWords);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t wd = 0; wd < kWords; ++wd) rows[i * kWords + wd] = data.X()[i].word(wd);

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - base;

    SplitScan scan;
    model.trees_.reserve(static_cast<std::size_t>(params.n_trees));
    for (int t = 0; t < params.n_trees; ++t) {
        Tree tree;
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        Builder{rows, w, residual, params, tree, scan}.build(idx, 0);

        for (std::size_t i = 0; i < n; ++i) {
            int node = 0;
            while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
                const Tree::Node& nd = tree.nodes[static_cast<std::size_t>(node)];
                bool on = (rows[i * kWords + (static_cast<std::size_t>(nd.feature) >> 6)] >>
                           (static_cast<std::size_t>(nd.feature) & 63)) & 1;
                node = on ? nd.right : nd.left;
            }
            residual[i] -= params.learning_rate * tree.nodes[static_cast<std::size_t>(node)].value;
        }
        model.trees_.push_back(std::move(tree));
    }
    return model;
}

double GbdtModel::predict(const netbus::FeatureVector& x) const {
    double acc = base_;
    for (const Tree& t : trees_) acc += params_.learning_rate * t.output(x);
    return acc;
}

std::vector<double> GbdtModel::super_features(const netbus::FeatureVector& x) const {
    std::vector<double> out;
    out.reserve(trees_.size());
    for (const Tree& t : trees_) out.push_back(params_.learning_rate * t.output(x));
    return out;
}

std::vector<double> GbdtModel::feature_importance() const {
    std::vector<double> imp(kFeatures, 0.0);
    if (trees_.empty()) return imp;
    for (const Tree& t : trees_)
        for (auto [feature, gain] : t.split_gains)
            imp[static_cast<std::size_t>(feature)] += gain;
    for (double& v : imp) v /= static_cast<double>(trees_.size());
    return imp;
}

} // namespace aquafuzz::regress
