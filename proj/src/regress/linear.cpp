#include "aquafuzz/regress/linear.hpp"

#include <bit>
#include <cmath>

namespace aquafuzz::regress {

namespace {

constexpr std::size_t kWords = netbus::FeatureVector::kWords;

std::vector<std::uint64_t> pack_rows(const std::vector<netbus::FeatureVector>& X) {
    std::vector<std::uint64_t> words(X.size() * kWords);
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t w = 0; w < kWords; ++w) words[i * kWords + w] = X[i].word(w);
    return words;
}

double dot_rows(const std::uint64_t* a, const std::uint64_t* b) {
    int acc = 0;
    for (std::size_t w = 0; w < kWords; ++w) acc += std::popcount(a[w] & b[w]);
    return static_cast<double>(acc);
}

/// In-place Cholesky solve of the SPD system M z = rhs.
void cholesky_solve(std::vector<double>& m, std::vector<double>& rhs, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = m[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= m[j * n + k] * m[j * n + k];
        if (d <= 0) throw DegenerateDataError("ridge system is not positive definite");
        d = std::sqrt(d);
        m[j * n + j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m[i * n + j];
            const double* ri = &m[i * n];
            const double* rj = &m[j * n];
            for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
            m[i * n + j] = s / d;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (std::size_t k = 0; k < i; ++k) s -= m[i * n + k] * rhs[k];
        rhs[i] = s / m[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = rhs[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= m[k * n + ii] * rhs[k];
        rhs[ii] = s / m[ii * n + ii];
    }
}

} // namespace

LinearModel::LinearModel(std::vector<double> weights, double bias, double lambda)
    : weights_(std::move(weights)), bias_(bias), lambda_(lambda) {
    if (weights_.size() != kFeatures)
        throw std::invalid_argument("linear model needs one weight per feature bit");
    for (double w : weights_)
        if (!std::isfinite(w)) throw std::invalid_argument("linear model weights must be finite");
}

double LinearModel::predict(const netbus::FeatureVector& x) const {
    double acc = bias_;
    for (std::size_t w = 0; w < kWords; ++w) {
        std::uint64_t bits = x.word(w);
        while (bits) {
            int b = std::countr_zero(bits);
            bits &= bits - 1;
            acc += weights_[w * 64 + static_cast<std::size_t>(b)];
        }
    }
    return acc;
}

std::vector<double> LinearModel::feature_importance() const {
    std::vector<double> imp(weights_.size());
    for (std::size_t i = 0; i < imp.size(); ++i) imp[i] = std::fabs(weights_[i]);
    return imp;
}

LinearModel LinearModel::fit(const TrainingSet& raw, double lambda) {
    if (raw.size() < 2) throw std::invalid_argument("ridge fit needs at least two examples");
    if (lambda < 0) throw std::invalid_argument("ridge lambda must be non-negative");

    const TrainingSet data = raw.merged();
    const std::size_t n = data.size();
    const auto& y = data.y();
    const auto& w = data.w();

    bool constant = true;
    for (std::size_t i = 1; i < n; ++i)
        if (y[i] != y[0]) constant = false;
    if (constant) {
        if (lambda == 0)
            throw DegenerateDataError("all targets identical with lambda = 0");
        LinearModel m;
        m.bias_ = y[0];
        m.lambda_ = lambda;
        return m;
    }

    std::vector<std::uint64_t> rows = pack_rows(data.X());

    double W = 0, ybar = 0;
    for (std::size_t i = 0; i < n; ++i) {
        W += w[i];
        ybar += w[i] * y[i];
    }
    ybar /= W;

    // Weighted feature means and per-row dots with the mean vector.
    std::vector<double> xbar(kFeatures, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t* r = &rows[i * kWords];
        for (std::size_t wd = 0; wd < kWords; ++wd) {
            std::uint64_t bits = r[wd];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                xbar[wd * 64 + static_cast<std::size_t>(b)] += w[i];
            }
        }
    }
    for (double& v : xbar) v /= W;
    double xbar_sq = 0;
    for (double v : xbar) xbar_sq += v * v;

    std::vector<double> row_dot_mean(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t* r = &rows[i * kWords];
        double s = 0;
        for (std::size_t wd = 0; wd < kWords; ++wd) {
            std::uint64_t bits = r[wd];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                s += xbar[wd * 64 + static_cast<std::size_t>(b)];
            }
        }
        row_dot_mean[i] = s;
    }

    std::vector<double> sqw(n);
    for (std::size_t i = 0; i < n; ++i) sqw[i] = std::sqrt(w[i]);

    // M = W^{1/2} Xc Xc^T W^{1/2} + lambda I over centred rows.
    double ridge = lambda > 0 ? lambda : 1e-10;
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double k = dot_rows(&rows[i * kWords], &rows[j * kWords]) - row_dot_mean[i] -
                       row_dot_mean[j] + xbar_sq;
            double v = sqw[i] * sqw[j] * k;
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
        m[i * n + i] += ridge;
    }

    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = sqw[i] * (y[i] - ybar);
    cholesky_solve(m, z, n);

    // weights = Xc^T W^{1/2} z.
    std::vector<double> weights(kFeatures, 0.0);
    double zsum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double c = sqw[i] * z[i];
        zsum += c;
        const std::uint64_t* r = &rows[i * kWords];
        for (std::size_t wd = 0; wd < kWords; ++wd) {
            std::uint64_t bits = r[wd];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                weights[wd * 64 + static_cast<std::size_t>(b)] += c;
            }
        }
    }
    for (std::size_t f = 0; f < kFeatures; ++f) weights[f] -= zsum * xbar[f];

    double bias = ybar;
    for (std::size_t f = 0; f < kFeatures; ++f) bias -= weights[f] * xbar[f];

    LinearModel model(std::move(weights), bias, lambda);
    return model;
}

} // namespace aquafuzz::regress
