#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "aquafuzz/core/rng.hpp"
#include "aquafuzz/regress/dataset.hpp"
#include "aquafuzz/regress/gbdt.hpp"
#include "aquafuzz/regress/linear.hpp"
#include "aquafuzz/regress/metrics.hpp"
#include "aquafuzz/regress/model_io.hpp"

using namespace aquafuzz;
using namespace aquafuzz::regress;
using netbus::FeatureVector;

namespace {

FeatureVector vec_with(std::initializer_list<std::size_t> set_bits) {
    FeatureVector v;
    for (std::size_t b : set_bits) v.set(b);
    return v;
}

/// Random vector with set bits confined to the first `span` positions.
FeatureVector random_vec(Rng& rng, std::size_t span, double density = 0.5) {
    FeatureVector v;
    for (std::size_t i = 0; i < span; ++i)
        if (rng.uniform() < density) v.set(i);
    return v;
}

/// Test-only primal ridge solver over a small feature prefix, for checking
/// the production dual-form fit against the normal equations directly.
struct PrimalRidge {
    std::vector<double> weights;  // size d
    double bias;
};
PrimalRidge primal_ridge(const TrainingSet& data, std::size_t d, double lambda) {
    std::size_t m = d + 1;  // intercept last
    std::vector<double> a(m * m, 0.0), b(m, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::vector<double> row(m, 0.0);
        for (std::size_t f = 0; f < d; ++f) row[f] = data.X()[i].test(f) ? 1.0 : 0.0;
        row[d] = 1.0;
        double w = data.w()[i];
        for (std::size_t p = 0; p < m; ++p) {
            b[p] += w * row[p] * data.y()[i];
            for (std::size_t q = 0; q < m; ++q) a[p * m + q] += w * row[p] * row[q];
        }
    }
    for (std::size_t f = 0; f < d; ++f) a[f * m + f] += lambda;  // intercept unpenalised

    // Gaussian elimination with partial pivoting.
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < m; ++r)
            if (std::fabs(a[r * m + c]) > std::fabs(a[piv * m + c])) piv = r;
        for (std::size_t q = 0; q < m; ++q) std::swap(a[c * m + q], a[piv * m + q]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c || a[r * m + c] == 0) continue;
            double k = a[r * m + c] / a[c * m + c];
            for (std::size_t q = 0; q < m; ++q) a[r * m + q] -= k * a[c * m + q];
            b[r] -= k * b[c];
        }
    }
    PrimalRidge out;
    out.weights.resize(d);
    for (std::size_t f = 0; f < d; ++f) out.weights[f] = b[f] / a[f * m + f];
    out.bias = b[d] / a[d * m + d];
    return out;
}

/// Exhaustive best-split oracle: argmax weighted variance reduction, lowest
/// feature index first, both children at least min_leaf weight.
struct OracleSplit {
    int feature = -1;
    double gain = 0;
};
OracleSplit oracle_split(const TrainingSet& data, const std::vector<double>& target,
                         std::size_t features, double min_leaf) {
    double wsum = 0, ysum = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        wsum += data.w()[i];
        ysum += data.w()[i] * target[i];
    }
    OracleSplit best;
    for (std::size_t f = 0; f < features; ++f) {
        double w1 = 0, s1 = 0;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (data.X()[i].test(f)) {
                w1 += data.w()[i];
                s1 += data.w()[i] * target[i];
            }
        double w0 = wsum - w1, s0 = ysum - s1;
        if (w1 < min_leaf || w0 < min_leaf) continue;
        double gain = s1 * s1 / w1 + s0 * s0 / w0 - ysum * ysum / wsum;
        if (gain > best.gain) {
            best.gain = gain;
            best.feature = static_cast<int>(f);
        }
    }
    return best;
}

double training_wsse(const TrainingSet& data, const std::vector<double>& pred) {
    double e = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        double r = data.y()[i] - pred[i];
        e += data.w()[i] * r * r;
    }
    return e;
}

} // namespace

TEST_CASE("exact interpolation recovers the generating weights") {
    TrainingSet data;
    for (int i = 0; i < 8; ++i) {
        bool on = i % 2;
        FeatureVector v;
        if (on) v.set(7);
        data.append(v, on ? 3.0 : 1.0);
    }
    LinearModel m = LinearModel::fit(data, 0.0);
    CHECK(m.weights()[7] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(m.bias() == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t f = 0; f < LinearModel::kFeatures; ++f)
        if (f != 7) CHECK(std::fabs(m.weights()[f]) < 1e-6);
}

TEST_CASE("constant targets give a constant model, or fail without ridge") {
    TrainingSet data;
    Rng rng(1);
    for (int i = 0; i < 6; ++i) data.append(random_vec(rng, 40), 4.25);

    LinearModel m = LinearModel::fit(data, 1e-3);
    CHECK(m.bias() == 4.25);
    for (std::size_t f = 0; f < 64; ++f) CHECK(m.weights()[f] == 0.0);
    CHECK_THROWS_AS(LinearModel::fit(data, 0.0), DegenerateDataError);
}

TEST_CASE("integer weights behave as duplicated rows") {
    Rng rng(7);
    TrainingSet weighted, duplicated;
    for (int i = 0; i < 20; ++i) {
        FeatureVector v = random_vec(rng, 24);
        double y = rng.gauss();
        double w = 1.0 + static_cast<double>(rng.below(3));
        weighted.append(v, y, w);
        for (int k = 0; k < static_cast<int>(w); ++k) duplicated.append(v, y, 1.0);
    }

    LinearModel a = LinearModel::fit(weighted, 1e-3);
    LinearModel b = LinearModel::fit(duplicated, 1e-3);
    for (std::size_t f = 0; f < 24; ++f)
        CHECK(a.weights()[f] == doctest::Approx(b.weights()[f]).epsilon(0).scale(1).epsilon(1e-9));
    CHECK(a.bias() == doctest::Approx(b.bias()).epsilon(1e-9));

    GbdtParams hp;
    hp.n_trees = 15;
    hp.max_depth = 3;
    hp.learning_rate = 0.3;
    hp.min_leaf = 2.0;
    GbdtModel ga = GbdtModel::fit(weighted, hp);
    GbdtModel gb = GbdtModel::fit(duplicated, hp);
    Rng probe(8);
    for (int i = 0; i < 50; ++i) {
        FeatureVector x = random_vec(probe, 24);
        CHECK(ga.predict(x) == doctest::Approx(gb.predict(x)).epsilon(1e-6));
    }
}

TEST_CASE("dual-form ridge matches the primal normal equations") {
    Rng rng(11);
    for (double lambda : {1e-3, 0.1, 1.0}) {
        TrainingSet data;
        for (int i = 0; i < 30; ++i) data.append(random_vec(rng, 16), rng.gauss(1.0, 2.0),
                                                 1.0 + static_cast<double>(rng.below(2)));
        LinearModel dual = LinearModel::fit(data, lambda);
        PrimalRidge primal = primal_ridge(data, 16, lambda);
        for (std::size_t f = 0; f < 16; ++f)
            CHECK(dual.weights()[f] == doctest::Approx(primal.weights[f]).epsilon(1e-7));
        CHECK(dual.bias() == doctest::Approx(primal.bias).epsilon(1e-7));
        for (std::size_t f = 16; f < 64; ++f) CHECK(dual.weights()[f] == doctest::Approx(0.0));
    }
}

TEST_CASE("a step target yields a single split on the stepped bit") {
    Rng rng(3);
    TrainingSet data;
    for (int i = 0; i < 50; ++i) {
        FeatureVector v = random_vec(rng, 64);
        v.set(3, i < 25);
        data.append(v, v.test(3) ? 5.0 : 1.0);
    }
    GbdtParams hp;
    hp.n_trees = 1;
    hp.max_depth = 1;
    hp.learning_rate = 1.0;
    GbdtModel m = GbdtModel::fit(data, hp);

    REQUIRE(m.trees().size() == 1);
    const Tree& tree = m.trees()[0];
    REQUIRE(tree.nodes[0].feature == 3);

    // Brute-force oracle over every feature agrees with the chosen split.
    std::vector<double> residual(data.size());
    double base = m.base_value();
    for (std::size_t i = 0; i < data.size(); ++i) residual[i] = data.y()[i] - base;
    OracleSplit oracle = oracle_split(data, residual, FeatureVector::kBits, hp.min_leaf);
    CHECK(oracle.feature == 3);

    // Leaf predictions are the class means.
    FeatureVector on = vec_with({3});
    FeatureVector off;
    CHECK(m.predict(on) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(m.predict(off) == doctest::Approx(1.0).epsilon(1e-12));

    // Importance bookkeeping: the only split carries the oracle's gain.
    auto imp = m.feature_importance();
    CHECK(imp[3] == doctest::Approx(oracle.gain).epsilon(1e-9));
    for (std::size_t f = 0; f < FeatureVector::kBits; ++f)
        if (f != 3) CHECK(imp[f] == 0.0);
}

TEST_CASE("zero trees predict the weighted mean everywhere") {
    TrainingSet data;
    data.append(vec_with({1}), 2.0, 1.0);
    data.append(vec_with({2}), 8.0, 3.0);
    GbdtParams hp;
    hp.n_trees = 0;
    hp.min_leaf = 1.0;
    GbdtModel m = GbdtModel::fit(data, hp);
    CHECK(m.predict(vec_with({5})) == doctest::Approx(6.5));  // (2 + 3*8)/4
    CHECK(m.super_features(vec_with({5})).empty());
    auto imp = m.feature_importance();
    for (double v : imp) CHECK(v == 0.0);
}

TEST_CASE("more trees never increase weighted training error") {
    Rng rng(21);
    TrainingSet data;
    for (int i = 0; i < 64; ++i)
        data.append(random_vec(rng, 32), rng.gauss(), 1.0 + static_cast<double>(rng.below(3)));

    GbdtParams hp;
    hp.n_trees = 20;
    hp.max_depth = 2;
    hp.learning_rate = 0.2;
    hp.min_leaf = 3.0;
    GbdtModel m = GbdtModel::fit(data, hp);

    std::vector<double> pred(data.size(), m.base_value());
    double prev = training_wsse(data, pred);
    for (const Tree& t : m.trees()) {
        for (std::size_t i = 0; i < data.size(); ++i)
            pred[i] += hp.learning_rate * t.output(data.X()[i]);
        double cur = training_wsse(data, pred);
        CHECK(cur <= prev + 1e-9);
        prev = cur;
    }
}

TEST_CASE("root splits match exhaustive search on small instances") {
    Rng rng(31);
    for (int instance = 0; instance < 20; ++instance) {
        std::size_t features = 16 + rng.below(49);  // 16..64
        std::size_t rows = 16 + rng.below(49);
        TrainingSet data;
        for (std::size_t i = 0; i < rows; ++i)
            data.append(random_vec(rng, features), rng.gauss(), 1.0 + static_cast<double>(rng.below(3)));

        GbdtParams hp;
        hp.n_trees = 1;
        hp.max_depth = 1;
        hp.min_leaf = 2.0;
        GbdtModel m = GbdtModel::fit(data, hp);

        std::vector<double> residual(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) residual[i] = data.y()[i] - m.base_value();
        OracleSplit oracle = oracle_split(data, residual, FeatureVector::kBits, hp.min_leaf);

        int chosen = m.trees().empty() ? -1 : m.trees()[0].nodes[0].feature;
        if (oracle.feature < 0) {
            CHECK((m.trees().empty() || chosen < 0));
        } else {
            CHECK(chosen == oracle.feature);
        }
    }
}

TEST_CASE("prediction basics") {
    TrainingSet data;
    for (int i = 0; i < 8; ++i) {
        FeatureVector v;
        if (i % 2) v.set(7);
        data.append(v, i % 2 ? 3.0 : 1.0);
    }
    LinearModel m = LinearModel::fit(data, 0.0);
    CHECK(m.predict(FeatureVector{}) == doctest::Approx(m.bias()));
    CHECK(m.predict(vec_with({7})) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("importance is the absolute weight for linear models") {
    std::vector<double> w(LinearModel::kFeatures, 0.0);
    w[0] = 0.0;
    w[1] = -3.0;
    w[2] = 1.0;
    LinearModel m(std::move(w), 0.5, 1e-3);
    auto imp = m.feature_importance();
    CHECK(imp[0] == 0.0);
    CHECK(imp[1] == 3.0);
    CHECK(imp[2] == 1.0);
    CHECK(imp.size() == LinearModel::kFeatures);

    std::size_t argmax = static_cast<std::size_t>(
        std::max_element(imp.begin(), imp.end()) - imp.begin());
    CHECK(argmax == 1);
}

TEST_CASE("r2 identities") {
    std::vector<double> actual = {1.0, 2.0, 3.0};
    std::vector<double> perfect = actual;
    CHECK(r2_score(perfect, actual) == doctest::Approx(1.0));

    std::vector<double> mean(3, 2.0);
    CHECK(r2_score(mean, actual) == doctest::Approx(0.0));

    std::vector<double> off = {1.0, 2.0, 5.0};
    CHECK(r2_score(off, actual) == doctest::Approx(-1.0));

    std::vector<double> flat = {4.0, 4.0, 4.0};
    CHECK_THROWS_AS(r2_score(perfect, flat), UndefinedVarianceError);
    CHECK_THROWS_AS(r2_score(std::vector<double>{1.0}, actual), std::invalid_argument);
}

TEST_CASE("pointwise-better predictions never lower r2") {
    Rng rng(5);
    std::vector<double> actual, worse, better;
    for (int i = 0; i < 50; ++i) {
        double a = rng.gauss(0, 3);
        double err = rng.gauss(0, 1);
        actual.push_back(a);
        worse.push_back(a + err);
        better.push_back(a + err * 0.5);
    }
    CHECK(r2_score(better, actual) >= r2_score(worse, actual));
}

TEST_CASE("super features decompose the prediction exactly") {
    Rng rng(17);
    TrainingSet data;
    for (int i = 0; i < 60; ++i) data.append(random_vec(rng, 48), rng.gauss(2, 1));
    GbdtParams hp;
    hp.n_trees = 12;
    hp.max_depth = 3;
    hp.min_leaf = 3.0;
    GbdtModel m = GbdtModel::fit(data, hp);

    for (int i = 0; i < 20; ++i) {
        FeatureVector x = random_vec(rng, 48);
        auto sf = m.super_features(x);
        REQUIRE(sf.size() == m.trees().size());
        double acc = m.base_value();
        for (double s : sf) acc += s;
        CHECK(m.predict(x) == acc);  // same summation order, bit-exact
    }
}

TEST_CASE("identical trees give identical super features") {
    Tree t;
    t.nodes.push_back({9, 0.0, 1, 2});
    t.nodes.push_back({-1, 1.5, -1, -1});
    t.nodes.push_back({-1, -2.5, -1, -1});
    GbdtParams hp;
    hp.n_trees = 2;
    GbdtModel m(0.0, hp, {t, t});
    auto sf = m.super_features(vec_with({9}));
    REQUIRE(sf.size() == 2);
    CHECK(sf[0] == sf[1]);
}

TEST_CASE("model files round trip predictions exactly") {
    Rng rng(19);
    TrainingSet data;
    for (int i = 0; i < 80; ++i) data.append(random_vec(rng, 96), rng.gauss(0, 2));

    auto dir = std::filesystem::temp_directory_path();
    auto lin_path = (dir / "af_lin_model.json").string();
    auto gbdt_path = (dir / "af_gbdt_model.json").string();

    LinearModel lin = LinearModel::fit(data, 1e-3);
    save_model(lin_path, lin, data.size());
    LoadedModel lin_loaded = load_model(lin_path);
    CHECK(lin_loaded.kind == ModelKind::Linear);
    CHECK(lin_loaded.training_rows == data.size());
    CHECK(lin_loaded.linear().lambda() == 1e-3);

    GbdtParams hp;
    hp.n_trees = 10;
    hp.min_leaf = 4.0;
    GbdtModel gbdt = GbdtModel::fit(data, hp);
    save_model(gbdt_path, gbdt, data.size());
    LoadedModel gbdt_loaded = load_model(gbdt_path);
    CHECK(gbdt_loaded.kind == ModelKind::Gbdt);
    CHECK(gbdt_loaded.gbdt().params() == hp);

    for (int i = 0; i < 100; ++i) {
        FeatureVector x = random_vec(rng, 256);
        CHECK(lin_loaded.model->predict(x) == lin.predict(x));
        CHECK(gbdt_loaded.model->predict(x) == gbdt.predict(x));
    }
    std::filesystem::remove(lin_path);
    std::filesystem::remove(gbdt_path);
}

TEST_CASE("model loader rejects unknown versions") {
    auto path = (std::filesystem::temp_directory_path() / "af_bad_model.json").string();
    {
        std::ofstream f(path);
        f << R"({"format":"aquafuzz-model","version":2,"kind":"linear"})";
    }
    CHECK_THROWS_AS(load_model(path), ModelFormatError);
    std::filesystem::remove(path);
}

TEST_CASE("training sets persist losslessly") {
    Rng rng(23);
    TrainingSet data;
    for (int i = 0; i < 40; ++i)
        data.append(random_vec(rng, 512), rng.gauss(), 1.0 + static_cast<double>(rng.below(30)));

    auto path = (std::filesystem::temp_directory_path() / "af_trainset.csv").string();
    data.save(path);
    TrainingSet loaded = TrainingSet::load(path);
    REQUIRE(loaded.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(loaded.X()[i] == data.X()[i]);
        CHECK(loaded.y()[i] == data.y()[i]);
        CHECK(loaded.w()[i] == data.w()[i]);
    }
    std::filesystem::remove(path);
}
