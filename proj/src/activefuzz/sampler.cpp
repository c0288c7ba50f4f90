#include "aquafuzz/activefuzz/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "aquafuzz/regress/gbdt.hpp"

namespace aquafuzz::activefuzz {

std::size_t roulette_index(std::span<const double> fitness, Rng& rng) {
    if (fitness.empty()) throw EmptyPoolError("roulette selection over an empty pool");
    double total = 0;
    for (double f : fitness) {
        if (f < 0 || !std::isfinite(f))
            throw std::invalid_argument("roulette fitness must be finite and non-negative");
        total += f;
    }
    if (total <= 0) return rng.below(fitness.size());  // undefined formula: uniform

    double r = rng.uniform() * total;
    double acc = 0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        acc += fitness[i];
        if (acc > r) return i;
    }
    return fitness.size() - 1;  // r landed on the accumulated rounding edge
}

const Candidate& roulette_select(std::span<const Candidate> candidates, Rng& rng) {
    std::vector<double> fitness(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) fitness[i] = candidates[i].fitness;
    return candidates[roulette_index(fitness, rng)];
}

std::vector<Candidate> make_pool(const netbus::FeatureVector& origin, int n_m, int pool_size,
                                 Rng& rng) {
    if (n_m < 1 || pool_size < 1) throw std::invalid_argument("pool needs n_m >= 1, pool_size >= 1");
    std::vector<Candidate> pool;
    pool.reserve(static_cast<std::size_t>(pool_size));
    for (int c = 0; c < pool_size; ++c) {
        Candidate cand;
        cand.vector = origin;
        auto flips = static_cast<std::size_t>(rng.between(1, n_m));
        cand.flipped_bits.reserve(flips);
        while (cand.flipped_bits.size() < flips) {
            std::size_t bit = rng.below(netbus::FeatureVector::kBits);
            if (std::find(cand.flipped_bits.begin(), cand.flipped_bits.end(), bit) !=
                cand.flipped_bits.end())
                continue;
            cand.flipped_bits.push_back(bit);
            cand.vector.flip(bit);
        }
        pool.push_back(std::move(cand));
    }
    return pool;
}

Candidate select_ebcm(const regress::Predictor& model, double observed, std::vector<Candidate> pool,
                      Rng& rng) {
    if (pool.empty()) throw EmptyPoolError("ebcm selection over an empty pool");
    for (Candidate& c : pool) c.fitness = std::fabs(observed - model.predict(c.vector));
    return roulette_select(pool, rng);
}

Candidate ebcm_sample(netbus::PlantLink& link, const regress::Predictor& model, SensorId sensor,
                      int t_s, int n_m, int pool_size, Rng& rng) {
    netbus::FeatureVector p_o = netbus::assemble(link.sniff_window(1));
    double before = link.read_sensor(sensor).value;
    link.advance(t_s);
    double v_s = link.read_sensor(sensor).value;
    if (is_delta_target(sensor)) v_s -= before;

    return select_ebcm(model, v_s, make_pool(p_o, n_m, pool_size, rng), rng);
}

EmcmEnsemble EmcmEnsemble::fit(const regress::TrainingSet& data, const regress::FitSpec& spec,
                               int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("ensemble size must be positive");
    EmcmEnsemble out;
    out.members_.reserve(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) {
        regress::TrainingSet sample;
        for (std::size_t i = 0; i < data.size(); ++i) {
            std::size_t pick = rng.below(data.size());
            sample.append(data.X()[pick], data.y()[pick], data.w()[pick]);
        }
        try {
            out.members_.push_back(regress::fit_model(sample, spec));
        } catch (const std::exception& e) {
            throw EnsembleUnfitError(std::string("bootstrap refit failed: ") + e.what());
        }
    }
    return out;
}

double emcm_score(const regress::Predictor& model, const EmcmEnsemble& ensemble,
                  const netbus::FeatureVector& x) {
    double norm;
    if (const auto* gbdt = dynamic_cast<const regress::GbdtModel*>(&model)) {
        double sq = 0;
        for (double s : gbdt->super_features(x)) sq += s * s;
        norm = std::sqrt(sq);
    } else {
        norm = std::sqrt(static_cast<double>(x.count()));
    }
    if (norm == 0) return 0.0;

    double prediction = model.predict(x);
    double disagreement = 0;
    for (std::size_t k = 0; k < ensemble.size(); ++k)
        disagreement += std::fabs(prediction - ensemble.member(k).predict(x));
    return disagreement / static_cast<double>(ensemble.size()) * norm;
}

std::size_t emcm_select(const regress::Predictor& model, const EmcmEnsemble& ensemble,
                        std::span<const Candidate> pool) {
    if (pool.empty()) throw EmptyPoolError("emcm selection over an empty pool");
    std::size_t best = 0;
    double best_score = -1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        double s = emcm_score(model, ensemble, pool[i].vector);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

Candidate emcm_sample(netbus::PlantLink& link, const regress::Predictor& model,
                      const EmcmEnsemble& ensemble, int n_m, int pool_size, Rng& rng) {
    netbus::FeatureVector p_o = netbus::assemble(link.sniff_window(1));
    std::vector<Candidate> pool = make_pool(p_o, n_m, pool_size, rng);
    std::size_t pick = emcm_select(model, ensemble, pool);
    Candidate chosen = pool[pick];
    chosen.fitness = emcm_score(model, ensemble, chosen.vector);
    return chosen;
}

} // namespace aquafuzz::activefuzz
