#ifndef AQUAFUZZ_ACTIVEFUZZ_LEARNER_HPP
#define AQUAFUZZ_ACTIVEFUZZ_LEARNER_HPP

#include <memory>
#include <optional>
#include <string>

#include "aquafuzz/activefuzz/convergence.hpp"
#include "aquafuzz/activefuzz/sampler.hpp"

namespace aquafuzz::activefuzz {

enum class Strategy { EBCM, EMCM };

const char* to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

struct ActiveLearnConfig {
    Strategy strategy = Strategy::EBCM;
    int t_s = 5;             // prediction horizon; 30 for level sensors
    int n_m = 32;            // max bits flipped per candidate
    int pool_size = 64;      // candidates per round
    int retrain_every = 10;  // rounds between refits
    int budget = 200;        // max rounds
    double tolerance = 0.005;  // importance-stability tolerance (0.05 for levels)
    int emcm_ensemble = 4;

    void validate() const {
        if (n_m < 1 || pool_size < 1 || tolerance <= 0 || t_s < 1 || retrain_every < 1 ||
            budget < 0 || emcm_ensemble < 1)
            throw std::invalid_argument("bad active-learning configuration");
    }

    /// Defaults resolved per sensor kind (horizon and tolerance).
    static ActiveLearnConfig for_sensor(SensorId id) {
        ActiveLearnConfig cfg;
        cfg.t_s = prediction_horizon(kind_of(id));
        cfg.tolerance = kind_of(id) == SensorKind::Level ? 0.05 : 0.005;
        return cfg;
    }
};

struct RoundLog {
    int round = 0;
    Strategy strategy = Strategy::EBCM;
    std::vector<std::size_t> flipped_bits;
    double score = 0.0;     // roulette fitness (EBCM) or committee score (EMCM)
    double observed = 0.0;  // value (or delta) seen after spoofing
    bool retrained = false;
};

struct ActiveLearnResult {
    std::unique_ptr<regress::Predictor> model;
    regress::TrainingSet data;
    std::vector<RoundLog> log;
    int rounds_run = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> heldout_r2;  // (round, r2) at each refit
};

/// Algorithm: per round, sample a candidate with the configured strategy,
/// spoof it sustained for t_s ticks, observe the effect, and append the
/// example with weight t_s. The model is refit every retrain_every rounds
/// and once more at loop end; the loop stops early when the normalized
/// feature importances stabilise within the tolerance.
ActiveLearnResult active_learn_loop(netbus::PlantLink& link, SensorId sensor,
                                    std::unique_ptr<regress::Predictor> pretrained,
                                    regress::TrainingSet data, const regress::FitSpec& spec,
                                    const ActiveLearnConfig& cfg, Rng& rng,
                                    const Trace* heldout = nullptr);

/// Line-delimited session log: round,strategy,flipped_bits,score,observed,retrained.
void write_session_log(const std::string& path, std::span<const RoundLog> log);

} // namespace aquafuzz::activefuzz

#endif
