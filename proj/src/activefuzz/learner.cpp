#include "aquafuzz/activefuzz/learner.hpp"

#include <cstdio>
#include <fstream>

namespace aquafuzz::activefuzz {

const char* to_string(Strategy s) {
    return s == Strategy::EBCM ? "ebcm" : "emcm";
}

Strategy strategy_from_string(std::string_view name) {
    if (name == "ebcm" || name == "EBCM") return Strategy::EBCM;
    if (name == "emcm" || name == "EMCM") return Strategy::EMCM;
    throw std::invalid_argument("unknown strategy: " + std::string(name));
}

ActiveLearnResult active_learn_loop(netbus::PlantLink& link, SensorId sensor,
                                    std::unique_ptr<regress::Predictor> pretrained,
                                    regress::TrainingSet data, const regress::FitSpec& spec,
                                    const ActiveLearnConfig& cfg, Rng& rng, const Trace* heldout) {
    cfg.validate();

    ActiveLearnResult out;
    out.model = std::move(pretrained);
    out.data = std::move(data);
    if (cfg.budget == 0) return out;

    std::vector<std::vector<double>> importance_history;
    importance_history.push_back(normalize_importance(out.model->feature_importance()));

    std::optional<EmcmEnsemble> ensemble;
    if (cfg.strategy == Strategy::EMCM)
        ensemble = EmcmEnsemble::fit(out.data, spec, cfg.emcm_ensemble, rng);

    auto record_r2 = [&](int round) {
        if (heldout != nullptr)
            out.heldout_r2.emplace_back(round, heldout_r2(*out.model, *heldout, sensor, cfg.t_s));
    };
    record_r2(0);

    for (int round = 0; round < cfg.budget; ++round) {
        Candidate chosen =
            cfg.strategy == Strategy::EBCM
                ? ebcm_sample(link, *out.model, sensor, cfg.t_s, cfg.n_m, cfg.pool_size, rng)
                : emcm_sample(link, *out.model, *ensemble, cfg.n_m, cfg.pool_size, rng);

        // Inject the chosen packets for the whole observation window; a
        // single spoofed tick would be overwritten by the controller.
        double before = link.read_sensor(sensor).value;
        for (int t = 0; t < cfg.t_s; ++t) {
            link.spoof(chosen.vector);
            link.advance(1);
        }
        double observed = link.read_sensor(sensor).value;
        if (is_delta_target(sensor)) observed -= before;

        out.data.append(chosen.vector, observed, static_cast<double>(cfg.t_s));

        RoundLog entry;
        entry.round = round;
        entry.strategy = cfg.strategy;
        entry.flipped_bits = chosen.flipped_bits;
        entry.score = chosen.fitness;
        entry.observed = observed;

        bool last_round = round + 1 == cfg.budget;
        if ((round + 1) % cfg.retrain_every == 0 || last_round) {
            out.model = regress::fit_model(out.data, spec);
            entry.retrained = true;
            record_r2(round + 1);
            if (cfg.strategy == Strategy::EMCM)
                ensemble = EmcmEnsemble::fit(out.data, spec, cfg.emcm_ensemble, rng);
            importance_history.push_back(normalize_importance(out.model->feature_importance()));
            if (convergence_check(importance_history, cfg.tolerance)) {
                out.converged = true;
                out.log.push_back(std::move(entry));
                out.rounds_run = round + 1;
                return out;
            }
        }
        out.log.push_back(std::move(entry));
        out.rounds_run = round + 1;
    }
    return out;
}

void write_session_log(const std::string& path, std::span<const RoundLog> log) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write session log: " + path);
    f << "# aquafuzz-session v1\n";
    char buf[64];
    for (const RoundLog& e : log) {
        f << e.round << ',' << to_string(e.strategy) << ',';
        for (std::size_t i = 0; i < e.flipped_bits.size(); ++i) {
            if (i > 0) f << ';';
            f << e.flipped_bits[i];
        }
        std::snprintf(buf, sizeof buf, "%.9g", e.score);
        f << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.9g", e.observed);
        f << ',' << buf << ',' << (e.retrained ? 1 : 0) << "\n";
    }
}

} // namespace aquafuzz::activefuzz
