#ifndef AQUAFUZZ_ACTIVEFUZZ_SAMPLER_HPP
#define AQUAFUZZ_ACTIVEFUZZ_SAMPLER_HPP

#include <memory>
#include <span>

#include "aquafuzz/activefuzz/pretrain.hpp"
#include "aquafuzz/core/rng.hpp"
#include "aquafuzz/regress/model_io.hpp"

namespace aquafuzz::activefuzz {

struct EmptyPoolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnsembleUnfitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mutated feature vector: differs from its origin exactly at flipped_bits.
struct Candidate {
    netbus::FeatureVector vector;
    std::vector<std::size_t> flipped_bits;
    double fitness = 0.0;
};

/// Fitness-proportional selection: index i is drawn with probability
/// f_i / sum(f). A zero fitness total degenerates to uniform choice.
std::size_t roulette_index(std::span<const double> fitness, Rng& rng);
const Candidate& roulette_select(std::span<const Candidate> candidates, Rng& rng);

/// pool_size mutants of `origin`, each flipping a uniform-random count
/// n in [1, n_m] of uniform-random distinct bit positions.
std::vector<Candidate> make_pool(const netbus::FeatureVector& origin, int n_m, int pool_size,
                                 Rng& rng);

/// Expected Behaviour Change Maximisation over a prepared pool: fitness is
/// the absolute difference between the observed value (a delta for level
/// sensors) and the model's prediction for the candidate, then roulette.
Candidate select_ebcm(const regress::Predictor& model, double observed, std::vector<Candidate> pool,
                      Rng& rng);

/// Live EBCM round: sniff p_o, wait t_s observing the sensor's natural
/// behaviour, then select from a fresh pool.
Candidate ebcm_sample(netbus::PlantLink& link, const regress::Predictor& model, SensorId sensor,
                      int t_s, int n_m, int pool_size, Rng& rng);

/// Bootstrap-refit committee for Expected Model Change Maximization.
class EmcmEnsemble {
public:
    static EmcmEnsemble fit(const regress::TrainingSet& data, const regress::FitSpec& spec, int k,
                            Rng& rng);

    std::size_t size() const { return members_.size(); }
    const regress::Predictor& member(std::size_t i) const { return *members_[i]; }

private:
    std::vector<std::unique_ptr<regress::Predictor>> members_;
};

/// EMCM score: mean absolute committee disagreement with the model, scaled
/// by the norm of the candidate's linear view (raw bits for linear models,
/// super features for GBDTs).
double emcm_score(const regress::Predictor& model, const EmcmEnsemble& ensemble,
                  const netbus::FeatureVector& x);

/// Argmax candidate by emcm_score; ties resolve to the lowest pool index.
std::size_t emcm_select(const regress::Predictor& model, const EmcmEnsemble& ensemble,
                        std::span<const Candidate> pool);

/// Live EMCM round: sniff p_o and pick from a fresh pool (generated exactly
/// as EBCM's) by maximal expected model change.
Candidate emcm_sample(netbus::PlantLink& link, const regress::Predictor& model,
                      const EmcmEnsemble& ensemble, int n_m, int pool_size, Rng& rng);

} // namespace aquafuzz::activefuzz

#endif
