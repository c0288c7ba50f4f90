#ifndef AQUAFUZZ_REGRESS_MODEL_IO_HPP
#define AQUAFUZZ_REGRESS_MODEL_IO_HPP

#include <memory>
#include <string>

#include "aquafuzz/regress/gbdt.hpp"
#include "aquafuzz/regress/linear.hpp"

namespace aquafuzz::regress {

struct ModelFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Self-describing model files: kind, hyperparameters, and training-set size
/// travel with the parameters; load(save(m)) predicts identically.
void save_model(const std::string& path, const LinearModel& model, std::size_t training_rows);
void save_model(const std::string& path, const GbdtModel& model, std::size_t training_rows);

struct LoadedModel {
    ModelKind kind;
    std::unique_ptr<Predictor> model;
    std::size_t training_rows = 0;

    const LinearModel& linear() const { return dynamic_cast<const LinearModel&>(*model); }
    const GbdtModel& gbdt() const { return dynamic_cast<const GbdtModel&>(*model); }
};

LoadedModel load_model(const std::string& path);

/// Uniform fit entry point used by the learning loop and the CLI.
struct FitSpec {
    ModelKind kind = ModelKind::Gbdt;
    double ridge_lambda = 1e-3;
    GbdtParams gbdt;
};

std::unique_ptr<Predictor> fit_model(const TrainingSet& data, const FitSpec& spec);

} // namespace aquafuzz::regress

#endif
