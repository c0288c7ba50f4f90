#include "aquafuzz/regress/model_io.hpp"

#include <fstream>

#include "json.hpp"

namespace aquafuzz::regress {

namespace {

nlohmann::ordered_json header(ModelKind kind, std::size_t training_rows) {
    nlohmann::ordered_json j;
    j["format"] = "aquafuzz-model";
    j["version"] = 1;
    j["kind"] = to_string(kind);
    j["training_rows"] = training_rows;
    return j;
}

void write(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write model: " + path);
    f << j.dump() << "\n";
}

} // namespace

void save_model(const std::string& path, const LinearModel& model, std::size_t training_rows) {
    nlohmann::ordered_json j = header(ModelKind::Linear, training_rows);
    j["hyperparameters"] = {{"lambda", model.lambda()}};
    j["bias"] = model.bias();
    j["weights"] = model.weights();
    write(path, j);
}

void save_model(const std::string& path, const GbdtModel& model, std::size_t training_rows) {
    nlohmann::ordered_json j = header(ModelKind::Gbdt, training_rows);
    const GbdtParams& p = model.params();
    j["hyperparameters"] = {{"n_trees", p.n_trees},
                            {"max_depth", p.max_depth},
                            {"learning_rate", p.learning_rate},
                            {"min_leaf", p.min_leaf}};
    j["base_value"] = model.base_value();
    auto& trees = j["trees"] = nlohmann::ordered_json::array();
    for (const Tree& t : model.trees()) {
        nlohmann::ordered_json jt;
        auto& nodes = jt["nodes"] = nlohmann::ordered_json::array();
        for (const Tree::Node& n : t.nodes)
            nodes.push_back({n.feature, n.value, n.left, n.right});
        auto& gains = jt["split_gains"] = nlohmann::ordered_json::array();
        for (auto [f, g] : t.split_gains) gains.push_back({f, g});
        trees.push_back(std::move(jt));
    }
    write(path, j);
}

LoadedModel load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open model: " + path);
    nlohmann::json j = nlohmann::json::parse(f);
    if (j.value("format", "") != "aquafuzz-model")
        throw ModelFormatError("not a model file: " + path);
    if (j.value("version", 0) != 1)
        throw ModelFormatError("unsupported model version " + std::to_string(j.value("version", 0)));

    LoadedModel out;
    out.training_rows = j.value("training_rows", std::size_t{0});
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
        out.kind = ModelKind::Linear;
        out.model = std::make_unique<LinearModel>(j.at("weights").get<std::vector<double>>(),
                                                  j.at("bias").get<double>(),
                                                  j.at("hyperparameters").at("lambda").get<double>());
    } else if (kind == "gbdt") {
        out.kind = ModelKind::Gbdt;
        GbdtParams p;
        const auto& hp = j.at("hyperparameters");
        p.n_trees = hp.at("n_trees").get<int>();
        p.max_depth = hp.at("max_depth").get<int>();
        p.learning_rate = hp.at("learning_rate").get<double>();
        p.min_leaf = hp.at("min_leaf").get<double>();
        std::vector<Tree> trees;
        for (const auto& jt : j.at("trees")) {
            Tree t;
            for (const auto& jn : jt.at("nodes")) {
                Tree::Node n;
                n.feature = jn.at(0).get<int>();
                n.value = jn.at(1).get<double>();
                n.left = jn.at(2).get<int>();
                n.right = jn.at(3).get<int>();
                t.nodes.push_back(n);
            }
            for (const auto& jg : jt.at("split_gains"))
                t.split_gains.emplace_back(jg.at(0).get<int>(), jg.at(1).get<double>());
            trees.push_back(std::move(t));
        }
        out.model = std::make_unique<GbdtModel>(j.at("base_value").get<double>(), p, std::move(trees));
    } else {
        throw ModelFormatError("unknown model kind: " + kind);
    }
    return out;
}

std::unique_ptr<Predictor> fit_model(const TrainingSet& data, const FitSpec& spec) {
    if (spec.kind == ModelKind::Linear)
        return std::make_unique<LinearModel>(LinearModel::fit(data, spec.ridge_lambda));
    return std::make_unique<GbdtModel>(GbdtModel::fit(data, spec.gbdt));
}

} // namespace aquafuzz::regress
