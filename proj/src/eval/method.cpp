#include "eval/method.hpp"

#include <cmath>

#include "baselines/adaboost.hpp"
#include "baselines/decision_tree.hpp"
#include "baselines/gaussian_nb.hpp"
#include "baselines/gradient_boost.hpp"
#include "baselines/knn.hpp"
#include "baselines/random_forest.hpp"
#include "core/errors.hpp"
#include "models/mlp.hpp"
#include "models/multitask.hpp"

namespace heartml::eval {

using heartml::core::ValidationError;

double hyper_value(const Hyperparams& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void check_hyper_names(const Hyperparams& params,
                       const std::vector<std::string>& allowed,
                       const std::string& method_name) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool known = false;
        for (const auto& name : allowed) {
            if (name == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ValidationError(method_name + ": unknown hyperparameter '" + key + "'");
        }
    }
}

namespace {

std::size_t hyper_size(const Hyperparams& params, const std::string& key,
                       std::size_t fallback, const std::string& method_name) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    if (v < 0.0 || v != std::floor(v)) {
        throw ValidationError(method_name + ": hyperparameter '" + key +
                              "' must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

template <typename Model>
class ModelPredictor : public Predictor {
public:
    explicit ModelPredictor(Model model) : model_(std::move(model)) {}
    std::vector<int> predict(const data::FeatureMatrix& rows) const override {
        return model_.predict_all(rows);
    }

private:
    Model model_;
};

class DecisionTreeMethod : public Method {
public:
    std::string name() const override { return "decision_tree"; }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t) const override {
        check_hyper_names(params, {"max_depth", "min_leaf"}, name());
        baselines::DecisionTreeParams p;
        p.max_depth = hyper_size(params, "max_depth", 0, name());
        p.min_leaf = hyper_size(params, "min_leaf", 1, name());
        baselines::DecisionTree model;
        model.fit(train, p);
        return std::make_unique<ModelPredictor<baselines::DecisionTree>>(std::move(model));
    }
    GridSpec default_grid() const override {
        return {{"max_depth", {0.0}}, {"min_leaf", {1.0}}};
    }
};

class RandomForestMethod : public Method {
public:
    std::string name() const override { return "random_forest"; }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t seed) const override {
        check_hyper_names(params, {"n_trees", "feature_subset", "max_depth", "min_leaf"},
                          name());
        baselines::RandomForestParams p;
        p.n_trees = hyper_size(params, "n_trees", 100, name());
        p.feature_subset = hyper_size(params, "feature_subset", 0, name());
        p.max_depth = hyper_size(params, "max_depth", 0, name());
        p.min_leaf = hyper_size(params, "min_leaf", 1, name());
        baselines::RandomForest model;
        model.fit(train, p, seed);
        return std::make_unique<ModelPredictor<baselines::RandomForest>>(std::move(model));
    }
    GridSpec default_grid() const override {
        return {{"n_trees", {100.0, 200.0}}};
    }
};

class KnnMethod : public Method {
public:
    std::string name() const override { return "knn"; }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t) const override {
        check_hyper_names(params, {"k"}, name());
        baselines::KnnParams p;
        p.k = hyper_size(params, "k", 5, name());
        baselines::KnnClassifier model;
        model.fit(train, p);
        return std::make_unique<ModelPredictor<baselines::KnnClassifier>>(std::move(model));
    }
    GridSpec default_grid() const override {
        return {{"k", {3.0, 5.0, 7.0, 9.0, 11.0}}};
    }
};

class GnbMethod : public Method {
public:
    std::string name() const override { return "gnb"; }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t) const override {
        check_hyper_names(params, {}, name());
        baselines::GaussianNb model;
        model.fit(train);
        return std::make_unique<ModelPredictor<baselines::GaussianNb>>(std::move(model));
    }
    GridSpec default_grid() const override { return {}; }
};

class AdaBoostMethod : public Method {
public:
    std::string name() const override { return "adaboost"; }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t seed) const override {
        check_hyper_names(params, {"rounds", "max_depth", "min_leaf"}, name());
        baselines::AdaBoostParams p;
        p.rounds = hyper_size(params, "rounds", 50, name());
        p.max_depth = hyper_size(params, "max_depth", 1, name());
        p.min_leaf = hyper_size(params, "min_leaf", 1, name());
        baselines::AdaBoost model;
        model.fit(train, p, seed);
        return std::make_unique<ModelPredictor<baselines::AdaBoost>>(std::move(model));
    }
    GridSpec default_grid() const override {
        return {{"rounds", {50.0, 100.0}}};
    }
};

class GradientBoostMethod : public Method {
public:
    std::string name() const override { return "gradient_boost"; }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t) const override {
        check_hyper_names(params, {"rounds", "learning_rate", "max_depth", "min_leaf"},
                          name());
        baselines::GradientBoostParams p;
        p.rounds = hyper_size(params, "rounds", 100, name());
        p.learning_rate = hyper_value(params, "learning_rate", 0.1);
        p.max_depth = hyper_size(params, "max_depth", 3, name());
        p.min_leaf = hyper_size(params, "min_leaf", 1, name());
        baselines::GradientBoost model;
        model.fit(train, p);
        return std::make_unique<ModelPredictor<baselines::GradientBoost>>(std::move(model));
    }
    GridSpec default_grid() const override {
        return {{"rounds", {100.0, 200.0}}};
    }
};

class MlpPredictor : public Predictor {
public:
    explicit MlpPredictor(models::MlpClassifier model) : model_(std::move(model)) {}
    std::vector<int> predict(const data::FeatureMatrix& rows) const override {
        return model_.predict(rows);
    }

private:
    models::MlpClassifier model_;
};

class MlpMethod : public Method {
public:
    std::string name() const override { return "mlp"; }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t seed) const override {
        check_hyper_names(
            params, {"hidden1", "hidden2", "epochs", "batch_size", "learning_rate"},
            name());
        models::MlpConfig config;
        config.hidden = {hyper_size(params, "hidden1", 64, name()),
                         hyper_size(params, "hidden2", 32, name())};
        config.epochs = static_cast<int>(hyper_size(params, "epochs", 150, name()));
        config.batch_size = hyper_size(params, "batch_size", 32, name());
        config.adam.learning_rate = hyper_value(params, "learning_rate", 1e-3);
        models::MlpClassifier model;
        model.train(train, config, seed);
        return std::make_unique<MlpPredictor>(std::move(model));
    }
    GridSpec default_grid() const override {
        return {{"hidden1", {16.0, 64.0}},
                {"hidden2", {8.0, 32.0}},
                {"epochs", {150.0, 300.0}},
                {"learning_rate", {3e-4, 1e-3}}};
    }
};

class MultitaskPredictor : public Predictor {
public:
    explicit MultitaskPredictor(models::MultitaskModel model) : model_(std::move(model)) {}
    std::vector<int> predict(const data::FeatureMatrix& rows) const override {
        return model_.predict(rows);
    }

private:
    models::MultitaskModel model_;
};

class MultitaskMethod : public Method {
public:
    explicit MultitaskMethod(models::ClassifierKind kind) : kind_(kind) {}
    std::string name() const override {
        return kind_ == models::ClassifierKind::mlp ? "sae_mlp" : "sae_cnn";
    }
    std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                   const Hyperparams& params,
                                   std::uint64_t seed) const override {
        const models::MultitaskConfig config = multitask_config_from_hypers(kind_, params);
        models::MultitaskModel model;
        model.train(train, config, seed);
        return std::make_unique<MultitaskPredictor>(std::move(model));
    }
    GridSpec default_grid() const override {
        return {{"latent_dim",
                 {kind_ == models::ClassifierKind::mlp ? 100.0 : 200.0}}};
    }

private:
    models::ClassifierKind kind_;
};

} // namespace

models::MultitaskConfig multitask_config_from_hypers(models::ClassifierKind kind,
                                                     const Hyperparams& params) {
    const std::string name = kind == models::ClassifierKind::mlp ? "sae_mlp" : "sae_cnn";
    check_hyper_names(params,
                      {"latent_dim", "l1_lambda", "alpha", "epochs", "batch_size",
                       "learning_rate", "hidden1", "hidden2"},
                      name);
    models::MultitaskConfig config;
    config.classifier = kind;
    config.latent_dim = hyper_size(
        params, "latent_dim", kind == models::ClassifierKind::mlp ? 100 : 200, name);
    config.l1_lambda = hyper_value(params, "l1_lambda", 1e-4);
    config.alpha = hyper_value(params, "alpha", 0.5);
    config.epochs = static_cast<int>(hyper_size(params, "epochs", 150, name));
    config.batch_size = hyper_size(params, "batch_size", 32, name);
    config.adam.learning_rate = hyper_value(params, "learning_rate", 1e-3);
    config.mlp_hidden = {hyper_size(params, "hidden1", config.mlp_hidden[0], name),
                         hyper_size(params, "hidden2", config.mlp_hidden[1], name)};
    return config;
}

std::unique_ptr<Method> make_method(const std::string& name) {
    if (name == "decision_tree") return std::make_unique<DecisionTreeMethod>();
    if (name == "random_forest") return std::make_unique<RandomForestMethod>();
    if (name == "knn") return std::make_unique<KnnMethod>();
    if (name == "gnb") return std::make_unique<GnbMethod>();
    if (name == "adaboost") return std::make_unique<AdaBoostMethod>();
    if (name == "gradient_boost") return std::make_unique<GradientBoostMethod>();
    if (name == "mlp") return std::make_unique<MlpMethod>();
    if (name == "sae_mlp") return std::make_unique<MultitaskMethod>(models::ClassifierKind::mlp);
    if (name == "sae_cnn") return std::make_unique<MultitaskMethod>(models::ClassifierKind::cnn);
    throw ValidationError("make_method: unknown method '" + name + "'");
}

const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> names = {
        "decision_tree", "random_forest", "knn",     "gnb",    "adaboost",
        "gradient_boost", "mlp",          "sae_mlp", "sae_cnn"};
    return names;
}

const std::vector<std::string>& baseline_methods() {
    static const std::vector<std::string> names = {
        "decision_tree", "random_forest", "knn", "gnb", "adaboost", "gradient_boost",
        "mlp"};
    return names;
}

} // namespace heartml::eval
