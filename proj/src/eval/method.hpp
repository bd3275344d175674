// Uniform fit/predict interface over every learner in the project, keyed by
// name. Hyperparameters travel as a name -> value map so grid search and
// the CLI stay agnostic of the concrete model types.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "data/features.hpp"
#include "models/multitask.hpp"

namespace heartml::eval {

using Hyperparams = std::map<std::string, double>;
using GridSpec = std::map<std::string, std::vector<double>>;

class Predictor {
public:
    virtual ~Predictor() = default;
    virtual std::vector<int> predict(const data::FeatureMatrix& rows) const = 0;
};

class Method {
public:
    virtual ~Method() = default;
    virtual std::string name() const = 0;
    // Every method must reject unknown hyperparameter names.
    virtual std::unique_ptr<Predictor> fit(const data::FeatureMatrix& train,
                                           const Hyperparams& params,
                                           std::uint64_t seed) const = 0;
    virtual GridSpec default_grid() const = 0;
};

std::unique_ptr<Method> make_method(const std::string& name);
const std::vector<std::string>& known_methods();
// The classical comparison set evaluated by the run-baselines command.
const std::vector<std::string>& baseline_methods();

double hyper_value(const Hyperparams& params, const std::string& key,
                   double fallback);
void check_hyper_names(const Hyperparams& params,
                       const std::vector<std::string>& allowed,
                       const std::string& method_name);

// Shared hyperparameter-to-config mapping for the multitask methods, so the
// cross-validation path and the final full-data fit train the same model.
models::MultitaskConfig multitask_config_from_hypers(models::ClassifierKind kind,
                                                     const Hyperparams& params);

} // namespace heartml::eval
