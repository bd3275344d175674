#include "report/experiment.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"
#include "data/dataset.hpp"
#include "data/features.hpp"
#include "eval/cv.hpp"
#include "eval/folds.hpp"
#include "eval/grid.hpp"
#include "eval/stats.hpp"
#include "models/model_io.hpp"
#include "models/multitask.hpp"
#include "report/bundle.hpp"
#include "report/svg.hpp"

namespace heartml::report {

using heartml::core::Rng;
using heartml::core::ValidationError;
using nlohmann::json;

namespace {

const std::set<std::string> kKnownFormats = {"csv", "json", "svg"};

json grid_to_json(const eval::GridSpec& grid) {
    json doc = json::object();
    for (const auto& [name, values] : grid) doc[name] = values;
    return doc;
}

eval::GridSpec grid_from_json(const json& doc, const std::string& context) {
    if (!doc.is_object()) throw ValidationError(context + ": grid must be an object");
    eval::GridSpec grid;
    for (const auto& [name, values] : doc.items()) {
        if (!values.is_array() || values.empty()) {
            throw ValidationError(context + ": grid dimension '" + name +
                                  "' must be a non-empty array");
        }
        grid[name] = values.get<std::vector<double>>();
    }
    return grid;
}

json params_to_json(const eval::Hyperparams& params) {
    json doc = json::object();
    for (const auto& [name, value] : params) doc[name] = value;
    return doc;
}

std::string params_to_string(const eval::Hyperparams& params) {
    if (params.empty()) return "default";
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, value] : params) {
        if (!first) out << ";";
        out << name << "=" << core::format_double(value);
        first = false;
    }
    return out.str();
}

json cv_result_to_json(const eval::CVResult& result) {
    return {{"params", params_to_json(result.params)},
            {"fold_accuracies", result.fold_accuracies},
            {"mean", result.mean},
            {"sd", result.sd}};
}

void append_results_rows(std::ostringstream& csv, const std::string& method,
                         const eval::CVResult& result) {
    const std::string params = params_to_string(result.params);
    for (std::size_t fold = 0; fold < result.fold_accuracies.size(); ++fold) {
        csv << method << "," << params << "," << fold << ","
            << core::format_double(result.fold_accuracies[fold]) << "\n";
    }
}

bool wants(const ExperimentConfig& config, const std::string& format) {
    return std::find(config.formats.begin(), config.formats.end(), format) !=
           config.formats.end();
}

struct LoadedData {
    data::RawDataset raw;
    data::EngineeredData engineered;
    eval::FoldPlan plan;
};

LoadedData load_and_plan(const ExperimentConfig& config) {
    LoadedData loaded;
    loaded.raw = data::load_raw_dataset(config.data_path);
    loaded.engineered = data::engineer_features(loaded.raw);
    loaded.plan = config.stratified
                      ? eval::stratified_kfold_split(loaded.engineered.matrix.labels,
                                                     config.folds, config.seed)
                      : eval::kfold_split(loaded.engineered.matrix.rows, config.folds,
                                          config.seed);
    return loaded;
}

std::size_t default_latent(const std::string& classifier) {
    return classifier == "cnn" ? 200 : 100;
}

json summary_header(const std::string& command, const ExperimentConfig& config) {
    return {{"command", command},
            {"tool_version", kToolVersion},
            {"data", config.data_path},
            {"seed", config.seed},
            {"folds", config.folds},
            {"stratified", config.stratified}};
}

json cmd_preprocess(const ExperimentConfig& config) {
    const data::RawDataset raw = data::load_raw_dataset(config.data_path);
    const data::PreprocessResult processed = data::preprocess(raw);

    if (wants(config, "csv")) {
        data::write_feature_matrix_csv(processed.matrix,
                                       join_path(config.out_dir, "features.csv"));
    }

    json summary = summary_header("preprocess", config);
    summary["rows"] = processed.matrix.rows;
    summary["columns"] = processed.matrix.cols;
    summary["column_names"] = processed.matrix.column_names;
    summary["label_counts"] = {{"healthy", raw.count_label(0)},
                               {"heart_disease", raw.count_label(1)}};
    summary["warnings"] = {{"zero_cholesterol_rows", processed.zero_cholesterol_warnings}};
    summary["scaler"] = processed.scaler.to_json();
    return summary;
}

json cmd_run_baselines(const ExperimentConfig& config) {
    const LoadedData loaded = load_and_plan(config);
    const std::vector<std::string> methods =
        config.methods.empty() ? eval::baseline_methods() : config.methods;

    const Rng root(config.seed);
    std::ostringstream csv;
    csv << "method,params,fold,accuracy\n";
    json method_docs = json::object();
    std::vector<std::string> bar_labels;
    std::vector<double> bar_values;

    for (const std::string& name : methods) {
        const auto method = eval::make_method(name);
        eval::GridSpec grid = method->default_grid();
        auto override_it = config.grid_overrides.find(name);
        if (override_it != config.grid_overrides.end()) grid = override_it->second;

        // Stream index from the global registry so the numbers do not move
        // when a subset of methods is requested.
        const auto& registry = eval::known_methods();
        const std::size_t index = static_cast<std::size_t>(
            std::find(registry.begin(), registry.end(), name) - registry.begin());
        const eval::GridSearchResult search =
            eval::grid_search(*method, grid, loaded.engineered.matrix, loaded.plan,
                              root.derive(100 + index).seed(), config.workers);

        json grid_docs = json::array();
        for (const eval::CVResult& result : search.all) {
            grid_docs.push_back(cv_result_to_json(result));
            append_results_rows(csv, name, result);
        }
        method_docs[name] = {{"best", cv_result_to_json(search.best)},
                             {"best_index", search.best_index},
                             {"grid", grid_docs}};
        bar_labels.push_back(name);
        bar_values.push_back(search.best.mean);
    }

    if (wants(config, "csv")) {
        write_text_file(join_path(config.out_dir, "results.csv"), csv.str());
    }
    if (wants(config, "svg")) {
        write_text_file(join_path(config.out_dir, "accuracy_bar.svg"),
                        svg_bar_chart(bar_labels, bar_values,
                                      "Cross-validated accuracy by method",
                                      "accuracy (%)"));
    }

    json summary = summary_header("run-baselines", config);
    summary["methods"] = method_docs;
    return summary;
}

json cmd_run_multitask(const ExperimentConfig& config) {
    const LoadedData loaded = load_and_plan(config);
    const std::string method_name = config.classifier == "cnn" ? "sae_cnn" : "sae_mlp";
    const std::size_t latent =
        config.latent_dim == 0 ? default_latent(config.classifier) : config.latent_dim;

    const auto method = eval::make_method(method_name);
    const eval::Hyperparams params =
        multitask_hyperparams(config.classifier, latent, config.multitask_overrides);
    const std::uint64_t seed = multitask_seed(config.seed, config.classifier, latent);
    const eval::CVResult result = eval::run_cv(*method, params, loaded.engineered.matrix,
                                               loaded.plan, seed, config.workers);

    std::ostringstream csv;
    csv << "method,params,fold,accuracy\n";
    append_results_rows(csv, method_name, result);
    if (wants(config, "csv")) {
        write_text_file(join_path(config.out_dir, "results.csv"), csv.str());
    }

    // One full-data fit for the training history, the loss curve and a
    // reusable model file; seeded like fold 0's sibling stream.
    const models::MultitaskConfig model_config = eval::multitask_config_from_hypers(
        models::classifier_kind_from_name(config.classifier), params);
    models::MultitaskModel model;
    model.train(loaded.engineered.matrix, model_config, Rng(seed).derive(9999).seed());

    std::ostringstream history_csv;
    history_csv << "epoch,total,bce,mse,l1,train_accuracy\n";
    std::vector<double> epochs, totals, bces, mses;
    for (std::size_t e = 0; e < model.history().size(); ++e) {
        const auto& stats = model.history()[e];
        history_csv << e << "," << core::format_double(stats.total) << ","
                    << core::format_double(stats.bce) << ","
                    << core::format_double(stats.mse) << ","
                    << core::format_double(stats.l1) << ","
                    << core::format_double(stats.accuracy) << "\n";
        epochs.push_back(static_cast<double>(e));
        totals.push_back(stats.total);
        bces.push_back(stats.bce);
        mses.push_back(stats.mse);
    }
    if (wants(config, "csv")) {
        write_text_file(join_path(config.out_dir, "history.csv"), history_csv.str());
    }
    if (wants(config, "svg")) {
        write_text_file(
            join_path(config.out_dir, "loss_curve.svg"),
            svg_line_chart(epochs,
                           {{"total", totals}, {"bce", bces}, {"mse", mses}},
                           "Training loss, " + method_name + " latent " +
                               std::to_string(latent),
                           "epoch", "loss"));
    }
    models::save_model(model, join_path(config.out_dir, "model.json"));

    json summary = summary_header("run-multitask", config);
    summary["classifier"] = config.classifier;
    summary["latent_dim"] = latent;
    summary["method"] = method_name;
    summary["cv"] = cv_result_to_json(result);
    summary["final_epoch"] = {{"total", model.history().back().total},
                              {"bce", model.history().back().bce},
                              {"mse", model.history().back().mse},
                              {"l1", model.history().back().l1},
                              {"train_accuracy", model.history().back().accuracy}};
    return summary;
}

json cmd_sweep_latent(const ExperimentConfig& config) {
    const LoadedData loaded = load_and_plan(config);
    const std::string method_name = config.classifier == "cnn" ? "sae_cnn" : "sae_mlp";
    const auto method = eval::make_method(method_name);

    std::ostringstream csv, sweep_csv;
    csv << "method,params,fold,accuracy\n";
    sweep_csv << "latent_dim,mean,sd\n";
    json entries = json::array();
    std::vector<double> xs, means;

    for (std::size_t latent : config.latent_sizes) {
        const eval::Hyperparams params =
            multitask_hyperparams(config.classifier, latent, config.multitask_overrides);
        const std::uint64_t seed = multitask_seed(config.seed, config.classifier, latent);
        const eval::CVResult result = eval::run_cv(
            *method, params, loaded.engineered.matrix, loaded.plan, seed, config.workers);
        append_results_rows(csv, method_name, result);
        sweep_csv << latent << "," << core::format_double(result.mean) << ","
                  << core::format_double(result.sd) << "\n";
        json entry = cv_result_to_json(result);
        entry["latent_dim"] = latent;
        entries.push_back(entry);
        xs.push_back(static_cast<double>(latent));
        means.push_back(result.mean);
    }

    if (wants(config, "csv")) {
        write_text_file(join_path(config.out_dir, "results.csv"), csv.str());
        write_text_file(join_path(config.out_dir, "sweep.csv"), sweep_csv.str());
    }
    if (wants(config, "svg")) {
        write_text_file(join_path(config.out_dir, "sweep_curve.svg"),
                        svg_line_chart(xs, {{method_name, means}},
                                       "Accuracy by latent size, " + method_name,
                                       "latent size", "accuracy (%)"));
    }

    json summary = summary_header("sweep-latent", config);
    summary["classifier"] = config.classifier;
    summary["method"] = method_name;
    summary["entries"] = entries;
    return summary;
}

struct GroupValues {
    std::vector<std::string> labels;
    std::vector<double> values;

    void add(const std::string& label, double value) {
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) return;
        labels.push_back(label);
        values.push_back(value);
    }
};

void collect_groups(const std::vector<std::string>& inputs, GroupValues& classical,
                    GroupValues& multitask) {
    for (const std::string& path : inputs) {
        const json doc = read_json_file(path);
        const std::string command = doc.value("command", "");
        if (command == "run-baselines") {
            for (const auto& [name, entry] : doc.at("methods").items()) {
                classical.add(name, entry.at("best").at("mean").get<double>());
            }
        } else if (command == "sweep-latent") {
            const std::string method = doc.value("method", "sae");
            for (const auto& entry : doc.at("entries")) {
                multitask.add(method + "@" +
                                  std::to_string(entry.at("latent_dim").get<std::size_t>()),
                              entry.at("mean").get<double>());
            }
        } else if (command == "run-multitask") {
            const std::string method = doc.value("method", "sae");
            multitask.add(method + "@" +
                              std::to_string(doc.at("latent_dim").get<std::size_t>()),
                          doc.at("cv").at("mean").get<double>());
        } else {
            throw ValidationError("stats: '" + path +
                                  "' is not a recognised results summary");
        }
    }
}

json stat_result_to_json(const eval::StatTestResult& result) {
    json doc{{"method", result.method},
             {"statistic", result.statistic},
             {"p_value", result.p_value}};
    if (result.df > 0.0) doc["df"] = result.df;
    return doc;
}

json group_to_json(const GroupValues& group, const eval::Summary& summary,
                   const eval::StatTestResult& normality) {
    return {{"labels", group.labels},
            {"values", group.values},
            {"mean", summary.mean},
            {"sd", summary.sd},
            {"n", summary.n},
            {"normality", stat_result_to_json(normality)}};
}

json cmd_stats(const ExperimentConfig& config) {
    if (config.inputs.empty()) {
        throw ValidationError("stats: provide at least one results summary via inputs");
    }
    GroupValues classical, multitask;
    collect_groups(config.inputs, classical, multitask);
    if (classical.values.size() < 2 || multitask.values.size() < 2) {
        throw ValidationError(
            "stats: need at least two accuracies in each group (classical " +
            std::to_string(classical.values.size()) + ", multitask " +
            std::to_string(multitask.values.size()) + ")");
    }

    const eval::GroupComparison comparison =
        eval::group_compare(classical.values, multitask.values);

    if (wants(config, "csv")) {
        std::ostringstream csv;
        csv << "group,label,accuracy\n";
        for (std::size_t i = 0; i < classical.labels.size(); ++i) {
            csv << "classical," << classical.labels[i] << ","
                << core::format_double(classical.values[i]) << "\n";
        }
        for (std::size_t i = 0; i < multitask.labels.size(); ++i) {
            csv << "multitask," << multitask.labels[i] << ","
                << core::format_double(multitask.values[i]) << "\n";
        }
        write_text_file(join_path(config.out_dir, "groups.csv"), csv.str());
    }

    json summary = summary_header("stats", config);
    summary["inputs"] = config.inputs;
    summary["groups"] = {
        {"classical",
         group_to_json(classical, comparison.group_one, comparison.normality_one)},
        {"multitask",
         group_to_json(multitask, comparison.group_two, comparison.normality_two)}};
    summary["ks"] = stat_result_to_json(comparison.ks);
    summary["t_test"] = stat_result_to_json(comparison.t_test);
    return summary;
}

json cmd_report(const ExperimentConfig& config) {
    if (config.benchmarks_path.empty()) {
        throw ValidationError("report: a benchmarks file is required");
    }
    const json benchmarks = read_json_file(config.benchmarks_path);
    if (benchmarks.value("format", "") != "heartml.benchmarks") {
        throw ValidationError("report: '" + config.benchmarks_path +
                              "' is not a benchmarks file");
    }

    std::vector<std::string> labels;
    std::vector<double> values;
    std::vector<std::string> sources;
    for (const auto& entry : benchmarks.at("entries")) {
        labels.push_back(entry.at("method").get<std::string>());
        values.push_back(entry.at("accuracy").get<double>());
        sources.push_back("published");
    }

    GroupValues classical, multitask;
    std::vector<std::string> warnings;
    if (config.inputs.empty()) {
        warnings.push_back("no run results provided; table contains reference rows only");
    } else {
        collect_groups(config.inputs, classical, multitask);
        for (std::size_t i = 0; i < classical.labels.size(); ++i) {
            labels.push_back(classical.labels[i]);
            values.push_back(classical.values[i]);
            sources.push_back("this_run");
        }
        for (std::size_t i = 0; i < multitask.labels.size(); ++i) {
            labels.push_back(multitask.labels[i]);
            values.push_back(multitask.values[i]);
            sources.push_back("this_run");
        }
    }

    if (wants(config, "csv")) {
        std::ostringstream csv;
        csv << "source,method,accuracy\n";
        for (std::size_t i = 0; i < labels.size(); ++i) {
            csv << sources[i] << "," << labels[i] << "," << core::format_double(values[i])
                << "\n";
        }
        write_text_file(join_path(config.out_dir, "comparison.csv"), csv.str());
    }
    if (wants(config, "svg")) {
        std::vector<std::string> chart_labels(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            chart_labels[i] = labels[i] + (sources[i] == "published" ? " (pub)" : "");
        }
        write_text_file(join_path(config.out_dir, "comparison.svg"),
                        svg_bar_chart(chart_labels, values,
                                      "Accuracy against published results",
                                      "accuracy (%)"));
    }

    json rows = json::array();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        rows.push_back({{"source", sources[i]},
                        {"method", labels[i]},
                        {"accuracy", values[i]}});
    }
    json summary = summary_header("report", config);
    summary["benchmarks"] = config.benchmarks_path;
    summary["rows"] = rows;
    summary["warnings"] = warnings;
    return summary;
}

} // namespace

std::uint64_t multitask_seed(std::uint64_t base_seed, const std::string& classifier,
                             std::size_t latent_dim) {
    const std::uint64_t kind = classifier == "cnn" ? 2 : 1;
    return Rng(base_seed).derive(kind * 1000000 + latent_dim).seed();
}

eval::Hyperparams multitask_hyperparams(const std::string& classifier,
                                        std::size_t latent_dim,
                                        const eval::Hyperparams& overrides) {
    const bool cnn = classifier == "cnn";
    eval::Hyperparams params{{"latent_dim", static_cast<double>(latent_dim)},
                             {"alpha", 0.9},
                             {"l1_lambda", 1e-4},
                             {"learning_rate", 3e-4},
                             {"epochs", cnn ? 300.0 : 450.0},
                             {"batch_size", cnn ? 256.0 : 128.0}};
    if (!cnn) {
        params["hidden1"] = 16.0;
        params["hidden2"] = 8.0;
    }
    for (const auto& [key, value] : overrides) {
        if (key == "latent_dim") {
            throw ValidationError(
                "config: multitask.latent_dim is set by latent_dim/latent_sizes");
        }
        params[key] = value;
    }
    return params;
}

json ExperimentConfig::to_json() const {
    json grids = json::object();
    for (const auto& [name, grid] : grid_overrides) grids[name] = grid_to_json(grid);
    return {{"data", data_path},
            {"out", out_dir},
            {"seed", seed},
            {"folds", folds},
            {"stratified", stratified},
            {"classifier", classifier},
            {"latent_dim", latent_dim},
            {"latent_sizes", latent_sizes},
            {"methods", methods},
            {"grids", grids},
            {"multitask", multitask_overrides},
            {"formats", formats},
            {"benchmarks", benchmarks_path},
            {"inputs", inputs},
            {"workers", workers}};
}

void ExperimentConfig::merge_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("config: document must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "data") {
            data_path = value.get<std::string>();
        } else if (key == "out") {
            out_dir = value.get<std::string>();
        } else if (key == "seed") {
            seed = value.get<std::uint64_t>();
        } else if (key == "folds") {
            folds = value.get<std::size_t>();
        } else if (key == "stratified") {
            stratified = value.get<bool>();
        } else if (key == "classifier") {
            classifier = value.get<std::string>();
        } else if (key == "latent_dim") {
            latent_dim = value.get<std::size_t>();
        } else if (key == "latent_sizes") {
            latent_sizes = value.get<std::vector<std::size_t>>();
        } else if (key == "methods") {
            methods = value.get<std::vector<std::string>>();
        } else if (key == "grids") {
            grid_overrides.clear();
            for (const auto& [name, grid] : value.items()) {
                grid_overrides[name] = grid_from_json(grid, "config grids." + name);
            }
        } else if (key == "multitask") {
            if (!value.is_object()) {
                throw ValidationError("config: multitask must be an object");
            }
            multitask_overrides.clear();
            for (const auto& [name, number] : value.items()) {
                if (!number.is_number()) {
                    throw ValidationError("config: multitask." + name +
                                          " must be a number");
                }
                multitask_overrides[name] = number.get<double>();
            }
        } else if (key == "formats") {
            formats = value.get<std::vector<std::string>>();
        } else if (key == "benchmarks") {
            benchmarks_path = value.get<std::string>();
        } else if (key == "inputs") {
            inputs = value.get<std::vector<std::string>>();
        } else if (key == "workers") {
            workers = value.get<std::size_t>();
        } else {
            throw ValidationError("config: unknown key '" + key + "'");
        }
    }
}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
    ExperimentConfig config;
    config.merge_json(doc);
    return config;
}

void ExperimentConfig::validate(const std::string& command) const {
    if (folds < 2) throw ValidationError("config: folds must be at least 2");
    if (classifier != "mlp" && classifier != "cnn") {
        throw ValidationError("config: classifier must be mlp or cnn");
    }
    if (formats.empty()) throw ValidationError("config: formats must not be empty");
    for (const std::string& format : formats) {
        if (!kKnownFormats.count(format)) {
            throw ValidationError("config: unknown format '" + format + "'");
        }
    }
    for (const std::string& name : methods) {
        (void)eval::make_method(name); // throws on unknown names
    }
    static const std::set<std::string> multitask_keys{
        "alpha", "l1_lambda", "learning_rate", "epochs", "batch_size",
        "hidden1", "hidden2"};
    for (const auto& [key, value] : multitask_overrides) {
        if (!multitask_keys.count(key)) {
            throw ValidationError("config: unknown multitask setting '" + key + "'");
        }
    }
    if (command == "sweep-latent" && latent_sizes.empty()) {
        throw ValidationError("config: latent_sizes must not be empty");
    }
    if (out_dir.empty()) throw ValidationError("config: output directory must be set");
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> commands = {
        "preprocess", "run-baselines", "run-multitask", "sweep-latent", "stats",
        "report"};
    return commands;
}

json run_command(const std::string& command, const ExperimentConfig& config) {
    const auto& commands = known_commands();
    if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
        throw ValidationError("unknown command '" + command + "'");
    }
    config.validate(command);
    ensure_directory(config.out_dir);

    write_json_file(join_path(config.out_dir, "manifest.json"),
                    {{"command", command},
                     {"tool_version", kToolVersion},
                     {"config", config.to_json()}});

    json summary;
    if (command == "preprocess") {
        summary = cmd_preprocess(config);
    } else if (command == "run-baselines") {
        summary = cmd_run_baselines(config);
    } else if (command == "run-multitask") {
        summary = cmd_run_multitask(config);
    } else if (command == "sweep-latent") {
        summary = cmd_sweep_latent(config);
    } else if (command == "stats") {
        summary = cmd_stats(config);
    } else {
        summary = cmd_report(config);
    }

    write_json_file(join_path(config.out_dir, "summary.json"), summary);
    return summary;
}

} // namespace heartml::report
