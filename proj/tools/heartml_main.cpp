// Command line front end. Links only the shared C API so the binary
// exercises the same surface external callers get.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heartml/heartml.h"

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string config_path;
    std::string data_path;
    std::string out_dir;
    std::string benchmarks_path;
    std::string classifier;
    std::vector<std::string> methods;
    std::vector<std::string> formats;
    std::vector<std::string> inputs;
    std::vector<std::size_t> latent_sizes;
    std::uint64_t seed = 0;
    std::size_t folds = 0;
    std::size_t latent_dim = 0;
    std::size_t workers = 0;
    bool stratify = false;
    bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("--config", options.config_path,
                    "JSON config file; flags override its values");
    cmd->add_option("--data", options.data_path, "input dataset CSV");
    cmd->add_option("--out", options.out_dir, "output directory");
    cmd->add_option("--seed", options.seed, "root random seed");
    cmd->add_option("--folds", options.folds, "cross-validation fold count");
    cmd->add_flag("--stratify", options.stratify,
                  "stratified k-fold split instead of the plain shuffle");
    cmd->add_option("--formats", options.formats,
                    "artifact formats to write (csv, json, svg)");
    cmd->add_option("--workers", options.workers,
                    "worker threads, 0 = hardware count");
    cmd->add_flag("--quiet", options.quiet, "suppress the summary on stdout");
}

int fail(hml_status status) {
    std::fprintf(stderr, "error: %s\n", hml_last_error());
    return static_cast<int>(status);
}

json load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        std::fprintf(stderr, "error: cannot open config file '%s'\n", path.c_str());
        std::exit(static_cast<int>(HML_ERR_IO));
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::exception& error) {
        std::fprintf(stderr, "error: config file '%s': %s\n", path.c_str(),
                     error.what());
        std::exit(static_cast<int>(HML_ERR_VALIDATION));
    }
}

json build_config(const CommonOptions& options) {
    json config = json::object();
    if (!options.config_path.empty()) config = load_config_file(options.config_path);
    if (!options.data_path.empty()) config["data"] = options.data_path;
    if (!options.out_dir.empty()) config["out"] = options.out_dir;
    if (!options.benchmarks_path.empty()) config["benchmarks"] = options.benchmarks_path;
    if (!options.classifier.empty()) config["classifier"] = options.classifier;
    if (!options.methods.empty()) config["methods"] = options.methods;
    if (!options.formats.empty()) config["formats"] = options.formats;
    if (!options.inputs.empty()) config["inputs"] = options.inputs;
    if (!options.latent_sizes.empty()) config["latent_sizes"] = options.latent_sizes;
    if (options.seed != 0) config["seed"] = options.seed;
    if (options.folds != 0) config["folds"] = options.folds;
    if (options.latent_dim != 0) config["latent_dim"] = options.latent_dim;
    if (options.workers != 0) config["workers"] = options.workers;
    if (options.stratify) config["stratified"] = true;
    if (const char* env_out = std::getenv("HEARTML_OUT_DIR");
        env_out != nullptr && env_out[0] != '\0' && options.out_dir.empty() &&
        !config.contains("out")) {
        config["out"] = env_out;
    }
    return config;
}

int run(const std::string& command, const CommonOptions& options) {
    const json config = build_config(options);
    const std::string config_text = config.dump();
    char* summary = nullptr;
    const hml_status status =
        hml_run_command(command.c_str(), config_text.c_str(), &summary);
    if (status != HML_OK) return fail(status);
    if (!options.quiet) std::printf("%s\n", summary);
    hml_string_free(summary);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heart disease experiment harness"};
    app.set_version_flag("--version", std::string(hml_version()));
    app.require_subcommand(1);

    CommonOptions options;

    CLI::App* preprocess =
        app.add_subcommand("preprocess", "engineer and scale the feature matrix");
    add_common_flags(preprocess, options);

    CLI::App* baselines =
        app.add_subcommand("run-baselines", "cross-validate the classical methods");
    add_common_flags(baselines, options);
    baselines->add_option("--methods", options.methods,
                          "subset of methods to run (default: all baselines)");

    CLI::App* multitask = app.add_subcommand(
        "run-multitask", "cross-validate the sparse autoencoder model");
    add_common_flags(multitask, options);
    multitask->add_option("--classifier", options.classifier,
                          "classifier head: mlp or cnn");
    multitask->add_option("--latent-dim", options.latent_dim,
                          "latent width (0 = head default)");

    CLI::App* sweep = app.add_subcommand(
        "sweep-latent", "cross-validate the multitask model across latent sizes");
    add_common_flags(sweep, options);
    sweep->add_option("--classifier", options.classifier,
                      "classifier head: mlp or cnn");
    sweep->add_option("--latent-sizes", options.latent_sizes,
                      "latent widths to sweep");

    CLI::App* stats = app.add_subcommand(
        "stats", "compare classical and multitask accuracy groups");
    add_common_flags(stats, options);
    stats->add_option("--inputs", options.inputs,
                      "summary.json files from earlier runs");

    CLI::App* report =
        app.add_subcommand("report", "comparison table against published numbers");
    add_common_flags(report, options);
    report->add_option("--benchmarks", options.benchmarks_path,
                       "published benchmarks JSON");
    report->add_option("--inputs", options.inputs,
                       "summary.json files from earlier runs");

    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<CLI::App*, std::string>> commands = {
        {preprocess, "preprocess"},   {baselines, "run-baselines"},
        {multitask, "run-multitask"}, {sweep, "sweep-latent"},
        {stats, "stats"},             {report, "report"}};
    for (const auto& [subcommand, name] : commands) {
        if (subcommand->parsed()) return run(name, options);
    }
    std::fprintf(stderr, "error: no command given\n");
    return static_cast<int>(HML_ERR_VALIDATION);
}
