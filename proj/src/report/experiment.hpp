// Experiment harness behind the CLI: resolves a configuration, runs one of
// the six commands and writes a deterministic bundle (CSV tables, summary
// and manifest JSON, SVG charts) into the output directory. Re-running a
// command with the manifest's configuration reproduces every byte.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "eval/method.hpp"

namespace heartml::report {

inline constexpr const char* kToolVersion = "0.1.0";

struct ExperimentConfig {
    std::string data_path = "data/heart.csv";
    std::string out_dir = "out";
    std::uint64_t seed = 7;
    std::size_t folds = 10;
    bool stratified = false;
    std::string classifier = "mlp"; // run-multitask / sweep-latent head
    std::size_t latent_dim = 0;     // 0 = head default (mlp 100, cnn 200)
    std::vector<std::size_t> latent_sizes{50, 100, 150, 200, 250, 300};
    std::vector<std::string> methods;                 // empty = the baseline set
    std::map<std::string, eval::GridSpec> grid_overrides;
    // Overrides applied on top of the tuned multitask operating point
    // (alpha, l1_lambda, learning_rate, epochs, batch_size, hidden1, hidden2).
    eval::Hyperparams multitask_overrides;
    std::vector<std::string> formats{"csv", "json", "svg"};
    std::string benchmarks_path; // report command
    std::vector<std::string> inputs; // summary.json files for stats / report
    std::size_t workers = 0;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& doc);
    // Applies the keys present in `doc` on top of the current values;
    // unknown keys are rejected.
    void merge_json(const nlohmann::json& doc);
    void validate(const std::string& command) const;
};

const std::vector<std::string>& known_commands();

// Runs a command and returns the summary document (also written to
// summary.json in the output directory).
nlohmann::json run_command(const std::string& command, const ExperimentConfig& config);

// Seed stream shared by run-multitask and sweep-latent so the same
// (classifier, latent) cell reproduces identical fold accuracies in both.
std::uint64_t multitask_seed(std::uint64_t base_seed, const std::string& classifier,
                             std::size_t latent_dim);

// The tuned multitask operating point used by run-multitask and sweep-latent
// (and mirrored by the acceptance protocol). Everything in the map lands in
// results.csv and the summary, so reported rows carry their full recipe.
eval::Hyperparams multitask_hyperparams(const std::string& classifier,
                                        std::size_t latent_dim,
                                        const eval::Hyperparams& overrides = {});

} // namespace heartml::report
