#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "data/dataset.hpp"
#include "data/features.hpp"
#include "models/mlp.hpp"
#include "models/model_io.hpp"
#include "models/multitask.hpp"
#include "models/train_util.hpp"

using namespace heartml;

namespace {

const data::FeatureMatrix& canonical_matrix() {
    static data::FeatureMatrix matrix =
        data::engineer_features(data::load_raw_dataset(HEARTML_DATA_CSV)).matrix;
    return matrix;
}

data::FeatureMatrix canonical_head(std::size_t rows) {
    std::vector<std::size_t> picks(rows);
    for (std::size_t i = 0; i < rows; ++i) picks[i] = i;
    return canonical_matrix().subset(picks);
}

data::FeatureMatrix blobs(std::size_t rows, std::uint64_t seed) {
    core::Rng rng(seed);
    data::FeatureMatrix m = data::FeatureMatrix::zeros(rows, 2);
    m.column_names = {"x", "y"};
    for (std::size_t r = 0; r < rows; ++r) {
        const int label = static_cast<int>(r % 2);
        m.labels[r] = label;
        m.at(r, 0) = rng.normal() * 0.3 + (label == 1 ? 2.0 : -2.0);
        m.at(r, 1) = rng.normal() * 0.3;
    }
    return m;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("make_batches covers every index once with the tail at the end") {
    core::Rng rng(1);
    const auto batches = models::make_batches(10, 4, rng);
    REQUIRE(batches.size() == 3);
    CHECK(batches[0].size() == 4);
    CHECK(batches[1].size() == 4);
    CHECK(batches[2].size() == 2);
    std::set<std::size_t> seen;
    for (const auto& batch : batches) seen.insert(batch.begin(), batch.end());
    CHECK(seen.size() == 10);
}

TEST_CASE("probability_to_label thresholds at one half inclusive") {
    CHECK(models::probability_to_label(0.5) == 1);
    CHECK(models::probability_to_label(0.4999) == 0);
}

TEST_CASE("latent_grid picks the most square factor pair") {
    using P = std::pair<std::size_t, std::size_t>;
    CHECK(models::latent_grid(50) == P{5, 10});
    CHECK(models::latent_grid(100) == P{10, 10});
    CHECK(models::latent_grid(150) == P{10, 15});
    CHECK(models::latent_grid(200) == P{10, 20});
    CHECK(models::latent_grid(250) == P{10, 25});
    CHECK(models::latent_grid(300) == P{15, 20});
    CHECK(models::latent_grid(24) == P{4, 6});
    CHECK(models::latent_grid(7) == P{1, 7});
}

TEST_CASE("mlp config validates and round-trips through json") {
    models::MlpConfig config;
    config.hidden = {32, 16};
    config.epochs = 12;
    config.batch_size = 8;
    const models::MlpConfig restored = models::MlpConfig::from_json(config.to_json());
    CHECK(restored.hidden == config.hidden);
    CHECK(restored.epochs == config.epochs);
    CHECK(restored.batch_size == config.batch_size);

    models::MlpConfig bad;
    bad.epochs = 0;
    CHECK_THROWS_AS(bad.validate(), core::ValidationError);
    bad = models::MlpConfig{};
    bad.hidden = {0};
    CHECK_THROWS_AS(bad.validate(), core::ValidationError);
}

TEST_CASE("multitask config validates and round-trips through json") {
    models::MultitaskConfig config;
    config.latent_dim = 60;
    config.classifier = models::ClassifierKind::cnn;
    config.alpha = 0.25;
    const auto restored = models::MultitaskConfig::from_json(config.to_json());
    CHECK(restored.latent_dim == 60);
    CHECK(restored.classifier == models::ClassifierKind::cnn);
    CHECK(restored.alpha == 0.25);

    models::MultitaskConfig bad;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(bad.validate(), core::ValidationError);

    // A 3x3 latent grid leaves a 1x1 conv map; a 2x2 pool cannot fit.
    models::MultitaskConfig tiny;
    tiny.latent_dim = 9;
    tiny.classifier = models::ClassifierKind::cnn;
    CHECK_THROWS_AS(tiny.validate(), core::ValidationError);
}

TEST_CASE("mlp learns a linearly separable set") {
    const data::FeatureMatrix train = blobs(80, 42);
    models::MlpConfig config;
    config.hidden = {8};
    config.epochs = 60;
    config.batch_size = 16;
    models::MlpClassifier mlp;
    mlp.train(train, config, 7);

    const auto history = mlp.history();
    REQUIRE(history.size() == 60);
    CHECK(history.back().accuracy > 0.95);
    CHECK(history.back().bce < history.front().bce);

    const auto preds = mlp.predict(train);
    std::size_t correct = 0;
    for (std::size_t r = 0; r < train.rows; ++r) {
        if (preds[r] == train.labels[r]) ++correct;
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(train.rows) > 0.95);
}

TEST_CASE("mlp predictions are deterministic in the seed") {
    const data::FeatureMatrix train = blobs(40, 11);
    models::MlpConfig config;
    config.hidden = {6};
    config.epochs = 10;
    models::MlpClassifier a, b, c;
    a.train(train, config, 5);
    b.train(train, config, 5);
    c.train(train, config, 6);
    CHECK(a.predict_proba(train) == b.predict_proba(train));
    CHECK(a.predict_proba(train) != c.predict_proba(train));
}

TEST_CASE("multitask model demands an overcomplete latent") {
    const data::FeatureMatrix train = canonical_head(64);
    models::MultitaskConfig config;
    config.latent_dim = 10; // narrower than the 24 inputs
    config.epochs = 1;
    models::MultitaskModel model;
    CHECK_THROWS_AS(model.train(train, config, 1), core::ValidationError);
}

TEST_CASE("multitask mlp head trains, encodes and reconstructs") {
    const data::FeatureMatrix train = canonical_head(200);
    models::MultitaskConfig config;
    config.latent_dim = 30;
    config.epochs = 25;
    config.batch_size = 32;
    models::MultitaskModel model;
    model.train(train, config, 3);

    REQUIRE(model.history().size() == 25);
    CHECK(model.history().back().accuracy > 0.7);
    CHECK(model.history().back().total < model.history().front().total);
    CHECK(model.history().back().mse < model.history().front().mse);

    const tensor::Tensor latent = model.encode(train);
    REQUIRE(latent.shape() == std::vector<std::size_t>{200, 30});
    for (std::size_t i = 0; i < latent.size(); ++i) {
        CHECK(latent[i] >= 0.0);
        CHECK(latent[i] <= 1.0);
    }

    const tensor::Tensor recon = model.reconstruct(train);
    REQUIRE(recon.shape() == std::vector<std::size_t>{200, 24});
    for (std::size_t i = 0; i < recon.size(); ++i) {
        CHECK(recon[i] >= 0.0);
        CHECK(recon[i] <= 1.0);
    }

    const auto probs = model.predict_proba(train);
    REQUIRE(probs.size() == 200);
    for (double p : probs) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("multitask cnn head handles grids that need cropping") {
    const data::FeatureMatrix train = canonical_head(150);
    models::MultitaskConfig config;
    config.latent_dim = 30; // 5x6 grid, conv -> 3x4, cropped to 2x4 for 2x2 pooling
    config.classifier = models::ClassifierKind::cnn;
    config.epochs = 10;
    models::MultitaskModel model;
    model.train(train, config, 9);
    CHECK(model.history().size() == 10);
    const auto probs = model.predict_proba(train);
    for (double p : probs) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("multitask training is deterministic in the seed") {
    const data::FeatureMatrix train = canonical_head(120);
    models::MultitaskConfig config;
    config.latent_dim = 26;
    config.epochs = 8;
    models::MultitaskModel a, b, c;
    a.train(train, config, 21);
    b.train(train, config, 21);
    c.train(train, config, 22);
    CHECK(a.predict_proba(train) == b.predict_proba(train));
    CHECK(a.predict_proba(train) != c.predict_proba(train));
}

TEST_CASE("alpha weights the loss mix") {
    const data::FeatureMatrix train = canonical_head(150);
    models::MultitaskConfig recon_heavy;
    recon_heavy.latent_dim = 30;
    recon_heavy.epochs = 20;
    recon_heavy.alpha = 0.05;
    models::MultitaskConfig clf_heavy = recon_heavy;
    clf_heavy.alpha = 0.95;

    models::MultitaskModel recon_model, clf_model;
    recon_model.train(train, recon_heavy, 13);
    clf_model.train(train, clf_heavy, 13);
    // Pushing alpha toward classification trades reconstruction error for it.
    CHECK(recon_model.history().back().mse < clf_model.history().back().mse);
}

TEST_CASE("multitask model io round-trips predictions exactly") {
    const data::FeatureMatrix train = canonical_head(100);
    models::MultitaskConfig config;
    config.latent_dim = 26;
    config.epochs = 6;
    models::MultitaskModel model;
    model.train(train, config, 17);

    const auto path = temp_file("heartml_multitask_model.json");
    models::save_model(model, path.string());
    CHECK(models::model_kind(path.string()) == "multitask");

    const models::MultitaskModel loaded = models::load_multitask_model(path.string());
    CHECK(loaded.config().latent_dim == 26);
    CHECK(loaded.predict_proba(train) == model.predict_proba(train));
    CHECK_THROWS_AS((void)models::load_mlp_model(path.string()), core::ValidationError);
    std::filesystem::remove(path);
}

TEST_CASE("mlp model io round-trips predictions exactly") {
    const data::FeatureMatrix train = blobs(40, 19);
    models::MlpConfig config;
    config.hidden = {6};
    config.epochs = 8;
    models::MlpClassifier mlp;
    mlp.train(train, config, 23);

    const auto path = temp_file("heartml_mlp_model.json");
    models::save_model(mlp, path.string());
    CHECK(models::model_kind(path.string()) == "mlp");
    const models::MlpClassifier loaded = models::load_mlp_model(path.string());
    CHECK(loaded.predict_proba(train) == mlp.predict_proba(train));
    std::filesystem::remove(path);
}

TEST_CASE("predicting before training is rejected") {
    models::MultitaskModel model;
    CHECK_THROWS_AS((void)model.predict_proba(canonical_head(4)), core::ValidationError);
    models::MlpClassifier mlp;
    CHECK_THROWS_AS((void)mlp.predict_proba(canonical_head(4)), core::ValidationError);
}
