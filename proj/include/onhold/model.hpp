// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "onhold/corpus.hpp"
#include "onhold/ngram.hpp"
#include "onhold/preprocess.hpp"

namespace onhold {

struct Hyperparams {
    double l2_lambda = 1e-4;
    double learning_rate = 1.0;  // in units of 1 / (Lipschitz bound of the loss gradient)
    std::size_t epochs = 1000;
    std::optional<double> class_weight_positive;  // unset: negatives / positives
    std::uint64_t seed = 0;
};

struct LinearModel {
    std::vector<double> weights;  // indexed by gram id
    double bias = 0.0;
    Hyperparams hyperparams;
    std::vector<double> loss_trace;  // training loss before each epoch and after the last

    [[nodiscard]] double pre_activation(const FeatureVector& v) const;
};

double sigmoid(double z) noexcept;

/// sigmoid(w . v + b), in (0, 1).
double score(const LinearModel& m, const FeatureVector& v);

bool is_positive(Label label) noexcept;

/// Class weight applied to positives: the override if set, else negatives /
/// positives. Throws Error{DegenerateTraining} when a class is missing.
double positive_class_weight(std::span<const Label> labels, const Hyperparams& h);

struct Gradient {
    std::vector<double> weights;
    double bias = 0.0;
};

/// Class-weighted mean logistic loss plus (l2_lambda / 2) * |w|^2 (bias not
/// penalised). Fills `grad` when given.
double logistic_loss(std::span<const double> weights, double bias, std::span<const FeatureVector> vectors,
                     std::span<const Label> labels, double positive_weight, double l2_lambda,
                     Gradient* grad = nullptr);

/// Full-batch gradient descent from a seeded near-zero start. `dimension` is
/// the number of gram ids. Throws DegenerateTraining on single-class input,
/// NonFiniteLoss on divergence, InvalidArgument on bad hyperparameters.
LinearModel train(std::span<const FeatureVector> vectors, std::span<const Label> labels, std::size_t dimension,
                  const Hyperparams& h);

/// Scales a vector to unit Euclidean norm (unchanged when it is all zeros).
FeatureVector l2_normalized(FeatureVector v);

struct Prediction {
    std::string comment_id;
    double score = 0.0;
    Label predicted = Label::NotOnHold;

    bool operator==(const Prediction&) const = default;
};

inline constexpr double kDefaultThreshold = 0.5;

Prediction make_prediction(std::string comment_id, double score, double threshold = kDefaultThreshold);

struct KeywordBaseline {
    std::set<std::string> keywords{"should", "when", "once", "remove", "workaround", "fixed", "after", "will"};

    /// A comment is flagged when at least one keyword is present.
    [[nodiscard]] double threshold() const { return keywords.empty() ? 1.0 : 1.0 / double(keywords.size()); }
};

/// score = fraction of keywords present among the comment's tokens (lemma
/// or surface form).
Prediction baseline_classify(const KeywordBaseline& b, const AbstractedComment& c);

NGramTable build_unigram_table(std::span<const AbstractedComment> corpus);

class Classifier {
  public:
    virtual ~Classifier() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    virtual void fit(std::span<const AbstractedComment> comments, std::span<const Label> labels) = 0;
    [[nodiscard]] virtual std::vector<Prediction> predict(std::span<const AbstractedComment> comments) const = 0;
};

/// N-gram TF-IDF features (table rebuilt from the training comments on each
/// fit) fed to the logistic model. Vectors are L2-normalised before training
/// and scoring. max_n = 1 gives the unigram comparison model.
class NGramLogisticClassifier final : public Classifier {
  public:
    explicit NGramLogisticClassifier(Hyperparams h = {}, std::size_t max_n = kDefaultMaxN,
                                     std::size_t min_freq = kDefaultMinFreq);

    [[nodiscard]] std::string name() const override { return max_n_ == 1 ? "unigram" : "ngram"; }
    void fit(std::span<const AbstractedComment> comments, std::span<const Label> labels) override;
    [[nodiscard]] std::vector<Prediction> predict(std::span<const AbstractedComment> comments) const override;

    [[nodiscard]] const NGramTable& table() const noexcept { return table_; }
    [[nodiscard]] const LinearModel& model() const noexcept { return model_; }
    [[nodiscard]] std::size_t max_n() const noexcept { return max_n_; }
    [[nodiscard]] std::size_t min_freq() const noexcept { return min_freq_; }

    void save(std::ostream& out) const;
    static NGramLogisticClassifier load(std::istream& in);
    void save(const std::filesystem::path& path) const;
    static NGramLogisticClassifier load(const std::filesystem::path& path);

  private:
    Hyperparams hyperparams_;
    std::size_t max_n_;
    std::size_t min_freq_;
    NGramTable table_;
    LinearModel model_;
    bool fitted_ = false;
};

class KeywordClassifier final : public Classifier {
  public:
    explicit KeywordClassifier(KeywordBaseline b = {}) : baseline_(std::move(b)) {}
    [[nodiscard]] std::string name() const override { return "baseline"; }
    void fit(std::span<const AbstractedComment>, std::span<const Label>) override {}
    [[nodiscard]] std::vector<Prediction> predict(std::span<const AbstractedComment> comments) const override;

  private:
    KeywordBaseline baseline_;
};

}  // namespace onhold
