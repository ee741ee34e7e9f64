// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "onhold/corpus.hpp"
#include "onhold/model.hpp"

namespace onhold {

struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    [[nodiscard]] std::size_t total() const noexcept { return tp + fp + tn + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

/// A metric value; `undefined` marks a zero denominator (value is then 0) or
/// a single-class AUC.
struct Metric {
    double value = 0.0;
    bool undefined = false;
};

/// Counts by each prediction's `predicted` label.
ConfusionCounts confusion(std::span<const Prediction> preds, std::span<const Label> truth);
/// Counts with predicted = OnHold iff score >= threshold.
ConfusionCounts confusion(std::span<const Prediction> preds, std::span<const Label> truth, double threshold);

Metric precision(const ConfusionCounts& c);
Metric recall(const ConfusionCounts& c);
Metric f1(const ConfusionCounts& c);

/// Probability that a random positive scores above a random negative, ties
/// counting one half (Mann-Whitney form). Throws Error{SingleClass}.
double auc(std::span<const double> scores, std::span<const Label> truth);

struct Fold {
    std::vector<std::size_t> train;  // indices into the dataset, ascending
    std::vector<std::size_t> test;
};

struct FoldPlan {
    std::vector<Fold> folds;
    std::uint64_t seed = 0;
    std::size_t n_folds = 10;
    double test_fraction = 0.1;
    bool stratified = true;
};

/// Shuffle-split folds. Each test set has round(N * test_fraction) instances;
/// when stratified, round(size * P / N) of them are positive. An instance may
/// be tested in several folds. Throws SingleClass, TooFewInstances,
/// InvalidArgument.
FoldPlan stratified_folds(std::span<const Label> labels, std::size_t n_folds, double test_fraction, std::uint64_t seed,
                          bool stratified = true);

struct FoldResult {
    std::string name;  // fold number or held-out project
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t test_positives = 0;
    ConfusionCounts counts;
    Metric precision, recall, f1, auc;
};

struct MetricSummary {
    Metric precision, recall, f1, auc;
    std::size_t auc_folds = 0;  // folds with a defined AUC
};

/// Means over folds. Precision, recall and F1 average every fold (undefined
/// folds contribute 0); AUC averages the folds where it is defined.
MetricSummary summarize(std::span<const FoldResult> folds);

struct Verdict {
    std::string comment_id;
    Label truth = Label::NotOnHold;
    std::size_t appearances = 0;
    std::size_t correct = 0;

    /// Correct in every fold that tested it.
    [[nodiscard]] bool identified() const noexcept { return appearances > 0 && correct == appearances; }
};

struct EvalReport {
    std::string model;
    std::vector<FoldResult> folds;
    MetricSummary mean;
    std::vector<Verdict> verdicts;  // comments tested at least once, dataset order
    std::size_t positives_tested = 0;
    std::size_t positives_identified = 0;
};

using ClassifierFactory = std::function<std::unique_ptr<Classifier>()>;

/// Runs a fresh classifier per fold: fit on the training comments only (so
/// feature tables never see test comments), then score the test comments.
EvalReport cross_validate(std::span<const AbstractedComment> comments, std::span<const Label> labels,
                          const FoldPlan& plan, const ClassifierFactory& make);

struct EvalSettings {
    std::size_t n_folds = 10;
    double test_fraction = 0.1;
    std::uint64_t seed = 0;
    bool stratified = true;
    Hyperparams hyperparams;
    std::size_t max_n = kDefaultMaxN;
    std::size_t min_freq = kDefaultMinFreq;
    KeywordBaseline baseline;
};

ClassifierFactory ngram_factory(const EvalSettings& s);
ClassifierFactory unigram_factory(const EvalSettings& s);
ClassifierFactory baseline_factory(const EvalSettings& s);

/// Baseline, unigram TF-IDF and n-gram TF-IDF on the same fold plan.
struct Comparison {
    FoldPlan plan;
    std::vector<EvalReport> reports;  // baseline, unigram, ngram
};

Comparison compare_models(std::span<const AbstractedComment> comments, std::span<const Label> labels,
                          const EvalSettings& s);

inline constexpr double kMinProjectOnHoldRatio = 0.02;

struct CrossProjectReport {
    std::vector<std::string> projects;           // eligible projects, sorted
    std::vector<std::string> excluded_projects;  // on-hold ratio <= 2%
    EvalReport report;                           // one fold per held-out project
};

/// Leave-one-project-out over projects whose on-hold ratio exceeds 2%.
/// Throws Error{TooFewProjects} when fewer than two are eligible.
CrossProjectReport cross_project_validate(std::span<const Comment> comments,
                                          std::span<const AbstractedComment> processed, const ClassifierFactory& make,
                                          const std::string& model_name);

}  // namespace onhold
