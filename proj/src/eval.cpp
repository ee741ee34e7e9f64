// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "onhold/error.hpp"
#include "onhold/random.hpp"

namespace onhold {

namespace {

void require_aligned(std::size_t a, std::size_t b) {
    if (a != b) throw Error(ErrorKind::InvalidArgument, "predictions and labels differ in length");
}

void tally(ConfusionCounts& c, bool predicted, bool actual) {
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
}

Metric ratio(std::size_t num, std::size_t den) {
    if (den == 0) return {0.0, true};
    return {static_cast<double>(num) / static_cast<double>(den), false};
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

FoldResult score_fold(std::string name, std::size_t train_size, std::span<const Prediction> preds,
                      std::span<const Label> truth) {
    FoldResult r;
    r.name = std::move(name);
    r.train_size = train_size;
    r.test_size = truth.size();
    r.test_positives = static_cast<std::size_t>(std::count_if(truth.begin(), truth.end(), is_positive));
    r.counts = confusion(preds, truth);
    r.precision = precision(r.counts);
    r.recall = recall(r.counts);
    r.f1 = f1(r.counts);
    if (r.test_positives == 0 || r.test_positives == r.test_size) {
        r.auc = {0.0, true};
    } else {
        std::vector<double> scores;
        scores.reserve(preds.size());
        for (const auto& p : preds) scores.push_back(p.score);
        r.auc = {auc(scores, truth), false};
    }
    return r;
}

}  // namespace

ConfusionCounts confusion(std::span<const Prediction> preds, std::span<const Label> truth) {
    require_aligned(preds.size(), truth.size());
    ConfusionCounts c;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        tally(c, preds[i].predicted == Label::OnHold, is_positive(truth[i]));
    }
    return c;
}

ConfusionCounts confusion(std::span<const Prediction> preds, std::span<const Label> truth, double threshold) {
    require_aligned(preds.size(), truth.size());
    ConfusionCounts c;
    for (std::size_t i = 0; i < preds.size(); ++i) tally(c, preds[i].score >= threshold, is_positive(truth[i]));
    return c;
}

Metric precision(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fp); }

Metric recall(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn); }

Metric f1(const ConfusionCounts& c) {
    const Metric p = precision(c);
    const Metric r = recall(c);
    if (p.undefined || r.undefined || p.value + r.value == 0.0) return {0.0, true};
    return {2.0 * (p.value * r.value) / (p.value + r.value), false};
}

double auc(std::span<const double> scores, std::span<const Label> truth) {
    if (scores.size() != truth.size()) throw Error(ErrorKind::InvalidArgument, "scores and labels differ in length");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Twice the rank sum of the positives; a tie group spanning 1-based
    // ranks first..last gives each member the rank (first + last) / 2.
    std::uint64_t twice_rank_sum = 0;
    std::uint64_t positives = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const std::uint64_t twice_rank = (i + 1) + j;
        for (std::size_t k = i; k < j; ++k) {
            if (is_positive(truth[order[k]])) {
                twice_rank_sum += twice_rank;
                ++positives;
            }
        }
        i = j;
    }
    const std::uint64_t negatives = truth.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw Error(ErrorKind::SingleClass, "AUC needs both on-hold and other comments");
    }
    const std::uint64_t twice_u = twice_rank_sum - positives * (positives + 1);
    return static_cast<double>(twice_u) / static_cast<double>(2 * positives * negatives);
}

FoldPlan stratified_folds(std::span<const Label> labels, std::size_t n_folds, double test_fraction, std::uint64_t seed,
                          bool stratified) {
    if (n_folds < 1) throw Error(ErrorKind::InvalidArgument, "need at least one fold");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "test_fraction must lie in (0, 1)");
    }
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i) (is_positive(labels[i]) ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty()) throw Error(ErrorKind::SingleClass, "labels contain a single class");

    const std::size_t n = labels.size();
    const std::size_t test_size = round_half_up(static_cast<double>(n) * test_fraction);
    if (test_size < 1 || test_size >= n) throw Error(ErrorKind::TooFewInstances, "test size rounds to 0 or N");
    const std::size_t test_pos =
        round_half_up(static_cast<double>(test_size) * static_cast<double>(pos.size()) / static_cast<double>(n));
    const std::size_t test_neg = test_size - test_pos;
    if (stratified && (test_pos < 1 || test_neg < 1 || test_pos >= pos.size() || test_neg >= neg.size())) {
        throw Error(ErrorKind::TooFewInstances, "a class has too few instances for " + std::to_string(test_size) +
                                                    "-instance stratified test sets (" + std::to_string(pos.size()) +
                                                    " positive, " + std::to_string(neg.size()) + " negative)");
    }

    FoldPlan plan;
    plan.seed = seed;
    plan.n_folds = n_folds;
    plan.test_fraction = test_fraction;
    plan.stratified = stratified;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t f = 0; f < n_folds; ++f) {
        std::vector<char> in_test(n, 0);
        if (stratified) {
            shuffle_in_place(pos, rng);
            shuffle_in_place(neg, rng);
            for (std::size_t i = 0; i < test_pos; ++i) in_test[pos[i]] = 1;
            for (std::size_t i = 0; i < test_neg; ++i) in_test[neg[i]] = 1;
        } else {
            shuffle_in_place(all, rng);
            for (std::size_t i = 0; i < test_size; ++i) in_test[all[i]] = 1;
        }
        Fold fold;
        for (std::size_t i = 0; i < n; ++i) (in_test[i] ? fold.test : fold.train).push_back(i);
        plan.folds.push_back(std::move(fold));
    }
    return plan;
}

MetricSummary summarize(std::span<const FoldResult> folds) {
    MetricSummary s;
    if (folds.empty()) {
        s.precision = s.recall = s.f1 = s.auc = {0.0, true};
        return s;
    }
    double p = 0, r = 0, f = 0, a = 0;
    bool p_all_undefined = true, r_all_undefined = true, f_all_undefined = true;
    for (const auto& fr : folds) {
        p += fr.precision.value;
        r += fr.recall.value;
        f += fr.f1.value;
        p_all_undefined = p_all_undefined && fr.precision.undefined;
        r_all_undefined = r_all_undefined && fr.recall.undefined;
        f_all_undefined = f_all_undefined && fr.f1.undefined;
        if (!fr.auc.undefined) {
            a += fr.auc.value;
            ++s.auc_folds;
        }
    }
    const double k = static_cast<double>(folds.size());
    s.precision = {p / k, p_all_undefined};
    s.recall = {r / k, r_all_undefined};
    s.f1 = {f / k, f_all_undefined};
    s.auc = s.auc_folds == 0 ? Metric{0.0, true} : Metric{a / static_cast<double>(s.auc_folds), false};
    return s;
}

EvalReport cross_validate(std::span<const AbstractedComment> comments, std::span<const Label> labels,
                          const FoldPlan& plan, const ClassifierFactory& make) {
    require_aligned(comments.size(), labels.size());
    EvalReport report;
    std::vector<Verdict> verdicts(comments.size());
    for (std::size_t i = 0; i < comments.size(); ++i) {
        verdicts[i].comment_id = comments[i].comment_id;
        verdicts[i].truth = labels[i];
    }

    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
        const Fold& fold = plan.folds[f];
        std::vector<AbstractedComment> train_x, test_x;
        std::vector<Label> train_y, test_y;
        for (auto i : fold.train) {
            train_x.push_back(comments[i]);
            train_y.push_back(labels[i]);
        }
        for (auto i : fold.test) {
            test_x.push_back(comments[i]);
            test_y.push_back(labels[i]);
        }
        auto clf = make();
        if (report.model.empty()) report.model = clf->name();
        clf->fit(train_x, train_y);
        const auto preds = clf->predict(test_x);
        report.folds.push_back(score_fold(std::to_string(f + 1), train_x.size(), preds, test_y));
        for (std::size_t k = 0; k < fold.test.size(); ++k) {
            Verdict& v = verdicts[fold.test[k]];
            ++v.appearances;
            if ((preds[k].predicted == Label::OnHold) == is_positive(test_y[k])) ++v.correct;
        }
    }
    report.mean = summarize(report.folds);
    for (auto& v : verdicts) {
        if (v.appearances == 0) continue;
        if (is_positive(v.truth)) {
            ++report.positives_tested;
            if (v.identified()) ++report.positives_identified;
        }
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

ClassifierFactory ngram_factory(const EvalSettings& s) {
    return [s] { return std::make_unique<NGramLogisticClassifier>(s.hyperparams, s.max_n, s.min_freq); };
}

ClassifierFactory unigram_factory(const EvalSettings& s) {
    return [s] { return std::make_unique<NGramLogisticClassifier>(s.hyperparams, 1, s.min_freq); };
}

ClassifierFactory baseline_factory(const EvalSettings& s) {
    return [s] { return std::make_unique<KeywordClassifier>(s.baseline); };
}

Comparison compare_models(std::span<const AbstractedComment> comments, std::span<const Label> labels,
                          const EvalSettings& s) {
    Comparison c;
    c.plan = stratified_folds(labels, s.n_folds, s.test_fraction, s.seed, s.stratified);
    for (const auto& make : {baseline_factory(s), unigram_factory(s), ngram_factory(s)}) {
        c.reports.push_back(cross_validate(comments, labels, c.plan, make));
    }
    return c;
}

CrossProjectReport cross_project_validate(std::span<const Comment> comments,
                                          std::span<const AbstractedComment> processed, const ClassifierFactory& make,
                                          const std::string& model_name) {
    require_aligned(comments.size(), processed.size());
    std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // project -> (on-hold, total)
    for (const auto& c : comments) {
        auto& s = stats[c.project];
        if (is_positive(c.label)) ++s.first;
        ++s.second;
    }
    CrossProjectReport out;
    for (const auto& [project, s] : stats) {
        const double r = static_cast<double>(s.first) / static_cast<double>(s.second);
        (r > kMinProjectOnHoldRatio ? out.projects : out.excluded_projects).push_back(project);
    }
    if (out.projects.size() < 2) {
        throw Error(ErrorKind::TooFewProjects, "cross-project evaluation needs at least two projects with more than 2% "
                                               "on-hold comments, found " + std::to_string(out.projects.size()));
    }

    out.report.model = model_name;
    for (const auto& held_out : out.projects) {
        std::vector<AbstractedComment> train_x, test_x;
        std::vector<Label> train_y, test_y;
        for (std::size_t i = 0; i < comments.size(); ++i) {
            const auto& project = comments[i].project;
            if (project == held_out) {
                test_x.push_back(processed[i]);
                test_y.push_back(comments[i].label);
            } else if (std::binary_search(out.projects.begin(), out.projects.end(), project)) {
                train_x.push_back(processed[i]);
                train_y.push_back(comments[i].label);
            }
        }
        auto clf = make();
        clf->fit(train_x, train_y);
        const auto preds = clf->predict(test_x);
        out.report.folds.push_back(score_fold(held_out, train_x.size(), preds, test_y));
    }
    out.report.mean = summarize(out.report.folds);
    return out;
}

}  // namespace onhold
