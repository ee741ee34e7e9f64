// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "metric_oracle.hpp"
#include "onhold/error.hpp"
#include "onhold/eval.hpp"
#include "onhold/synthetic.hpp"

using namespace onhold;

namespace {

constexpr Label P = Label::OnHold;
constexpr Label N = Label::NotOnHold;

std::vector<Prediction> preds_of(const std::vector<Label>& predicted) {
    std::vector<Prediction> out;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        out.push_back({std::to_string(i), predicted[i] == P ? 1.0 : 0.0, predicted[i]});
    }
    return out;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

std::vector<Label> labels_of(std::size_t pos, std::size_t neg) {
    std::vector<Label> out(pos, P);
    out.insert(out.end(), neg, N);
    return out;
}

struct Corpus {
    Dataset data;
    std::vector<AbstractedComment> processed;
    std::vector<Label> labels;
};

Corpus synthetic(std::uint64_t seed, std::size_t comments = 600, std::size_t positives = 60) {
    Corpus c;
    c.data = generate_synthetic({comments, positives, seed});
    c.processed = preprocess_all(c.data.comments, ProductDictionary::defaults());
    for (const auto& x : c.data.comments) c.labels.push_back(x.label);
    return c;
}

// Returns the same scripted predictions each time.
class Scripted final : public Classifier {
  public:
    explicit Scripted(std::map<std::string, Label> answers) : answers_(std::move(answers)) {}
    std::string name() const override { return "scripted"; }
    void fit(std::span<const AbstractedComment>, std::span<const Label>) override {}
    std::vector<Prediction> predict(std::span<const AbstractedComment> comments) const override {
        std::vector<Prediction> out;
        for (const auto& c : comments) {
            const Label l = answers_.at(c.comment_id);
            out.push_back({c.comment_id, l == P ? 0.9 : 0.1, l});
        }
        return out;
    }

  private:
    std::map<std::string, Label> answers_;
};

}  // namespace

TEST_CASE("confusion basics") {
    auto all_right = confusion(preds_of({P, N, P, N}), std::vector<Label>{P, N, P, N});
    CHECK(all_right.fp == 0);
    CHECK(all_right.fn == 0);
    auto all_wrong = confusion(preds_of({P, P, P}), std::vector<Label>{N, N, N});
    CHECK(all_wrong == ConfusionCounts{0, 3, 0, 0});
}

TEST_CASE("eight-case hand tally") {
    // predicted: P P P N N N P N
    // truth:     P N P N P N N P
    // tp = 2 (0, 2), fp = 2 (1, 6), tn = 2 (3, 5), fn = 2 (4, 7)
    auto c = confusion(preds_of({P, P, P, N, N, N, P, N}), std::vector<Label>{P, N, P, N, P, N, N, P});
    CHECK(c == ConfusionCounts{2, 2, 2, 2});
    CHECK(precision(c).value == 0.5);
    CHECK(recall(c).value == 0.5);
    CHECK(f1(c).value == 0.5);
}

TEST_CASE("threshold form of confusion") {
    std::vector<Prediction> p{{"a", 0.7, N}, {"b", 0.5, N}, {"c", 0.2, N}};
    auto c = confusion(p, std::vector<Label>{P, N, N}, 0.5);
    CHECK(c == ConfusionCounts{1, 1, 1, 0});
}

TEST_CASE("metric conventions") {
    CHECK(precision({5, 5, 0, 0}).value == 0.5);
    auto r = recall({0, 3, 4, 0});
    CHECK(r.undefined);
    CHECK(r.value == 0.0);
    CHECK(precision({80, 9, 0, 0}).value == doctest::Approx(80.0 / 89.0).epsilon(1e-15));
    CHECK(std::abs(precision({80, 9, 0, 0}).value - 0.899) < 1e-3);
}

TEST_CASE("metrics match exact fractions on every small confusion") {
    for (std::size_t tp = 0; tp <= 12; ++tp)
        for (std::size_t fp = 0; tp + fp <= 12; ++fp)
            for (std::size_t tn = 0; tp + fp + tn <= 12; ++tn)
                for (std::size_t fn = 0; tp + fp + tn + fn <= 12; ++fn) {
                    ConfusionCounts c{tp, fp, tn, fn};
                    auto p = oracle::fraction(tp, tp + fp);
                    auto r = oracle::fraction(tp, tp + fn);
                    auto f = oracle::f1_fraction(tp, fp, fn);
                    CHECK(precision(c).undefined == !p.has_value());
                    CHECK(recall(c).undefined == !r.has_value());
                    CHECK(f1(c).undefined == !f.has_value());
                    if (p) CHECK(std::abs(precision(c).value - p->value()) < 1e-15);
                    if (r) CHECK(std::abs(recall(c).value - r->value()) < 1e-15);
                    if (f) CHECK(std::abs(f1(c).value - f->value()) < 1e-15);
                }
}

TEST_CASE("auc examples") {
    CHECK(auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<Label>{P, P, N, N}) == 1.0);
    CHECK(auc(std::vector<double>{0.3, 0.3, 0.3}, std::vector<Label>{P, N, N}) == 0.5);
    CHECK(auc(std::vector<double>{0.9, 0.4, 0.6, 0.1}, std::vector<Label>{P, P, N, N}) == 0.75);
    CHECK(kind_of([] { auc(std::vector<double>{0.1, 0.2}, std::vector<Label>{N, N}); }) == ErrorKind::SingleClass);
}

TEST_CASE("auc equals the pairwise count and ignores monotone transforms") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t n = 2 + rng() % 40;
        std::vector<double> scores(n);
        std::vector<Label> truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rng() % 7) / 7.0;
            truth[i] = rng() % 3 == 0 ? P : N;
        }
        truth[0] = P;
        truth[1] = N;
        const double a = auc(scores, truth);
        CHECK(a == oracle::pairwise_auc(scores, truth));
        std::vector<double> mapped(n);
        for (std::size_t i = 0; i < n; ++i) mapped[i] = std::exp(3 * scores[i]) - 17.0;
        CHECK(std::abs(auc(mapped, truth) - a) < 1e-12);
    }
}

TEST_CASE("stratified folds: forced ratio") {
    auto plan = stratified_folds(labels_of(10, 90), 10, 0.1, 1);
    REQUIRE(plan.folds.size() == 10);
    auto labels = labels_of(10, 90);
    for (const auto& f : plan.folds) {
        REQUIRE(f.test.size() == 10);
        CHECK(std::count_if(f.test.begin(), f.test.end(), [&](std::size_t i) { return labels[i] == P; }) == 1);
        CHECK(f.train.size() + f.test.size() == 100);
    }
}

TEST_CASE("stratified folds on the reported class counts") {
    auto labels = labels_of(293, 5236);
    auto plan = stratified_folds(labels, 10, 0.1, 42);
    for (const auto& f : plan.folds) {
        CHECK(f.test.size() == 553);
        auto pos = std::count_if(f.test.begin(), f.test.end(), [&](std::size_t i) { return labels[i] == P; });
        CHECK((pos == 29 || pos == 30));
    }
}

TEST_CASE("stratified folds: random imbalanced datasets") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t n = 50 + rng() % 2000;
        const std::size_t pos = 10 + rng() % (n / 3);  // at least one expected test positive
        std::vector<Label> labels = labels_of(pos, n - pos);
        auto plan = stratified_folds(labels, 10, 0.1, rng());
        for (const auto& f : plan.folds) {
            const double ideal = double(f.test.size()) * double(pos) / double(n);
            const auto got = std::count_if(f.test.begin(), f.test.end(), [&](std::size_t i) { return labels[i] == P; });
            CHECK(std::abs(double(got) - ideal) <= 1.0);
        }
    }
}

TEST_CASE("fold errors and determinism") {
    CHECK(kind_of([] { stratified_folds(labels_of(0, 50), 10, 0.1, 1); }) == ErrorKind::SingleClass);
    CHECK(kind_of([] { stratified_folds(labels_of(1, 5), 10, 0.1, 1); }) == ErrorKind::TooFewInstances);
    auto a = stratified_folds(labels_of(20, 180), 10, 0.1, 5);
    auto b = stratified_folds(labels_of(20, 180), 10, 0.1, 5);
    for (std::size_t f = 0; f < a.folds.size(); ++f) CHECK(a.folds[f].test == b.folds[f].test);
    auto free = stratified_folds(labels_of(20, 180), 10, 0.1, 5, false);
    for (const auto& f : free.folds) CHECK(f.test.size() == 20);
}

TEST_CASE("shuffle-split may test an instance more than once") {
    auto plan = stratified_folds(labels_of(10, 90), 10, 0.1, 3);
    std::vector<int> seen(100, 0);
    for (const auto& f : plan.folds)
        for (auto i : f.test) ++seen[i];
    CHECK(*std::max_element(seen.begin(), seen.end()) > 1);
}

TEST_CASE("all-appearances verdict") {
    // c0 positive, answered right; c1 positive, answered wrong; rest negative, right.
    std::vector<AbstractedComment> cs(10);
    std::vector<Label> ys(10, N);
    std::map<std::string, Label> answers;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        cs[i].comment_id = "c" + std::to_string(i);
        answers[cs[i].comment_id] = N;
    }
    ys[0] = ys[1] = P;
    answers["c0"] = P;
    FoldPlan plan;
    plan.folds.push_back({{2, 3, 4, 5, 6, 7, 8, 9}, {0, 1}});
    plan.folds.push_back({{1, 3, 4, 5, 6, 7, 8, 9}, {0, 2}});
    auto r = cross_validate(cs, ys, plan, [&] { return std::make_unique<Scripted>(answers); });
    CHECK(r.positives_tested == 2);
    CHECK(r.positives_identified == 1);
    REQUIRE(r.verdicts.size() == 3);
    CHECK(r.verdicts[0].appearances == 2);
    CHECK(r.verdicts[0].identified());
    CHECK_FALSE(r.verdicts[1].identified());
    CHECK(r.folds[1].auc.value == 1.0);
}

TEST_CASE("fold tables see only training comments") {
    auto c = synthetic(3, 200, 20);
    auto plan = stratified_folds(c.labels, 3, 0.1, 9);
    std::vector<NGramTable> first, second;
    auto spy = [](std::vector<NGramTable>& sink) {
        return [&sink] {
            class Spy final : public Classifier {
              public:
                explicit Spy(std::vector<NGramTable>& s) : sink_(s) {}
                std::string name() const override { return "spy"; }
                void fit(std::span<const AbstractedComment> x, std::span<const Label> y) override {
                    inner_.fit(x, y);
                    sink_.push_back(inner_.table());
                }
                std::vector<Prediction> predict(std::span<const AbstractedComment> x) const override {
                    return inner_.predict(x);
                }

              private:
                std::vector<NGramTable>& sink_;
                NGramLogisticClassifier inner_{Hyperparams{1e-4, 1.0, 20, std::nullopt, 0}};
            };
            return std::unique_ptr<Classifier>(std::make_unique<Spy>(sink));
        };
    };
    cross_validate(c.processed, c.labels, plan, spy(first));

    // Rewrite every comment tested in fold 1; fold 1's table must not move.
    auto mutated = c.processed;
    for (auto i : plan.folds[0].test) mutated[i].tokens = {"zz", "zz", "leak", "leak"};
    FoldPlan one;
    one.folds = {plan.folds[0]};
    cross_validate(mutated, c.labels, one, spy(second));
    REQUIRE(second.size() == 1);
    CHECK(second[0] == first[0]);
}

TEST_CASE("synthetic benchmark ordering and determinism") {
    auto c = synthetic(1);
    EvalSettings s;
    s.seed = 7;
    auto a = compare_models(c.processed, c.labels, s);
    REQUIRE(a.reports.size() == 3);
    CHECK(a.reports[0].model == "baseline");
    CHECK(a.reports[1].model == "unigram");
    CHECK(a.reports[2].model == "ngram");
    const double base = a.reports[0].mean.auc.value, uni = a.reports[1].mean.auc.value,
                 ngram = a.reports[2].mean.auc.value;
    CHECK(ngram >= 0.95);
    CHECK(ngram > uni);
    CHECK(uni > base);

    auto b = compare_models(c.processed, c.labels, s);
    for (std::size_t m = 0; m < 3; ++m) {
        for (std::size_t f = 0; f < a.reports[m].folds.size(); ++f) {
            CHECK(a.reports[m].folds[f].auc.value == b.reports[m].folds[f].auc.value);
            CHECK(a.reports[m].folds[f].counts == b.reports[m].folds[f].counts);
        }
    }
}

TEST_CASE("cross-project evaluation") {
    auto c = synthetic(5, 400, 40);
    EvalSettings s;
    auto r = cross_project_validate(c.data.comments, c.processed, ngram_factory(s), "ngram");
    CHECK(r.projects.size() == 3);
    REQUIRE(r.report.folds.size() == 3);
    for (const auto& f : r.report.folds) CHECK(f.auc.value > 0.5);

    // One project only.
    std::vector<Comment> single = c.data.comments;
    for (auto& x : single) x.project = "solo";
    CHECK(kind_of([&] { cross_project_validate(single, c.processed, ngram_factory(s), "ngram"); }) ==
          ErrorKind::TooFewProjects);

    // Projects at or under 2% on-hold are left out.
    std::vector<Comment> sparse = c.data.comments;
    for (auto& x : sparse) {
        if (x.project == "cygnus") x.label = N;
    }
    auto kept = cross_project_validate(sparse, c.processed, ngram_factory(s), "ngram");
    CHECK(kept.projects == std::vector<std::string>{"apollo", "borealis"});
    CHECK(kept.excluded_projects == std::vector<std::string>{"cygnus"});
}

TEST_CASE("identical projects: cross-project close to within-project") {
    auto base = synthetic(8, 300, 30);
    std::vector<Comment> comments;
    std::vector<AbstractedComment> processed;
    for (const char* project : {"left", "right"}) {
        for (std::size_t i = 0; i < base.data.comments.size(); ++i) {
            Comment x = base.data.comments[i];
            x.project = project;
            x.id = std::string(project) + x.id;
            AbstractedComment a = base.processed[i];
            a.comment_id = x.id;
            comments.push_back(x);
            processed.push_back(a);
        }
    }
    EvalSettings s;
    auto cross = cross_project_validate(comments, processed, ngram_factory(s), "ngram");
    auto within = cross_validate(base.processed, base.labels, stratified_folds(base.labels, 10, 0.1, 2),
                                 ngram_factory(s));
    CHECK(std::abs(cross.report.mean.auc.value - within.mean.auc.value) <= 0.05);
}

TEST_CASE("single-class test project flags auc but still counts") {
    std::vector<FoldResult> folds(2);
    folds[0].auc = {0.0, true};
    folds[0].precision = {1.0, false};
    folds[1].auc = {0.8, false};
    folds[1].precision = {0.5, false};
    auto s = summarize(folds);
    CHECK(s.auc.value == 0.8);
    CHECK(s.auc_folds == 1);
    CHECK(s.precision.value == 0.75);
}
