// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/metric_oracle.hpp"
#include "../unit/ngram_oracle.hpp"
#include "onhold/conditions.hpp"
#include "onhold/eval.hpp"
#include "onhold/ngram.hpp"
#include "onhold/preprocess.hpp"
#include "onhold/synthetic.hpp"

using namespace onhold;
namespace fs = std::filesystem;

namespace {

constexpr Label P = Label::OnHold;
constexpr Label N = Label::NotOnHold;

// Collects failed expectations for one criterion.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++failed;
    }
    std::size_t failed = 0;
};

enum class Outcome { Pass, Fail, Skip };

struct Result {
    Outcome outcome;
    std::string detail;
};

const ProductDictionary& dict() {
    static const ProductDictionary d = ProductDictionary::defaults();
    return d;
}

std::string joined(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
    return out;
}

Result finish(const Check& c, double seconds, double limit, const std::string& summary) {
    std::ostringstream d;
    d << summary << ", " << seconds << " s";
    if (limit > 0 && seconds >= limit) {
        d << " (limit " << limit << " s)";
        return {Outcome::Fail, d.str()};
    }
    if (c.failed) {
        d << "; " << c.failed << " failed:";
        for (const auto& f : c.failures) d << " [" << f << "]";
        return {Outcome::Fail, d.str()};
    }
    return {Outcome::Pass, d.str()};
}

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Result abstraction_goldens() {
    const auto t0 = Clock::now();
    const std::vector<std::pair<std::string, std::string>> cases{
        {"21.02.2011", "@abstractdate"},
        {"25/05", "@abstractdate"},
        {"22/05/2012", "@abstractdate"},
        {"23 June 2013", "@abstractdate"},
        {"2006-03-06 23:16:24 +0100", "@abstractdate"},
        {"1.9.3", "@abstractversion"},
        {"4.0", "@abstractversion"},
        {"8.0.x", "@abstractversion"},
        {"1.0.12_25", "@abstractversion"},
        {"jetty-9.3", "@abstractproduct @abstractbugid"},
        {"http://www.example.com/docs/index.html", "@abstracturl"},
        {"TODO: CAMEL-1475 should fix this", "TODO: @abstractproduct @abstractbugid should fix this"},
    };
    Check c;
    for (const auto& [in, want] : cases) {
        const std::string got = abstract_terms(in, dict()).text;
        c.expect(got == want, in + " -> " + got);
    }
    return finish(c, since(t0), 1.0, std::to_string(cases.size()) + " goldens");
}

Result lemma_golden() {
    const auto t0 = Clock::now();
    Check c;
    const std::string got = joined(preprocess_text("// TODO: Removed from UML 2.x", dict()).tokens);
    c.expect(got == "todo remove from uml 2 x", got);
    return finish(c, since(t0), 0, "\"" + got + "\"");
}

Result ngram_oracle() {
    const auto t0 = Clock::now();
    Check c;
    std::mt19937_64 rng(2026);
    std::size_t grams = 0;
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t alphabet = 2 + rng() % 7;
        const auto corpus = oracle::random_corpus(rng, 50, 20, alphabet);
        const std::size_t max_n = iter % 2 ? kDefaultMaxN : 1 + rng() % 20;
        const std::size_t min_freq = iter % 2 ? kDefaultMinFreq : 1 + rng() % 3;
        bool any = false;
        for (const auto& d : corpus) any = any || !d.tokens.empty();
        if (!any) continue;
        const auto table = enumerate_ngrams(corpus, max_n, min_freq);
        const auto want = oracle::naive_ngrams(corpus, max_n, min_freq);
        grams += want.size();
        c.expect(oracle::as_map(table) == want, "corpus " + std::to_string(iter));
        c.expect(table.size() == want.size(), "size " + std::to_string(iter));
    }
    return finish(c, since(t0), 30.0, "200 corpora, " + std::to_string(grams) + " grams compared");
}

Result metric_oracles() {
    const auto t0 = Clock::now();
    Check c;

    // Every labeled prediction sequence of length <= 12, tallied by hand.
    std::size_t fixtures = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<Prediction> preds(n);
        for (std::size_t i = 0; i < n; ++i) preds[i].comment_id = std::to_string(i);
        std::vector<Label> truth(n);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * n)); ++mask, ++fixtures) {
            std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const bool t = (mask >> (2 * i)) & 1, p = (mask >> (2 * i + 1)) & 1;
                truth[i] = t ? P : N;
                preds[i].predicted = p ? P : N;
                preds[i].score = p ? 1.0 : 0.0;
                (t ? (p ? tp : fn) : (p ? fp : tn))++;
            }
            const ConfusionCounts cc = confusion(preds, truth);
            if (!(cc == ConfusionCounts{tp, fp, tn, fn})) {
                c.expect(false, "confusion mask " + std::to_string(mask));
                continue;
            }
            const auto pr = oracle::fraction(tp, tp + fp), re = oracle::fraction(tp, tp + fn),
                       f = oracle::f1_fraction(tp, fp, fn);
            const Metric mp = precision(cc), mr = recall(cc), mf = f1(cc);
            bool ok = mp.undefined == !pr && mr.undefined == !re && mf.undefined == !f;
            if (ok && pr) ok = std::abs(mp.value - pr->value()) < 1e-15;
            if (ok && re) ok = std::abs(mr.value - re->value()) < 1e-15;
            if (ok && f) ok = std::abs(mf.value - f->value()) < 1e-15;
            c.expect(ok, "metrics mask " + std::to_string(mask) + " n " + std::to_string(n));
        }
    }

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int iter = 0; iter < 500; ++iter) {
        const std::size_t n = 2 + rng() % 60;
        const std::size_t levels = 1 + rng() % 12;  // coarse levels force ties
        std::vector<double> scores(n);
        std::vector<Label> truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = iter % 3 == 0 ? u(rng) : static_cast<double>(rng() % levels) / static_cast<double>(levels);
            truth[i] = rng() % 4 == 0 ? P : N;
        }
        const std::size_t pos = rng() % n, neg = (pos + 1 + rng() % (n - 1)) % n;
        truth[pos] = P;
        truth[neg] = N;
        const double a = auc(scores, truth);
        c.expect(a == oracle::pairwise_auc(scores, truth), "auc set " + std::to_string(iter));

        if (iter < 100) {
            // Strictly increasing maps of [0, 1].
            const double k = 0.5 + 5 * u(rng), shift = 10 * u(rng) - 5;
            std::vector<double> mapped(n);
            for (std::size_t i = 0; i < n; ++i) {
                switch (iter % 4) {
                    case 0: mapped[i] = std::exp(k * scores[i]) + shift; break;
                    case 1: mapped[i] = k * scores[i] * scores[i] * scores[i] + scores[i] + shift; break;
                    case 2: mapped[i] = std::log1p(k * scores[i]) - shift; break;
                    default: mapped[i] = 1.0 / (1.0 + std::exp(-k * (scores[i] - 0.5))); break;
                }
            }
            c.expect(std::abs(auc(mapped, truth) - a) < 1e-12, "monotone " + std::to_string(iter));
        }
    }
    return finish(c, since(t0), 0, std::to_string(fixtures) + " confusion fixtures, 500 auc sets, 100 transforms");
}

Result gradient_check() {
    const auto t0 = Clock::now();
    Check c;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t dim = 1 + rng() % 8, n = 2 + rng() % 12;
        std::vector<FeatureVector> xs(n);
        std::vector<Label> ys(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (rng() % 3) xs[i].weights[j] = 2 * u(rng);
            }
            ys[i] = i == 0 ? P : (i == 1 ? N : (rng() % 2 ? P : N));
        }
        std::vector<double> w(dim);
        for (auto& x : w) x = u(rng);
        const double b = u(rng), cw = 0.5 + 4 * std::abs(u(rng)), lambda = 0.1 * std::abs(u(rng));
        Gradient g;
        logistic_loss(w, b, xs, ys, cw, lambda, &g);
        const double h = 1e-5;
        auto rel = [](double a, double n) { return std::abs(a - n) / std::max(1e-3, std::abs(a) + std::abs(n)); };
        for (std::size_t j = 0; j <= dim; ++j) {
            double num;
            if (j < dim) {
                auto wp = w, wm = w;
                wp[j] += h;
                wm[j] -= h;
                num = (logistic_loss(wp, b, xs, ys, cw, lambda) - logistic_loss(wm, b, xs, ys, cw, lambda)) / (2 * h);
            } else {
                num = (logistic_loss(w, b + h, xs, ys, cw, lambda) - logistic_loss(w, b - h, xs, ys, cw, lambda)) / (2 * h);
            }
            const double e = rel(j < dim ? g.weights[j] : g.bias, num);
            worst = std::max(worst, e);
            c.expect(e < 1e-6, "instance " + std::to_string(iter) + " coord " + std::to_string(j));
        }
    }
    std::ostringstream s;
    s << "50 instances, worst relative error " << worst;
    return finish(c, since(t0), 0, s.str());
}

bool within_one(const FoldPlan& plan, std::span<const Label> labels, std::size_t pos, Check& c, const std::string& tag) {
    bool ok = true;
    for (const auto& f : plan.folds) {
        const double ideal = static_cast<double>(f.test.size()) * static_cast<double>(pos) / static_cast<double>(labels.size());
        const auto got = std::count_if(f.test.begin(), f.test.end(), [&](std::size_t i) { return labels[i] == P; });
        ok = ok && std::abs(static_cast<double>(got) - ideal) <= 1.0;
    }
    c.expect(ok, tag);
    return ok;
}

Result stratification() {
    const auto t0 = Clock::now();
    Check c;
    auto labels_of = [](std::size_t pos, std::size_t neg) {
        std::vector<Label> out(pos, P);
        out.insert(out.end(), neg, N);
        return out;
    };
    const auto reported = labels_of(293, 5236);
    within_one(stratified_folds(reported, 10, 0.1, 7), reported, 293, c, "293/5236");
    std::mt19937_64 rng(6);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t n = 40 + rng() % 3000;
        const std::size_t pos = 10 + rng() % (n / 4);
        auto labels = labels_of(pos, n - pos);
        std::shuffle(labels.begin(), labels.end(), rng);
        within_one(stratified_folds(labels, 1 + rng() % 10, 0.1, rng()), labels, pos, c, "random " + std::to_string(iter));
    }
    return finish(c, since(t0), 0, "293/5236 and 100 random datasets");
}

Result synthetic_benchmark() {
    const auto t0 = Clock::now();
    Check c;
    const Dataset d = generate_synthetic({600, 60, 1});
    c.expect(d.size() == 600, "corpus size");
    const auto processed = preprocess_all(d.comments, dict());
    std::vector<Label> labels;
    for (const auto& x : d.comments) labels.push_back(x.label);

    const std::vector<std::string> planted{"remove in @abstractproduct @abstractversion",
                                           "workaround for @abstractproduct @abstractbugid",
                                           "after @abstractproduct @abstractbugid", "can be remove after @abstractdate"};
    for (std::size_t i = 0; i < processed.size(); ++i) {
        if (labels[i] != P) continue;
        const std::string text = " " + joined(processed[i].tokens) + " ";
        c.expect(std::any_of(planted.begin(), planted.end(),
                             [&](const std::string& p) { return text.find(" " + p + " ") != std::string::npos; }),
                 "unplanted positive " + d.comments[i].id);
    }

    EvalSettings s;
    s.seed = 7;
    const auto cmp = compare_models(processed, labels, s);
    const double base = cmp.reports[0].mean.auc.value, uni = cmp.reports[1].mean.auc.value,
                 ngram = cmp.reports[2].mean.auc.value;
    c.expect(ngram >= 0.95, "ngram auc below 0.95");
    c.expect(ngram > uni, "ngram not above unigram");
    c.expect(uni > base, "unigram not above baseline");
    c.expect(cmp.reports[2].folds.size() == 10, "fold count");
    std::ostringstream sum;
    sum << "auc ngram " << ngram << " > unigram " << uni << " > baseline " << base;
    return finish(c, since(t0), 60.0, sum.str());
}

Result condition_goldens() {
    const auto t0 = Clock::now();
    Check c;
    struct Case {
        std::string text;
        Condition want;
    };
    const std::vector<Case> cases{
        {"// Workaround for, Adobe Read 9 plug-in on IE bug // Can be removed after 26 June 2013",
         {ConditionKind::Date, {"26 June 2013"}, 0, 0}},
        {"// TODO cmueller:, remove the \"httpBindingRef\" look up in Camel 3.0",
         {ConditionKind::ProductVersion, {"Camel", "3.0"}, 0, 0}},
        {"// FIXME (CAMEL-3091): @Test", {ConditionKind::ProductBug, {"CAMEL", "3091"}, 0, 0}},
        {"TODO: After YARN-2 is committed, we should call containerResource.getCpus()",
         {ConditionKind::ProductBug, {"YARN", "2"}, 0, 0}},
    };
    for (const auto& k : cases) {
        const auto r = detect_conditions(preprocess_text(k.text, dict(), "golden"));
        c.expect(r.conditions.size() == 1 && r.conditions[0] == k.want, k.text);
    }

    std::vector<ConditionReport> reports;
    std::vector<GoldConditions> gold;
    for (std::size_t i = 0; i < 89; ++i) {
        const std::string id = "c" + std::to_string(i);
        const auto& k = cases[i % cases.size()];
        auto r = detect_conditions(preprocess_text(k.text, dict(), id));
        reports.push_back(r);
        // The last nine gold annotations disagree with what is detected.
        Condition g = k.want;
        if (i >= 80) g.parts.back() += "-other";
        gold.push_back({id, {g}});
    }
    const auto acc = condition_accuracy(reports, gold);
    c.expect(acc.correct == 80 && acc.spurious == 9, "accounting counts");
    c.expect(std::abs(acc.reported - 0.899) < 1e-9, "reported ratio");
    c.expect(std::abs(acc.ratio.value - 80.0 / 89.0) < 1e-15, "exact ratio");
    std::ostringstream s;
    s << "4 goldens, " << acc.correct << "/" << acc.correct + acc.spurious << " = " << acc.reported;
    return finish(c, since(t0), 0, s.str());
}

// The original study's dataset is not redistributed; point
// ONHOLD_AUTHORS_DATASET at a CSV in the dataset format to run this.
Result authors_dataset() {
    const char* env = std::getenv("ONHOLD_AUTHORS_DATASET");
    fs::path path = env ? fs::path(env) : fs::path(ONHOLD_SOURCE_DIR) / "data" / "authors_dataset.csv";
    if (!fs::is_regular_file(path)) return {Outcome::Skip, "dataset not available (" + path.string() + ")"};
    const auto t0 = Clock::now();
    Check c;
    const Dataset d = deduplicate(drop_not_satd(load_dataset(path)));
    const auto processed = preprocess_all(d.comments, dict());
    std::vector<Label> labels;
    for (const auto& x : d.comments) labels.push_back(x.label);
    EvalSettings s;
    s.seed = 1;
    s.hyperparams.seed = 1;
    const auto plan = stratified_folds(labels, s.n_folds, s.test_fraction, s.seed);
    const auto r = cross_validate(processed, labels, plan, ngram_factory(s));
    c.expect(!r.mean.auc.undefined && r.mean.auc.value >= 0.75, "mean auc below 0.75");
    std::ostringstream sum;
    sum << d.size() << " comments, ngram mean auc " << r.mean.auc.value;
    return finish(c, since(t0), 0, sum.str());
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"abstraction goldens", abstraction_goldens},
        {"lemmatization golden", lemma_golden},
        {"n-gram oracle equivalence", ngram_oracle},
        {"metric oracles", metric_oracles},
        {"gradient check", gradient_check},
        {"stratification", stratification},
        {"synthetic benchmark", synthetic_benchmark},
        {"condition goldens", condition_goldens},
        {"original dataset replication", authors_dataset},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {Outcome::Fail, std::string("exception: ") + e.what()};
        }
        const char* tag = r.outcome == Outcome::Pass ? "PASS" : r.outcome == Outcome::Fail ? "FAIL" : "SKIP";
        failed += r.outcome == Outcome::Fail;
        std::cout << "criterion " << i + 1 << " " << tag << " " << criteria[i].first << ": " << r.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
