// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

// satd-onhold: command-line front end for mining comments, training and
// evaluating the on-hold classifier, and extracting waiting conditions.
//
// Exit codes: 0 success, 1 internal failure, 2 bad input or usage.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "onhold/conditions.hpp"
#include "onhold/corpus.hpp"
#include "onhold/error.hpp"
#include "onhold/eval.hpp"
#include "onhold/io.hpp"
#include "onhold/model.hpp"
#include "onhold/ngram.hpp"
#include "onhold/preprocess.hpp"
#include "onhold/report.hpp"
#include "onhold/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace onhold;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string dataset;
    std::string input;
    std::string out;
    std::string model;
    std::string products;
    std::optional<std::uint64_t> seed;
    std::size_t folds = 10;
    double test_fraction = 0.1;
    bool no_stratify = false;
    bool unigram = false;
    bool cross_project = false;
    bool on_hold_only = false;
    std::size_t top = 10;
    double threshold = kDefaultThreshold;
    std::size_t max_n = kDefaultMaxN;
    std::size_t min_freq = kDefaultMinFreq;
    Hyperparams hyper;
    std::optional<double> class_weight;
    std::vector<std::string> extensions{".java"};
    std::size_t comments = 600;
    std::size_t positives = 60;
};

void require_input_file(const std::string& path, const char* what) {
    if (path.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " path is required");
    if (!fs::is_regular_file(path)) throw Error(ErrorKind::Io, std::string(what) + " not found: " + path);
}

void require_output(const std::string& path) {
    if (path.empty()) throw Error(ErrorKind::InvalidArgument, "--out is required");
    if (path == "-") return;
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        throw Error(ErrorKind::Io, "output directory does not exist: " + parent.string());
    }
    if (fs::is_directory(path)) throw Error(ErrorKind::Io, "output path is a directory: " + path);
}

void emit(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    write_file_atomic(path, content);
}

ProductDictionary dictionary(const Options& o) {
    ProductDictionary d = ProductDictionary::defaults();
    if (!o.products.empty()) {
        for (const auto& w : ProductDictionary::load(o.products).by_length()) d.add(w);
    }
    return d;
}

struct Prepared {
    Dataset data;
    std::vector<AbstractedComment> processed;
    std::vector<Label> labels;
    std::size_t dropped_not_satd = 0;
    std::size_t duplicates = 0;
};

// Labeled dataset ready for training: not_satd rows dropped, duplicates
// removed, comments abstracted and lemmatized.
Prepared prepare(const std::string& path, const ProductDictionary& dict) {
    Prepared p;
    Dataset raw = load_dataset(path);
    Dataset satd = drop_not_satd(raw);
    p.dropped_not_satd = raw.size() - satd.size();
    p.data = deduplicate(satd);
    p.duplicates = satd.size() - p.data.size();
    if (p.data.empty()) throw Error(ErrorKind::EmptyCorpus, "no SATD comments in " + path);
    p.processed = preprocess_all(p.data.comments, dict);
    for (const auto& c : p.data.comments) p.labels.push_back(c.label);
    return p;
}

json dataset_json(const Prepared& p) {
    const auto on_hold = std::count_if(p.labels.begin(), p.labels.end(), is_positive);
    return {{"source", p.data.provenance.source},
            {"comments", p.data.size()},
            {"on_hold", on_hold},
            {"dropped_not_satd", p.dropped_not_satd},
            {"duplicates_removed", p.duplicates}};
}

Hyperparams hyperparams(const Options& o) {
    Hyperparams h = o.hyper;
    h.class_weight_positive = o.class_weight;
    if (o.seed) h.seed = *o.seed;
    return h;
}

EvalSettings settings(const Options& o) {
    EvalSettings s;
    s.n_folds = o.folds;
    s.test_fraction = o.test_fraction;
    s.seed = o.seed.value_or(0);
    s.stratified = !o.no_stratify;
    s.hyperparams = hyperparams(o);
    s.max_n = o.max_n;
    s.min_freq = o.min_freq;
    return s;
}

int cmd_mine(const Options& o) {
    if (!fs::is_directory(o.input)) throw Error(ErrorKind::Io, "source directory not found: " + o.input);
    require_output(o.out);
    MineResult r = mine_comments(o.input, o.extensions);
    for (const auto& s : r.skipped) std::cerr << "satd-onhold: skipped (not UTF-8): " << s.string() << '\n';
    std::ostringstream csv;
    write_dataset(csv, r.dataset);
    emit(o.out, csv.str());
    std::cerr << "satd-onhold: mined " << r.dataset.size() << " comments\n";
    return kExitOk;
}

int cmd_preprocess(const Options& o) {
    require_input_file(o.dataset, "dataset");
    require_output(o.out);
    const auto dict = dictionary(o);
    Dataset d = load_dataset(o.dataset, LabelColumn::Optional);
    json rows = json::array();
    for (const auto& c : d.comments) {
        auto a = preprocess(c, dict);
        json spans = json::array();
        for (const auto& s : a.spans) {
            spans.push_back({{"placeholder", placeholder_token(s.placeholder)},
                             {"original", s.original},
                             {"offset", s.offset},
                             {"position", s.position}});
        }
        rows.push_back({{"id", a.comment_id}, {"tokens", a.tokens}, {"spans", spans}});
    }
    emit(o.out, dump({{"schema", kReportSchema}, {"comments", rows}}));
    return kExitOk;
}

int cmd_train(const Options& o) {
    require_input_file(o.dataset, "dataset");
    require_output(o.out);
    const auto dict = dictionary(o);
    Prepared p = prepare(o.dataset, dict);
    NGramLogisticClassifier clf(hyperparams(o), o.unigram ? 1 : o.max_n, o.min_freq);
    clf.fit(p.processed, p.labels);
    std::ostringstream model;
    clf.save(model);
    emit(o.out, model.str());
    std::cerr << "satd-onhold: trained on " << p.data.size() << " comments, " << clf.table().size() << " grams\n";
    return kExitOk;
}

int cmd_evaluate(const Options& o) {
    require_input_file(o.dataset, "dataset");
    require_output(o.out);
    const auto dict = dictionary(o);
    Prepared p = prepare(o.dataset, dict);
    const EvalSettings s = settings(o);

    std::vector<std::pair<std::string, ClassifierFactory>> models;
    if (!o.unigram) models.emplace_back("baseline", baseline_factory(s));
    models.emplace_back("unigram", unigram_factory(s));
    if (!o.unigram) models.emplace_back("ngram", ngram_factory(s));

    json report = {{"schema", kReportSchema}, {"dataset", dataset_json(p)}, {"settings", settings_json(s)}};
    std::vector<EvalReport> reports;
    if (o.cross_project) {
        report["mode"] = "cross_project";
        json excluded;
        for (const auto& [name, make] : models) {
            auto r = cross_project_validate(p.data.comments, p.processed, make, name);
            report["projects"] = r.projects;
            excluded = r.excluded_projects;
            reports.push_back(std::move(r.report));
        }
        report["excluded_projects"] = excluded;
    } else {
        report["mode"] = "cross_validation";
        const FoldPlan plan = stratified_folds(p.labels, s.n_folds, s.test_fraction, s.seed, s.stratified);
        for (const auto& [name, make] : models) reports.push_back(cross_validate(p.processed, p.labels, plan, make));
    }
    json by_model = json::object();
    for (const auto& r : reports) by_model[r.model] = eval_json(r, !o.cross_project);
    report["comparison"] = comparison_table(reports);
    report["models"] = std::move(by_model);
    emit(o.out, dump(report));
    for (const auto& r : reports) {
        std::cerr << "satd-onhold: " << r.model << " mean AUC "
                  << (r.mean.auc.undefined ? std::string("undefined") : std::to_string(r.mean.auc.value)) << '\n';
    }
    return kExitOk;
}

// Comments to run inference on: a CSV (labels optional) or a source tree.
Dataset inference_input(const std::string& input, const Options& o) {
    if (fs::is_directory(input)) {
        MineResult r = mine_comments(input, o.extensions);
        for (const auto& s : r.skipped) std::cerr << "satd-onhold: skipped (not UTF-8): " << s.string() << '\n';
        return std::move(r.dataset);
    }
    require_input_file(input, "input");
    return load_dataset(input, LabelColumn::Optional);
}

int cmd_classify(const Options& o) {
    require_input_file(o.model, "model");
    if (o.input.empty()) throw Error(ErrorKind::InvalidArgument, "--input is required");
    if (!fs::exists(o.input)) throw Error(ErrorKind::Io, "input not found: " + o.input);
    require_output(o.out);
    const auto dict = dictionary(o);
    const auto clf = NGramLogisticClassifier::load(fs::path(o.model));
    Dataset d = inference_input(o.input, o);
    const auto processed = preprocess_all(d.comments, dict);

    json rows = json::array();
    if (!processed.empty()) {
        const auto preds = clf.predict(processed);
        for (std::size_t i = 0; i < preds.size(); ++i) {
            const Prediction p = make_prediction(preds[i].comment_id, preds[i].score, o.threshold);
            json row = prediction_json(p);
            row["project"] = d.comments[i].project;
            row["conditions"] = json::array();
            if (p.predicted == Label::OnHold) {
                row["conditions"] = conditions_json(detect_conditions(processed[i]), d.comments[i].text)["conditions"];
            }
            rows.push_back(std::move(row));
        }
    }
    emit(o.out, dump({{"schema", kReportSchema}, {"threshold", o.threshold}, {"predictions", rows}}));
    return kExitOk;
}

int cmd_detect_conditions(const Options& o) {
    const std::string& input = o.input.empty() ? o.dataset : o.input;
    require_input_file(input, "input");
    require_output(o.out);
    const auto dict = dictionary(o);
    Dataset d = load_dataset(input, LabelColumn::Optional);
    json rows = json::array();
    for (const auto& c : d.comments) {
        if (o.on_hold_only && c.label != Label::OnHold) continue;
        rows.push_back(conditions_json(detect_conditions(preprocess(c, dict)), c.text));
    }
    emit(o.out, dump({{"schema", kReportSchema}, {"comments", rows}}));
    return kExitOk;
}

int cmd_baseline(const Options& o) {
    require_input_file(o.dataset, "dataset");
    require_output(o.out);
    const auto dict = dictionary(o);
    Prepared p = prepare(o.dataset, dict);
    KeywordClassifier clf;
    const auto preds = clf.predict(p.processed);
    const auto counts = confusion(preds, p.labels);
    json result = {{"confusion", {{"tp", counts.tp}, {"fp", counts.fp}, {"tn", counts.tn}, {"fn", counts.fn}}},
                   {"precision", metric_json(precision(counts))},
                   {"recall", metric_json(recall(counts))},
                   {"f1", metric_json(f1(counts))}};
    std::vector<double> scores;
    for (const auto& pr : preds) scores.push_back(pr.score);
    try {
        result["auc"] = metric_json({auc(scores, p.labels), false});
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingleClass) throw;
        result["auc"] = metric_json({0.0, true});
    }
    json rows = json::array();
    for (const auto& pr : preds) rows.push_back(prediction_json(pr));
    KeywordBaseline b;
    emit(o.out, dump({{"schema", kReportSchema},
                      {"dataset", dataset_json(p)},
                      {"keywords", b.keywords},
                      {"metrics", result},
                      {"predictions", rows}}));
    return kExitOk;
}

int cmd_features(const Options& o) {
    require_input_file(o.dataset, "dataset");
    require_output(o.out);
    const auto dict = dictionary(o);
    Prepared p = prepare(o.dataset, dict);
    const NGramTable table = o.unigram ? build_unigram_table(p.processed) : enumerate_ngrams(p.processed, o.max_n, o.min_freq);
    const auto top = top_features(table, o.top);
    std::ostringstream out;
    out << "# top " << top.size() << " of " << table.size() << " grams; documents=" << table.documents() << '\n';
    out << "# gram\tgtf\tsdf\tweight\n";
    write_entries(out, top);
    emit(o.out, out.str());
    return kExitOk;
}

int cmd_synthesize(const Options& o) {
    require_output(o.out);
    Dataset d = generate_synthetic({o.comments, o.positives, o.seed.value()});
    std::ostringstream csv;
    write_dataset(csv, d);
    emit(o.out, csv.str());
    return kExitOk;
}

void add_config(CLI::App* sub) {
    // Consumed by with_config() before parsing; declared so it shows in --help.
    sub->add_option("--config", "Read `key = value` lines (long flag names) from a file; flags win");
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Expands `--config FILE` into ordinary flags placed after the subcommand.
// Flags already on the command line are left alone, so they win.
std::vector<std::string> with_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty() || args.size() < 2) return args;
    if (!fs::is_regular_file(path)) throw Error(ErrorKind::Io, "config file not found: " + path);

    std::vector<std::string> extra;
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == args[1])) continue;
        if (item.name == "++" || item.name == "--") continue;  // section markers
        const std::string flag = "--" + item.name;
        if (given(args, flag)) continue;
        if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
            if (item.inputs[0] == "true") extra.push_back(flag);
            continue;
        }
        extra.push_back(flag);
        extra.insert(extra.end(), item.inputs.begin(), item.inputs.end());
    }
    args.insert(args.begin() + 2, extra.begin(), extra.end());
    return args;
}

void add_products(CLI::App* sub, Options& o) {
    sub->add_option("--products", o.products, "Extra product names, one per line, '#' comments")
        ->check(CLI::ExistingFile);
}

void add_model_flags(CLI::App* sub, Options& o) {
    sub->add_option("--l2-lambda", o.hyper.l2_lambda, "L2 penalty")->capture_default_str();
    sub->add_option("--learning-rate", o.hyper.learning_rate, "Step size in units of 1/L")->capture_default_str();
    sub->add_option("--epochs", o.hyper.epochs, "Gradient descent epochs")->capture_default_str();
    sub->add_option("--class-weight", o.class_weight, "Positive class weight (default: negatives/positives)");
    sub->add_option("--max-n", o.max_n, "Longest n-gram")->capture_default_str()->check(CLI::Range(1, 64));
    sub->add_option("--min-freq", o.min_freq, "Minimum corpus frequency of a gram")->capture_default_str();
    sub->add_flag("--unigram", o.unigram, "Use unigram features only");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identify on-hold self-admitted technical debt and extract its waiting conditions"};
    app.require_subcommand(1);
    Options o;

    auto* mine = app.add_subcommand("mine", "Extract comments from a source tree into a dataset CSV");
    mine->add_option("--input", o.input, "Source directory")->required();
    mine->add_option("--out", o.out, "Output CSV")->required();
    mine->add_option("--ext", o.extensions, "File extensions to scan")->capture_default_str();

    auto* pre = app.add_subcommand("preprocess", "Show abstracted, lemmatized tokens and spans");
    pre->add_option("--dataset", o.dataset, "Dataset CSV")->required();
    pre->add_option("--out", o.out, "Output JSON ('-' for stdout)")->required();
    add_products(pre, o);

    auto* train = app.add_subcommand("train", "Train the n-gram model on a labeled dataset");
    train->add_option("--dataset", o.dataset, "Labeled dataset CSV")->required();
    train->add_option("--out", o.out, "Model file")->required();
    train->add_option("--seed", o.seed, "Random seed")->required();
    add_model_flags(train, o);
    add_products(train, o);

    auto* eval = app.add_subcommand("evaluate", "Cross-validate baseline, unigram and n-gram models");
    eval->add_option("--dataset", o.dataset, "Labeled dataset CSV")->required();
    eval->add_option("--out", o.out, "Report JSON")->required();
    eval->add_option("--seed", o.seed, "Random seed")->required();
    eval->add_option("--folds", o.folds, "Number of shuffle-split folds")->capture_default_str()->check(CLI::PositiveNumber);
    eval->add_option("--test-fraction", o.test_fraction, "Test share per fold")->capture_default_str();
    eval->add_flag("--no-stratify", o.no_stratify, "Plain shuffle splits");
    eval->add_flag("--cross-project", o.cross_project, "Leave-one-project-out over projects with >2% on-hold");
    add_model_flags(eval, o);
    add_products(eval, o);

    auto* classify = app.add_subcommand("classify", "Score comments with a trained model and extract conditions");
    classify->add_option("--model", o.model, "Model file")->required();
    classify->add_option("--input", o.input, "Dataset CSV (labels optional) or source directory")->required();
    classify->add_option("--out", o.out, "Predictions JSON")->required();
    classify->add_option("--threshold", o.threshold, "Decision threshold")->capture_default_str();
    classify->add_option("--ext", o.extensions, "File extensions when --input is a directory");
    add_products(classify, o);

    auto* detect = app.add_subcommand("detect-conditions", "Extract waiting conditions from comments");
    detect->add_option("--input,--dataset", o.input, "Dataset CSV (labels optional)")->required();
    detect->add_option("--out", o.out, "Conditions JSON")->required();
    detect->add_flag("--on-hold-only", o.on_hold_only, "Only rows labeled on_hold");
    add_products(detect, o);

    auto* base = app.add_subcommand("baseline", "Keyword baseline predictions and metrics");
    base->add_option("--dataset", o.dataset, "Labeled dataset CSV")->required();
    base->add_option("--out", o.out, "Report JSON")->required();
    add_products(base, o);

    auto* feats = app.add_subcommand("features", "Top n-gram features by corpus weight");
    feats->add_option("--dataset", o.dataset, "Labeled dataset CSV")->required();
    feats->add_option("--out", o.out, "Output text ('-' for stdout)")->required();
    feats->add_option("--top", o.top, "Number of grams")->capture_default_str()->check(CLI::PositiveNumber);
    add_model_flags(feats, o);
    add_products(feats, o);

    auto* synth = app.add_subcommand("synthesize", "Write the seeded synthetic benchmark corpus");
    synth->add_option("--out", o.out, "Output CSV")->required();
    synth->add_option("--seed", o.seed, "Random seed")->required();
    synth->add_option("--comments", o.comments, "Corpus size")->capture_default_str();
    synth->add_option("--positives", o.positives, "On-hold comments")->capture_default_str();

    for (auto* sub : {mine, pre, train, eval, classify, detect, base, feats, synth}) add_config(sub);

    try {
        std::vector<std::string> args = with_config({argv, argv + argc});
        std::reverse(args.begin(), args.end());
        args.pop_back();
        app.parse(args);
    } catch (const Error& e) {
        std::cerr << "satd-onhold: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*mine) return cmd_mine(o);
        if (*pre) return cmd_preprocess(o);
        if (*train) return cmd_train(o);
        if (*eval) return cmd_evaluate(o);
        if (*classify) return cmd_classify(o);
        if (*detect) return cmd_detect_conditions(o);
        if (*base) return cmd_baseline(o);
        if (*feats) return cmd_features(o);
        if (*synth) return cmd_synthesize(o);
    } catch (const Error& e) {
        std::cerr << "satd-onhold: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "satd-onhold: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
