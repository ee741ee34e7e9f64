// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/report.hpp"

namespace onhold {

using nlohmann::json;

json metric_json(const Metric& m) { return {{"value", m.value}, {"undefined", m.undefined}}; }

json fold_json(const FoldResult& f) {
    return {
        {"name", f.name},
        {"train_size", f.train_size},
        {"test_size", f.test_size},
        {"test_positives", f.test_positives},
        {"confusion", {{"tp", f.counts.tp}, {"fp", f.counts.fp}, {"tn", f.counts.tn}, {"fn", f.counts.fn}}},
        {"precision", metric_json(f.precision)},
        {"recall", metric_json(f.recall)},
        {"f1", metric_json(f.f1)},
        {"auc", metric_json(f.auc)},
    };
}

json eval_json(const EvalReport& r, bool include_verdicts) {
    json folds = json::array();
    for (const auto& f : r.folds) folds.push_back(fold_json(f));
    json out = {
        {"model", r.model},
        {"folds", folds},
        {"mean",
         {{"precision", metric_json(r.mean.precision)},
          {"recall", metric_json(r.mean.recall)},
          {"f1", metric_json(r.mean.f1)},
          {"auc", metric_json(r.mean.auc)},
          {"auc_folds", r.mean.auc_folds}}},
    };
    if (include_verdicts) {
        out["on_hold_identified"] = {{"identified", r.positives_identified}, {"tested", r.positives_tested}};
        json verdicts = json::array();
        for (const auto& v : r.verdicts) {
            verdicts.push_back({{"id", v.comment_id},
                                {"label", to_string(v.truth)},
                                {"appearances", v.appearances},
                                {"correct", v.correct},
                                {"identified", v.identified()}});
        }
        out["verdicts"] = std::move(verdicts);
    }
    return out;
}

json settings_json(const EvalSettings& s) {
    json h = {{"l2_lambda", s.hyperparams.l2_lambda},
              {"learning_rate", s.hyperparams.learning_rate},
              {"epochs", s.hyperparams.epochs},
              {"class_weight_positive", nullptr},
              {"seed", s.hyperparams.seed}};
    if (s.hyperparams.class_weight_positive) h["class_weight_positive"] = *s.hyperparams.class_weight_positive;
    json keywords = json::array();
    for (const auto& k : s.baseline.keywords) keywords.push_back(k);
    return {{"folds", s.n_folds},     {"test_fraction", s.test_fraction}, {"seed", s.seed},
            {"stratified", s.stratified}, {"max_n", s.max_n},         {"min_freq", s.min_freq},
            {"hyperparams", h},       {"baseline_keywords", keywords}};
}

json comparison_table(std::span<const EvalReport> reports) {
    json out = json::object();
    for (const char* metric : {"precision", "recall", "f1", "auc"}) {
        json row = json::object();
        for (const auto& r : reports) {
            const Metric& m = std::string_view(metric) == "precision" ? r.mean.precision
                              : std::string_view(metric) == "recall"  ? r.mean.recall
                              : std::string_view(metric) == "f1"      ? r.mean.f1
                                                                      : r.mean.auc;
            row[r.model] = m.undefined ? json(nullptr) : json(m.value);
        }
        out[metric] = std::move(row);
    }
    return out;
}

json conditions_json(const ConditionReport& r, std::string_view raw) {
    json conds = json::array();
    for (const auto& c : r.conditions) {
        std::string excerpt;
        if (c.end <= raw.size() && c.begin <= c.end) excerpt = std::string(raw.substr(c.begin, c.end - c.begin));
        conds.push_back({{"kind", to_string(c.kind)}, {"parts", c.parts}, {"raw_comment_excerpt", excerpt}});
    }
    json ignored = json::array();
    for (const auto& s : r.ignored_placeholders) {
        ignored.push_back({{"placeholder", placeholder_token(s.placeholder)}, {"original", s.original}, {"offset", s.offset}});
    }
    return {{"id", r.comment_id}, {"conditions", conds}, {"ignored_placeholders", ignored}};
}

json prediction_json(const Prediction& p) {
    return {{"id", p.comment_id}, {"score", p.score}, {"predicted", to_string(p.predicted)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace onhold
