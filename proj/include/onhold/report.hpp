// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

// JSON views of evaluation results, predictions and conditions. Field names
// are documented in docs/report_schema.md.

#pragma once

#include <span>
#include <string_view>

#include "json.hpp"
#include "onhold/conditions.hpp"
#include "onhold/eval.hpp"

namespace onhold {

inline constexpr std::string_view kReportSchema = "onhold-report/1";

nlohmann::json metric_json(const Metric& m);
nlohmann::json fold_json(const FoldResult& f);
nlohmann::json eval_json(const EvalReport& r, bool include_verdicts = true);
nlohmann::json settings_json(const EvalSettings& s);

/// Side-by-side means for each model: {"precision": {"baseline": .., ...}, ...}.
nlohmann::json comparison_table(std::span<const EvalReport> reports);

/// `raw` is the comment text the condition offsets refer to.
nlohmann::json conditions_json(const ConditionReport& r, std::string_view raw);

nlohmann::json prediction_json(const Prediction& p);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace onhold
