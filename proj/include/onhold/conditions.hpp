// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onhold/eval.hpp"
#include "onhold/preprocess.hpp"

namespace onhold {

enum class ConditionKind { Date, ProductVersion, ProductBug };

std::string_view to_string(ConditionKind kind) noexcept;

struct Condition {
    ConditionKind kind = ConditionKind::Date;
    std::vector<std::string> parts;  // original strings, product first
    std::size_t begin = 0;           // byte range in the raw comment covered by the parts
    std::size_t end = 0;

    /// Conditions compare by kind and parts only.
    bool operator==(const Condition& o) const { return kind == o.kind && parts == o.parts; }
};

struct ConditionReport {
    std::string comment_id;
    std::vector<Condition> conditions;
    std::vector<AbstractionSpan> ignored_placeholders;
};

/// One left-to-right pass over the comment's placeholders:
///   date                          -> Date
///   product, version+             -> ProductVersion (maximal run)
///   product, bug id+              -> ProductBug (maximal run; a url right
///                                    before a bug id does not break the run)
/// Everything else is ignored.
ConditionReport detect_conditions(const AbstractedComment& c);

struct GoldConditions {
    std::string comment_id;
    std::vector<Condition> conditions;
};

struct ConditionAccuracy {
    std::size_t correct = 0;
    std::size_t spurious = 0;
    Metric ratio;          // correct / (correct + spurious)
    double reported = 0.0;  // ratio rounded to three decimals, 0 when undefined
};

/// A detected condition is correct when an unmatched gold condition of the
/// same comment has the same kind and parts.
ConditionAccuracy condition_accuracy(std::span<const ConditionReport> reports, std::span<const GoldConditions> gold);

}  // namespace onhold
