// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/conditions.hpp"

#include <cmath>
#include <map>

namespace onhold {

std::string_view to_string(ConditionKind kind) noexcept {
    switch (kind) {
        case ConditionKind::Date: return "date";
        case ConditionKind::ProductVersion: return "product_version";
        case ConditionKind::ProductBug: return "product_bug";
    }
    return "date";
}

namespace {

void add_part(Condition& c, const AbstractionSpan& s) {
    if (c.parts.empty()) c.begin = s.offset;
    c.parts.push_back(s.original);
    c.end = s.offset + s.original.size();
}

}  // namespace

ConditionReport detect_conditions(const AbstractedComment& c) {
    ConditionReport r;
    r.comment_id = c.comment_id;
    const auto& spans = c.spans;
    auto at = [&](std::size_t i, Placeholder p) { return i < spans.size() && spans[i].placeholder == p; };

    std::size_t i = 0;
    while (i < spans.size()) {
        const auto& s = spans[i];
        if (s.placeholder == Placeholder::Date) {
            Condition cond{ConditionKind::Date, {}, 0, 0};
            add_part(cond, s);
            r.conditions.push_back(std::move(cond));
            ++i;
            continue;
        }
        if (s.placeholder == Placeholder::Product && at(i + 1, Placeholder::Version)) {
            Condition cond{ConditionKind::ProductVersion, {}, 0, 0};
            add_part(cond, s);
            for (++i; at(i, Placeholder::Version); ++i) add_part(cond, spans[i]);
            r.conditions.push_back(std::move(cond));
            continue;
        }
        const bool bug_next = at(i + 1, Placeholder::BugId) || (at(i + 1, Placeholder::Url) && at(i + 2, Placeholder::BugId));
        if (s.placeholder == Placeholder::Product && bug_next) {
            Condition cond{ConditionKind::ProductBug, {}, 0, 0};
            add_part(cond, s);
            ++i;
            for (;;) {
                if (at(i, Placeholder::BugId)) {
                    add_part(cond, spans[i]);
                    ++i;
                } else if (at(i, Placeholder::Url) && at(i + 1, Placeholder::BugId)) {
                    r.ignored_placeholders.push_back(spans[i]);
                    ++i;
                } else {
                    break;
                }
            }
            r.conditions.push_back(std::move(cond));
            continue;
        }
        r.ignored_placeholders.push_back(s);
        ++i;
    }
    return r;
}

ConditionAccuracy condition_accuracy(std::span<const ConditionReport> reports, std::span<const GoldConditions> gold) {
    std::map<std::string, std::vector<std::pair<Condition, bool>>> expected;
    for (const auto& g : gold) {
        auto& slot = expected[g.comment_id];
        for (const auto& c : g.conditions) slot.emplace_back(c, false);
    }
    ConditionAccuracy acc;
    for (const auto& r : reports) {
        auto it = expected.find(r.comment_id);
        for (const auto& detected : r.conditions) {
            bool matched = false;
            if (it != expected.end()) {
                for (auto& [g, used] : it->second) {
                    if (!used && g == detected) {
                        used = matched = true;
                        break;
                    }
                }
            }
            ++(matched ? acc.correct : acc.spurious);
        }
    }
    const std::size_t total = acc.correct + acc.spurious;
    acc.ratio = total == 0 ? Metric{0.0, true}
                           : Metric{static_cast<double>(acc.correct) / static_cast<double>(total), false};
    acc.reported = std::round(acc.ratio.value * 1000.0) / 1000.0;
    return acc;
}

}  // namespace onhold
