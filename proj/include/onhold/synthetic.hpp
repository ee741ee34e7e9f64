// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "onhold/corpus.hpp"

namespace onhold {

struct SyntheticOptions {
    std::size_t comments = 600;
    std::size_t positives = 60;
    std::uint64_t seed = 1;
};

/// Labeled SATD-style comments over three projects.
///
/// On-hold comments carry one of four planted phrases: "remove in <product>
/// <version>", "workaround for <bug> and <bug>", "after <bug> and <bug> are
/// committed" and "can be removed after <date>", where a bug reads
/// <PRODUCT>-<number>. Half of the other comments reuse exactly the same words
/// in a different order, so only multi-word features separate them; the rest
/// are ordinary debt comments that often contain the baseline keywords, and
/// at most a bug-tracker link, but never name a product.
Dataset generate_synthetic(const SyntheticOptions& options = {});

}  // namespace onhold
