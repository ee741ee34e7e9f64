// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

// Seeded sampling helpers. They avoid the standard distributions, whose
// output differs between library implementations, so a seed reproduces the
// same folds and corpora everywhere.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace onhold {

/// Uniform integer in [0, bound) by rejection sampling; bound > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= limit) return r % bound;
    }
}

/// Fisher-Yates.
template <class T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

}  // namespace onhold
