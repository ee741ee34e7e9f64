// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/suffix_array.hpp"

#include <algorithm>
#include <numeric>

namespace onhold {

// Prefix doubling with two counting-sort passes per round (Manber-Myers).
std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint32_t> text, std::uint32_t alphabet_size) {
    const std::size_t n = text.size();
    std::vector<std::uint32_t> sa(n), rank(n), tmp(n), next_sa(n);
    if (n == 0) return sa;

    // rank 0 is reserved for "past the end"
    for (std::size_t i = 0; i < n; ++i) rank[i] = text[i] + 1;
    std::size_t classes = static_cast<std::size_t>(alphabet_size) + 1;

    std::iota(sa.begin(), sa.end(), 0u);
    std::vector<std::size_t> count;
    auto counting_sort = [&](auto key) {
        count.assign(classes + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ++count[key(sa[i]) + 1];
        for (std::size_t c = 1; c <= classes; ++c) count[c] += count[c - 1];
        for (std::size_t i = 0; i < n; ++i) next_sa[count[key(sa[i])]++] = sa[i];
        sa.swap(next_sa);
    };

    for (std::size_t k = 1;; k <<= 1) {
        auto second = [&](std::uint32_t i) -> std::size_t { return i + k < n ? rank[i + k] : 0; };
        auto first = [&](std::uint32_t i) -> std::size_t { return rank[i]; };
        counting_sort(second);
        counting_sort(first);

        tmp[sa[0]] = 1;
        for (std::size_t i = 1; i < n; ++i) {
            const bool same = rank[sa[i]] == rank[sa[i - 1]] && second(sa[i]) == second(sa[i - 1]);
            tmp[sa[i]] = tmp[sa[i - 1]] + (same ? 0 : 1);
        }
        rank.swap(tmp);
        classes = rank[sa[n - 1]] + 1;
        if (rank[sa[n - 1]] == n || k >= n) break;
    }
    return sa;
}

std::vector<std::uint32_t> build_lcp(std::span<const std::uint32_t> text, std::span<const std::uint32_t> sa) {
    const std::size_t n = text.size();
    std::vector<std::uint32_t> lcp(n, 0), inverse(n);
    for (std::size_t i = 0; i < n; ++i) inverse[sa[i]] = static_cast<std::uint32_t>(i);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (inverse[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = sa[inverse[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        lcp[inverse[i]] = static_cast<std::uint32_t>(h);
        if (h > 0) --h;
    }
    return lcp;
}

}  // namespace onhold
