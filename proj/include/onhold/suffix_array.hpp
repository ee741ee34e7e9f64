// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace onhold {

/// Suffix array of an integer text by prefix doubling. Symbols must lie in
/// [0, alphabet_size).
std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint32_t> text, std::uint32_t alphabet_size);

/// Kasai et al.: lcp[i] = LCP(text[sa[i-1]..], text[sa[i]..]), lcp[0] = 0.
std::vector<std::uint32_t> build_lcp(std::span<const std::uint32_t> text, std::span<const std::uint32_t> sa);

/// An lcp-interval [lb, rb] of the suffix array: every suffix in it shares a
/// prefix of length `lcp`, and `parent_lcp` is the lcp of the enclosing
/// interval. Prefixes of lengths parent_lcp+1 .. lcp occur exactly
/// rb - lb + 1 times.
struct LcpInterval {
    std::uint32_t lcp;
    std::uint32_t parent_lcp;
    std::uint32_t lb;
    std::uint32_t rb;
};

/// Bottom-up traversal of all lcp-intervals with lcp > 0 (child before parent).
template <class Visitor>
void for_each_lcp_interval(std::span<const std::uint32_t> lcp, Visitor&& visit) {
    struct Open {
        std::uint32_t lcp;
        std::uint32_t lb;
    };
    std::vector<Open> stack{{0, 0}};
    const auto n = static_cast<std::uint32_t>(lcp.size());
    for (std::uint32_t i = 1; i <= n; ++i) {
        const std::uint32_t cur = i < n ? lcp[i] : 0;
        std::uint32_t lb = i - 1;
        while (cur < stack.back().lcp) {
            Open top = stack.back();
            stack.pop_back();
            const std::uint32_t parent = std::max(cur, stack.back().lcp);
            visit(LcpInterval{top.lcp, parent, top.lb, i - 1});
            lb = top.lb;
        }
        if (cur > stack.back().lcp) stack.push_back({cur, lb});
    }
}

}  // namespace onhold
