// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>

#include "onhold/preprocess.hpp"

namespace onhold {

namespace {

bool is_token_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Text typed into a comment that starts like a placeholder would otherwise be
// read as abstraction output; blank the '@' so it tokenizes as plain words.
std::string neutralize_placeholders(std::string_view text) {
    std::string out(text);
    std::size_t pos = 0;
    while ((pos = out.find("@abstract", pos)) != std::string::npos) out[pos++] = ' ';
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::vector<std::string> clean(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '@') {
            std::size_t j = i + 1;
            while (j < text.size() && is_token_char(text[j])) ++j;
            if (is_placeholder(text.substr(i, j - i))) {
                tokens.emplace_back(text.substr(i, j - i));
                i = j;
                continue;
            }
        }
        if (!is_token_char(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_token_char(text[j])) ++j;
        tokens.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return tokens;
}

AbstractedComment preprocess_text(std::string_view text, const ProductDictionary& dict, std::string comment_id) {
    const std::string source = neutralize_placeholders(text);
    AbstractionResult abstracted = abstract_terms(source, dict);

    AbstractedComment out;
    out.comment_id = std::move(comment_id);
    out.tokens = clean(lemmatize(abstracted.text));
    out.surface_tokens = clean(to_lower(abstracted.text));

    // The k-th placeholder token corresponds to the k-th span.
    std::size_t next_span = 0;
    for (std::size_t pos = 0; pos < out.tokens.size(); ++pos) {
        if (!is_placeholder(out.tokens[pos])) continue;
        AbstractionSpan span = abstracted.spans.at(next_span++);
        // originals are taken from the caller's text, not the neutralized copy
        span.original = std::string(text.substr(span.offset, span.original.size()));
        span.position = pos;
        out.spans.push_back(std::move(span));
    }
    return out;
}

AbstractedComment preprocess(const Comment& comment, const ProductDictionary& dict) {
    return preprocess_text(comment.text, dict, comment.id);
}

std::vector<AbstractedComment> preprocess_all(const std::vector<Comment>& comments, const ProductDictionary& dict) {
    std::vector<AbstractedComment> out;
    out.reserve(comments.size());
    for (const auto& c : comments) out.push_back(preprocess(c, dict));
    return out;
}

}  // namespace onhold
