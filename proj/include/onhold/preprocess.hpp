// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "onhold/corpus.hpp"

namespace onhold {

enum class Placeholder { Date, Version, BugId, Url, Product };

/// "@abstractdate", "@abstractversion", "@abstractbugid", "@abstracturl",
/// "@abstractproduct".
std::string_view placeholder_token(Placeholder p) noexcept;

/// Returns the placeholder whose token equals `token`, if any.
std::optional<Placeholder> parse_placeholder(std::string_view token) noexcept;
bool is_placeholder(std::string_view token) noexcept;

/// Case-insensitive set of product / project names.
class ProductDictionary {
  public:
    /// The built-in word list (project names and their nearest vocabulary).
    static ProductDictionary defaults();

    /// One word per line; blank lines and `#` comments are ignored.
    /// Throws Error{Io}. Throws Error{InvalidArgument} if no word is found.
    static ProductDictionary load(const std::filesystem::path& path);

    ProductDictionary() = default;
    explicit ProductDictionary(const std::vector<std::string>& words);

    void add(std::string_view word);
    [[nodiscard]] bool contains(std::string_view word) const;
    [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }
    [[nodiscard]] bool empty() const noexcept { return words_.empty(); }
    /// Lowercased entries, longest first so scanning prefers longer names.
    [[nodiscard]] const std::vector<std::string>& by_length() const noexcept { return by_length_; }

  private:
    std::set<std::string> words_;
    std::vector<std::string> by_length_;
};

struct AbstractionSpan {
    Placeholder placeholder;
    std::string original;     // exact substring of the source text
    std::size_t offset = 0;   // byte offset of `original` in the source text
    std::size_t position = 0; // index in the placeholder stream / final token stream

    bool operator==(const AbstractionSpan&) const = default;
};

struct AbstractionResult {
    std::string text;                    // input with terms replaced by placeholders
    std::vector<AbstractionSpan> spans;  // one per placeholder, in text order
};

/// Replaces dates, versions, bug ids, URLs and product names with placeholder
/// tokens. `position` of each span is its index among the placeholders.
AbstractionResult abstract_terms(std::string_view text, const ProductDictionary& dict);

/// Lowercases and maps each word to its dictionary form; placeholders are
/// left untouched. Non-letter characters are preserved.
std::string lemmatize(std::string_view text);

/// Dictionary form of a single lowercase word.
std::string lemmatize_word(std::string_view word);

/// Splits on runs of characters outside [A-Za-z0-9], keeping placeholder
/// tokens intact. No stop words are removed.
std::vector<std::string> clean(std::string_view text);

struct AbstractedComment {
    std::string comment_id;
    std::vector<std::string> tokens;          // lemmatized, lowercase
    std::vector<std::string> surface_tokens;  // cleaned, lowercase, not lemmatized
    std::vector<AbstractionSpan> spans;       // position = index into tokens

    bool operator==(const AbstractedComment&) const = default;
};

/// abstract_terms, then lemmatize, then clean. Span positions refer to the
/// final token stream.
AbstractedComment preprocess(const Comment& comment, const ProductDictionary& dict);

/// Convenience overload for ad-hoc text.
AbstractedComment preprocess_text(std::string_view text, const ProductDictionary& dict,
                                  std::string comment_id = {});

std::vector<AbstractedComment> preprocess_all(const std::vector<Comment>& comments,
                                              const ProductDictionary& dict);

}  // namespace onhold
