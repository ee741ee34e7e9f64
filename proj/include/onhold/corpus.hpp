// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace onhold {

enum class Label { OnHold, NotOnHold, NotSatd };

/// Wire names used in dataset files: on_hold, not_on_hold, not_satd.
std::string_view to_string(Label label) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

struct Comment {
    std::string id;
    std::string project;
    std::string text;  // marker-free comment body
    Label label = Label::NotOnHold;

    bool operator==(const Comment&) const = default;
};

struct Provenance {
    std::string source;
    std::string loaded_at;  // ISO-8601 UTC
};

struct Dataset {
    std::vector<Comment> comments;
    Provenance provenance;

    [[nodiscard]] std::size_t size() const noexcept { return comments.size(); }
    [[nodiscard]] bool empty() const noexcept { return comments.empty(); }
};

enum class LabelColumn {
    Required,  // header must be project,id,text,label
    Optional,  // project,id,text is also accepted; labels default to not_on_hold
};

/// Parses CSV (header `project,id,text,label`, RFC-4180 quoting).
/// Throws Error{MalformedRow|UnknownLabel|DuplicateId}.
Dataset parse_dataset(std::istream& in, std::string source_name,
                      LabelColumn labels = LabelColumn::Required);

/// Throws Error{Io} when the file cannot be opened, otherwise as parse_dataset.
Dataset load_dataset(const std::filesystem::path& path,
                     LabelColumn labels = LabelColumn::Required);

/// Writes the dataset in the same CSV format; output is a pure function of
/// the comments, so the same Dataset always yields the same bytes.
void write_dataset(std::ostream& out, const Dataset& dataset);
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

/// Key used for duplicate detection: case-folded text with whitespace runs
/// collapsed to one space and trimmed.
std::string normalize_for_dedup(std::string_view text);

/// Keeps the first occurrence of each (project, normalized text).
Dataset deduplicate(const Dataset& dataset);

/// Comments whose label is not NotSatd, in input order.
Dataset drop_not_satd(const Dataset& dataset);

// ---------------------------------------------------------------------------
// Comment mining

struct ExtractedComment {
    std::string text;          // markers stripped
    std::size_t line = 0;      // 1-based line of the opening marker
    std::size_t column = 0;    // 1-based column of the opening marker
    std::size_t offset = 0;    // byte offset of the opening marker
};

/// Java-style comment grammar: `//` line comments and `/* */` blocks
/// (including `/** */`), skipping string, char and text-block literals.
/// Consecutive line comments that start in the same column on adjacent
/// lines merge into one comment. Empty comments are dropped.
std::vector<ExtractedComment> extract_comments(std::string_view source);

struct MineResult {
    Dataset dataset;
    std::vector<std::filesystem::path> skipped;  // not valid UTF-8
};

/// Walks `root` recursively and extracts comments from files whose extension
/// is in `extensions` (e.g. ".java"). Output is ordered by (path, offset).
/// Ids are `<relative path>:<line>:<column>`; the project is the root's
/// directory name. Throws Error{Io} when root is not a readable directory.
MineResult mine_comments(const std::filesystem::path& root,
                         const std::vector<std::string>& extensions = {".java"});

bool is_valid_utf8(std::string_view bytes) noexcept;

}  // namespace onhold
