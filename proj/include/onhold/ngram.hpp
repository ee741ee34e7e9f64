// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "onhold/preprocess.hpp"

namespace onhold {

inline constexpr std::size_t kDefaultMaxN = 10;
inline constexpr std::size_t kDefaultMinFreq = 2;

struct NGramEntry {
    std::vector<std::string> gram;
    std::uint64_t gtf = 0;  // occurrences over the whole corpus
    std::uint64_t sdf = 0;  // comments containing every token of the gram
    double weight = 0.0;    // gtf * ln(D / sdf)

    bool operator==(const NGramEntry&) const = default;
};

/// Valid n-grams of a corpus with their statistics. Entries are sorted
/// lexicographically by gram; an entry's index is its gram id.
class NGramTable {
  public:
    NGramTable() = default;
    NGramTable(std::vector<NGramEntry> entries, std::size_t documents, std::size_t max_n);

    [[nodiscard]] const std::vector<NGramEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t documents() const noexcept { return documents_; }
    [[nodiscard]] std::size_t max_n() const noexcept { return max_n_; }
    [[nodiscard]] const NGramEntry& operator[](std::size_t id) const { return entries_[id]; }

    [[nodiscard]] std::optional<std::size_t> find(std::span<const std::string> gram) const;

    /// ln(D / sdf) for the given gram id.
    [[nodiscard]] double idf(std::size_t id) const;

    bool operator==(const NGramTable& other) const {
        return documents_ == other.documents_ && max_n_ == other.max_n_ && entries_ == other.entries_;
    }

  private:
    std::vector<NGramEntry> entries_;
    std::size_t documents_ = 0;
    std::size_t max_n_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Key used to look a gram up: tokens joined by single spaces.
std::string gram_key(std::span<const std::string> gram);

/// Enumerates every contiguous token sequence of length <= max_n occurring at
/// least min_freq times, using a generalized suffix array over the corpus and
/// its lcp-intervals. Throws Error{EmptyCorpus} on an empty corpus.
NGramTable enumerate_ngrams(std::span<const AbstractedComment> corpus, std::size_t max_n = kDefaultMaxN,
                            std::size_t min_freq = kDefaultMinFreq);

struct FeatureVector {
    std::string comment_id;
    std::map<std::size_t, double> weights;  // gram id -> tf * ln(D / sdf)

    bool operator==(const FeatureVector&) const = default;
};

/// Per-comment features: for each table gram occurring in the comment,
/// (occurrences in the comment) * ln(D / sdf).
FeatureVector vectorize(const AbstractedComment& comment, const NGramTable& table);

std::vector<FeatureVector> vectorize_all(std::span<const AbstractedComment> corpus, const NGramTable& table);

/// Entries by descending corpus-level weight, ties broken lexicographically.
std::vector<NGramEntry> top_features(const NGramTable& table, std::size_t k);

/// Line format: `# ngram-table documents=<D> max_n=<N>` then one
/// `gram \t gtf \t sdf \t weight` row per entry (gram tokens space-joined).
void write_table(std::ostream& out, const NGramTable& table);
void write_entries(std::ostream& out, std::span<const NGramEntry> entries);
NGramTable read_table(std::istream& in);

}  // namespace onhold
