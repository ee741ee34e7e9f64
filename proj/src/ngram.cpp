// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "onhold/error.hpp"
#include "onhold/suffix_array.hpp"

namespace onhold {

std::string gram_key(std::span<const std::string> gram) {
    std::string key;
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (i > 0) key.push_back(' ');
        key += gram[i];
    }
    return key;
}

NGramTable::NGramTable(std::vector<NGramEntry> entries, std::size_t documents, std::size_t max_n)
    : entries_(std::move(entries)), documents_(documents), max_n_(max_n) {
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(gram_key(entries_[i].gram), i);
}

std::optional<std::size_t> NGramTable::find(std::span<const std::string> gram) const {
    auto it = index_.find(gram_key(gram));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double NGramTable::idf(std::size_t id) const {
    return std::log(static_cast<double>(documents_) / static_cast<double>(entries_[id].sdf));
}

namespace {

// Sorted document lists per token, used for the set-based document frequency.
class TermSets {
  public:
    TermSets(std::span<const AbstractedComment> corpus, const std::vector<std::vector<std::uint32_t>>& ids,
             std::size_t vocabulary) : docs_(vocabulary) {
        for (std::uint32_t d = 0; d < ids.size(); ++d) {
            for (auto t : ids[d]) {
                if (docs_[t].empty() || docs_[t].back() != d) docs_[t].push_back(d);
            }
        }
        (void)corpus;
    }

    std::uint64_t sdf(std::span<const std::uint32_t> gram) {
        std::vector<std::uint32_t> terms(gram.begin(), gram.end());
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        if (terms.size() == 1) return docs_[terms[0]].size();
        if (auto it = cache_.find(terms); it != cache_.end()) return it->second;

        std::vector<std::uint32_t> order = terms;
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return docs_[a].size() < docs_[b].size(); });
        std::vector<std::uint32_t> acc = docs_[order[0]], next;
        for (std::size_t i = 1; i < order.size() && !acc.empty(); ++i) {
            next.clear();
            const auto& other = docs_[order[i]];
            std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(), std::back_inserter(next));
            acc.swap(next);
        }
        cache_.emplace(std::move(terms), acc.size());
        return acc.size();
    }

  private:
    std::vector<std::vector<std::uint32_t>> docs_;
    std::map<std::vector<std::uint32_t>, std::uint64_t> cache_;
};

}  // namespace

NGramTable enumerate_ngrams(std::span<const AbstractedComment> corpus, std::size_t max_n, std::size_t min_freq) {
    if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot build an n-gram table from zero comments");
    if (max_n < 1) throw Error(ErrorKind::InvalidArgument, "max_n must be at least 1");

    // Vocabulary ids follow lexicographic token order.
    std::vector<std::string> vocabulary;
    for (const auto& c : corpus) vocabulary.insert(vocabulary.end(), c.tokens.begin(), c.tokens.end());
    std::sort(vocabulary.begin(), vocabulary.end());
    vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()), vocabulary.end());
    std::unordered_map<std::string_view, std::uint32_t> token_id;
    for (std::uint32_t i = 0; i < vocabulary.size(); ++i) token_id.emplace(vocabulary[i], i);

    // Generalized text: each comment is terminated by its own unique
    // separator symbol, so no common prefix crosses a comment boundary.
    const auto vocab_size = static_cast<std::uint32_t>(vocabulary.size());
    std::vector<std::vector<std::uint32_t>> ids(corpus.size());
    std::vector<std::uint32_t> text;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        for (const auto& tok : corpus[d].tokens) ids[d].push_back(token_id.at(tok));
        text.insert(text.end(), ids[d].begin(), ids[d].end());
        text.push_back(vocab_size + static_cast<std::uint32_t>(d));
    }
    const auto alphabet = vocab_size + static_cast<std::uint32_t>(corpus.size());
    const auto sa = build_suffix_array(text, alphabet);
    const auto lcp = build_lcp(text, sa);

    TermSets sets(corpus, ids, vocabulary.size());
    const double documents = static_cast<double>(corpus.size());
    std::vector<NGramEntry> entries;
    auto emit = [&](std::uint32_t start, std::size_t length, std::uint64_t count) {
        NGramEntry e;
        std::span<const std::uint32_t> gram(text.data() + start, length);
        for (auto t : gram) e.gram.push_back(vocabulary[t]);
        e.gtf = count;
        e.sdf = sets.sdf(gram);
        e.weight = static_cast<double>(e.gtf) * std::log(documents / static_cast<double>(e.sdf));
        entries.push_back(std::move(e));
    };

    for_each_lcp_interval(lcp, [&](const LcpInterval& iv) {
        const std::uint64_t count = iv.rb - iv.lb + 1;
        if (count < min_freq) return;
        const std::size_t longest = std::min<std::size_t>(iv.lcp, max_n);
        for (std::size_t len = iv.parent_lcp + 1; len <= longest; ++len) emit(sa[iv.lb], len, count);
    });

    if (min_freq <= 1) {
        // Prefixes shared with no neighbour occur once.
        for (std::size_t i = 0; i < sa.size(); ++i) {
            std::size_t shared = lcp[i];
            if (i + 1 < sa.size()) shared = std::max<std::size_t>(shared, lcp[i + 1]);
            std::size_t room = 0;
            while (sa[i] + room < text.size() && text[sa[i] + room] < vocab_size) ++room;
            for (std::size_t len = shared + 1; len <= std::min(max_n, room); ++len) emit(sa[i], len, 1);
        }
    }

    std::sort(entries.begin(), entries.end(), [](const NGramEntry& a, const NGramEntry& b) { return a.gram < b.gram; });
    return NGramTable(std::move(entries), corpus.size(), max_n);
}

FeatureVector vectorize(const AbstractedComment& comment, const NGramTable& table) {
    FeatureVector v;
    v.comment_id = comment.comment_id;
    std::map<std::size_t, std::uint64_t> tf;
    const auto& tokens = comment.tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (std::size_t n = 1; n <= table.max_n() && i + n <= tokens.size(); ++n) {
            auto id = table.find(std::span<const std::string>(tokens.data() + i, n));
            if (id) ++tf[*id];
        }
    }
    for (auto [id, count] : tf) v.weights.emplace(id, static_cast<double>(count) * table.idf(id));
    return v;
}

std::vector<FeatureVector> vectorize_all(std::span<const AbstractedComment> corpus, const NGramTable& table) {
    std::vector<FeatureVector> out;
    out.reserve(corpus.size());
    for (const auto& c : corpus) out.push_back(vectorize(c, table));
    return out;
}

std::vector<NGramEntry> top_features(const NGramTable& table, std::size_t k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
    std::vector<NGramEntry> sorted = table.entries();
    std::stable_sort(sorted.begin(), sorted.end(), [](const NGramEntry& a, const NGramEntry& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.gram < b.gram;
    });
    if (sorted.size() > k) sorted.resize(k);
    return sorted;
}

void write_entries(std::ostream& out, std::span<const NGramEntry> entries) {
    char weight[64];
    for (const auto& e : entries) {
        std::snprintf(weight, sizeof weight, "%.17g", e.weight);
        out << gram_key(e.gram) << '\t' << e.gtf << '\t' << e.sdf << '\t' << weight << '\n';
    }
}

void write_table(std::ostream& out, const NGramTable& table) {
    out << "# ngram-table documents=" << table.documents() << " max_n=" << table.max_n() << '\n';
    write_entries(out, table.entries());
}

NGramTable read_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::MalformedRow, "n-gram table: missing header");
    std::size_t documents = 0, max_n = 0;
    if (std::sscanf(line.c_str(), "# ngram-table documents=%zu max_n=%zu", &documents, &max_n) != 2) {
        throw Error(ErrorKind::MalformedRow, "n-gram table: bad header '" + line + "'");
    }
    std::vector<NGramEntry> entries;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string gram, gtf, sdf, weight;
        if (!std::getline(row, gram, '\t') || !std::getline(row, gtf, '\t') || !std::getline(row, sdf, '\t') ||
            !std::getline(row, weight)) {
            throw Error(ErrorKind::MalformedRow, "n-gram table line " + std::to_string(line_no));
        }
        NGramEntry e;
        std::istringstream words(gram);
        for (std::string w; words >> w;) e.gram.push_back(w);
        try {
            e.gtf = std::stoull(gtf);
            e.sdf = std::stoull(sdf);
            e.weight = std::stod(weight);
        } catch (const std::exception&) {
            throw Error(ErrorKind::MalformedRow, "n-gram table line " + std::to_string(line_no));
        }
        entries.push_back(std::move(e));
    }
    return NGramTable(std::move(entries), documents, max_n);
}

}  // namespace onhold
