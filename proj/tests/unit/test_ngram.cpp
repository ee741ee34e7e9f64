// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "ngram_oracle.hpp"
#include "onhold/error.hpp"
#include "onhold/ngram.hpp"
#include "onhold/suffix_array.hpp"

using namespace onhold;

namespace {

AbstractedComment doc(std::string id, std::vector<std::string> tokens) {
    AbstractedComment c;
    c.comment_id = std::move(id);
    c.tokens = std::move(tokens);
    return c;
}

std::vector<AbstractedComment> corpus_of(const std::vector<std::string>& texts) {
    std::vector<AbstractedComment> out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        std::istringstream in(texts[i]);
        std::vector<std::string> tokens;
        for (std::string t; in >> t;) tokens.push_back(t);
        out.push_back(doc("c" + std::to_string(i), tokens));
    }
    return out;
}

}  // namespace

TEST_CASE("suffix array matches sorting all suffixes") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 300; ++iter) {
        const std::uint32_t alphabet = 1 + static_cast<std::uint32_t>(rng() % 5);
        std::vector<std::uint32_t> text(rng() % 40);
        for (auto& s : text) s = static_cast<std::uint32_t>(rng() % alphabet);
        std::vector<std::uint32_t> expected(text.size());
        std::iota(expected.begin(), expected.end(), 0u);
        std::sort(expected.begin(), expected.end(), [&](std::uint32_t a, std::uint32_t b) {
            return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b, text.end());
        });
        auto sa = build_suffix_array(text, alphabet);
        REQUIRE(sa == expected);
        auto lcp = build_lcp(text, sa);
        for (std::size_t i = 1; i < sa.size(); ++i) {
            std::uint32_t h = 0;
            while (sa[i] + h < text.size() && sa[i - 1] + h < text.size() && text[sa[i] + h] == text[sa[i - 1] + h]) ++h;
            CHECK(lcp[i] == h);
        }
    }
}

TEST_CASE("two identical comments") {
    auto t = enumerate_ngrams(corpus_of({"a b", "a b"}));
    REQUIRE(t.size() == 3);
    CHECK(t[0].gram == std::vector<std::string>{"a"});
    CHECK(t[1].gram == std::vector<std::string>{"a", "b"});
    CHECK(t[2].gram == std::vector<std::string>{"b"});
    for (const auto& e : t.entries()) {
        CHECK(e.gtf == 2);
        CHECK(e.sdf == 2);
        CHECK(e.weight == 0.0);
    }
    auto top = top_features(t, 10);
    REQUIRE(top.size() == 3);
    CHECK(top[0].gram == std::vector<std::string>{"a"});
    CHECK(top[1].gram == std::vector<std::string>{"a", "b"});
}

TEST_CASE("single comment yields an empty table") {
    CHECK(enumerate_ngrams(corpus_of({"a b c"})).empty());
}

TEST_CASE("empty corpus") {
    std::vector<AbstractedComment> none;
    CHECK_THROWS_AS(enumerate_ngrams(none), Error);
    try {
        enumerate_ngrams(none);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyCorpus);
    }
}

TEST_CASE("sdf uses the set of terms, not the contiguous phrase") {
    auto t = enumerate_ngrams(corpus_of({"a b", "a b", "b x a", "a", "b"}));
    auto id = t.find(std::vector<std::string>{"a", "b"});
    REQUIRE(id);
    CHECK(t[*id].gtf == 2);
    CHECK(t[*id].sdf == 3);
    CHECK(t[*id].weight == doctest::Approx(2 * std::log(5.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("suffix-array enumeration equals the naive counter") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        auto corpus = oracle::random_corpus(rng, 50, 20, 1 + rng() % 6);
        const std::size_t max_n = 1 + rng() % 10;
        const std::size_t min_freq = 1 + rng() % 3;
        auto table = enumerate_ngrams(corpus, max_n, min_freq);
        CHECK(oracle::as_map(table) == oracle::naive_ngrams(corpus, max_n, min_freq));
        for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i - 1].gram < table[i].gram);
    }
}

TEST_CASE("vectorize: tf times idf") {
    // D = 4; "x y" occurs in two comments (sdf 2), twice in the first.
    auto corpus = corpus_of({"x y z x y", "x y", "q r", "q r"});
    auto t = enumerate_ngrams(corpus);
    auto v = vectorize(corpus[0], t);
    auto id = t.find(std::vector<std::string>{"x", "y"});
    REQUIRE(id);
    CHECK(t[*id].sdf == 2);
    CHECK(v.weights.at(*id) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-15));

    auto empty = vectorize(doc("n", {"nothing", "here"}), t);
    CHECK(empty.weights.empty());
}

TEST_CASE("vectorize: gram in every comment has weight zero") {
    auto corpus = corpus_of({"a a a", "a b", "a c"});
    auto t = enumerate_ngrams(corpus);
    auto v = vectorize(corpus[0], t);
    auto id = t.find(std::vector<std::string>{"a"});
    REQUIRE(id);
    CHECK(v.weights.at(*id) == 0.0);
}

TEST_CASE("vector weights are reproducible from tf, D and sdf") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        auto corpus = oracle::random_corpus(rng, 30, 15, 4);
        auto t = enumerate_ngrams(corpus);
        for (const auto& c : corpus) {
            auto v = vectorize(c, t);
            for (const auto& [id, w] : v.weights) {
                const auto& g = t[id].gram;
                std::size_t tf = 0;
                for (std::size_t i = 0; i + g.size() <= c.tokens.size(); ++i) {
                    if (std::equal(g.begin(), g.end(), c.tokens.begin() + i)) ++tf;
                }
                const double expected = tf * std::log(double(corpus.size()) / double(t[id].sdf));
                CHECK(std::isfinite(w));
                CHECK(w >= 0.0);
                CHECK(std::abs(w - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
            }
        }
    }
}

TEST_CASE("removing a comment never increases gtf or sdf") {
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 30; ++iter) {
        auto corpus = oracle::random_corpus(rng, 20, 10, 4);
        if (corpus.size() < 2) continue;
        auto full = oracle::as_map(enumerate_ngrams(corpus, 10, 1));
        corpus.erase(corpus.begin() + static_cast<long>(rng() % corpus.size()));
        for (const auto& [gram, s] : oracle::as_map(enumerate_ngrams(corpus, 10, 1))) {
            REQUIRE(full.count(gram));
            CHECK(s.gtf <= full.at(gram).gtf);
            CHECK(s.sdf <= full.at(gram).sdf);
        }
    }
}

TEST_CASE("top_features ranking") {
    // "workaround for" in 5 of 100 comments; "p q" twice, in 50 comments via
    // its terms.
    std::vector<std::string> texts;
    for (int i = 0; i < 5; ++i) texts.push_back("workaround for it");
    for (int i = 0; i < 2; ++i) texts.push_back("p q");
    for (int i = 0; i < 24; ++i) texts.push_back("q p");
    for (int i = 0; i < 24; ++i) texts.push_back("p z q");
    for (int i = 0; i < 45; ++i) texts.push_back("filler" + std::to_string(i));
    auto t = enumerate_ngrams(corpus_of(texts));
    auto wf = t.find(std::vector<std::string>{"workaround", "for"});
    auto pq = t.find(std::vector<std::string>{"p", "q"});
    REQUIRE(wf);
    REQUIRE(pq);
    CHECK(t[*wf].weight == doctest::Approx(5 * std::log(20.0)));
    CHECK(t[*pq].sdf == 50);
    auto top = top_features(t, 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].weight >= top[1].weight);
    CHECK(top[1].weight >= top[2].weight);
    auto rank = [&](const std::vector<std::string>& g) {
        auto all = top_features(t, t.size());
        return std::find_if(all.begin(), all.end(), [&](const NGramEntry& e) { return e.gram == g; }) - all.begin();
    };
    CHECK(rank({"workaround", "for"}) < rank({"p", "q"}));
    CHECK(top_features(t, 10000).size() == t.size());
    CHECK_THROWS_AS(top_features(t, 0), Error);
}

TEST_CASE("table text format round-trips") {
    std::mt19937_64 rng(9);
    auto corpus = oracle::random_corpus(rng, 20, 10, 5);
    auto t = enumerate_ngrams(corpus);
    std::stringstream buf;
    write_table(buf, t);
    auto back = read_table(buf);
    CHECK(back == t);
}
