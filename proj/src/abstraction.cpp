// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cctype>
#include <functional>
#include <regex>

#include "onhold/preprocess.hpp"

namespace onhold {

namespace {

constexpr std::array<std::string_view, 5> kTokens{
    "@abstractdate", "@abstractversion", "@abstractbugid", "@abstracturl", "@abstractproduct"};

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// The text is kept as a sequence of segments. Raw segments are still eligible
// for matching; placeholder segments carry the replaced source range; opaque
// segments are placeholder tokens that were already present in the input.
enum class SegmentKind { Raw, Placeholder, Opaque };

struct Segment {
    SegmentKind kind = SegmentKind::Raw;
    Placeholder placeholder = Placeholder::Date;
    std::size_t begin = 0;  // source range
    std::size_t end = 0;
};

struct Piece {
    Placeholder placeholder;
    std::size_t begin, end;  // source range of the original text
};

struct Replacement {
    std::size_t begin, end;  // source range removed from the raw segment
    std::vector<Piece> pieces;
};

using Finder = std::function<std::vector<Replacement>(std::string_view source, std::size_t begin,
                                                      std::size_t end)>;

class Abstractor {
  public:
    explicit Abstractor(std::string_view source) : source_(source) {
        split_opaque();
    }

    void apply(const Finder& finder) {
        std::vector<Segment> out;
        for (const auto& seg : segments_) {
            if (seg.kind != SegmentKind::Raw) {
                out.push_back(seg);
                continue;
            }
            std::size_t cursor = seg.begin;
            for (const auto& r : finder(source_, seg.begin, seg.end)) {
                if (r.begin > cursor) out.push_back({SegmentKind::Raw, {}, cursor, r.begin});
                for (const auto& p : r.pieces) out.push_back({SegmentKind::Placeholder, p.placeholder, p.begin, p.end});
                cursor = r.end;
            }
            if (cursor < seg.end) out.push_back({SegmentKind::Raw, {}, cursor, seg.end});
        }
        segments_ = std::move(out);
    }

    // Runs `continuation` on the raw segment right after every new product
    // placeholder; a returned length > 0 is consumed and becomes a bug id
    // whose original text is [digits_begin, digits_end).
    void attach_bug_ids(const std::function<bool(std::string_view raw, std::size_t& consumed,
                                                 std::size_t& digits_begin, std::size_t& digits_end)>& continuation) {
        std::vector<Segment> out;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            out.push_back(segments_[i]);
            const bool product = segments_[i].kind == SegmentKind::Placeholder &&
                                 segments_[i].placeholder == Placeholder::Product;
            if (!product || i + 1 >= segments_.size() || segments_[i + 1].kind != SegmentKind::Raw) continue;
            const Segment raw = segments_[i + 1];
            std::size_t consumed = 0, db = 0, de = 0;
            std::string_view text = source_.substr(raw.begin, raw.end - raw.begin);
            if (!continuation(text, consumed, db, de) || consumed == 0) continue;
            out.push_back({SegmentKind::Placeholder, Placeholder::BugId, raw.begin + db, raw.begin + de});
            if (raw.begin + consumed < raw.end) out.push_back({SegmentKind::Raw, {}, raw.begin + consumed, raw.end});
            ++i;
        }
        segments_ = std::move(out);
    }

    [[nodiscard]] AbstractionResult render() const {
        AbstractionResult result;
        std::string& text = result.text;
        bool prev_token = false;  // previous segment rendered a placeholder
        for (const auto& seg : segments_) {
            // literal placeholders already in the input are copied like plain text
            if (seg.kind != SegmentKind::Placeholder) {
                std::string_view raw = source_.substr(seg.begin, seg.end - seg.begin);
                if (prev_token && !raw.empty() && (is_word_char(raw.front()) || raw.front() == '@')) text.push_back(' ');
                text.append(raw);
                prev_token = false;
                continue;
            }
            if (!text.empty() && (prev_token || is_word_char(text.back()) || text.back() == '@')) text.push_back(' ');
            text.append(placeholder_token(seg.placeholder));
            result.spans.push_back({seg.placeholder, std::string(source_.substr(seg.begin, seg.end - seg.begin)),
                                    seg.begin, result.spans.size()});
            prev_token = true;
        }
        return result;
    }

  private:
    void split_opaque() {
        std::size_t cursor = 0;
        std::size_t pos = 0;
        while ((pos = source_.find("@abstract", pos)) != std::string_view::npos) {
            std::size_t matched = 0;
            for (auto token : kTokens) {
                if (source_.substr(pos, token.size()) == token &&
                    (pos + token.size() == source_.size() || !is_word_char(source_[pos + token.size()]))) {
                    matched = token.size();
                    break;
                }
            }
            if (matched == 0) {
                ++pos;
                continue;
            }
            if (pos > cursor) segments_.push_back({SegmentKind::Raw, {}, cursor, pos});
            segments_.push_back({SegmentKind::Opaque, {}, pos, pos + matched});
            cursor = pos = pos + matched;
        }
        if (cursor < source_.size()) segments_.push_back({SegmentKind::Raw, {}, cursor, source_.size()});
    }

    std::string_view source_;
    std::vector<Segment> segments_;
};

// A match may start at `pos` when the character before it does not glue it to
// a longer word or number. `last_end` is where the previous replacement in
// the same segment ended; that boundary always counts as clean.
bool left_clean(std::string_view raw, std::size_t pos, std::size_t last_end) {
    if (pos == 0 || pos == last_end) return true;
    char prev = raw[pos - 1];
    if (is_word_char(prev)) return false;
    if ((prev == '.' || prev == '/') && (pos < 2 || is_word_char(raw[pos - 2]))) return false;
    return true;
}

Finder regex_finder(const std::regex& re, Placeholder placeholder) {
    return [&re, placeholder](std::string_view source, std::size_t begin, std::size_t end) {
        std::vector<Replacement> out;
        std::string_view raw = source.substr(begin, end - begin);
        std::size_t start = 0;
        std::size_t last_end = 0;
        std::cmatch m;
        while (start < raw.size()) {
            auto flags = start > 0 ? std::regex_constants::match_prev_avail : std::regex_constants::match_default;
            if (!std::regex_search(raw.data() + start, raw.data() + raw.size(), m, re, flags)) break;
            std::size_t pos = start + static_cast<std::size_t>(m.position(0));
            std::size_t len = static_cast<std::size_t>(m.length(0));
            if (len == 0 || !left_clean(raw, pos, last_end)) {
                start = pos + 1;
                continue;
            }
            out.push_back({begin + pos, begin + pos + len, {{placeholder, begin + pos, begin + pos + len}}});
            start = last_end = pos + len;
        }
        return out;
    };
}

const std::regex& url_regex() {
    static const std::regex re(
        R"(https?://(?:www\.)?[-a-zA-Z0-9@:%._+~#=]{2,256}\.[a-z]{2,6}\b[-a-zA-Z0-9@:%_+.~#?&/=]*)",
        std::regex::ECMAScript | std::regex::optimize);
    return re;
}

// Tail of a bug-tracker URL: a JIRA-style key as the last path segment, an
// id query parameter, or a numeric id under a bug/issue/ticket/pull path.
std::optional<std::pair<std::size_t, std::size_t>> bug_tail(std::string_view url) {
    static const std::regex key(R"([/=]([A-Za-z][A-Za-z0-9_]*-[0-9]+)/?$)");
    static const std::regex query(R"([?&](?:id|bug_?id|issue)=([0-9]+)$)");
    static const std::regex path(R"(/(?:bugs?|issues?|tickets?|pull)/([0-9]+)/?$)");
    std::cmatch m;
    for (const auto* re : {&key, &query, &path}) {
        if (std::regex_search(url.data(), url.data() + url.size(), m, *re)) {
            return std::make_pair(static_cast<std::size_t>(m.position(1)),
                                  static_cast<std::size_t>(m.position(1) + m.length(1)));
        }
    }
    return std::nullopt;
}

std::vector<Replacement> find_urls(std::string_view source, std::size_t begin, std::size_t end) {
    std::vector<Replacement> out;
    std::string_view raw = source.substr(begin, end - begin);
    std::size_t start = 0;
    std::cmatch m;
    while (start < raw.size() &&
           std::regex_search(raw.data() + start, raw.data() + raw.size(), m, url_regex(),
                             start > 0 ? std::regex_constants::match_prev_avail : std::regex_constants::match_default)) {
        std::size_t pos = start + static_cast<std::size_t>(m.position(0));
        std::size_t len = static_cast<std::size_t>(m.length(0));
        while (len > 0 && raw[pos + len - 1] == '.') --len;  // sentence punctuation
        std::string_view url = raw.substr(pos, len);
        Replacement r{begin + pos, begin + pos + len, {{Placeholder::Url, begin + pos, begin + pos + len}}};
        if (auto tail = bug_tail(url)) {
            r.pieces.push_back({Placeholder::BugId, begin + pos + tail->first, begin + pos + tail->second});
        }
        out.push_back(std::move(r));
        start = pos + std::max<std::size_t>(len, 1);
    }
    return out;
}

std::vector<Replacement> find_products(const ProductDictionary& dict, std::string_view source, std::size_t begin,
                                       std::size_t end) {
    std::vector<Replacement> out;
    std::string_view raw = source.substr(begin, end - begin);
    // a word boundary: not a word character, and not a '.' that continues a
    // dotted identifier such as org.apache.camel
    auto boundary_before = [&](std::size_t pos) {
        if (pos == 0) return true;
        char prev = raw[pos - 1];
        if (is_word_char(prev) || prev == '@') return false;
        return !(prev == '.' && pos >= 2 && is_word_char(raw[pos - 2]));
    };
    auto boundary_after = [&](std::size_t pos) {
        if (pos >= raw.size()) return true;
        char next = raw[pos];
        if (is_word_char(next)) return false;
        return !(next == '.' && pos + 1 < raw.size() && is_word_char(raw[pos + 1]));
    };
    std::size_t pos = 0;
    while (pos < raw.size()) {
        if (!boundary_before(pos) || !is_word_char(raw[pos])) {
            ++pos;
            continue;
        }
        std::size_t matched = 0;
        for (const auto& word : dict.by_length()) {
            if (word.size() > raw.size() - pos) continue;
            bool equal = true;
            for (std::size_t k = 0; k < word.size() && equal; ++k) {
                equal = std::tolower(static_cast<unsigned char>(raw[pos + k])) == static_cast<unsigned char>(word[k]);
            }
            if (equal && boundary_after(pos + word.size())) {
                matched = word.size();
                break;
            }
        }
        if (matched == 0) {
            ++pos;
            continue;
        }
        out.push_back({begin + pos, begin + pos + matched, {{Placeholder::Product, begin + pos, begin + pos + matched}}});
        pos += matched;
    }
    return out;
}

}  // namespace

std::string_view placeholder_token(Placeholder p) noexcept { return kTokens[static_cast<std::size_t>(p)]; }

std::optional<Placeholder> parse_placeholder(std::string_view token) noexcept {
    for (std::size_t i = 0; i < kTokens.size(); ++i) {
        if (kTokens[i] == token) return static_cast<Placeholder>(i);
    }
    return std::nullopt;
}

bool is_placeholder(std::string_view token) noexcept { return parse_placeholder(token).has_value(); }

// Replacement order:
//   1-2. URLs; a bug-tracker URL becomes "@abstracturl @abstractbugid"
//   3.   dates (timestamp, dd.mm.yyyy, dd/mm[/yyyy], d Month yyyy)
//   4.   dictionary product names
//   4a.  product-hyphen-number ("jetty-9.3") as a bug id
//   5.   versions
//   6.   product followed by [ |-]* and digits as a bug id
// URLs go first so their paths are not split into dates or versions, and the
// bug-id rule runs last because it keys on the product placeholder.
AbstractionResult abstract_terms(std::string_view text, const ProductDictionary& dict) {
    static const std::regex timestamp(R"([0-9]+-[0-9]+-[0-9]+ [0-9]+:[0-9]+:[0-9]+ [-|+][0-9]+(?: \([^()]*\))?)",
                                      std::regex::optimize);
    static const std::regex dotted_date(R"((?:0[1-9]|[12][0-9]|3[01])\.(?:0[1-9]|1[0-2])\.[12][0-9]{3}(?![0-9]))",
                                        std::regex::optimize);
    static const std::regex slashed_date(R"((?:0[1-9]|[12][0-9]|3[01])/(?:0[1-9]|1[0-2])(?:/[12][0-9]{3})*(?![0-9]))",
                                         std::regex::optimize);
    static const std::regex written_date(
        R"((?:[0-2]?[0-9]|3[01])\s+(?:Jan|Feb|Mar|Apr|May|Jun|Jul|Aug|Sep|Oct|Nov|Dec)[a-z]*\.?\s+[0-9]{4}(?![0-9]))",
        std::regex::optimize);
    static const std::regex version(
        R"([0-9]{1,2}\.[0-9]{1,2}(?:[+-]|\.[0-9]{1,3}|\.[A-Za-z]{1,2})*(?:_[0-9]{1,3})*(?![A-Za-z0-9_]))",
        std::regex::optimize);
    static const std::regex hyphen_bug(R"(^-([0-9]+(?:\.[0-9]+)*)(?![A-Za-z0-9_]))");
    static const std::regex spaced_bug(R"(^[ |-]*([0-9]+)(?![A-Za-z0-9_]|\.[0-9]))");

    auto bug_continuation = [](const std::regex& re) {
        return [&re](std::string_view raw, std::size_t& consumed, std::size_t& db, std::size_t& de) {
            std::cmatch m;
            if (!std::regex_search(raw.data(), raw.data() + raw.size(), m, re)) return false;
            consumed = static_cast<std::size_t>(m.length(0));
            db = static_cast<std::size_t>(m.position(1));
            de = db + static_cast<std::size_t>(m.length(1));
            return true;
        };
    };

    Abstractor a(text);
    a.apply(find_urls);
    a.apply(regex_finder(timestamp, Placeholder::Date));
    a.apply(regex_finder(dotted_date, Placeholder::Date));
    a.apply(regex_finder(slashed_date, Placeholder::Date));
    a.apply(regex_finder(written_date, Placeholder::Date));
    a.apply([&dict](std::string_view s, std::size_t b, std::size_t e) { return find_products(dict, s, b, e); });
    a.attach_bug_ids(bug_continuation(hyphen_bug));
    a.apply(regex_finder(version, Placeholder::Version));
    a.attach_bug_ids(bug_continuation(spaced_bug));
    return a.render();
}

}  // namespace onhold
