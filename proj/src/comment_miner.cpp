// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "onhold/corpus.hpp"
#include "onhold/error.hpp"

namespace onhold {

namespace {

std::string_view trim(std::string_view s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string strip_line_comment(std::string_view body) {
    // body starts right after "//"; extra slashes belong to the marker
    while (!body.empty() && body.front() == '/') body.remove_prefix(1);
    return std::string(trim(body));
}

std::string strip_block_comment(std::string_view body) {
    // body is the text between "/*" and "*/"
    while (!body.empty() && body.front() == '*') body.remove_prefix(1);
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t end = body.find('\n', start);
        if (end == std::string_view::npos) end = body.size();
        std::string_view line = trim(body.substr(start, end - start));
        if (!line.empty() && line.front() == '*') {
            while (!line.empty() && line.front() == '*') line.remove_prefix(1);
            line = trim(line);
        }
        lines.push_back(line);
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    std::size_t first = 0;
    while (first < lines.size() && lines[first].empty()) ++first;

    std::string out;
    for (std::size_t i = first; i < lines.size(); ++i) {
        if (i > first) out.push_back('\n');
        out.append(lines[i]);
    }
    return out;
}

struct RawLineComment {
    std::string text;
    std::size_t line, column, offset;
};

}  // namespace

std::vector<ExtractedComment> extract_comments(std::string_view src) {
    std::vector<ExtractedComment> out;
    std::vector<RawLineComment> run;  // pending line comments eligible to merge

    auto flush_run = [&] {
        if (run.empty()) return;
        std::string text;
        for (const auto& piece : run) {
            if (piece.text.empty()) continue;
            if (!text.empty()) text.push_back('\n');
            text += piece.text;
        }
        if (!text.empty()) {
            out.push_back({std::move(text), run.front().line, run.front().column, run.front().offset});
        }
        run.clear();
    };

    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t line_start = 0;
    const std::size_t n = src.size();

    auto skip_quoted = [&](char quote) {
        // i points just past the opening quote
        while (i < n && src[i] != quote && src[i] != '\n') {
            if (src[i] == '\\' && i + 1 < n && src[i + 1] != '\n') ++i;
            ++i;
        }
        if (i < n && src[i] == quote) ++i;
    };

    while (i < n) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            line_start = ++i;
            continue;
        }
        if (c == '"' && src.substr(i, 3) == "\"\"\"") {
            std::size_t close = src.find("\"\"\"", i + 3);
            std::size_t end = close == std::string_view::npos ? n : close + 3;
            for (std::size_t k = i; k < end; ++k) {
                if (src[k] == '\n') {
                    ++line;
                    line_start = k + 1;
                }
            }
            i = end;
            continue;
        }
        if (c == '"' || c == '\'') {
            ++i;
            skip_quoted(c);
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            std::size_t end = src.find('\n', i);
            if (end == std::string_view::npos) end = n;
            std::string_view body = src.substr(i + 2, end - i - 2);
            if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
            RawLineComment piece{strip_line_comment(body), line, i - line_start + 1, i};
            if (!run.empty() && !(run.back().line + 1 == piece.line && run.back().column == piece.column)) {
                flush_run();
            }
            run.push_back(std::move(piece));
            i = end;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            flush_run();
            std::size_t close = src.find("*/", i + 2);
            std::size_t body_end = close == std::string_view::npos ? n : close;
            std::size_t end = close == std::string_view::npos ? n : close + 2;
            ExtractedComment block{strip_block_comment(src.substr(i + 2, body_end - i - 2)), line,
                                   i - line_start + 1, i};
            for (std::size_t k = i; k < end; ++k) {
                if (src[k] == '\n') {
                    ++line;
                    line_start = k + 1;
                }
            }
            if (!block.text.empty()) out.push_back(std::move(block));
            i = end;
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) {
            // code on a later line ends the run of line comments
            if (!run.empty() && run.back().line != line) flush_run();
        }
        ++i;
    }
    flush_run();

    std::sort(out.begin(), out.end(),
              [](const ExtractedComment& a, const ExtractedComment& b) { return a.offset < b.offset; });
    return out;
}

bool is_valid_utf8(std::string_view bytes) noexcept {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        auto b = static_cast<unsigned char>(bytes[i]);
        std::size_t extra;
        char32_t cp;
        if (b < 0x80) {
            ++i;
            continue;
        } else if ((b & 0xE0) == 0xC0) {
            extra = 1;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            extra = 2;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            extra = 3;
            cp = b & 0x07;
        } else {
            return false;
        }
        if (i + extra >= n) return false;
        for (std::size_t k = 1; k <= extra; ++k) {
            auto cont = static_cast<unsigned char>(bytes[i + k]);
            if ((cont & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cont & 0x3F);
        }
        // overlong encodings, surrogates and out-of-range code points
        if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000) ||
            (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
            return false;
        }
        i += extra + 1;
    }
    return true;
}

MineResult mine_comments(const std::filesystem::path& root, const std::vector<std::string>& extensions) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error(ErrorKind::Io, root.string() + " is not a readable directory");

    std::vector<std::string> wanted;
    for (const auto& ext : extensions) wanted.push_back(ext.starts_with('.') ? ext : "." + ext);

    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw Error(ErrorKind::Io, root.string() + ": " + ec.message());
    for (const auto& entry : it) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (std::find(wanted.begin(), wanted.end(), ext) != wanted.end()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    MineResult result;
    auto canonical = fs::weakly_canonical(root, ec);
    std::string project = (ec ? root : canonical).filename().string();
    if (project.empty()) project = (ec ? root : canonical).parent_path().filename().string();
    result.dataset.provenance.source = root.string();

    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw Error(ErrorKind::Io, "cannot read " + file.string());
        std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + file.string());
        if (!is_valid_utf8(content)) {
            result.skipped.push_back(file);
            continue;
        }
        const std::string rel = file.lexically_relative(root).generic_string();
        for (auto& extracted : extract_comments(content)) {
            Comment c;
            c.id = rel + ":" + std::to_string(extracted.line) + ":" + std::to_string(extracted.column);
            c.project = project;
            c.text = std::move(extracted.text);
            c.label = Label::NotOnHold;
            result.dataset.comments.push_back(std::move(c));
        }
    }
    return result;
}

}  // namespace onhold
