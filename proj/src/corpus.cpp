// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "onhold/error.hpp"
#include "onhold/io.hpp"

namespace onhold {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::Io: return "IoError";
        case ErrorKind::EmptyCorpus: return "EmptyCorpus";
        case ErrorKind::DegenerateTraining: return "DegenerateTraining";
        case ErrorKind::NonFiniteLoss: return "NonFiniteLoss";
        case ErrorKind::SingleClass: return "SingleClass";
        case ErrorKind::TooFewInstances: return "TooFewInstances";
        case ErrorKind::TooFewProjects: return "TooFewProjects";
        case ErrorKind::ModelFormat: return "ModelFormat";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

std::string_view to_string(Label label) noexcept {
    switch (label) {
        case Label::OnHold: return "on_hold";
        case Label::NotOnHold: return "not_on_hold";
        case Label::NotSatd: return "not_satd";
    }
    return "not_on_hold";
}

std::optional<Label> parse_label(std::string_view text) noexcept {
    if (text == "on_hold") return Label::OnHold;
    if (text == "not_on_hold") return Label::NotOnHold;
    if (text == "not_satd") return Label::NotSatd;
    return std::nullopt;
}

namespace {

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

// RFC-4180 reader: quoted fields may contain separators, doubled quotes and
// line breaks. Accepts LF or CRLF record terminators.
class CsvReader {
  public:
    explicit CsvReader(std::string data) : data_(std::move(data)) {
        if (data_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    }

    bool next(CsvRecord& record) {
        record.fields.clear();
        if (pos_ >= data_.size()) return false;
        record.line = line_;
        std::string field;
        bool quoted = false;
        bool was_quoted = false;
        while (pos_ < data_.size()) {
            char c = data_[pos_++];
            if (quoted) {
                if (c == '"') {
                    if (pos_ < data_.size() && data_[pos_] == '"') {
                        field.push_back('"');
                        ++pos_;
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n') ++line_;
                    field.push_back(c);
                }
                continue;
            }
            if (c == '"') {
                if (!field.empty() || was_quoted) {
                    throw Error(ErrorKind::MalformedRow,
                                "line " + std::to_string(record.line) + ": stray quote");
                }
                quoted = true;
                was_quoted = true;
            } else if (c == ',') {
                record.fields.push_back(std::move(field));
                field.clear();
                was_quoted = false;
            } else if (c == '\r' && pos_ < data_.size() && data_[pos_] == '\n') {
                continue;
            } else if (c == '\n') {
                ++line_;
                record.fields.push_back(std::move(field));
                return true;
            } else {
                if (was_quoted) {
                    throw Error(ErrorKind::MalformedRow, "line " + std::to_string(record.line) +
                                                             ": text after closing quote");
                }
                field.push_back(c);
            }
        }
        if (quoted) {
            throw Error(ErrorKind::MalformedRow,
                        "line " + std::to_string(record.line) + ": unterminated quoted field");
        }
        record.fields.push_back(std::move(field));
        return true;
    }

  private:
    std::string data_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool needs_quotes(std::string_view field) {
    if (field.empty()) return false;
    if (field.find_first_of(",\"\r\n") != std::string_view::npos) return true;
    return std::isspace(static_cast<unsigned char>(field.front())) ||
           std::isspace(static_cast<unsigned char>(field.back()));
}

void write_field(std::ostream& out, std::string_view field, bool force_quotes) {
    if (!force_quotes && !needs_quotes(field)) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

Dataset parse_dataset(std::istream& in, std::string source_name, LabelColumn labels) {
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    CsvReader reader(std::move(data));
    CsvRecord record;
    if (!reader.next(record)) {
        throw Error(ErrorKind::MalformedRow, "line 1: missing header row");
    }

    const std::vector<std::string> full_header{"project", "id", "text", "label"};
    const std::vector<std::string> short_header{"project", "id", "text"};
    bool has_labels = record.fields == full_header;
    if (!has_labels && !(labels == LabelColumn::Optional && record.fields == short_header)) {
        throw Error(ErrorKind::MalformedRow, "line 1: expected header project,id,text,label");
    }
    const std::size_t width = has_labels ? 4 : 3;

    Dataset dataset;
    dataset.provenance = {std::move(source_name), utc_timestamp()};
    std::unordered_set<std::string> ids;
    while (reader.next(record)) {
        if (record.fields.size() == 1 && record.fields[0].empty()) continue;  // blank line
        const std::string where = "line " + std::to_string(record.line);
        if (record.fields.size() != width) {
            throw Error(ErrorKind::MalformedRow, where + ": expected " + std::to_string(width) +
                                                     " fields, got " +
                                                     std::to_string(record.fields.size()));
        }
        Comment c;
        c.project = std::move(record.fields[0]);
        c.id = std::move(record.fields[1]);
        c.text = std::move(record.fields[2]);
        if (c.id.empty()) throw Error(ErrorKind::MalformedRow, where + ": empty id");
        if (is_blank(c.text)) throw Error(ErrorKind::MalformedRow, where + ": empty text");
        if (has_labels) {
            auto label = parse_label(record.fields[3]);
            if (!label) throw Error(ErrorKind::UnknownLabel, "'" + record.fields[3] + "' at " + where);
            c.label = *label;
        }
        if (!ids.insert(c.id).second) throw Error(ErrorKind::DuplicateId, "'" + c.id + "' at " + where);
        dataset.comments.push_back(std::move(c));
    }
    return dataset;
}

Dataset load_dataset(const std::filesystem::path& path, LabelColumn labels) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return parse_dataset(in, path.string(), labels);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
    out << "project,id,text,label\n";
    for (const auto& c : dataset.comments) {
        write_field(out, c.project, false);
        out << ',';
        write_field(out, c.id, false);
        out << ',';
        write_field(out, c.text, true);
        out << ',' << to_string(c.label) << '\n';
    }
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
    std::ostringstream out;
    write_dataset(out, dataset);
    write_file_atomic(path, out.str());
}

std::string normalize_for_dedup(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

Dataset deduplicate(const Dataset& dataset) {
    Dataset out;
    out.provenance = dataset.provenance;
    std::unordered_set<std::string> seen;
    for (const auto& c : dataset.comments) {
        std::string key = c.project;
        key.push_back('\0');
        key += normalize_for_dedup(c.text);
        if (seen.insert(std::move(key)).second) out.comments.push_back(c);
    }
    return out;
}

Dataset drop_not_satd(const Dataset& dataset) {
    Dataset out;
    out.provenance = dataset.provenance;
    std::copy_if(dataset.comments.begin(), dataset.comments.end(), std::back_inserter(out.comments),
                 [](const Comment& c) { return c.label != Label::NotSatd; });
    return out;
}

}  // namespace onhold
