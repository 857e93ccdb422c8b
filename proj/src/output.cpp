// Copyright 2026 The zeno-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zeno/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno::io {

namespace {

constexpr int kSignificantDigits = 12;

std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_cell(const Cell &cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string &v) const { return csv_escape(v); }
    };
    return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json cell_json(const Cell &cell) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return nullptr;
            return v;
        }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(const std::string &v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

std::string render_csv(const Document &doc) {
    if (doc.report) {
        throw std::invalid_argument("experiment '" + doc.experiment + "' produces a report; use --format json");
    }
    std::ostringstream out;
    out << "# tool=" << kToolName << '\n';
    out << "# version=" << tool_version() << '\n';
    out << "# experiment=" << doc.experiment << '\n';
    for (const auto &[key, value] : doc.metadata.entries()) {
        out << "# " << key << '=' << value << '\n';
    }
    out << "# timestamp=" << doc.timestamp << '\n';
    for (std::size_t c = 0; c < doc.table.columns.size(); c++) {
        out << (c ? "," : "") << csv_escape(doc.table.columns[c]);
    }
    out << '\n';
    for (const auto &row : doc.table.rows) {
        for (std::size_t c = 0; c < row.size(); c++) {
            out << (c ? "," : "") << render_cell(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

std::string render_json(const Document &doc) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = tool_version();
    j["experiment"] = doc.experiment;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto &[key, value] : doc.metadata.entries()) {
        meta[key] = value;
    }
    j["metadata"] = meta;
    j["timestamp"] = doc.timestamp;
    if (doc.report) {
        j["report"] = *doc.report;
    } else {
        j["columns"] = doc.table.columns;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto &row : doc.table.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const Cell &cell : row) r.push_back(cell_json(cell));
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
    }
    return j.dump(2) + "\n";
}

}  // namespace

std::string_view tool_version() {
#ifdef ZENO_VERSION
    return ZENO_VERSION;
#else
    return "unknown";
#endif
}

void Metadata::add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
}

void Metadata::add(std::string key, double value) {
    add(std::move(key), format_double(value));
}

std::optional<std::string> Metadata::find(std::string_view key) const {
    for (const auto &[k, v] : entries_) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::optional<Format> parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    return std::nullopt;
}

std::string_view to_string(Format format) {
    return format == Format::csv ? "csv" : "json";
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, kSignificantDigits);
    return std::string(buf, res.ptr);
}

std::string current_timestamp_utc() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::string render(const Document &doc, Format format) {
    return format == Format::csv ? render_csv(doc) : render_json(doc);
}

void write_document(const Document &doc, Format format, const std::filesystem::path &path) {
    std::string text = render(doc, format);
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file: " + path.string());
    }
    out << text;
    out.close();
    if (!out) {
        throw IoError("failed writing output file: " + path.string());
    }
}

std::string strip_timestamp(std::string_view rendered) {
    std::string out;
    std::size_t pos = 0;
    while (pos < rendered.size()) {
        std::size_t end = rendered.find('\n', pos);
        std::size_t next = end == std::string_view::npos ? rendered.size() : end + 1;
        std::string_view line = rendered.substr(pos, next - pos);
        std::size_t first = line.find_first_not_of(' ');
        std::string_view body = first == std::string_view::npos ? std::string_view{} : line.substr(first);
        bool is_timestamp = body.starts_with("# timestamp=") || body.starts_with("\"timestamp\":");
        if (!is_timestamp) out.append(line);
        pos = next;
    }
    return out;
}

}  // namespace zeno::io
