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

// Result documents and their CSV / JSON renderings.
//
// CSV layout:
//
//     # tool=zeno-sim
//     # version=0.1.0
//     # experiment=fig2
//     # <key>=<value>            one line per metadata entry
//     # timestamp=<ISO-8601 UTC>
//     n,survival_exact,...       header row
//     1,0,...                    data rows
//
// Everything except the timestamp line is a pure function of the
// configuration, so reruns can be compared after strip_timestamp().

#ifndef ZENO_OUTPUT_HPP
#define ZENO_OUTPUT_HPP

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace zeno::io {

inline constexpr std::string_view kToolName = "zeno-sim";
std::string_view tool_version();

/// Empty cells (std::monostate) render as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Ordered key/value provenance entries.
class Metadata {
  public:
    void add(std::string key, std::string value);
    void add(std::string key, const char *value) { add(std::move(key), std::string(value)); }
    void add(std::string key, double value);
    void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
    template <std::integral T>
    void add(std::string key, T value) {
        add(std::move(key), std::to_string(value));
    }

    const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }
    std::optional<std::string> find(std::string_view key) const;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct Document {
    std::string experiment;
    Metadata metadata;
    Table table;
    /// Structured report for experiments that are not tabular.
    std::optional<nlohmann::ordered_json> report;
    std::string timestamp;
};

enum class Format { csv, json };

std::optional<Format> parse_format(std::string_view name);
std::string_view to_string(Format format);

/// 12 significant digits, independent of the global locale.
std::string format_double(double value);

std::string current_timestamp_utc();

/// Throws std::invalid_argument when a report-only document is rendered as CSV.
std::string render(const Document &doc, Format format);

/// Writes the rendering to `path`, or to stdout when path is "-".
/// Throws IoError naming the path on failure.
void write_document(const Document &doc, Format format, const std::filesystem::path &path);

/// Removes the timestamp line from a CSV or JSON rendering.
std::string strip_timestamp(std::string_view rendered);

}  // namespace zeno::io

#endif
