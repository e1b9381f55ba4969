// Copyright 2026 The mpconc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpconc/app/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace mpconc::app {
namespace {

std::string scalar_text(const Report &v) {
    switch (v.type()) {
    case Report::value_t::null:
        return "";
    case Report::value_t::boolean:
        return v.get<bool>() ? "true" : "false";
    case Report::value_t::number_integer:
        return std::to_string(v.get<std::int64_t>());
    case Report::value_t::number_unsigned:
        return std::to_string(v.get<std::uint64_t>());
    case Report::value_t::number_float:
        return format_double(v.get<double>());
    case Report::value_t::string:
        return v.get<std::string>();
    default:
        return v.dump();
    }
}

void write_json(const Report &v, int indent, std::string &out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (v.type()) {
    case Report::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto &[key, value] : v.items()) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += inner;
            out += Report(key).dump();
            out += ": ";
            write_json(value, indent + 1, out);
        }
        out += "\n" + pad + "}";
        return;
    }
    case Report::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) {
                out += ",\n";
            }
            out += inner;
            write_json(v[i], indent + 1, out);
        }
        out += "\n" + pad + "]";
        return;
    }
    case Report::value_t::number_float: {
        const double x = v.get<double>();
        out += std::isfinite(x) ? format_double(x) : "null";
        return;
    }
    default:
        out += v.dump();
        return;
    }
}

void flatten_into(const Report &v, const std::string &prefix,
                  std::vector<std::pair<std::string, std::string>> &out) {
    if (v.is_object()) {
        for (const auto &[key, value] : v.items()) {
            flatten_into(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            flatten_into(v[i], prefix + "." + std::to_string(i), out);
        }
    } else {
        out.emplace_back(prefix, scalar_text(v));
    }
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (const char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

} // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

Report number_or_null(double value) {
    return std::isfinite(value) ? Report(value) : Report(nullptr);
}

std::string render_json(const Report &report) {
    std::string out;
    write_json(report, 0, out);
    out += "\n";
    return out;
}

std::vector<std::pair<std::string, std::string>> flatten(const Report &report) {
    std::vector<std::pair<std::string, std::string>> out;
    flatten_into(report, "", out);
    return out;
}

std::string render_csv(const Report &report) {
    std::string out = "key,value\n";
    for (const auto &[key, value] : flatten(report)) {
        out += csv_field(key) + "," + csv_field(value) + "\n";
    }
    return out;
}

std::string render(const Report &report, OutputFormat format) {
    return format == OutputFormat::csv ? render_csv(report) : render_json(report);
}

} // namespace mpconc::app
