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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mpconc/app/config.hpp"

namespace mpconc::app {

/// Reports keep insertion order so rendered output is stable.
using Report = nlohmann::ordered_json;

/// "%.17g"; non-finite values have no JSON encoding and are stored as null
/// by the report builders before rendering.
std::string format_double(double value);

/// Real number, or null when not finite.
Report number_or_null(double value);

/// Pretty JSON with every double written to 17 significant digits.
std::string render_json(const Report &report);

/// Two-column `key,value` CSV of the flattened report. Nested keys are joined
/// with '.', array elements use their index; null becomes an empty field.
std::string render_csv(const Report &report);

std::string render(const Report &report, OutputFormat format);

/// The (key, value-text) pairs used by render_csv, in order.
std::vector<std::pair<std::string, std::string>> flatten(const Report &report);

} // namespace mpconc::app
