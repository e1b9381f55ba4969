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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mpconc/hilbert.hpp"

namespace mpconc::app {

/// Process exit status of the command-line tool.
enum class ExitCode : int {
    success = 0,
    check_failure = 1,
    invalid_config = 2,
    resource_cap = 3,
};

class ConfigError : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(const std::string &text);

struct GhzSpec {
    std::size_t n = 0;
    std::size_t d = 2;
};
struct WSpec {
    std::size_t n = 0;
};
struct ProductSpec {
    std::vector<Vector> locals;
};
struct RandomSpec {
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;
};
struct ExplicitSpec {
    std::vector<std::size_t> dims;
    Vector amplitudes;
};

using StateSpec = std::variant<GhzSpec, WSpec, ProductSpec, RandomSpec, ExplicitSpec>;

struct MeasuredSpec {
    enum class Kind { all, drop_last, list };
    Kind kind = Kind::all;
    std::vector<std::size_t> indices;
};

struct ExperimentConfig {
    StateSpec state;
    std::optional<double> visibility;
    MeasuredSpec measured;
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 0;
    OutputFormat output_format = OutputFormat::json;
};

/// Schema:
/// {
///   "state": {"type": "ghz", "N": 3, "d": 2}
///          | {"type": "w", "N": 3}
///          | {"type": "product", "locals": [[amp, ...], ...]}
///          | {"type": "random", "dims": [2, 2], "seed": 7}
///          | {"type": "explicit", "dims": [2, 2], "amplitudes": [amp, ...]},
///   "visibility": 0.8,                    // optional, in [0, 1]
///   "measured": "all" | "drop_last" | [0, 2],   // optional, default "all"
///   "shots": 100000,                      // sample only
///   "seed": 1,                            // sampling seed, default 0
///   "output_format": "json" | "csv"       // default "json"
/// }
/// An amplitude is a number or a [re, im] pair. Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json &doc);
ExperimentConfig load_config(const std::filesystem::path &path);

PureState build_state(const StateSpec &spec,
                      std::size_t two_copy_cap = kDefaultTwoCopyCap);
SubsystemSet resolve_measured(const MeasuredSpec &spec, std::size_t n);

/// Short human-readable label such as "ghz{N=3,d=2}".
std::string describe(const StateSpec &spec);

} // namespace mpconc::app
